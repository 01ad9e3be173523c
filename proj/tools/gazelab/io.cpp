// Copyright (c) 2026 The gazelab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "gazelab/csv.hpp"
#include "gazelab/error.hpp"
#include "gazelab/hash.hpp"

#ifndef GAZELAB_VERSION
#define GAZELAB_VERSION "0.0.0"
#endif

namespace gazelab::cli {

void write_features_csv(std::ostream& out, const std::vector<std::string>& ids,
                        const std::vector<FeatureVector>& rows) {
  csv::Row header = {"sentence_id"};
  for (const auto& n : feature_names()) header.push_back(n);
  csv::write_row(out, header);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    csv::Row r = {ids[k]};
    for (double v : rows[k].values) r.push_back(csv::format_double(v));
    csv::write_row(out, r);
  }
}

std::unordered_map<std::string, FeatureVector> read_features_csv(const fs::path& path) {
  const auto table = csv::read_file(path.string());
  const std::size_t id_col = table.column("sentence_id");
  std::vector<std::size_t> cols;
  for (const auto& n : feature_names()) cols.push_back(table.column(n));
  std::unordered_map<std::string, FeatureVector> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = r + 2;
    if (row.size() != table.header.size()) {
      throw ParseError(path.string() + ": line " + std::to_string(line) + " has " +
                           std::to_string(row.size()) + " fields, expected " +
                           std::to_string(table.header.size()),
                       line);
    }
    FeatureVector f;
    for (std::size_t k = 0; k < kFeatureCount; ++k) f.values[k] = csv::parse_double(row[cols[k]], line);
    if (!out.emplace(row[id_col], f).second) {
      throw ValidationError(path.string() + ": duplicate sentence '" + row[id_col] + "'");
    }
  }
  return out;
}

void write_split_csv(std::ostream& out, const std::vector<Document>& corpus,
                     const CorpusSplit& split) {
  csv::write_row(out, {"sentence_id", "part"});
  auto part = [&](const std::vector<SentenceRef>& refs, const char* name) {
    for (const auto& r : refs) csv::write_row(out, {corpus[r.doc].sentences[r.sentence].id, name});
  };
  part(split.train, "train");
  part(split.dev, "dev");
  part(split.test, "test");
}

CorpusSplit read_split_csv(const fs::path& path, const std::vector<Document>& corpus) {
  std::unordered_map<std::string, SentenceRef> refs;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (std::size_t s = 0; s < corpus[d].sentences.size(); ++s) {
      refs.emplace(corpus[d].sentences[s].id, SentenceRef{d, s});
    }
  }
  const auto table = csv::read_file(path.string());
  const std::size_t id_col = table.column("sentence_id");
  const std::size_t part_col = table.column("part");
  CorpusSplit split;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto it = refs.find(row.at(id_col));
    if (it == refs.end()) {
      throw ValidationError(path.string() + ": sentence '" + row[id_col] + "' is not in the corpus");
    }
    const std::string& part = row.at(part_col);
    if (part == "train") {
      split.train.push_back(it->second);
    } else if (part == "dev") {
      split.dev.push_back(it->second);
    } else if (part == "test") {
      split.test.push_back(it->second);
    } else {
      throw ParseError(path.string() + ": line " + std::to_string(r + 2) + ": unknown part '" +
                           part + "'",
                       r + 2);
    }
  }
  return split;
}

std::vector<MeasureValues> align_rows(const GazeTargets& reference, const GazeTargets& other,
                                      const std::string& what) {
  std::map<WordKey, std::size_t> index;
  for (std::size_t k = 0; k < other.size(); ++k) index.emplace(other.words[k], k);
  std::vector<MeasureValues> out;
  out.reserve(reference.size());
  for (const auto& w : reference.words) {
    const auto it = index.find(w);
    if (it == index.end()) {
      throw ValidationError(what + " has no row for word " + std::to_string(w.word_index) +
                            " of sentence '" + w.sentence_id + "'");
    }
    out.push_back(other.values[it->second]);
  }
  return out;
}

// ---------------------------------------------------------------- outputs

Outputs::Outputs(fs::path dir) : dir_(std::move(dir)) {
  if (!fs::exists(dir_)) {
    fs::create_directories(dir_);
    created_dir_ = true;
  }
}

Outputs::~Outputs() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& n : names_) fs::remove(dir_ / n, ec);
  if (created_dir_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
}

void Outputs::write(const std::string& name, const std::function<void(std::ostream&)>& fill) {
  const fs::path target = dir_ / name;
  const fs::path tmp = dir_ / (name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write " + tmp.string());
    try {
      fill(out);
    } catch (...) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw;
    }
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
  names_.push_back(name);
}

void Outputs::adopt(const std::string& name) { names_.push_back(name); }

std::string hash_path(const fs::path& path) {
  if (!fs::is_directory(path)) return sha256_file(path.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(path)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string listing;
  for (const auto& f : files) {
    listing += fs::relative(f, path).generic_string() + " " + sha256_file(f.string()) + "\n";
  }
  return sha256_hex(listing);
}

Manifest::Manifest(std::string command) {
  doc_["command"] = std::move(command);
  doc_["version"] = GAZELAB_VERSION;
  doc_["inputs"] = nlohmann::json::object();
}

void Manifest::input(const std::string& role, const fs::path& path) {
  doc_["inputs"][role] = {{"path", path.string()}, {"sha256", hash_path(path)}};
}

void Manifest::write(Outputs& outputs) {
  nlohmann::json files = nlohmann::json::object();
  for (const auto& n : outputs.names()) files[n] = sha256_file((outputs.dir() / n).string());
  doc_["outputs"] = files;
  outputs.write("manifest.json", [&](std::ostream& out) { out << doc_.dump(2) << "\n"; });
}

}  // namespace gazelab::cli
