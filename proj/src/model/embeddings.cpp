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

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "gazelab/error.hpp"
#include "gazelab/model.hpp"

namespace gazelab {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

template <typename T>
T read_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw ParseError(std::string("EMB1: truncated file while reading ") + what,
                     static_cast<std::size_t>(in.gcount()));
  }
  T value = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) value |= static_cast<T>(bytes[k]) << (8 * k);
  return value;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    bytes[k] = static_cast<char>((value >> (8 * k)) & 0xff);
  }
  out.write(bytes.data(), bytes.size());
}

}  // namespace

const EmbeddingMatrix* EmbeddingFile::find(const std::string& sentence_id) const {
  const auto it = index_.find(sentence_id);
  return it == index_.end() ? nullptr : &sentences[it->second];
}

void EmbeddingFile::reindex() {
  index_.clear();
  for (std::size_t k = 0; k < sentences.size(); ++k) {
    if (!index_.emplace(sentences[k].sentence_id, k).second) {
      throw ValidationError("EMB1: duplicate sentence id '" + sentences[k].sentence_id + "'");
    }
  }
}

EmbeddingFile read_embeddings(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError("EMB1: bad magic", 0);
  }
  EmbeddingFile file;
  file.dim = read_le<std::uint32_t>(in, "dimension");
  if (file.dim == 0) throw ValidationError("EMB1: dimension must be positive");
  const auto d = static_cast<Eigen::Index>(file.dim);
  while (in.peek() != std::char_traits<char>::eof()) {
    EmbeddingMatrix m;
    const auto id_len = read_le<std::uint16_t>(in, "id length");
    m.sentence_id.resize(id_len);
    if (!in.read(m.sentence_id.data(), id_len)) throw ParseError("EMB1: truncated id", 0);
    const auto words = static_cast<Eigen::Index>(read_le<std::uint32_t>(in, "word count"));
    m.values.resize(d, words);
    for (Eigen::Index w = 0; w < words; ++w) {
      for (Eigen::Index k = 0; k < d; ++k) {
        const auto bits = read_le<std::uint32_t>(in, "vector");
        m.values(k, w) = static_cast<double>(std::bit_cast<float>(bits));
      }
    }
    file.sentences.push_back(std::move(m));
  }
  file.reindex();
  return file;
}

EmbeddingFile read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_embeddings(in);
}

void write_embeddings(std::ostream& out, const EmbeddingFile& file) {
  out.write(kMagic, 4);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(file.dim));
  for (const auto& m : file.sentences) {
    if (m.values.rows() != static_cast<Eigen::Index>(file.dim)) {
      throw ShapeError("EMB1: sentence '" + m.sentence_id + "' has dimension " +
                       std::to_string(m.values.rows()) + ", file has " +
                       std::to_string(file.dim));
    }
    if (m.sentence_id.size() > 0xffff) throw ValidationError("EMB1: sentence id too long");
    write_le<std::uint16_t>(out, static_cast<std::uint16_t>(m.sentence_id.size()));
    out.write(m.sentence_id.data(), static_cast<std::streamsize>(m.sentence_id.size()));
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.values.cols()));
    for (Eigen::Index w = 0; w < m.values.cols(); ++w) {
      for (Eigen::Index k = 0; k < m.values.rows(); ++k) {
        write_le<std::uint32_t>(out,
                                std::bit_cast<std::uint32_t>(static_cast<float>(m.values(k, w))));
      }
    }
  }
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingFile& file) {
  auto tmp = path;
  tmp += ".tmp";
  try {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    write_embeddings(out, file);
    out.close();
    if (!out) throw Error("write failed for " + tmp.string());
  } catch (...) {
    std::filesystem::remove(tmp);
    throw;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace gazelab
