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

#include "gazelab/resources.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

#include "gazelab/csv.hpp"
#include "gazelab/error.hpp"

namespace gazelab {

std::string_view register_code(Register r) {
  switch (r) {
    case Register::kSpoken: return "spok";
    case Register::kFiction: return "fic";
    case Register::kMagazine: return "mag";
    case Register::kNews: return "news";
    case Register::kAcademic: return "acad";
  }
  return "?";
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

NgramTable& ResourceBundle::table(Register r, int n) {
  return ngrams.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(n - 1));
}

const NgramTable& ResourceBundle::table(Register r, int n) const {
  return ngrams.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(n - 1));
}

const WordList& ResourceBundle::list(std::string_view name) const {
  static const WordList kEmpty;
  const auto it = word_lists.find(name);
  return it == word_lists.end() ? kEmpty : it->second;
}

void ResourceBundle::validate() const {
  for (Register r : kRegisters) {
    for (int n = 1; n <= kMaxNgram; ++n) {
      for (const auto& [gram, f] : table(r, n)) {
        if (!(f >= 1.0) || !std::isfinite(f)) {
          throw ValidationError("n-gram '" + gram + "' in " +
                                std::string(register_code(r)) + "_" +
                                std::to_string(n) + " has frequency < 1");
        }
      }
    }
  }
  for (const auto* norm : {&aoa, &prevalence}) {
    for (const auto& [w, v] : *norm) {
      if (!std::isfinite(v)) throw ValidationError("non-finite norm for '" + w + "'");
    }
  }
  for (const auto& [w, v] : prevalence_categories) {
    if (v.size() != kPrevalenceCategories) {
      throw ValidationError("prevalence categories for '" + w + "' have " +
                            std::to_string(v.size()) + " columns, expected 35");
    }
    for (double x : v) {
      if (!std::isfinite(x)) throw ValidationError("non-finite category norm for '" + w + "'");
    }
  }
}

namespace {

std::ifstream open(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ValidationError("missing resource file " + p.string());
  return in;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

template <typename Fn>
void for_each_line(const std::filesystem::path& p, Fn&& fn) {
  auto in = open(p);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(line, line_no);
  }
}

double field_value(const std::string& text, const std::filesystem::path& p,
                   std::size_t line_no) {
  try {
    return csv::parse_double(text, line_no);
  } catch (const ParseError&) {
    throw ParseError(p.string() + ":" + std::to_string(line_no) +
                         ": bad number '" + text + "'",
                     line_no);
  }
}

}  // namespace

ResourceBundle ResourceBundle::load(const std::filesystem::path& dir) {
  ResourceBundle b;
  for (Register r : kRegisters) {
    for (int n = 1; n <= kMaxNgram; ++n) {
      const auto path = dir / "ngrams" /
                        (std::string(register_code(r)) + "_" + std::to_string(n) + ".tsv");
      auto& t = b.table(r, n);
      for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        const auto f = split_tabs(line);
        if (f.size() != 2) {
          throw ParseError(path.string() + ":" + std::to_string(line_no) +
                               ": expected ngram<TAB>frequency",
                           line_no);
        }
        t[to_lower(f[0])] += field_value(f[1], path, line_no);
      });
    }
  }
  for (std::string_view name : lists::kAll) {
    const auto path = dir / "lists" / (std::string(name) + ".txt");
    auto& list = b.word_lists[std::string(name)];
    for_each_line(path, [&](const std::string& line, std::size_t) {
      list.insert(to_lower(line));
    });
  }
  auto load_scalar = [&](const char* file, auto& norm) {
    const auto path = dir / "norms" / file;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
      const auto f = split_tabs(line);
      if (f.size() != 2) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected word<TAB>value",
                         line_no);
      }
      norm[to_lower(f[0])] = field_value(f[1], path, line_no);
    });
  };
  load_scalar("aoa.tsv", b.aoa);
  load_scalar("prevalence.tsv", b.prevalence);
  {
    const auto path = dir / "norms" / "prevalence_categories.tsv";
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
      const auto f = split_tabs(line);
      std::vector<double> v;
      for (std::size_t i = 1; i < f.size(); ++i) v.push_back(field_value(f[i], path, line_no));
      b.prevalence_categories[to_lower(f[0])] = std::move(v);
    });
  }
  b.validate();
  return b;
}

}  // namespace gazelab
