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

#include <cmath>
#include <unordered_set>

#include "gazelab/features.hpp"

namespace gazelab {

std::vector<std::string> ngram_words(const AnnotatedSentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) {
    if (t.is_word()) out.push_back(to_lower(t.form));
  }
  return out;
}

double ngram_norm(std::span<const std::string> words, int n,
                  const NgramTable& table) {
  if (n < 1 || words.size() < static_cast<std::size_t>(n)) return 0.0;
  std::unordered_set<std::string> unique;
  double listed = 0;
  double log_product = 0;  // ln of the product, accumulated as a sum
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    std::string gram = words[i];
    for (int k = 1; k < n; ++k) {
      gram += ' ';
      gram += words[i + k];
    }
    if (const auto it = table.find(gram); it != table.end()) {
      listed += 1;
      log_product += std::log(it->second);
    }
    unique.insert(std::move(gram));
  }
  if (listed == 0) return 0.0;
  return listed * log_product / static_cast<double>(unique.size());
}

double ngram_norm(const AnnotatedSentence& s, int n, Register reg,
                  const ResourceBundle& r) {
  const auto words = ngram_words(s);
  return ngram_norm(words, n, r.table(reg, n));
}

std::array<double, 25> ngram_features(const AnnotatedSentence& s,
                                      const ResourceBundle& r) {
  const auto words = ngram_words(s);
  std::array<double, 25> out{};
  std::size_t k = 0;
  for (Register reg : kRegisters) {
    for (int n = 1; n <= kMaxNgram; ++n) out[k++] = ngram_norm(words, n, r.table(reg, n));
  }
  return out;
}

}  // namespace gazelab
