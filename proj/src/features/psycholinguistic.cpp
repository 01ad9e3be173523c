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

#include <algorithm>

#include "gazelab/features.hpp"

namespace gazelab {

namespace {

template <typename Map>
auto lookup(const Map& norm, const Token& t) -> decltype(&norm.begin()->second) {
  if (auto it = norm.find(to_lower(t.form)); it != norm.end()) return &it->second;
  if (!t.lemma.empty()) {
    if (auto it = norm.find(to_lower(t.lemma)); it != norm.end()) return &it->second;
  }
  return nullptr;
}

}  // namespace

std::array<double, 38> psycholinguistic_features(const AnnotatedSentence& s,
                                                 const ResourceBundle& r,
                                                 NormCoverage* coverage) {
  NormCoverage cov;
  double prevalence_sum = 0, aoa_sum = 0, aoa_max = 0;
  std::array<double, kPrevalenceCategories> category_sum{};
  for (const auto& t : s.tokens) {
    if (!t.is_word()) continue;
    ++cov.words;
    if (const double* p = lookup(r.prevalence, t)) {
      prevalence_sum += *p;
      ++cov.prevalence;
    }
    if (const double* a = lookup(r.aoa, t)) {
      aoa_max = cov.aoa == 0 ? *a : std::max(aoa_max, *a);
      aoa_sum += *a;
      ++cov.aoa;
    }
    if (const auto* v = lookup(r.prevalence_categories, t)) {
      for (std::size_t j = 0; j < kPrevalenceCategories; ++j) category_sum[j] += (*v)[j];
      ++cov.categories;
    }
  }
  std::array<double, 38> out{};
  if (cov.prevalence) out[0] = prevalence_sum / static_cast<double>(cov.prevalence);
  if (cov.categories) {
    for (std::size_t j = 0; j < kPrevalenceCategories; ++j) {
      out[1 + j] = category_sum[j] / static_cast<double>(cov.categories);
    }
  }
  if (cov.aoa) {
    out[36] = aoa_sum / static_cast<double>(cov.aoa);
    out[37] = aoa_max;
  }
  if (coverage) *coverage += cov;
  return out;
}

}  // namespace gazelab
