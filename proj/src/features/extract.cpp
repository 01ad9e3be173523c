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
#include <cstdio>

#include "gazelab/error.hpp"
#include "gazelab/features.hpp"

namespace gazelab {

GroupSlice group_slice(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::kSyntactic: return {0, 16};
    case FeatureGroup::kLexical: return {16, 14};
    case FeatureGroup::kNgram: return {30, 25};
    case FeatureGroup::kReadability: return {55, 14};
    case FeatureGroup::kPsycholinguistic: return {69, 38};
  }
  return {0, 0};
}

std::string_view group_name(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::kSyntactic: return "syntactic";
    case FeatureGroup::kLexical: return "lexical";
    case FeatureGroup::kNgram: return "ngram";
    case FeatureGroup::kReadability: return "readability";
    case FeatureGroup::kPsycholinguistic: return "psycholinguistic";
  }
  return "?";
}

FeatureGroup group_of(std::size_t feature_index) {
  for (FeatureGroup g : kFeatureGroups) {
    const auto s = group_slice(g);
    if (feature_index >= s.offset && feature_index < s.offset + s.width) return g;
  }
  throw ShapeError("feature index " + std::to_string(feature_index) + " out of range");
}

namespace {

std::vector<std::string> build_names() {
  std::vector<std::string> names = {
      "MLC", "MLS", "MLT", "C/S", "C/T", "DepC/C", "T/S", "CompT/T", "DepC/T",
      "CoordP/C", "CoordP/T", "NP.PostMod", "NP.PreMod", "CompN/C", "CompN/T", "VP/T",
      "MLWc", "MLWs", "LD", "NDW", "CNDW", "TTR", "cTTR", "rTTR", "AFL", "ANC", "BNC",
      "NAWL", "NGSL", "NonStopWordsRate"};
  for (Register r : kRegisters) {
    for (int n = 1; n <= kMaxNgram; ++n) {
      names.push_back("ngram." + std::string(register_code(r)) + "." + std::to_string(n));
    }
  }
  for (const char* n : {"ARI", "ColemanLiau", "DaleChall", "FleschKincaidGradeLevel",
                        "FleschKincaidReadingEase", "Fry-x", "Fry-y", "Lix", "SMOG",
                        "GunningFog", "DaleChallPSK", "FORCAST", "Rix", "Spache"}) {
    names.emplace_back(n);
  }
  names.emplace_back("WordPrevalence");
  for (std::size_t j = 1; j <= kPrevalenceCategories; ++j) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "Prevalence.%02zu", j);
    names.emplace_back(buf);
  }
  names.emplace_back("AoA-mean");
  names.emplace_back("AoA-max");
  return names;
}

template <std::size_t N>
void place(FeatureVector& fv, FeatureGroup g, const std::array<double, N>& values) {
  auto slot = fv.group(g);
  if (slot.size() != N) throw ShapeError("feature group width mismatch");
  std::copy(values.begin(), values.end(), slot.begin());
}

}  // namespace

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = build_names();
  return names;
}

FeatureVector extract(const AnnotatedSentence& s, const ResourceBundle& r,
                      NormCoverage* coverage) {
  FeatureVector fv;
  place(fv, FeatureGroup::kSyntactic, syntactic_features(s));
  place(fv, FeatureGroup::kLexical, lexical_features(s, r));
  place(fv, FeatureGroup::kNgram, ngram_features(s, r));
  place(fv, FeatureGroup::kReadability, readability_features(s, r));
  place(fv, FeatureGroup::kPsycholinguistic, psycholinguistic_features(s, r, coverage));
  return fv;
}

}  // namespace gazelab
