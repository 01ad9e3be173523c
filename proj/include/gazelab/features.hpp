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

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazelab/corpus.hpp"
#include "gazelab/resources.hpp"

namespace gazelab {

enum class FeatureGroup {
  kSyntactic,
  kLexical,
  kNgram,
  kReadability,
  kPsycholinguistic
};

inline constexpr std::array<FeatureGroup, 5> kFeatureGroups = {
    FeatureGroup::kSyntactic, FeatureGroup::kLexical, FeatureGroup::kNgram,
    FeatureGroup::kReadability, FeatureGroup::kPsycholinguistic};

inline constexpr std::size_t kFeatureCount = 107;

struct GroupSlice {
  std::size_t offset;
  std::size_t width;
};

/// syntactic 0..16, lexical 16..30, ngram 30..55, readability 55..69,
/// psycholinguistic 69..107.
GroupSlice group_slice(FeatureGroup g);
std::string_view group_name(FeatureGroup g);
FeatureGroup group_of(std::size_t feature_index);

/// Canonical feature names, index-aligned with FeatureVector.
const std::vector<std::string>& feature_names();

struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  std::span<double> group(FeatureGroup g) {
    const auto s = group_slice(g);
    return std::span<double>(values).subspan(s.offset, s.width);
  }
  std::span<const double> group(FeatureGroup g) const {
    const auto s = group_slice(g);
    return std::span<const double>(values).subspan(s.offset, s.width);
  }
};

// ---------------------------------------------------------------- syntactic

/// Unit counts behind the syntactic ratios. Units are found with the tree
/// patterns listed in syntactic.cpp (a transcription of the L2 Syntactic
/// Complexity Analyzer definitions restricted to the supported relations).
struct SyntacticCounts {
  double words = 0;
  double sentences = 1;
  double clauses = 0;
  double t_units = 0;
  double dependent_clauses = 0;
  double complex_t_units = 0;
  double coordinate_phrases = 0;
  double complex_nominals = 0;
  double verb_phrases = 0;
  double np_premod_words = 0;   // mean over noun phrases with a head
  double np_postmod_words = 0;  // mean over noun phrases with a head
};

SyntacticCounts syntactic_counts(const AnnotatedSentence& s);

/// MLC, MLS, MLT, C/S, C/T, DepC/C, T/S, CompT/T, DepC/T, CoordP/C,
/// CoordP/T, NP.PostMod, NP.PreMod, CompN/C, CompN/T, VP/T. Ratios with a
/// zero denominator are 0.
std::array<double, 16> syntactic_features(const AnnotatedSentence& s);

// ------------------------------------------------------------------ lexical

/// MLWc, MLWs, LD, NDW, CNDW, TTR, cTTR, rTTR, AFL, ANC, BNC, NAWL, NGSL,
/// NonStopWordsRate.
std::array<double, 14> lexical_features(const AnnotatedSentence& s,
                                        const ResourceBundle& r);

// ------------------------------------------------------------------- n-gram

/// Lowercased forms of the sentence's word tokens (punctuation dropped).
std::vector<std::string> ngram_words(const AnnotatedSentence& s);

/// Register-based n-gram score |C| * ln(prod freq(c)) / |U|, where A is the
/// list of the sentence's n-grams, C the entries of A found in the table
/// (duplicates kept), and U the distinct n-grams of A. 0 when C is empty.
double ngram_norm(std::span<const std::string> words, int n,
                  const NgramTable& table);
double ngram_norm(const AnnotatedSentence& s, int n, Register reg,
                  const ResourceBundle& r);

/// 25 scores: registers in kRegisters order, n = 1..5 within each.
std::array<double, 25> ngram_features(const AnnotatedSentence& s,
                                      const ResourceBundle& r);

// -------------------------------------------------------------- readability

struct ReadabilityCounts {
  double words = 0;
  double sentences = 1;
  double letters = 0;
  double syllables = 0;
  double polysyllables = 0;    // >= 3 syllables
  double long_words = 0;       // >= 7 letters
  double monosyllables = 0;
  double dale_chall_difficult = 0;  // not on the Dale-Chall list
  double spache_unfamiliar = 0;     // not on the Spache list
};

ReadabilityCounts readability_counts(const AnnotatedSentence& s,
                                     const ResourceBundle& r);

/// The 14 formulas evaluated on raw counts. Order: ARI, ColemanLiau,
/// DaleChall, FleschKincaidGradeLevel, FleschKincaidReadingEase, Fry-x,
/// Fry-y, Lix, SMOG, GunningFog, DaleChallPSK, FORCAST, Rix, Spache.
std::array<double, 14> readability_scores(const ReadabilityCounts& c);

std::array<double, 14> readability_features(const AnnotatedSentence& s,
                                            const ResourceBundle& r);

// --------------------------------------------------------- psycholinguistic

struct NormCoverage {
  std::size_t words = 0;
  std::size_t aoa = 0;
  std::size_t prevalence = 0;
  std::size_t categories = 0;

  NormCoverage& operator+=(const NormCoverage& o) {
    words += o.words;
    aoa += o.aoa;
    prevalence += o.prevalence;
    categories += o.categories;
    return *this;
  }
};

/// WordPrevalence, Prevalence.01..35, AoA-mean, AoA-max; each averaged over
/// the words the corresponding norm covers, 0 when none is covered.
std::array<double, 38> psycholinguistic_features(const AnnotatedSentence& s,
                                                 const ResourceBundle& r,
                                                 NormCoverage* coverage = nullptr);

// ------------------------------------------------------------------ combined

FeatureVector extract(const AnnotatedSentence& s, const ResourceBundle& r,
                      NormCoverage* coverage = nullptr);

}  // namespace gazelab
