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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace gazelab {

/// COCA sub-corpora, in feature-vector order.
enum class Register { kSpoken, kFiction, kMagazine, kNews, kAcademic };

inline constexpr std::array<Register, 5> kRegisters = {
    Register::kSpoken, Register::kFiction, Register::kMagazine, Register::kNews,
    Register::kAcademic};

inline constexpr int kMaxNgram = 5;
inline constexpr std::size_t kPrevalenceCategories = 35;

/// File-name code: spok, fic, mag, news, acad.
std::string_view register_code(Register r);

/// Lowercased, space-joined n-gram -> corpus frequency (>= 1).
using NgramTable = std::unordered_map<std::string, double>;
using WordList = std::unordered_set<std::string>;

/// Word-list names the extractors look up.
namespace lists {
inline constexpr std::string_view kNgsl = "ngsl";
inline constexpr std::string_view kNawl = "nawl";
inline constexpr std::string_view kAfl = "afl";
inline constexpr std::string_view kAnc = "anc2000";
inline constexpr std::string_view kBnc = "bnc2000";
inline constexpr std::string_view kStopwords = "stopwords";
inline constexpr std::string_view kDaleChall = "dale_chall";
inline constexpr std::string_view kSpache = "spache";
inline constexpr std::array<std::string_view, 8> kAll = {
    kNgsl, kNawl, kAfl, kAnc, kBnc, kStopwords, kDaleChall, kSpache};
}  // namespace lists

/// Immutable lookup resources shared by all extractors.
///
/// On-disk layout below a resource directory:
///   ngrams/<register>_<n>.tsv        ngram<TAB>frequency  (25 files)
///   lists/<name>.txt                 one entry per line   (see lists::kAll)
///   norms/aoa.tsv                    word<TAB>age
///   norms/prevalence.tsv             word<TAB>prevalence
///   norms/prevalence_categories.tsv  word<TAB>v1<TAB>...<TAB>v35
/// Keys are lowercased on load; case variants of an n-gram are merged by
/// summing their frequencies.
struct ResourceBundle {
  std::array<std::array<NgramTable, kMaxNgram>, kRegisters.size()> ngrams;
  std::map<std::string, WordList, std::less<>> word_lists;
  std::unordered_map<std::string, double> aoa;
  std::unordered_map<std::string, double> prevalence;
  std::unordered_map<std::string, std::vector<double>> prevalence_categories;

  NgramTable& table(Register r, int n);
  const NgramTable& table(Register r, int n) const;

  /// Named list; an absent list behaves as empty.
  const WordList& list(std::string_view name) const;

  /// Throws ValidationError if any frequency is < 1, any norm is not
  /// finite, or a category vector does not have 35 entries.
  void validate() const;

  static ResourceBundle load(const std::filesystem::path& dir);
};

std::string to_lower(std::string_view s);

}  // namespace gazelab
