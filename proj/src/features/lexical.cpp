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

namespace {

bool listed(const WordList& list, const Token& t) {
  if (list.empty()) return false;
  return list.count(to_lower(t.form)) > 0 ||
         (!t.lemma.empty() && list.count(to_lower(t.lemma)) > 0);
}

// Lexical words: nouns, adjectives, adverbs and verbs other than the
// auxiliaries "be" and "have".
bool is_lexical(const Token& t) {
  const std::string& pos = t.pos;
  if (pos.rfind("NN", 0) == 0 || pos.rfind("JJ", 0) == 0 || pos.rfind("RB", 0) == 0) {
    return true;
  }
  if (pos.rfind("VB", 0) != 0) return false;
  static const std::unordered_set<std::string> kAux = {
      "be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m",
      "have", "has", "had", "having", "'ve", "'d"};
  const std::string key = to_lower(t.lemma.empty() ? t.form : t.lemma);
  return kAux.count(key) == 0;
}

std::size_t words_per_entry(const std::string& entry) {
  std::size_t n = 1;
  for (char c : entry) n += (c == ' ');
  return n;
}

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

std::array<double, 14> lexical_features(const AnnotatedSentence& s,
                                        const ResourceBundle& r) {
  std::vector<const Token*> words;
  for (const auto& t : s.tokens) {
    if (t.is_word()) words.push_back(&t);
  }
  const double n = static_cast<double>(words.size());

  double letters = 0, syllables = 0, lexical = 0;
  double anc_off = 0, bnc_off = 0, ngsl_off = 0, nawl_on = 0, non_stop = 0;
  std::unordered_set<std::string> types;
  std::vector<std::string> lowered;
  for (const Token* t : words) {
    letters += t->char_len;
    syllables += t->syllables;
    lexical += is_lexical(*t);
    lowered.push_back(to_lower(t->form));
    types.insert(lowered.back());
    anc_off += !listed(r.list(lists::kAnc), *t);
    bnc_off += !listed(r.list(lists::kBnc), *t);
    ngsl_off += !listed(r.list(lists::kNgsl), *t);
    nawl_on += listed(r.list(lists::kNawl), *t);
    non_stop += !listed(r.list(lists::kStopwords), *t);
  }

  // Academic formulas are multi-word sequences; count every occurrence.
  const WordList& afl = r.list(lists::kAfl);
  std::size_t longest = 0;
  for (const auto& e : afl) longest = std::max(longest, words_per_entry(e));
  double formulas = 0;
  for (std::size_t i = 0; i < lowered.size(); ++i) {
    std::string seq;
    for (std::size_t len = 1; len <= longest && i + len <= lowered.size(); ++len) {
      if (len > 1) seq += ' ';
      seq += lowered[i + len - 1];
      formulas += afl.count(seq);
    }
  }

  const double ndw = static_cast<double>(types.size());
  const double root_n = std::sqrt(n);
  const double root_2n = std::sqrt(2.0 * n);
  return {
      ratio(letters, n),       // MLWc
      ratio(syllables, n),     // MLWs
      ratio(lexical, n),       // LD
      ndw,                     // NDW
      ratio(ndw, root_2n),     // CNDW
      ratio(ndw, n),           // TTR
      ratio(ndw, root_2n),     // cTTR
      ratio(ndw, root_n),      // rTTR
      ratio(formulas, n),      // AFL
      ratio(anc_off, n),       // ANC
      ratio(bnc_off, n),       // BNC
      ratio(nawl_on, n),       // NAWL
      ratio(ngsl_off, n),      // NGSL
      ratio(non_stop, n),      // NonStopWordsRate
  };
}

}  // namespace gazelab
