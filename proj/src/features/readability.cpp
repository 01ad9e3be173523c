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

#include "gazelab/features.hpp"

namespace gazelab {

namespace {

bool familiar(const WordList& list, const Token& t) {
  if (t.char_len == 0) return true;  // numbers
  return list.count(to_lower(t.form)) > 0 ||
         (!t.lemma.empty() && list.count(to_lower(t.lemma)) > 0);
}

}  // namespace

ReadabilityCounts readability_counts(const AnnotatedSentence& s,
                                     const ResourceBundle& r) {
  ReadabilityCounts c;
  const WordList& dale = r.list(lists::kDaleChall);
  const WordList& spache = r.list(lists::kSpache);
  for (const auto& t : s.tokens) {
    if (!t.is_word()) continue;
    c.words += 1;
    c.letters += t.char_len;
    c.syllables += t.syllables;
    c.polysyllables += t.syllables >= 3;
    c.monosyllables += t.syllables == 1;
    c.long_words += t.char_len >= 7;
    c.dale_chall_difficult += !familiar(dale, t);
    c.spache_unfamiliar += !familiar(spache, t);
  }
  return c;
}

// Published constants; evaluated on a single sentence, ignoring the minimum
// sample sizes some formulas recommend (SMOG: 30 sentences, FORCAST: 150
// words; both are rescaled from the sentence's own counts).
std::array<double, 14> readability_scores(const ReadabilityCounts& c) {
  if (c.words == 0 || c.sentences == 0) return {};
  const double w = c.words;
  const double words_per_sentence = w / c.sentences;
  const double syllables_per_word = c.syllables / w;
  const double dale_pct = 100.0 * c.dale_chall_difficult / w;
  const double spache_pct = 100.0 * c.spache_unfamiliar / w;

  const double ari = 4.71 * (c.letters / w) + 0.5 * words_per_sentence - 21.43;
  const double coleman_liau =
      0.0588 * (100.0 * c.letters / w) - 0.296 * (100.0 * c.sentences / w) - 15.8;
  double dale_chall = 0.1579 * dale_pct + 0.0496 * words_per_sentence;
  if (dale_pct > 5.0) dale_chall += 3.6365;
  const double fk_grade = 0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59;
  const double fk_ease = 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word;
  const double fry_x = 100.0 * c.syllables / w;
  const double fry_y = 100.0 * c.sentences / w;
  const double lix = words_per_sentence + 100.0 * c.long_words / w;
  const double smog = 1.0430 * std::sqrt(c.polysyllables * 30.0 / c.sentences) + 3.1291;
  const double fog = 0.4 * (words_per_sentence + 100.0 * c.polysyllables / w);
  const double dale_psk = 0.0596 * words_per_sentence + 0.1155 * dale_pct + 3.2672;
  const double forcast = 20.0 - (c.monosyllables * 150.0 / w) / 10.0;
  const double rix = c.long_words / c.sentences;
  const double spache = 0.121 * words_per_sentence + 0.082 * spache_pct + 0.659;
  return {ari,   coleman_liau, dale_chall, fk_grade, fk_ease,  fry_x,   fry_y,
          lix,   smog,         fog,        dale_psk, forcast,  rix,     spache};
}

std::array<double, 14> readability_features(const AnnotatedSentence& s,
                                            const ResourceBundle& r) {
  return readability_scores(readability_counts(s, r));
}

}  // namespace gazelab
