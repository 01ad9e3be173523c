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

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gazelab/corpus.hpp"
#include "gazelab/resources.hpp"
#include "gazelab/tree.hpp"

namespace gazelab::testing {

struct TokenSpec {
  std::string form;
  std::string pos;
  std::string lemma = {};
  int syllables = 0;
};

/// Sentence with an explicit parse.
inline AnnotatedSentence sentence(const std::string& id, std::vector<TokenSpec> tokens,
                                  const std::string& ptb) {
  AnnotatedSentence s;
  s.id = id;
  s.doc_id = "doc";
  for (auto& t : tokens) {
    s.tokens.push_back(make_token(t.form, t.lemma, t.pos, t.syllables));
  }
  s.parse = parse_ptb(ptb);
  validate(s);
  return s;
}

/// Sentence under a flat (S (POS form) ...) parse.
inline AnnotatedSentence flat_sentence(const std::string& id,
                                       const std::vector<std::string>& forms,
                                       const std::string& pos = "NN") {
  std::vector<TokenSpec> tokens;
  std::string ptb = "(ROOT (S";
  for (const auto& f : forms) {
    const bool punct = f == "." || f == ",";
    tokens.push_back({f, punct ? f : pos});
    ptb += " (" + (punct ? f : pos) + " " + f + ")";
  }
  ptb += "))";
  return sentence(id, std::move(tokens), ptb);
}

/// "(S (NP (DT The) (NN cat)) (VP (VBD sat)))"
inline AnnotatedSentence cat_sat() {
  return sentence("cat-sat", {{"The", "DT", "the"}, {"cat", "NN", "cat"}, {"sat", "VBD", "sit"}},
                  "(S (NP (DT The) (NN cat)) (VP (VBD sat)))");
}

}  // namespace gazelab::testing
