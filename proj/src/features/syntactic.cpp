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
#include <regex>

#include "gazelab/features.hpp"
#include "gazelab/tree_pattern.hpp"

namespace gazelab {

namespace {

// Unit definitions after Lu (2010). Head relations (<#) are replaced by
// immediate dominance, and disjunctions of relations are split into
// separate patterns whose matches are unioned.
const char* const kClause[] = {
    "S|SINV|SQ < (VP < MD|VBZ|VBP|VBD)",
    "S|SINV|SQ < MD|VBZ|VBP|VBD",
    "S|SINV|SQ < (VP < CC < (VP < MD|VBZ|VBP|VBD))",
    "S > ROOT < (VP < VB) !< NP",  // imperative
};
const char* const kTUnit[] = {
    "S|SBARQ|SINV|SQ > ROOT",
    "S|SBARQ|SINV|SQ $-- S|SBARQ|SINV|SQ !>> SBAR|VP",
};
const char* const kDependentClause[] = {
    "SBAR < (S|SQ|SINV < (VP < MD|VBZ|VBP|VBD))",
    "SBAR < (S|SQ|SINV < MD|VBZ|VBP|VBD)",
    "SBAR < (S|SQ|SINV < (VP < CC < (VP < MD|VBZ|VBP|VBD)))",
};
const char* const kCoordinatePhrase[] = {
    "ADJP|ADVP|NP|VP < CC",
};
const char* const kComplexNominal[] = {
    "NP !> NP << JJ|POS|PP|S|VBG",
    "SBAR > VP < WHNP",
    "SBAR > VP < (IN < that|That|for|For)",
    "SBAR $++ VP < WHNP",
    "SBAR $++ VP < (IN < that|That|for|For)",
    "S < (VP < VBG|TO) $++ VP",
};
const char* const kVerbPhrase[] = {
    "VP > S|SINV|SQ",
    "MD|VBZ|VBP|VBD > (SQ !< VP)",
};

template <std::size_t N>
std::vector<TreePattern> compile(const char* const (&sources)[N]) {
  std::vector<TreePattern> out;
  for (const char* s : sources) out.push_back(TreePattern::parse(s));
  return out;
}

struct Patterns {
  std::vector<TreePattern> clause = compile(kClause);
  std::vector<TreePattern> t_unit = compile(kTUnit);
  std::vector<TreePattern> dependent_clause = compile(kDependentClause);
  std::vector<TreePattern> coordinate_phrase = compile(kCoordinatePhrase);
  std::vector<TreePattern> complex_nominal = compile(kComplexNominal);
  std::vector<TreePattern> verb_phrase = compile(kVerbPhrase);
};

const Patterns& patterns() {
  static const Patterns p;
  return p;
}

std::vector<std::size_t> union_matches(const std::vector<TreePattern>& set,
                                       const TreeIndex& index) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (const auto& p : set) {
      if (matches_at(p, index, i)) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

ParseTree rooted(const ParseTree& t) {
  if (t.label == "ROOT") return t;
  if (t.label.empty()) {
    ParseTree r = t;
    r.label = "ROOT";
    return r;
  }
  return ParseTree{"ROOT", {t}};
}

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

bool is_nominal_head(const std::string& label) {
  static const std::regex kHead("^(NN|NNS|NNP|NNPS|PRP|CD)$");
  return std::regex_match(label, kHead);
}

}  // namespace

SyntacticCounts syntactic_counts(const AnnotatedSentence& s) {
  const ParseTree tree = rooted(s.parse);
  const TreeIndex index(tree);
  const Patterns& p = patterns();

  // word_prefix[k] = number of word tokens among the first k leaves
  std::vector<std::size_t> word_prefix(s.tokens.size() + 1, 0);
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    word_prefix[i + 1] = word_prefix[i] + s.tokens[i].is_word();
  }
  auto words_in = [&](std::size_t node) -> double {
    const auto& n = index[node];
    return static_cast<double>(word_prefix[n.last_leaf + 1] - word_prefix[n.first_leaf]);
  };

  SyntacticCounts c;
  c.words = static_cast<double>(s.word_count());
  c.clauses = static_cast<double>(union_matches(p.clause, index).size());
  const auto t_units = union_matches(p.t_unit, index);
  const auto dependent = union_matches(p.dependent_clause, index);
  c.t_units = static_cast<double>(t_units.size());
  c.dependent_clauses = static_cast<double>(dependent.size());
  for (std::size_t t : t_units) {
    const bool complex = std::any_of(dependent.begin(), dependent.end(),
                                     [&](std::size_t d) { return index.dominates(t, d); });
    c.complex_t_units += complex;
  }
  c.coordinate_phrases = static_cast<double>(union_matches(p.coordinate_phrase, index).size());
  c.complex_nominals = static_cast<double>(union_matches(p.complex_nominal, index).size());
  c.verb_phrases = static_cast<double>(union_matches(p.verb_phrase, index).size());

  // Noun-phrase modifiers: the head is the rightmost nominal preterminal
  // child; without one, a leading NP child heads the phrase and everything
  // after it is post-modification.
  double noun_phrases = 0, pre = 0, post = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const ParseTree& np = *index[i].tree;
    if (np.label != "NP" || np.is_leaf()) continue;
    std::vector<std::size_t> kids;
    for (std::size_t j = i + 1; j < index[i].end; j = index[j].end) kids.push_back(j);
    std::ptrdiff_t head = -1;
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const ParseTree& child = *index[kids[k]].tree;
      if (child.is_preterminal() && is_nominal_head(child.label)) {
        head = static_cast<std::ptrdiff_t>(k);
      }
    }
    if (head < 0 && index[kids.front()].tree->label == "NP") head = 0;
    if (head < 0) continue;
    noun_phrases += 1;
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const auto kk = static_cast<std::ptrdiff_t>(k);
      if (kk < head) pre += words_in(kids[k]);
      if (kk > head) post += words_in(kids[k]);
    }
  }
  c.np_premod_words = ratio(pre, noun_phrases);
  c.np_postmod_words = ratio(post, noun_phrases);
  return c;
}

std::array<double, 16> syntactic_features(const AnnotatedSentence& s) {
  const SyntacticCounts c = syntactic_counts(s);
  return {
      ratio(c.words, c.clauses),                   // MLC
      ratio(c.words, c.sentences),                 // MLS
      ratio(c.words, c.t_units),                   // MLT
      ratio(c.clauses, c.sentences),               // C/S
      ratio(c.clauses, c.t_units),                 // C/T
      ratio(c.dependent_clauses, c.clauses),       // DepC/C
      ratio(c.t_units, c.sentences),               // T/S
      ratio(c.complex_t_units, c.t_units),         // CompT/T
      ratio(c.dependent_clauses, c.t_units),       // DepC/T
      ratio(c.coordinate_phrases, c.clauses),      // CoordP/C
      ratio(c.coordinate_phrases, c.t_units),      // CoordP/T
      c.np_postmod_words,                          // NP.PostMod
      c.np_premod_words,                           // NP.PreMod
      ratio(c.complex_nominals, c.clauses),        // CompN/C
      ratio(c.complex_nominals, c.t_units),        // CompN/T
      ratio(c.verb_phrases, c.t_units),            // VP/T
  };
}

}  // namespace gazelab
