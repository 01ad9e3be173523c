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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "gazelab/error.hpp"
#include "gazelab/features.hpp"
#include "gazelab/random.hpp"

namespace gazelab {
namespace {

using testing::TokenSpec;

AnnotatedSentence flat(const std::string& id, std::vector<TokenSpec> tokens) {
  std::string ptb = "(ROOT (S";
  for (const auto& t : tokens) ptb += " (" + t.pos + " " + t.form + ")";
  ptb += "))";
  return testing::sentence(id, std::move(tokens), ptb);
}

AnnotatedSentence the_cat_sat_on_the_mat() {
  return flat("mat", {{"the", "DT", "the"}, {"cat", "NN", "cat"}, {"sat", "VBD", "sit"},
                      {"on", "IN", "on"}, {"the", "DT", "the"}, {"mat", "NN", "mat"}});
}

std::string fixture_dir() { return std::string(GAZELAB_TEST_DATA) + "/resources"; }

// ------------------------------------------------------------------ layout

TEST(Layout, GroupWidthsAndNames) {
  const auto& names = feature_names();
  ASSERT_EQ(names.size(), kFeatureCount);
  std::size_t offset = 0;
  const std::size_t widths[] = {16, 14, 25, 14, 38};
  for (std::size_t i = 0; i < kFeatureGroups.size(); ++i) {
    const auto s = group_slice(kFeatureGroups[i]);
    EXPECT_EQ(s.offset, offset);
    EXPECT_EQ(s.width, widths[i]);
    offset += s.width;
  }
  EXPECT_EQ(offset, kFeatureCount);
  EXPECT_EQ(names[0], "MLC");
  EXPECT_EQ(names[15], "VP/T");
  EXPECT_EQ(names[16], "MLWc");
  EXPECT_EQ(names[29], "NonStopWordsRate");
  EXPECT_EQ(names[30], "ngram.spok.1");
  EXPECT_EQ(names[54], "ngram.acad.5");
  EXPECT_EQ(names[55], "ARI");
  EXPECT_EQ(names[68], "Spache");
  EXPECT_EQ(names[69], "WordPrevalence");
  EXPECT_EQ(names[70], "Prevalence.01");
  EXPECT_EQ(names[104], "Prevalence.35");
  EXPECT_EQ(names[105], "AoA-mean");
  EXPECT_EQ(names[106], "AoA-max");
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  EXPECT_EQ(group_of(0), FeatureGroup::kSyntactic);
  EXPECT_EQ(group_of(30), FeatureGroup::kNgram);
  EXPECT_EQ(group_of(106), FeatureGroup::kPsycholinguistic);
}

// --------------------------------------------------------------- syntactic

TEST(Syntactic, CatSat) {
  const auto f = syntactic_features(testing::cat_sat());
  EXPECT_DOUBLE_EQ(f[0], 3.0);  // MLC
  EXPECT_DOUBLE_EQ(f[1], 3.0);  // MLS
  EXPECT_DOUBLE_EQ(f[3], 1.0);  // C/S
  EXPECT_DOUBLE_EQ(f[6], 1.0);  // T/S
  EXPECT_DOUBLE_EQ(f[15], 1.0);  // VP/T
}

TEST(Syntactic, CoordinatedMainClauses) {
  const auto s = testing::sentence(
      "coord", {{"I", "PRP"}, {"ran", "VBD"}, {"and", "CC"}, {"she", "PRP"}, {"hid", "VBD"}},
      "(ROOT (S (S (NP (PRP I)) (VP (VBD ran))) (CC and) (S (NP (PRP she)) (VP (VBD hid)))))");
  const auto c = syntactic_counts(s);
  EXPECT_EQ(c.t_units, 2);
  EXPECT_EQ(c.clauses, 2);
  const auto f = syntactic_features(s);
  EXPECT_DOUBLE_EQ(f[6], 2.0);  // T/S
  EXPECT_DOUBLE_EQ(f[0], 2.5);  // MLC
}

TEST(Syntactic, SubordinateClause) {
  const auto s = testing::sentence(
      "sub", {{"He", "PRP"}, {"said", "VBD"}, {"that", "IN"}, {"she", "PRP"}, {"left", "VBD"}},
      "(ROOT (S (NP (PRP He)) (VP (VBD said) (SBAR (IN that) (S (NP (PRP she)) (VP (VBD left)))))))");
  const auto c = syntactic_counts(s);
  EXPECT_EQ(c.clauses, 2);
  EXPECT_EQ(c.t_units, 1);
  EXPECT_EQ(c.dependent_clauses, 1);
  EXPECT_EQ(c.complex_t_units, 1);
  EXPECT_EQ(c.verb_phrases, 2);
  const std::array<double, 16> expected = {2.5, 5, 5, 2, 2, 0.5, 1, 1, 1, 0, 0, 0, 0, 0.5, 1, 2};
  const auto f = syntactic_features(s);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_DOUBLE_EQ(f[i], expected[i]) << i;
}

TEST(Syntactic, NounPhraseModifiers) {
  const auto s = testing::sentence(
      "np",
      {{"the", "DT"}, {"big", "JJ"}, {"cat", "NN"}, {"on", "IN"}, {"the", "DT"}, {"mat", "NN"},
       {"sat", "VBD"}},
      "(ROOT (S (NP (NP (DT the) (JJ big) (NN cat)) (PP (IN on) (NP (DT the) (NN mat)))) "
      "(VP (VBD sat))))");
  const auto c = syntactic_counts(s);
  EXPECT_EQ(c.clauses, 1);
  EXPECT_EQ(c.complex_nominals, 1);
  const auto f = syntactic_features(s);
  EXPECT_DOUBLE_EQ(f[11], 1.0);  // NP.PostMod
  EXPECT_DOUBLE_EQ(f[12], 1.0);  // NP.PreMod
}

TEST(Syntactic, NoClauseMeansZeroPerClauseRatios) {
  const auto s = testing::sentence("frag", {{"cats", "NNS"}},
                                   "(ROOT (FRAG (NP (NNS cats))))");
  const auto f = syntactic_features(s);
  EXPECT_EQ(syntactic_counts(s).clauses, 0);
  for (std::size_t i : {0, 5, 9, 13}) EXPECT_EQ(f[i], 0.0) << i;
  for (double x : f) EXPECT_TRUE(std::isfinite(x));
}

TEST(Syntactic, BareTreeIsWrappedInRoot) {
  const auto a = syntactic_features(testing::cat_sat());
  const auto b = syntactic_features(testing::sentence(
      "rooted", {{"The", "DT"}, {"cat", "NN"}, {"sat", "VBD"}},
      "(ROOT (S (NP (DT The) (NN cat)) (VP (VBD sat))))"));
  EXPECT_EQ(a, b);
}

// ----------------------------------------------------------------- lexical

TEST(Lexical, TypeTokenRatios) {
  const auto f = lexical_features(the_cat_sat_on_the_mat(), ResourceBundle{});
  EXPECT_DOUBLE_EQ(f[3], 5.0);                         // NDW
  EXPECT_NEAR(f[5], 5.0 / 6.0, 1e-12);                 // TTR
  EXPECT_NEAR(f[6], 5.0 / std::sqrt(12.0), 1e-12);     // cTTR
  EXPECT_NEAR(f[7], 5.0 / std::sqrt(6.0), 1e-12);      // rTTR
  EXPECT_NEAR(f[0], 17.0 / 6.0, 1e-12);                // MLWc
  EXPECT_NEAR(f[2], 3.0 / 6.0, 1e-12);                 // LD: cat, sat, mat
}

TEST(Lexical, AllDistinctAndIdentity) {
  const auto s = flat("d", {{"Dogs", "NNS"}, {"bark", "VBP"}, {"loudly", "RB"}, {".", "."}});
  const auto f = lexical_features(s, ResourceBundle{});
  EXPECT_DOUBLE_EQ(f[5], 1.0);
  for (const auto& sent : {s, the_cat_sat_on_the_mat(), testing::cat_sat()}) {
    const auto g = lexical_features(sent, ResourceBundle{});
    EXPECT_NEAR(g[7], g[6] * std::sqrt(2.0), 1e-12);
  }
}

TEST(Lexical, ListsAndAuxiliaries) {
  ResourceBundle r;
  r.word_lists["stopwords"] = {"the", "on"};
  r.word_lists["nawl"] = {"mat"};
  r.word_lists["ngsl"] = {"the", "cat", "sit"};
  r.word_lists["afl"] = {"on the", "the"};
  const auto f = lexical_features(the_cat_sat_on_the_mat(), r);
  EXPECT_NEAR(f[13], 3.0 / 6.0, 1e-12);  // NonStopWordsRate
  EXPECT_NEAR(f[11], 1.0 / 6.0, 1e-12);  // NAWL
  EXPECT_NEAR(f[12], 2.0 / 6.0, 1e-12);  // NGSL off-list: on, mat (sat via lemma)
  EXPECT_NEAR(f[8], 3.0 / 6.0, 1e-12);   // AFL: the, on the, the
  EXPECT_NEAR(f[9], 1.0, 1e-12);         // ANC absent list: everything off-list

  const auto aux = flat("aux", {{"She", "PRP", "she"}, {"has", "VBZ", "have"},
                                {"eaten", "VBN", "eat"}});
  EXPECT_NEAR(lexical_features(aux, r)[2], 1.0 / 3.0, 1e-12);
}

TEST(Lexical, PermutationInvariant) {
  Rng rng(5);
  const std::vector<std::string> vocab = {"the", "cat", "dog", "ran", "ate", "a", "big"};
  ResourceBundle r;
  r.word_lists["stopwords"] = {"the", "a"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TokenSpec> tokens;
    const std::size_t n = 1 + uniform_index(rng, 8);
    for (std::size_t i = 0; i < n; ++i) tokens.push_back({vocab[uniform_index(rng, vocab.size())], "NN"});
    auto shuffled = tokens;
    shuffle(shuffled, rng);
    const auto a = lexical_features(flat("a", tokens), r);
    const auto b = lexical_features(flat("b", shuffled), r);
    for (std::size_t i = 0; i < 14; ++i) {
      if (i == 8) continue;  // AFL depends on order
      EXPECT_NEAR(a[i], b[i], 1e-12);
    }
    EXPECT_GT(a[5], 0.0);
    EXPECT_LE(a[5], 1.0);
    EXPECT_GE(a[13], 0.0);
    EXPECT_LE(a[13], 1.0);
  }
}

// ------------------------------------------------------------------ n-gram

TEST(Ngram, WorkedExample) {
  NgramTable fic = {{"the", 1000}, {"cat", 50}, {"mat", 20}};
  const auto words = ngram_words(the_cat_sat_on_the_mat());
  const double value = ngram_norm(words, 1, fic);
  EXPECT_NEAR(value, 4.0 * std::log(1e9) / 5.0, 1e-12);
  EXPECT_NEAR(value, 16.5788, 5e-4);

  ResourceBundle r;
  r.table(Register::kFiction, 1) = fic;
  EXPECT_DOUBLE_EQ(ngram_norm(the_cat_sat_on_the_mat(), 1, Register::kFiction, r), value);
  EXPECT_EQ(ngram_norm(the_cat_sat_on_the_mat(), 1, Register::kNews, r), 0.0);
  EXPECT_DOUBLE_EQ(ngram_features(the_cat_sat_on_the_mat(), r)[5], value);
}

TEST(Ngram, EdgeCases) {
  const std::vector<std::string> words = {"a", "b"};
  EXPECT_EQ(ngram_norm(words, 1, NgramTable{{"z", 10}}), 0.0);
  EXPECT_EQ(ngram_norm(words, 3, NgramTable{{"a b", 10}}), 0.0);
  EXPECT_EQ(ngram_norm(words, 2, NgramTable{{"a b", 1}}), 0.0);
  EXPECT_NEAR(ngram_norm(words, 2, NgramTable{{"a b", 10}}), std::log(10.0), 1e-12);
}

TEST(Ngram, MatchesBruteForceOracle) {
  Rng rng(11);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> words(uniform_index(rng, 9));
    for (auto& w : words) w = vocab[uniform_index(rng, vocab.size())];
    const int n = 1 + static_cast<int>(uniform_index(rng, 5));
    NgramTable table;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      if (uniform01(rng) < 0.5) continue;
      std::string key = words[i];
      for (int k = 1; k < n; ++k) key += " " + words[i + k];
      table[key] = 1.0 + std::floor(uniform01(rng) * 1e5);
    }
    const double expected = testing::ngram_oracle(words, n, table);
    const double got = ngram_norm(words, n, table);
    EXPECT_LE(std::abs(got - expected), 1e-12 * std::max(1.0, std::abs(expected)));
    EXPECT_GE(got, 0.0);
  }
}

TEST(Ngram, MoreFrequentNgramsNeverLowerTheScore) {
  const auto words = ngram_words(the_cat_sat_on_the_mat());
  NgramTable t = {{"the", 10}, {"cat", 3}};
  const double before = ngram_norm(words, 1, t);
  t["cat"] = 30;
  EXPECT_GT(ngram_norm(words, 1, t), before);
}

// -------------------------------------------------------------- readability

ResourceBundle readability_lists() {
  ResourceBundle r;
  r.word_lists["dale_chall"] = {"the", "cat", "sat", "she", "reads", "read", "little",
                                "books", "book", "daily"};
  r.word_lists["spache"] = {"the", "cat", "sat", "she", "little", "book", "everything"};
  return r;
}

void expect_scores(const std::array<double, 14>& got, const std::array<double, 14>& want) {
  for (std::size_t i = 0; i < 14; ++i) EXPECT_NEAR(got[i], want[i], 1e-9) << feature_names()[55 + i];
}

TEST(Readability, CatSat) {
  const auto s = flat("r1", {{"The", "DT", "the"}, {"cat", "NN", "cat"}, {"sat", "VBD", "sit"},
                             {".", "."}});
  const auto f = readability_features(s, readability_lists());
  EXPECT_NEAR(f[0], -5.8, 1e-9);
  EXPECT_NEAR(f[4], 119.19, 1e-9);
  expect_scores(f, {-5.800000000000001, -8.026666666666667, 0.1488, -2.619999999999999,
                    119.19000000000003, 100.0, 33.333333333333336, 3.0, 3.1291,
                    1.2000000000000002, 3.4459999999999997, 5.0, 0.0, 1.022});
}

TEST(Readability, LongWords) {
  const auto s = flat("r2", {{"Unbelievably", "RB", "unbelievably", 5},
                             {",", ","},
                             {"the", "DT", "the", 1},
                             {"extraordinary", "JJ", "extraordinary", 6},
                             {"committee", "NN", "committee", 3},
                             {"postponed", "VBD", "postpone", 2},
                             {"everything", "NN", "everything", 3},
                             {".", "."}});
  const auto c = readability_counts(s, readability_lists());
  EXPECT_EQ(c.words, 6);
  EXPECT_EQ(c.letters, 56);
  EXPECT_EQ(c.syllables, 20);
  EXPECT_EQ(c.polysyllables, 4);
  EXPECT_EQ(c.long_words, 5);
  expect_scores(readability_scores(c),
                {25.53, 34.146666666666675, 17.092433333333332, 26.083333333333332, -81.255,
                 333.3333333333333, 16.666666666666668, 89.33333333333333, 14.554592549557764,
                 29.06666666666667, 13.2498, 17.5, 5.0, 6.8516666666666675});
}

TEST(Readability, NumbersAndLemmas) {
  const auto s = flat("r3", {{"She", "PRP", "she"},
                             {"reads", "VBZ", "read"},
                             {"3", "CD", "3", 1},
                             {"little", "JJ", "little"},
                             {"books", "NNS", "book"},
                             {"daily", "RB", "daily"},
                             {".", "."}});
  expect_scores(readability_features(s, readability_lists()),
                {0.41000000000000014, 2.7866666666666653, 0.2976, 2.4833333333333343,
                 87.94500000000002, 133.33333333333334, 16.666666666666668, 6.0, 3.1291,
                 2.4000000000000004, 3.6248, 10.0, 0.0, 4.118333333333334});
}

TEST(Readability, DoublingWords) {
  const auto once = flat("o", {{"The", "DT"}, {"cat", "NN"}, {"sat", "VBD"}, {".", "."}});
  const auto twice = flat("t", {{"The", "DT"}, {"the", "DT"}, {"cat", "NN"}, {"cat", "NN"},
                                {"sat", "VBD"}, {"sat", "VBD"}, {".", "."}});
  const auto a = readability_features(once, ResourceBundle{});
  const auto b = readability_features(twice, ResourceBundle{});
  EXPECT_NEAR(b[0] - a[0], 0.5 * 3, 1e-12);       // ARI: +0.5 per extra word/sentence
  EXPECT_NEAR(b[4] - a[4], -1.015 * 3, 1e-9);     // FK ease
  EXPECT_DOUBLE_EQ(a[5], b[5]);                   // syllables per 100 words
  EXPECT_DOUBLE_EQ(b[7], 6.0);                    // Lix: no long words
}

TEST(Readability, AllFinite) {
  const auto f = readability_features(flat("p", {{"Hm", "UH"}, {"!", "."}}), ResourceBundle{});
  for (double x : f) EXPECT_TRUE(std::isfinite(x));
}

// -------------------------------------------------------- psycholinguistic

TEST(Psycholinguistic, AgeOfAcquisition) {
  ResourceBundle r;
  r.aoa = {{"cat", 3.5}, {"sit", 4.1}};
  NormCoverage cov;
  const auto f = psycholinguistic_features(testing::cat_sat(), r, &cov);
  EXPECT_NEAR(f[36], 3.8, 1e-12);
  EXPECT_DOUBLE_EQ(f[37], 4.1);
  EXPECT_EQ(cov.words, 3u);
  EXPECT_EQ(cov.aoa, 2u);
  EXPECT_EQ(cov.prevalence, 0u);
}

TEST(Psycholinguistic, FallbackAndSingleToken) {
  ResourceBundle r;
  for (double x : psycholinguistic_features(testing::cat_sat(), r)) EXPECT_EQ(x, 0.0);
  r.aoa = {{"cat", 3.5}};
  r.prevalence = {{"the", 2.0}, {"cat", 1.0}};
  std::vector<double> cats(35, 0.0);
  cats[4] = 7.0;
  r.prevalence_categories = {{"cat", cats}};
  const auto f = psycholinguistic_features(testing::cat_sat(), r);
  EXPECT_DOUBLE_EQ(f[36], f[37]);
  EXPECT_DOUBLE_EQ(f[0], 1.5);
  EXPECT_DOUBLE_EQ(f[5], 7.0);
  EXPECT_DOUBLE_EQ(f[6], 0.0);
  EXPECT_GE(f[37], f[36]);
}

// ------------------------------------------------------------------ bundle

TEST(Resources, LoadFixtureDirectory) {
  const auto r = ResourceBundle::load(fixture_dir());
  EXPECT_DOUBLE_EQ(r.table(Register::kFiction, 1).at("the"), 5005.0);  // "The" merged
  EXPECT_EQ(r.table(Register::kAcademic, 5).size(), 1u);
  EXPECT_TRUE(r.list("ngsl").count("cat"));
  EXPECT_TRUE(r.list("no-such-list").empty());
  EXPECT_DOUBLE_EQ(r.aoa.at("sat"), 4.1);
  EXPECT_EQ(r.prevalence_categories.at("mat").size(), 35u);
}

TEST(Resources, ValidateRejectsBadValues) {
  ResourceBundle r;
  r.table(Register::kNews, 2)["a b"] = 0.5;
  EXPECT_THROW(r.validate(), ValidationError);
  ResourceBundle q;
  q.prevalence_categories["x"] = std::vector<double>(3, 1.0);
  EXPECT_THROW(q.validate(), ValidationError);
}

// ------------------------------------------------------------------ extract

TEST(Extract, ConcatenatesGroups) {
  const auto r = ResourceBundle::load(fixture_dir());
  const auto s = the_cat_sat_on_the_mat();
  const auto fv = extract(s, r);
  const auto check = [&](FeatureGroup g, auto values) {
    const auto slot = fv.group(g);
    ASSERT_EQ(slot.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) EXPECT_EQ(slot[i], values[i]);
  };
  check(FeatureGroup::kSyntactic, syntactic_features(s));
  check(FeatureGroup::kLexical, lexical_features(s, r));
  check(FeatureGroup::kNgram, ngram_features(s, r));
  check(FeatureGroup::kReadability, readability_features(s, r));
  check(FeatureGroup::kPsycholinguistic, psycholinguistic_features(s, r));
  EXPECT_EQ(extract(s, r).values, fv.values);
  for (double x : fv.values) EXPECT_TRUE(std::isfinite(x));
}

}  // namespace
}  // namespace gazelab
