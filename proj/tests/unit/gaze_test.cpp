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
#include <sstream>

#include "gazelab/error.hpp"
#include "gazelab/gaze.hpp"
#include "gazelab/random.hpp"
#include "oracles.hpp"

namespace gazelab {
namespace {

constexpr auto kNFX = static_cast<std::size_t>(Measure::kNFX);
constexpr auto kMFD = static_cast<std::size_t>(Measure::kMFD);
constexpr auto kFXP = static_cast<std::size_t>(Measure::kFXP);
constexpr auto kFFD = static_cast<std::size_t>(Measure::kFFD);
constexpr auto kFPD = static_cast<std::size_t>(Measure::kFPD);
constexpr auto kTFD = static_cast<std::size_t>(Measure::kTFD);
constexpr auto kNRFX = static_cast<std::size_t>(Measure::kNRFX);
constexpr auto kRRDP = static_cast<std::size_t>(Measure::kRRDP);

WordInventory one_sentence(std::size_t words) {
  WordInventory inv;
  inv.add("s", words);
  return inv;
}

TEST(Measures, NamesAndOrder) {
  const char* names[] = {"NFX", "MFD", "FXP", "FFD", "FPD", "TFD", "NRFX", "RRDP"};
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    EXPECT_EQ(measure_name(m), names[m]);
    EXPECT_EQ(measure_index(names[m]), m);
  }
  EXPECT_THROW(measure_index("GD"), ValidationError);
}

TEST(Aggregate, TwoParticipantExample) {
  const std::vector<FixationEvent> events = {
      {"s1", "s", 0, 1, 200}, {"s1", "s", 1, 2, 180}, {"s1", "s", 0, 3, 100},
      {"s2", "s", 0, 1, 150}};
  const auto t = aggregate(events, {"s1", "s2"}, one_sentence(3));
  ASSERT_EQ(t.size(), 3u);
  const auto& w = t.values[0];
  EXPECT_DOUBLE_EQ(w[kNFX], 1.5);
  EXPECT_DOUBLE_EQ(w[kFXP], 1.0);
  EXPECT_DOUBLE_EQ(w[kFFD], 175.0);
  EXPECT_DOUBLE_EQ(w[kFPD], 175.0);
  EXPECT_DOUBLE_EQ(w[kTFD], 225.0);
  EXPECT_DOUBLE_EQ(w[kMFD], 150.0);
  EXPECT_DOUBLE_EQ(w[kNRFX], 0.5);
  EXPECT_DOUBLE_EQ(w[kRRDP], 0.5);
  EXPECT_DOUBLE_EQ(t.values[1][kFXP], 0.5);
  for (double x : t.values[2]) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(t.words[2], (WordKey{"s", 2}));
}

TEST(Aggregate, FirstPassSumsConsecutiveFixations) {
  const std::vector<FixationEvent> events = {
      {"p", "s", 0, 1, 100}, {"p", "s", 0, 2, 50}, {"p", "s", 1, 3, 80}, {"p", "s", 0, 4, 70}};
  const auto t = aggregate(events, {"p"}, one_sentence(2));
  EXPECT_DOUBLE_EQ(t.values[0][kFPD], 150.0);
  EXPECT_DOUBLE_EQ(t.values[0][kTFD], 220.0);
  EXPECT_DOUBLE_EQ(t.values[0][kNRFX], 2.0);
}

TEST(Aggregate, EventOrderInInputDoesNotMatter) {
  std::vector<FixationEvent> events = {
      {"p", "s", 1, 3, 80}, {"p", "s", 0, 1, 100}, {"p", "s", 0, 4, 70}, {"p", "s", 0, 2, 50}};
  const auto a = aggregate(events, {"p"}, one_sentence(2));
  std::reverse(events.begin(), events.end());
  const auto b = aggregate(events, {"p"}, one_sentence(2));
  EXPECT_EQ(a.values, b.values);
  EXPECT_DOUBLE_EQ(a.values[0][kFFD], 100.0);
}

TEST(Aggregate, DurationAveragingSwitch) {
  const std::vector<FixationEvent> events = {{"a", "s", 0, 1, 200}};
  const auto fixating = aggregate(events, {"a", "b"}, one_sentence(1));
  const auto all = aggregate(events, {"a", "b"}, one_sentence(1),
                             DurationAveraging::kAllParticipants);
  EXPECT_DOUBLE_EQ(fixating.values[0][kFFD], 200.0);
  EXPECT_DOUBLE_EQ(all.values[0][kFFD], 100.0);
  EXPECT_DOUBLE_EQ(all.values[0][kNFX], fixating.values[0][kNFX]);
}

TEST(Aggregate, Errors) {
  const auto inv = one_sentence(2);
  EXPECT_THROW(aggregate(std::vector<FixationEvent>{}, {}, inv), ValidationError);
  EXPECT_THROW(aggregate(std::vector<FixationEvent>{{"p", "x", 0, 1, 10}}, {"p"}, inv),
               ValidationError);
  EXPECT_THROW(aggregate(std::vector<FixationEvent>{{"p", "s", 2, 1, 10}}, {"p"}, inv),
               ValidationError);
  EXPECT_THROW(aggregate(std::vector<FixationEvent>{{"q", "s", 0, 1, 10}}, {"p"}, inv),
               ValidationError);
  EXPECT_THROW(aggregate(std::vector<FixationEvent>{{"p", "s", 0, 1, 0}}, {"p"}, inv),
               ValidationError);
  EXPECT_THROW(aggregate(std::vector<FixationEvent>{{"p", "s", 0, 1, 10}, {"p", "s", 1, 1, 10}},
                         {"p"}, inv),
               ValidationError);
}

TEST(Aggregate, MatchesPerParticipantOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto log = testing::random_fixation_log(rng);
    const auto& participants = log.participants;
    const auto& events = log.events;
    const auto& inv = log.inventory;
    const auto got = aggregate(events, {participants.begin(), participants.end()}, inv);
    const auto want = testing::gaze_oracle(events, participants, log.sentences);
    ASSERT_EQ(got.words, want.words);
    for (std::size_t i = 0; i < got.size(); ++i) {
      for (std::size_t m = 0; m < kMeasureCount; ++m) {
        // Same summation order in both, so equality is exact.
        EXPECT_EQ(got.values[i][m], want.values[i][m]) << measure_name(m);
      }
      const auto& v = got.values[i];
      EXPECT_LE(v[kFFD], v[kFPD]);
      EXPECT_LE(v[kFPD], v[kTFD]);
      EXPECT_GE(v[kNFX], v[kNRFX]);
      EXPECT_GE(v[kFXP], 0.0);
      EXPECT_LE(v[kFXP], 1.0);
      EXPECT_GE(v[kRRDP], 0.0);
      EXPECT_LE(v[kRRDP], 1.0);
    }
  }
}

TEST(Fixations, ReadCsv) {
  std::istringstream in(
      "participant,sentence_id,word_index,order,duration_ms\n"
      "pp01,s1,0,1,212\n"
      "pp01,s1,2,2,180.5\n");
  const auto events = read_fixations(in);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[1].word_index, 2u);
  EXPECT_DOUBLE_EQ(events[1].duration_ms, 180.5);
  EXPECT_EQ(participants_of(events), (std::set<std::string>{"pp01"}));
  std::istringstream bad("participant,sentence_id,word_index,order,duration_ms\np,s,-1,1,10\n");
  EXPECT_THROW(read_fixations(bad), ValidationError);
}

TEST(Scaling, EndpointsMidpointAndRoundTrip) {
  MeasureValues lo{}, hi{}, mid{};
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    lo[m] = static_cast<double>(m);
    hi[m] = 10.0 + 3.0 * static_cast<double>(m);
    mid[m] = (lo[m] + hi[m]) / 2;
  }
  const std::vector<MeasureValues> train = {mid, lo, hi};
  const auto p = fit_scaling(train);
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    EXPECT_DOUBLE_EQ(apply_scaling(lo, p)[m], 0.0);
    EXPECT_DOUBLE_EQ(apply_scaling(hi, p)[m], 100.0);
    EXPECT_NEAR(apply_scaling(mid, p)[m], 50.0, 1e-12);
    EXPECT_NEAR(unscale(apply_scaling(mid, p), p)[m], mid[m], 1e-12);
  }
  MeasureValues outside = hi;
  outside[0] = hi[0] + 100;
  outside[1] = lo[1] - 100;
  EXPECT_DOUBLE_EQ(apply_scaling(outside, p)[0], 100.0);
  EXPECT_DOUBLE_EQ(apply_scaling(outside, p)[1], 0.0);
}

TEST(Scaling, MonotoneAndDegenerate) {
  Rng rng(3);
  std::vector<MeasureValues> train(20);
  for (auto& v : train) {
    for (auto& x : v) x = 500 * uniform01(rng);
  }
  for (auto& v : train) v[kRRDP] = 0.25;
  const auto p = fit_scaling(train);
  for (int k = 0; k < 100; ++k) {
    MeasureValues a{}, b{};
    for (std::size_t m = 0; m < kMeasureCount; ++m) {
      a[m] = 500 * uniform01(rng);
      b[m] = a[m] + 10 * uniform01(rng);
    }
    const auto sa = apply_scaling(a, p), sb = apply_scaling(b, p);
    for (std::size_t m = 0; m < kMeasureCount; ++m) EXPECT_LE(sa[m], sb[m]);
    EXPECT_EQ(sa[kRRDP], 0.0);
  }
  EXPECT_THROW(fit_scaling(std::vector<MeasureValues>{}), ValidationError);
}

TEST(Describe, MeanAndSampleSd) {
  MeasureValues a{}, b{};
  b.fill(2.0);
  const auto d = describe(std::vector<MeasureValues>{a, b});
  EXPECT_DOUBLE_EQ(d[0].mean, 1.0);
  EXPECT_NEAR(d[0].sd, std::sqrt(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(d[0].min, 0.0);
  EXPECT_DOUBLE_EQ(d[0].max, 2.0);
  const auto c = describe(std::vector<MeasureValues>{b, b, b});
  EXPECT_EQ(c[3].sd, 0.0);
  std::ostringstream out;
  write_describe_csv(out, d);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "Feature,M,SD,Min,Max");
  EXPECT_NE(out.str().find("\nNFX,1,"), std::string::npos);
}

TEST(Targets, CsvRoundTrip) {
  const std::vector<FixationEvent> events = {
      {"a", "s", 0, 1, 213.25}, {"a", "s", 1, 2, 97}, {"b", "s", 1, 1, 0.1}};
  const auto t = aggregate(events, {"a", "b", "c"}, one_sentence(3));
  std::stringstream io;
  write_targets_csv(io, t);
  const auto back = read_targets_csv(io);
  EXPECT_EQ(back.words, t.words);
  EXPECT_EQ(back.values, t.values);
}

}  // namespace
}  // namespace gazelab
