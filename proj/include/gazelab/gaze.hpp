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
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gazelab/corpus.hpp"

namespace gazelab {

inline constexpr std::size_t kMeasureCount = 8;

/// Word-level eye-tracking measures, in target-vector order.
enum class Measure { kNFX, kMFD, kFXP, kFFD, kFPD, kTFD, kNRFX, kRRDP };

std::string_view measure_name(std::size_t m);
/// Index of a measure name (NFX ... RRDP); throws ValidationError.
std::size_t measure_index(std::string_view name);

using MeasureValues = std::array<double, kMeasureCount>;

struct FixationEvent {
  std::string participant;
  std::string sentence_id;
  std::size_t word_index = 0;
  long long order = 0;  // temporal rank within the participant's trial
  double duration_ms = 0;
};

/// Reads `participant,sentence_id,word_index,order,duration_ms` CSV.
std::vector<FixationEvent> read_fixations(std::istream& in);
std::vector<FixationEvent> read_fixations(const std::string& path);

/// Number of words per sentence, in corpus order.
struct WordInventory {
  std::vector<std::string> sentence_ids;
  std::unordered_map<std::string, std::size_t> word_counts;

  static WordInventory from_corpus(const std::vector<Document>& corpus);
  void add(const std::string& sentence_id, std::size_t words);
  std::size_t total_words() const;
};

struct WordKey {
  std::string sentence_id;
  std::size_t word_index = 0;

  friend auto operator<=>(const WordKey&, const WordKey&) = default;
};

/// How duration measures (MFD, FFD, FPD, TFD) are averaged. Count and
/// proportion measures always average over every participant.
enum class DurationAveraging {
  kFixatingParticipants,  // mean over participants who fixated the word
  kAllParticipants,       // non-fixating participants contribute 0
};

/// One row per inventory word, in inventory order.
struct GazeTargets {
  std::vector<WordKey> words;
  std::vector<MeasureValues> values;

  std::size_t size() const { return words.size(); }
};

/// Per-word measures averaged over `participants`.
///
/// Per participant p and word w, with F the time-ordered fixations of p on
/// w's sentence:
///   nfx  = #fixations on w;            nrfx = max(0, nfx - 1)
///   ffd  = first fixation duration;    tfd  = sum of all durations
///   fpd  = durations from the first fixation on w up to the first
///          fixation on another word (the first run)
///   mfd  = tfd / nfx
/// NFX, NRFX average over all participants; FXP and RRDP are the shares of
/// participants with nfx > 0 and nfx > 1. Words nobody fixated get 0.
///
/// Throws ValidationError for an empty participant set, unknown sentence,
/// out-of-range word index, unknown participant, non-positive duration or a
/// repeated order within a trial.
GazeTargets aggregate(std::span<const FixationEvent> events,
                      const std::set<std::string>& participants,
                      const WordInventory& words,
                      DurationAveraging averaging = DurationAveraging::kFixatingParticipants);

std::set<std::string> participants_of(std::span<const FixationEvent> events);

/// Per-measure range fitted on training targets.
struct ScalingParams {
  MeasureValues min{};
  MeasureValues max{};
};

ScalingParams fit_scaling(std::span<const MeasureValues> train);

/// 100 * (x - min) / (max - min), clipped to [0, 100]; 0 when max == min.
MeasureValues apply_scaling(const MeasureValues& x, const ScalingParams& p);
/// Inverse of apply_scaling for values in [0, 100].
MeasureValues unscale(const MeasureValues& scaled, const ScalingParams& p);

GazeTargets apply_scaling(const GazeTargets& raw, const ScalingParams& p);

/// Mean, sample SD (n - 1), min and max of one measure.
struct Descriptive {
  double mean = 0;
  double sd = 0;
  double min = 0;
  double max = 0;
};

std::array<Descriptive, kMeasureCount> describe(std::span<const MeasureValues> values);
/// `Feature,M,SD,Min,Max` with one row per measure.
void write_describe_csv(std::ostream& out,
                        const std::array<Descriptive, kMeasureCount>& table);

/// `sentence_id,word_index,NFX,...,RRDP`.
void write_targets_csv(std::ostream& out, const GazeTargets& targets);
GazeTargets read_targets_csv(std::istream& in);
GazeTargets read_targets_csv(const std::string& path);

}  // namespace gazelab
