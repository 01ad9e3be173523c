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
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazelab/features.hpp"
#include "gazelab/gaze.hpp"
#include "gazelab/model.hpp"

namespace gazelab {

// ---------------------------------------------------------------- metrics

struct MeasureMetrics {
  double mae = 0;
  double accuracy = 100;
  std::optional<double> r2;  // percent; absent when the target is constant
};

/// Per-measure scores and their average. The averaged R2 covers the
/// measures where it is defined.
struct MetricReport {
  std::array<MeasureMetrics, kMeasureCount> measures;
  double mae = 0;
  double accuracy = 100;
  std::optional<double> r2;
  std::size_t words = 0;
};

/// Scores aligned prediction and target rows on the [0, 100] scale.
MetricReport metrics(std::span<const MeasureValues> pred, std::span<const MeasureValues> target);

/// `measure,MAE,Accuracy,R2` per measure plus an `average` row; an undefined
/// R2 is written as an empty cell.
void write_metrics_csv(std::ostream& out, const MetricReport& report);

/// Mean absolute error over the words and measures of each sentence, in
/// order of first appearance. `words`, `pred` and `target` are aligned.
struct SentenceError {
  std::string sentence_id;
  double mae = 0;
};
std::vector<SentenceError> sentence_mae(std::span<const WordKey> words,
                                        std::span<const MeasureValues> pred,
                                        std::span<const MeasureValues> target);

// ---------------------------------------------------------------- deciles

/// Pearson correlation; absent when either side has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Decile (0..9) of every item after a stable sort on `values`. The first
/// n % 10 bins hold one extra item.
std::vector<std::size_t> decile_bins(std::span<const double> values);

struct DecileCorrelation {
  std::array<double, 10> mean_mae{};
  std::array<std::size_t, 10> sizes{};
  std::optional<double> r;  // decile index 1..10 against mean_mae
};

/// Needs at least 10 sentences. r is absent for a constant feature.
DecileCorrelation decile_correlation(std::span<const double> feature,
                                     std::span<const double> mae);

struct DecileRow {
  std::string feature;
  FeatureGroup group{};
  DecileCorrelation result;
  bool notable = false;  // |r| > 0.2
};

/// One row per feature; `features` holds each test sentence's raw vector.
std::vector<DecileRow> decile_table(std::span<const FeatureVector> features,
                                    std::span<const double> mae);

/// `feature,group,r,notable,d1..d10`.
void write_decile_csv(std::ostream& out, std::span<const DecileRow> rows);

// ------------------------------------------------------------------ model

/// Evaluation-mode predictions on the [0, 100] scale, one row per word.
std::vector<MeasureValues> predict_scaled(const HybridModel& model,
                                          std::span<const Example> examples,
                                          std::size_t jobs = 1);
std::vector<MeasureValues> target_rows(std::span<const Example> examples);

/// Copies of `examples` whose context rows for the masked groups are zero,
/// which is the training mean after standardization.
std::vector<Example> mask_groups(std::span<const Example> examples,
                                 const std::array<bool, kFeatureGroups.size()>& masked);

// --------------------------------------------------------------- ablation

struct AblationOptions {
  /// Retrain from scratch on masked data instead of re-evaluating the
  /// reference model.
  bool retrain = false;
  std::span<const Example> train_set;
  std::span<const Example> dev_set;
  TrainConfig train_config;
  std::uint64_t init_seed = 0;
  std::size_t jobs = 1;
};

struct AblationReport {
  double full_r2 = 0;
  std::array<double, kFeatureGroups.size()> masked_r2{};
  std::array<double, kFeatureGroups.size()> drop{};  // full_r2 - masked_r2
  std::size_t most_important = 0;                    // index into kFeatureGroups
};

AblationReport ablate_groups(const HybridModel& model, std::span<const Example> test,
                             const AblationOptions& options = {});

/// Header of group names and rows `full_r2`, `masked_r2`, `drop`.
void write_ablation_csv(std::ostream& out, const AblationReport& report);

// ---------------------------------------------------------------- SP-LIME

/// sigma = 0.75 * sqrt(d).
double lime_kernel_width(std::size_t d);
/// exp(-H^2 / sigma^2) for Hamming distance H from the unmasked sample.
double lime_kernel(std::size_t hamming, std::size_t d);

struct LimeOptions {
  std::size_t n_samples = 64;
  std::uint64_t seed = 0;
};

struct LimeExplanation {
  std::vector<double> coefficients;  // W_i, one per group
  double intercept = 0;
  std::vector<std::vector<bool>> masks;  // true keeps the group
  std::vector<double> weights;           // kernel weight per mask
};

/// Weighted least-squares surrogate of f over binary group masks. The first
/// mask keeps every group; the rest are uniform random. Throws
/// ValidationError when n_samples < d + 1 or the design is singular.
LimeExplanation lime_local(std::size_t d, const std::function<double(const std::vector<bool>&)>& f,
                           const LimeOptions& options = {});

/// Explains every example and measure; the explained quantity is the
/// sentence's mean scaled prediction for that measure. Results are
/// example-major (index k * 8 + m); example k samples masks with seed
/// options.seed + k, shared by its 8 measures.
std::vector<LimeExplanation> lime_model(const HybridModel& model,
                                        std::span<const Example> examples,
                                        const LimeOptions& options = {}, std::size_t jobs = 1);

/// I_j = sqrt(sum_i |W_ij|).
std::vector<double> splime_global(std::span<const LimeExplanation> explanations);

}  // namespace gazelab
