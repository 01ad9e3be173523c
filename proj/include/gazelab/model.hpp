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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gazelab/corpus.hpp"
#include "gazelab/features.hpp"
#include "gazelab/gaze.hpp"
#include "gazelab/neural.hpp"

namespace gazelab {

// ------------------------------------------------------------- embeddings

/// Word-level vectors of one sentence, stored column-wise (D x M).
struct EmbeddingMatrix {
  std::string sentence_id;
  nn::Matrix values;
};

/// Contents of an EMB1 file:
///   "EMB1", u32 D, then per sentence: u16 id length, UTF-8 id, u32 M,
///   M*D float32 (row-major, one row per word). All integers little-endian.
struct EmbeddingFile {
  std::size_t dim = 0;
  std::vector<EmbeddingMatrix> sentences;

  /// nullptr when the sentence is absent.
  const EmbeddingMatrix* find(const std::string& sentence_id) const;
  void reindex();

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

EmbeddingFile read_embeddings(std::istream& in);
EmbeddingFile read_embeddings(const std::filesystem::path& path);
void write_embeddings(std::ostream& out, const EmbeddingFile& file);
/// Writes to a temporary sibling and renames it into place.
void write_embeddings(const std::filesystem::path& path, const EmbeddingFile& file);

// ---------------------------------------------------------- feature input

/// Z-scores for the 107 features, fitted on training sentences. Features
/// with zero spread keep sd = 1.
struct FeatureScaler {
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> sd{};

  static FeatureScaler fit(std::span<const FeatureVector> train);
  nn::Vector apply(const FeatureVector& f) const;
};

/// Context input for every sentence: the standardized feature vectors of
/// the N previous sentences of the same document (oldest first, 107 x N).
/// Positions before the document start are zero vectors.
std::unordered_map<std::string, nn::Matrix> build_contexts(
    const std::vector<Document>& corpus,
    const std::unordered_map<std::string, FeatureVector>& features,
    const FeatureScaler& scaler, std::size_t window);

// ------------------------------------------------------------------ model

enum class Variant { kBaseline, kHybrid };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);

struct ModelConfig {
  Variant variant = Variant::kHybrid;
  std::size_t embedding_dim = 768;
  std::size_t reduced_dim = 256;
  std::size_t ctx_hidden = 512;
  std::size_t ctx_layers = 4;
  std::size_t context_window = 1;
  /// Adds an identity-initialized D x D layer in front of lm_reduce that
  /// stays frozen in phase 1 and is trained in phase 2.
  bool adaptation = false;
  double dropout = 0.1;
};

/// Embeddings -> [adapt] -> lm_reduce (D -> R) -> + C -> head (R -> 8), where
/// C = ctx_reduce(BLSTM(previous feature vectors)) is added to every word.
/// The baseline variant has no context path.
class HybridModel {
 public:
  HybridModel() = default;
  explicit HybridModel(const ModelConfig& config);

  void init(std::uint64_t seed);
  const ModelConfig& config() const { return config_; }

  /// Evaluation-mode predictions, 8 x M.
  nn::Matrix forward(const nn::Matrix& embeddings, const nn::Matrix& context) const;

  /// Training-mode forward and backward pass for one sentence. Gradients of
  /// `scale * sum of squared errors` are accumulated into the parameters;
  /// returns the unscaled sum of squared errors. `dropout_rng` may be null
  /// to disable dropout.
  double accumulate(const nn::Matrix& embeddings, const nn::Matrix& context,
                    const nn::Matrix& target, double scale, Rng* dropout_rng);

  std::vector<nn::Param*> params();
  std::vector<const nn::Param*> params() const;
  void set_adaptation_frozen(bool frozen);

  nn::Dense& lm_reduce() { return lm_reduce_; }
  nn::Dense& ctx_reduce() { return ctx_reduce_; }
  nn::Dense& head() { return head_; }

 private:
  void check_inputs(const nn::Matrix& embeddings, const nn::Matrix& context) const;

  ModelConfig config_;
  nn::Dense adapt_;
  nn::Dense lm_reduce_;
  nn::Blstm ctx_blstm_;
  nn::Dense ctx_reduce_;
  nn::Dense head_;
};

// --------------------------------------------------------------- training

struct PhaseConfig {
  std::size_t epochs = 12;
  double peak_lr = 5e-4;
  std::size_t warmup = 5;  // in epochs
};

struct TrainConfig {
  PhaseConfig phase1;
  PhaseConfig phase2{0, 5e-5, 3};
  std::size_t batch_size = 16;
  double weight_decay = 1e-4;
  std::uint64_t seed = 0;
  /// Start the regression bias at the mean training target.
  bool init_head_bias = true;
};

/// Hyperparameters for an embedding source (bert | gpt2), frozen or
/// fine-tuned, and variant.
TrainConfig preset(std::string_view lm, bool fine_tuned, Variant variant);

/// One sentence ready for training: embeddings D x M, context 107 x N,
/// scaled targets 8 x M.
struct Example {
  std::string sentence_id;
  nn::Matrix embeddings;
  nn::Matrix context;
  nn::Matrix target;
};

struct EpochLog {
  int phase = 1;
  std::size_t epoch = 0;
  double lr = 0;
  double train_loss = 0;
  double dev_loss = 0;
  double dev_mae = 0;
};

struct TrainResult {
  std::vector<EpochLog> log;
  double best_dev_mae = 0;
  std::size_t best_epoch = 0;  // index into log
};

/// Two-phase training; the model ends with the parameters of the epoch with
/// the lowest dev MAE. Throws ValidationError for empty splits and Error
/// when the loss stops being finite.
TrainResult train(HybridModel& model, std::span<const Example> train_set,
                  std::span<const Example> dev_set, const TrainConfig& config);

/// Mean squared error and mean absolute error over all words and measures.
std::pair<double, double> evaluate_loss(const HybridModel& model,
                                        std::span<const Example> examples);

// ---------------------------------------------------------- checkpoints

/// Everything needed to predict: weights, target scaling, feature scaler.
struct ModelBundle {
  HybridModel model;
  ScalingParams scaling;
  FeatureScaler features;
  std::map<std::string, std::string> info;
};

/// "GZCK", u32 version, u64 header length, JSON header, then named float64
/// tensors. Loading reproduces bit-identical parameters.
void save_checkpoint(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle load_checkpoint(const std::filesystem::path& path);

// ------------------------------------------------------------ prediction

struct WordPrediction {
  WordKey word;
  MeasureValues scaled{};
  MeasureValues raw{};
};

/// Builds one example per referenced sentence. Throws ValidationError naming
/// the sentence when its embeddings are missing or misaligned, or when
/// `targets` lacks one of its words. `targets` may be null for prediction.
std::vector<Example> make_examples(const std::vector<Document>& corpus,
                                   std::span<const SentenceRef> refs,
                                   const EmbeddingFile& embeddings,
                                   const std::unordered_map<std::string, nn::Matrix>& contexts,
                                   const GazeTargets* targets);

/// Train/dev/test examples with target scaling and feature z-scores fitted
/// on the training part only. Targets in the examples are scaled.
struct Dataset {
  std::vector<Example> train, dev, test;
  ScalingParams scaling;
  FeatureScaler features;
};

Dataset prepare_dataset(const std::vector<Document>& corpus,
                        const std::unordered_map<std::string, FeatureVector>& features,
                        const GazeTargets& raw_targets, const EmbeddingFile& embeddings,
                        const CorpusSplit& split, std::size_t context_window);

/// Predicts every word of `examples`, in order. Runs on `jobs` threads.
std::vector<WordPrediction> predict(const ModelBundle& bundle, std::span<const Example> examples,
                                    std::size_t jobs = 1);

}  // namespace gazelab
