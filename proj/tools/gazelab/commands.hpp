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

#include <cstdint>
#include <optional>
#include <string>

#include "gazelab/model.hpp"

namespace gazelab::cli {

struct Common {
  std::string out = ".";
  std::size_t jobs = 1;
};

struct FeaturesArgs {
  std::string corpus;
  std::string resources;
};

struct GazeArgs {
  std::string corpus;
  std::string fixations;
  std::string averaging = "fixating";
};

struct SplitArgs {
  std::string corpus;
  std::uint64_t seed = 0;
  double train = 0.8, dev = 0.1, test = 0.1;
  std::string mode = "random";
};

/// Inputs shared by the commands that build examples.
struct DataArgs {
  std::string corpus;
  std::string features;
  std::string targets;
  std::string embeddings;
  std::string split;
};

/// Training settings. Unset optionals keep the preset value.
struct TrainArgs {
  std::string variant = "hybrid";
  std::string lm = "bert";
  bool fine_tuned = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> epochs, warmup, phase2_epochs, phase2_warmup, batch_size;
  std::optional<double> lr, phase2_lr, weight_decay;
  std::size_t reduced_dim = 256;
  std::size_t ctx_hidden = 512;
  std::size_t ctx_layers = 4;
  std::size_t window = 1;
  double dropout = 0.1;

  TrainConfig train_config() const;
  ModelConfig model_config(std::size_t embedding_dim) const;
};

struct PredictArgs {
  std::string checkpoint;
  std::string corpus, features, embeddings;
  std::string split;  // optional
  std::string part = "test";
};

struct MetricsArgs {
  std::string pred, target;
  std::string checkpoint;  // optional; scales a raw target file
  std::string features;    // deciles only
};

struct ExplainArgs {
  std::string checkpoint;
  std::string part = "test";
  bool retrain = false;
  std::size_t samples = 64;
  std::uint64_t seed = 0;
};

struct DescribeArgs {
  std::string targets;
};

void run_features(const Common& c, const FeaturesArgs& a);
void run_gaze(const Common& c, const GazeArgs& a);
void run_split(const Common& c, const SplitArgs& a);
void run_train(const Common& c, const DataArgs& d, const TrainArgs& t);
void run_predict(const Common& c, const PredictArgs& a);
void run_metrics(const Common& c, const MetricsArgs& a);
void run_deciles(const Common& c, const MetricsArgs& a);
void run_ablate(const Common& c, const DataArgs& d, const TrainArgs& t, const ExplainArgs& e);
void run_splime(const Common& c, const DataArgs& d, const ExplainArgs& e);
void run_describe(const Common& c, const DescribeArgs& a);

}  // namespace gazelab::cli
