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
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "gazelab/error.hpp"
#include "gazelab/model.hpp"
#include "gazelab/parallel.hpp"

namespace gazelab {

TrainConfig preset(std::string_view lm, bool fine_tuned, Variant variant) {
  if (lm != "bert" && lm != "gpt2") {
    throw ValidationError("unknown embedding source '" + std::string(lm) +
                          "' (expected bert or gpt2)");
  }
  const bool gpt2 = lm == "gpt2";
  TrainConfig c;
  if (!fine_tuned) {
    c.phase1 = {12, gpt2 ? 1e-3 : 5e-4, 5};
    c.phase2 = {0, 0.0, 3};
    return c;
  }
  c.phase1 = {12, gpt2 ? 1e-3 : 3e-4, 5};
  double phase2_lr = gpt2 ? 5e-4 : 5e-5;
  if (gpt2 && variant == Variant::kHybrid) phase2_lr = 1e-4;
  c.phase2 = {3, phase2_lr, 3};
  return c;
}

std::pair<double, double> evaluate_loss(const HybridModel& model,
                                        std::span<const Example> examples) {
  double sse = 0, sae = 0, count = 0;
  for (const auto& ex : examples) {
    const nn::Matrix diff = model.forward(ex.embeddings, ex.context) - ex.target;
    sse += diff.squaredNorm();
    sae += diff.cwiseAbs().sum();
    count += static_cast<double>(diff.size());
  }
  if (count == 0) return {0.0, 0.0};
  return {sse / count, sae / count};
}

namespace {

std::vector<nn::Matrix> snapshot(HybridModel& model) {
  std::vector<nn::Matrix> values;
  for (const nn::Param* p : model.params()) values.push_back(p->value);
  return values;
}

void restore(HybridModel& model, const std::vector<nn::Matrix>& values) {
  auto params = model.params();
  for (std::size_t k = 0; k < params.size(); ++k) params[k]->value = values[k];
}

}  // namespace

TrainResult train(HybridModel& model, std::span<const Example> train_set,
                  std::span<const Example> dev_set, const TrainConfig& config) {
  if (train_set.empty()) throw ValidationError("train: empty training split");
  if (dev_set.empty()) throw ValidationError("train: empty dev split");
  if (config.batch_size == 0) throw ValidationError("train: batch size must be positive");
  if (config.phase1.epochs + config.phase2.epochs == 0) {
    throw ValidationError("train: no epochs to run");
  }

  if (config.init_head_bias) {
    nn::Vector sum = nn::Vector::Zero(static_cast<Eigen::Index>(kMeasureCount));
    double words = 0;
    for (const auto& ex : train_set) {
      sum += ex.target.rowwise().sum();
      words += static_cast<double>(ex.target.cols());
    }
    model.head().bias().value.col(0) = sum / words;
  }

  Rng rng(config.seed);
  TrainResult result;
  std::vector<nn::Matrix> best;
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  for (int phase = 1; phase <= 2; ++phase) {
    const PhaseConfig& pc = phase == 1 ? config.phase1 : config.phase2;
    if (pc.epochs == 0) continue;
    if (!(pc.peak_lr > 0)) throw ValidationError("train: learning rate must be positive");
    model.set_adaptation_frozen(phase == 1);
    nn::AdamW opt(model.params(), nn::AdamWConfig{0.9, 0.999, 1e-8, config.weight_decay});
    const nn::WarmupSchedule schedule{pc.peak_lr, pc.warmup};
    for (std::size_t epoch = 1; epoch <= pc.epochs; ++epoch) {
      const double lr = schedule.lr_at(epoch);
      shuffle(order, rng);
      double epoch_sse = 0, epoch_count = 0;
      for (std::size_t start = 0, step = 1; start < order.size();
           start += config.batch_size, ++step) {
        const std::size_t end = std::min(order.size(), start + config.batch_size);
        double count = 0;
        for (std::size_t k = start; k < end; ++k) {
          count += static_cast<double>(train_set[order[k]].target.size());
        }
        opt.zero_grad();
        double sse = 0;
        for (std::size_t k = start; k < end; ++k) {
          const Example& ex = train_set[order[k]];
          sse += model.accumulate(ex.embeddings, ex.context, ex.target, 1.0 / count, &rng);
        }
        if (!std::isfinite(sse)) {
          throw Error("training diverged: non-finite loss in phase " + std::to_string(phase) +
                      ", epoch " + std::to_string(epoch) + ", step " + std::to_string(step));
        }
        opt.step(lr);
        epoch_sse += sse;
        epoch_count += count;
      }
      const auto [dev_loss, dev_mae] = evaluate_loss(model, dev_set);
      if (!std::isfinite(dev_loss)) {
        throw Error("training diverged: non-finite dev loss in phase " + std::to_string(phase) +
                    ", epoch " + std::to_string(epoch));
      }
      result.log.push_back({phase, epoch, lr, epoch_sse / epoch_count, dev_loss, dev_mae});
      if (best.empty() || dev_mae < result.best_dev_mae) {
        result.best_dev_mae = dev_mae;
        result.best_epoch = result.log.size() - 1;
        best = snapshot(model);
      }
    }
  }
  restore(model, best);
  model.set_adaptation_frozen(false);
  return result;
}

std::vector<Example> make_examples(const std::vector<Document>& corpus,
                                   std::span<const SentenceRef> refs,
                                   const EmbeddingFile& embeddings,
                                   const std::unordered_map<std::string, nn::Matrix>& contexts,
                                   const GazeTargets* targets) {
  std::map<WordKey, std::size_t> target_rows;
  if (targets) {
    for (std::size_t k = 0; k < targets->size(); ++k) target_rows.emplace(targets->words[k], k);
  }
  std::vector<Example> out;
  out.reserve(refs.size());
  for (const SentenceRef& ref : refs) {
    const AnnotatedSentence& s = corpus.at(ref.doc).sentences.at(ref.sentence);
    const EmbeddingMatrix* emb = embeddings.find(s.id);
    if (!emb) throw ValidationError("no embeddings for sentence '" + s.id + "'");
    const auto words = static_cast<Eigen::Index>(s.tokens.size());
    if (emb->values.cols() != words) {
      throw ValidationError("sentence '" + s.id + "' has " + std::to_string(words) +
                            " tokens but " + std::to_string(emb->values.cols()) +
                            " embedding rows");
    }
    Example ex;
    ex.sentence_id = s.id;
    ex.embeddings = emb->values;
    if (const auto it = contexts.find(s.id); it != contexts.end()) ex.context = it->second;
    if (targets) {
      ex.target.resize(static_cast<Eigen::Index>(kMeasureCount), words);
      for (Eigen::Index w = 0; w < words; ++w) {
        const auto it = target_rows.find(WordKey{s.id, static_cast<std::size_t>(w)});
        if (it == target_rows.end()) {
          throw ValidationError("no gaze targets for word " + std::to_string(w) +
                                " of sentence '" + s.id + "'");
        }
        const auto& v = targets->values[it->second];
        for (std::size_t m = 0; m < kMeasureCount; ++m) {
          ex.target(static_cast<Eigen::Index>(m), w) = v[m];
        }
      }
    }
    out.push_back(std::move(ex));
  }
  return out;
}

Dataset prepare_dataset(const std::vector<Document>& corpus,
                        const std::unordered_map<std::string, FeatureVector>& features,
                        const GazeTargets& raw_targets, const EmbeddingFile& embeddings,
                        const CorpusSplit& split, std::size_t context_window) {
  if (split.train.empty()) throw ValidationError("empty training split");
  Dataset data;
  std::vector<FeatureVector> train_features;
  std::set<std::string> train_ids;
  for (const SentenceRef& r : split.train) {
    const auto& id = corpus.at(r.doc).sentences.at(r.sentence).id;
    const auto it = features.find(id);
    if (it == features.end()) throw ValidationError("no feature vector for sentence '" + id + "'");
    train_features.push_back(it->second);
    train_ids.insert(id);
  }
  data.features = FeatureScaler::fit(train_features);

  std::vector<MeasureValues> train_targets;
  for (std::size_t k = 0; k < raw_targets.size(); ++k) {
    if (train_ids.count(raw_targets.words[k].sentence_id)) {
      train_targets.push_back(raw_targets.values[k]);
    }
  }
  data.scaling = fit_scaling(train_targets);
  const GazeTargets scaled = apply_scaling(raw_targets, data.scaling);

  const auto contexts = build_contexts(corpus, features, data.features, context_window);
  data.train = make_examples(corpus, split.train, embeddings, contexts, &scaled);
  data.dev = make_examples(corpus, split.dev, embeddings, contexts, &scaled);
  data.test = make_examples(corpus, split.test, embeddings, contexts, &scaled);
  return data;
}

std::vector<WordPrediction> predict(const ModelBundle& bundle, std::span<const Example> examples,
                                    std::size_t jobs) {
  std::vector<std::size_t> offset(examples.size() + 1, 0);
  for (std::size_t k = 0; k < examples.size(); ++k) {
    offset[k + 1] = offset[k] + static_cast<std::size_t>(examples[k].embeddings.cols());
  }
  std::vector<WordPrediction> out(offset.back());
  parallel_for(examples.size(), jobs, [&](std::size_t k) {
    const Example& ex = examples[k];
    const nn::Matrix y = bundle.model.forward(ex.embeddings, ex.context);
    for (Eigen::Index w = 0; w < y.cols(); ++w) {
      WordPrediction& p = out[offset[k] + static_cast<std::size_t>(w)];
      p.word = {ex.sentence_id, static_cast<std::size_t>(w)};
      for (std::size_t m = 0; m < kMeasureCount; ++m) {
        // Targets live in [0, 100]; predictions are clipped to that range.
        p.scaled[m] = std::clamp(y(static_cast<Eigen::Index>(m), w), 0.0, 100.0);
      }
      p.raw = unscale(p.scaled, bundle.scaling);
    }
  });
  return out;
}

}  // namespace gazelab
