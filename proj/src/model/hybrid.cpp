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

#include "gazelab/error.hpp"
#include "gazelab/model.hpp"

namespace gazelab {

FeatureScaler FeatureScaler::fit(std::span<const FeatureVector> train) {
  if (train.empty()) throw ValidationError("feature scaler: no training sentences");
  FeatureScaler s;
  const double n = static_cast<double>(train.size());
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    double sum = 0;
    for (const auto& f : train) sum += f.values[j];
    const double mean = sum / n;
    double ss = 0;
    for (const auto& f : train) ss += (f.values[j] - mean) * (f.values[j] - mean);
    const double sd = std::sqrt(ss / n);
    s.mean[j] = mean;
    s.sd[j] = sd > 0 ? sd : 1.0;
  }
  return s;
}

nn::Vector FeatureScaler::apply(const FeatureVector& f) const {
  nn::Vector v(static_cast<Eigen::Index>(kFeatureCount));
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    v[static_cast<Eigen::Index>(j)] = (f.values[j] - mean[j]) / sd[j];
  }
  return v;
}

std::unordered_map<std::string, nn::Matrix> build_contexts(
    const std::vector<Document>& corpus,
    const std::unordered_map<std::string, FeatureVector>& features,
    const FeatureScaler& scaler, std::size_t window) {
  if (window == 0) throw ValidationError("context window must be at least 1");
  std::unordered_map<std::string, nn::Matrix> out;
  const auto n = static_cast<Eigen::Index>(window);
  for (const auto& doc : corpus) {
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      nn::Matrix ctx = nn::Matrix::Zero(static_cast<Eigen::Index>(kFeatureCount), n);
      for (std::size_t k = 1; k <= window && k <= i; ++k) {
        const auto& prev = doc.sentences[i - k].id;
        const auto it = features.find(prev);
        if (it == features.end()) {
          throw ValidationError("no feature vector for sentence '" + prev + "'");
        }
        ctx.col(n - static_cast<Eigen::Index>(k)) = scaler.apply(it->second);
      }
      out.emplace(doc.sentences[i].id, std::move(ctx));
    }
  }
  return out;
}

std::string_view variant_name(Variant v) {
  return v == Variant::kBaseline ? "baseline" : "hybrid";
}

Variant parse_variant(std::string_view name) {
  if (name == "baseline") return Variant::kBaseline;
  if (name == "hybrid") return Variant::kHybrid;
  throw ValidationError("unknown model variant '" + std::string(name) +
                        "' (expected baseline or hybrid)");
}

HybridModel::HybridModel(const ModelConfig& config)
    : config_(config),
      lm_reduce_("lm_reduce", config.embedding_dim, config.reduced_dim),
      head_("head", config.reduced_dim, kMeasureCount) {
  if (config.embedding_dim == 0 || config.reduced_dim == 0) {
    throw ValidationError("model dimensions must be positive");
  }
  if (config.dropout < 0 || config.dropout >= 1) {
    throw ValidationError("dropout must be in [0, 1)");
  }
  if (config.adaptation) {
    adapt_ = nn::Dense("adapt", config.embedding_dim, config.embedding_dim);
  }
  if (config.variant == Variant::kHybrid) {
    if (config.context_window == 0) throw ValidationError("context window must be at least 1");
    ctx_blstm_ = nn::Blstm("ctx_blstm", kFeatureCount, config.ctx_hidden, config.ctx_layers);
    ctx_reduce_ = nn::Dense("ctx_reduce", 2 * config.ctx_hidden, config.reduced_dim);
  }
}

void HybridModel::init(std::uint64_t seed) {
  Rng rng(seed);
  lm_reduce_.init(rng);
  head_.init(rng);
  if (config_.adaptation) {
    adapt_.weight().value.setIdentity();
    adapt_.bias().value.setZero();
  }
  if (config_.variant == Variant::kHybrid) {
    ctx_blstm_.init(rng);
    ctx_reduce_.init(rng);
  }
}

std::vector<nn::Param*> HybridModel::params() {
  std::vector<nn::Param*> out;
  if (config_.adaptation) {
    for (auto* p : adapt_.params()) out.push_back(p);
  }
  for (auto* p : lm_reduce_.params()) out.push_back(p);
  if (config_.variant == Variant::kHybrid) {
    for (auto* p : ctx_blstm_.params()) out.push_back(p);
    for (auto* p : ctx_reduce_.params()) out.push_back(p);
  }
  for (auto* p : head_.params()) out.push_back(p);
  return out;
}

std::vector<const nn::Param*> HybridModel::params() const {
  std::vector<const nn::Param*> out;
  for (auto* p : const_cast<HybridModel*>(this)->params()) out.push_back(p);
  return out;
}

void HybridModel::set_adaptation_frozen(bool frozen) {
  if (!config_.adaptation) return;
  adapt_.weight().frozen = frozen;
  adapt_.bias().frozen = frozen;
}

void HybridModel::check_inputs(const nn::Matrix& embeddings, const nn::Matrix& context) const {
  if (embeddings.rows() != static_cast<Eigen::Index>(config_.embedding_dim)) {
    throw ShapeError("embeddings have dimension " + std::to_string(embeddings.rows()) +
                     ", model expects " + std::to_string(config_.embedding_dim));
  }
  if (embeddings.cols() == 0) throw ShapeError("sentence without words");
  if (config_.variant == Variant::kHybrid &&
      (context.rows() != static_cast<Eigen::Index>(kFeatureCount) ||
       context.cols() != static_cast<Eigen::Index>(config_.context_window))) {
    throw ShapeError("context must be " + std::to_string(kFeatureCount) + " x " +
                     std::to_string(config_.context_window));
  }
}

nn::Matrix HybridModel::forward(const nn::Matrix& embeddings, const nn::Matrix& context) const {
  check_inputs(embeddings, context);
  nn::Matrix z = config_.adaptation ? lm_reduce_.forward(adapt_.forward(embeddings))
                                    : lm_reduce_.forward(embeddings);
  if (config_.variant == Variant::kHybrid) {
    const nn::Vector c = ctx_reduce_.forward(ctx_blstm_.forward(context));
    z.colwise() += c;
  }
  return head_.forward(z);
}

double HybridModel::accumulate(const nn::Matrix& embeddings, const nn::Matrix& context,
                               const nn::Matrix& target, double scale, Rng* dropout_rng) {
  check_inputs(embeddings, context);
  if (target.rows() != static_cast<Eigen::Index>(kMeasureCount) ||
      target.cols() != embeddings.cols()) {
    throw ShapeError("target must be 8 x " + std::to_string(embeddings.cols()));
  }
  const double p = config_.dropout;
  const bool drop = dropout_rng != nullptr && p > 0.0;

  const nn::Matrix adapted = config_.adaptation ? adapt_.forward(embeddings) : nn::Matrix();
  const nn::Matrix& reduce_in = config_.adaptation ? adapted : embeddings;
  nn::Matrix z = lm_reduce_.forward(reduce_in);
  nn::Matrix z_mask;
  if (drop) {
    z_mask = nn::dropout_mask(z.rows(), z.cols(), p, *dropout_rng);
    z = z.cwiseProduct(z_mask);
  }
  nn::BlstmCache ctx_cache;
  nn::Vector ctx_out, c, c_mask;
  if (config_.variant == Variant::kHybrid) {
    ctx_out = ctx_blstm_.forward(context, &ctx_cache, p, drop ? dropout_rng : nullptr);
    c = ctx_reduce_.forward(ctx_out);
    if (drop) {
      c_mask = nn::dropout_mask(c.rows(), 1, p, *dropout_rng);
      c = c.cwiseProduct(c_mask);
    }
    z.colwise() += c;
  }
  const nn::Matrix y = head_.forward(z);
  const nn::Matrix diff = y - target;
  const double sse = diff.squaredNorm();

  nn::Matrix dz = head_.backward(z, 2.0 * scale * diff);
  if (config_.variant == Variant::kHybrid) {
    nn::Vector dc = dz.rowwise().sum();
    if (drop) dc = dc.cwiseProduct(c_mask);
    const nn::Matrix dh = ctx_reduce_.backward(ctx_out, dc);
    ctx_blstm_.backward(ctx_cache, dh.col(0));
  }
  if (drop) dz = dz.cwiseProduct(z_mask);
  const nn::Matrix da = lm_reduce_.backward(reduce_in, dz);
  if (config_.adaptation && !adapt_.weight().frozen) adapt_.backward(embeddings, da);
  return sse;
}

}  // namespace gazelab
