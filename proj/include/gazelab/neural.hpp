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

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gazelab/random.hpp"

namespace gazelab::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A trainable tensor. Vectors are stored as one-column matrices.
struct Param {
  std::string name;
  Matrix value;
  Matrix grad;
  bool frozen = false;

  Param() = default;
  Param(std::string name, Eigen::Index rows, Eigen::Index cols);

  void zero_grad() { grad.setZero(); }
};

/// Glorot/Xavier uniform: U(-a, a) with a = sqrt(6 / (fan_in + fan_out)).
void glorot_uniform(Matrix& m, std::size_t fan_in, std::size_t fan_out, Rng& rng);

// -------------------------------------------------------------------- dense

/// y = W x + b, applied column-wise to a batch of inputs.
class Dense {
 public:
  Dense() = default;
  Dense(std::string name, std::size_t in, std::size_t out);

  void init(Rng& rng);
  std::size_t in() const { return static_cast<std::size_t>(w_.value.cols()); }
  std::size_t out() const { return static_cast<std::size_t>(w_.value.rows()); }

  Matrix forward(const Matrix& x) const;
  /// Accumulates dW, db from the forward input `x` and returns dL/dx.
  Matrix backward(const Matrix& x, const Matrix& dy);

  Param& weight() { return w_; }
  Param& bias() { return b_; }
  const Param& weight() const { return w_; }
  const Param& bias() const { return b_; }
  std::vector<Param*> params() { return {&w_, &b_}; }

 private:
  std::string name_;
  Param w_;
  Param b_;
};

// --------------------------------------------------------------------- lstm

/// Per-step activations kept for backpropagation through time.
struct LstmCache {
  std::vector<std::size_t> order;  // time index processed at each step
  Matrix x;                        // inputs, I x T, in time order
  Matrix h, c;                     // states after each step, H x T (step order)
  Matrix i, f, g, o;               // gate activations, H x T (step order)
};

/// One LSTM direction. Gate blocks in the stacked weights are ordered
/// input, forget, cell candidate, output.
class LstmDirection {
 public:
  LstmDirection() = default;
  LstmDirection(std::string name, std::size_t in, std::size_t hidden, bool reverse);

  void init(Rng& rng);
  std::size_t in() const { return static_cast<std::size_t>(wx_.value.cols()); }
  std::size_t hidden() const { return static_cast<std::size_t>(wh_.value.cols()); }
  bool reverse() const { return reverse_; }

  /// Returns hidden states H x T aligned to input time steps.
  Matrix forward(const Matrix& x, LstmCache* cache = nullptr) const;
  /// `dh` is dL/dh aligned to time steps; returns dL/dx (I x T).
  Matrix backward(const LstmCache& cache, const Matrix& dh);

  std::vector<Param*> params() { return {&wx_, &wh_, &b_}; }

 private:
  std::string name_;
  bool reverse_ = false;
  Param wx_;  // 4H x I
  Param wh_;  // 4H x H
  Param b_;   // 4H x 1
};

struct BlstmCache {
  std::vector<Matrix> inputs;  // per layer input (after dropout)
  std::vector<Matrix> masks;   // dropout masks on inputs of layers 1..L-1
  std::vector<LstmCache> fwd, bwd;
  std::size_t steps = 0;
};

/// Stacked bidirectional LSTM. Each layer reads the concatenated forward
/// and backward states of the layer below; dropout sits between layers.
/// The output is [h_fwd at the last step | h_bwd at the first step] of the
/// top layer.
class Blstm {
 public:
  Blstm() = default;
  Blstm(std::string name, std::size_t in, std::size_t hidden, std::size_t layers);

  void init(Rng& rng);
  std::size_t in() const { return in_; }
  std::size_t hidden() const { return hidden_; }
  std::size_t layers() const { return fwd_.size(); }
  std::size_t out() const { return 2 * hidden_; }

  /// `x` is in x T. With `rng` set, dropout with rate `p` is applied between
  /// layers (training mode).
  Vector forward(const Matrix& x, BlstmCache* cache = nullptr, double p = 0.0,
                 Rng* rng = nullptr) const;
  Matrix backward(const BlstmCache& cache, const Vector& dout);

  std::vector<Param*> params();

 private:
  std::string name_;
  std::size_t in_ = 0;
  std::size_t hidden_ = 0;
  std::vector<LstmDirection> fwd_, bwd_;
};

// ------------------------------------------------------- dropout and losses

/// Inverted-dropout mask: entries are 0 with probability p, else 1/(1-p).
Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double p, Rng& rng);

/// Mean of squared differences. Throws ShapeError on mismatch.
double mse(const Matrix& pred, const Matrix& target);
/// d mse / d pred.
Matrix mse_grad(const Matrix& pred, const Matrix& target);

// ------------------------------------------------------ optimization

/// lr(t) = peak * t / warmup for t <= warmup, else peak; t counts from 1.
struct WarmupSchedule {
  double peak_lr = 5e-4;
  std::size_t warmup_steps = 5;

  double lr_at(std::size_t t) const;
};

struct AdamWConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 1e-4;
};

/// AdamW with decoupled weight decay:
///   w <- w - lr * m_hat / (sqrt(v_hat) + eps) - lr * wd * w
/// Frozen parameters are skipped and keep their moments.
class AdamW {
 public:
  explicit AdamW(std::vector<Param*> params, AdamWConfig config = {});

  void step(double lr);
  void zero_grad();
  std::size_t steps() const { return t_; }
  const AdamWConfig& config() const { return config_; }

 private:
  std::vector<Param*> params_;
  std::vector<Matrix> m_, v_;
  std::vector<std::size_t> param_steps_;
  AdamWConfig config_;
  std::size_t t_ = 0;
};

}  // namespace gazelab::nn
