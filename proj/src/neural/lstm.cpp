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
#include "gazelab/neural.hpp"

namespace gazelab::nn {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

LstmDirection::LstmDirection(std::string name, std::size_t in, std::size_t hidden,
                             bool reverse)
    : name_(std::move(name)),
      reverse_(reverse),
      wx_(name_ + ".wx", static_cast<Eigen::Index>(4 * hidden), static_cast<Eigen::Index>(in)),
      wh_(name_ + ".wh", static_cast<Eigen::Index>(4 * hidden),
          static_cast<Eigen::Index>(hidden)),
      b_(name_ + ".bias", static_cast<Eigen::Index>(4 * hidden), 1) {}

void LstmDirection::init(Rng& rng) {
  glorot_uniform(wx_.value, in(), hidden(), rng);
  glorot_uniform(wh_.value, hidden(), hidden(), rng);
  b_.value.setZero();
}

Matrix LstmDirection::forward(const Matrix& x, LstmCache* cache) const {
  const Eigen::Index n_in = wx_.value.cols();
  const Eigen::Index n_h = wh_.value.cols();
  if (x.rows() != n_in) {
    throw ShapeError(name_ + ": expected input dimension " + std::to_string(n_in) + ", got " +
                     std::to_string(x.rows()));
  }
  if (x.cols() == 0) throw ShapeError(name_ + ": empty input sequence");
  const Eigen::Index steps = x.cols();
  Matrix out(n_h, steps);
  Vector h = Vector::Zero(n_h), c = Vector::Zero(n_h);
  if (cache) {
    cache->order.resize(static_cast<std::size_t>(steps));
    cache->x = x;
    for (Matrix* m : {&cache->h, &cache->c, &cache->i, &cache->f, &cache->g, &cache->o}) {
      m->resize(n_h, steps);
    }
  }
  for (Eigen::Index s = 0; s < steps; ++s) {
    const Eigen::Index t = reverse_ ? steps - 1 - s : s;
    Vector a = wx_.value * x.col(t) + wh_.value * h + b_.value.col(0);
    Vector gi(n_h), gf(n_h), gg(n_h), go(n_h);
    for (Eigen::Index k = 0; k < n_h; ++k) {
      gi[k] = sigmoid(a[k]);
      gf[k] = sigmoid(a[n_h + k]);
      gg[k] = std::tanh(a[2 * n_h + k]);
      go[k] = sigmoid(a[3 * n_h + k]);
    }
    c = gf.cwiseProduct(c) + gi.cwiseProduct(gg);
    h = go.cwiseProduct(c.array().tanh().matrix());
    out.col(t) = h;
    if (cache) {
      cache->order[static_cast<std::size_t>(s)] = static_cast<std::size_t>(t);
      cache->h.col(s) = h;
      cache->c.col(s) = c;
      cache->i.col(s) = gi;
      cache->f.col(s) = gf;
      cache->g.col(s) = gg;
      cache->o.col(s) = go;
    }
  }
  return out;
}

Matrix LstmDirection::backward(const LstmCache& cache, const Matrix& dh) {
  const Eigen::Index n_h = wh_.value.cols();
  const Eigen::Index steps = cache.x.cols();
  if (dh.rows() != n_h || dh.cols() != steps) {
    throw ShapeError(name_ + ": gradient shape mismatch");
  }
  Matrix dx(cache.x.rows(), steps);
  Vector dh_next = Vector::Zero(n_h), dc_next = Vector::Zero(n_h);
  Vector da(4 * n_h);
  for (Eigen::Index s = steps - 1; s >= 0; --s) {
    const auto t = static_cast<Eigen::Index>(cache.order[static_cast<std::size_t>(s)]);
    const Vector c = cache.c.col(s);
    const Vector tanh_c = c.array().tanh();
    const Vector c_prev = s > 0 ? Vector(cache.c.col(s - 1)) : Vector::Zero(n_h);
    const Vector h_prev = s > 0 ? Vector(cache.h.col(s - 1)) : Vector::Zero(n_h);
    const auto gi = cache.i.col(s).array();
    const auto gf = cache.f.col(s).array();
    const auto gg = cache.g.col(s).array();
    const auto go = cache.o.col(s).array();

    const Vector d_h = dh.col(t) + dh_next;
    const Vector d_c =
        (d_h.array() * go * (1.0 - tanh_c.array().square()) + dc_next.array()).matrix();
    da.segment(0, n_h) = (d_c.array() * gg * gi * (1.0 - gi)).matrix();
    da.segment(n_h, n_h) = (d_c.array() * c_prev.array() * gf * (1.0 - gf)).matrix();
    da.segment(2 * n_h, n_h) = (d_c.array() * gi * (1.0 - gg.square())).matrix();
    da.segment(3 * n_h, n_h) = (d_h.array() * tanh_c.array() * go * (1.0 - go)).matrix();
    dc_next = (d_c.array() * gf).matrix();

    wx_.grad.noalias() += da * cache.x.col(t).transpose();
    wh_.grad.noalias() += da * h_prev.transpose();
    b_.grad.col(0) += da;
    dx.col(t) = wx_.value.transpose() * da;
    dh_next = wh_.value.transpose() * da;
  }
  return dx;
}

Blstm::Blstm(std::string name, std::size_t in, std::size_t hidden, std::size_t layers)
    : name_(std::move(name)), in_(in), hidden_(hidden) {
  if (layers == 0 || hidden == 0) throw ValidationError(name_ + ": empty BLSTM");
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t layer_in = l == 0 ? in : 2 * hidden;
    const std::string prefix = name_ + ".l" + std::to_string(l);
    fwd_.emplace_back(prefix + ".fwd", layer_in, hidden, false);
    bwd_.emplace_back(prefix + ".bwd", layer_in, hidden, true);
  }
}

void Blstm::init(Rng& rng) {
  for (std::size_t l = 0; l < fwd_.size(); ++l) {
    fwd_[l].init(rng);
    bwd_[l].init(rng);
  }
}

std::vector<Param*> Blstm::params() {
  std::vector<Param*> out;
  for (std::size_t l = 0; l < fwd_.size(); ++l) {
    for (Param* p : fwd_[l].params()) out.push_back(p);
    for (Param* p : bwd_[l].params()) out.push_back(p);
  }
  return out;
}

Vector Blstm::forward(const Matrix& x, BlstmCache* cache, double p, Rng* rng) const {
  const auto n_h = static_cast<Eigen::Index>(hidden_);
  const Eigen::Index steps = x.cols();
  if (cache) {
    *cache = BlstmCache{};
    cache->steps = static_cast<std::size_t>(steps);
    cache->fwd.resize(fwd_.size());
    cache->bwd.resize(bwd_.size());
  }
  Matrix input = x;
  for (std::size_t l = 0; l < fwd_.size(); ++l) {
    if (l > 0 && rng && p > 0.0) {
      Matrix mask = dropout_mask(input.rows(), input.cols(), p, *rng);
      input = input.cwiseProduct(mask);
      if (cache) cache->masks.push_back(std::move(mask));
    } else if (l > 0 && cache) {
      cache->masks.emplace_back();
    }
    Matrix hf = fwd_[l].forward(input, cache ? &cache->fwd[l] : nullptr);
    Matrix hb = bwd_[l].forward(input, cache ? &cache->bwd[l] : nullptr);
    if (cache) cache->inputs.push_back(input);
    input.resize(2 * n_h, steps);
    input << hf, hb;
  }
  Vector out(2 * n_h);
  out << input.block(0, steps - 1, n_h, 1), input.block(n_h, 0, n_h, 1);
  return out;
}

Matrix Blstm::backward(const BlstmCache& cache, const Vector& dout) {
  const auto n_h = static_cast<Eigen::Index>(hidden_);
  const auto steps = static_cast<Eigen::Index>(cache.steps);
  if (dout.size() != 2 * n_h) throw ShapeError(name_ + ": gradient shape mismatch");
  Matrix d_states = Matrix::Zero(2 * n_h, steps);
  d_states.block(0, steps - 1, n_h, 1) = dout.head(n_h);
  d_states.block(n_h, 0, n_h, 1) = dout.tail(n_h);
  for (std::size_t l = fwd_.size(); l-- > 0;) {
    Matrix dx = fwd_[l].backward(cache.fwd[l], d_states.topRows(n_h));
    dx += bwd_[l].backward(cache.bwd[l], d_states.bottomRows(n_h));
    if (l > 0 && cache.masks[l - 1].size() > 0) dx = dx.cwiseProduct(cache.masks[l - 1]);
    d_states = std::move(dx);
  }
  return d_states;
}

}  // namespace gazelab::nn
