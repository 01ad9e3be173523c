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

Param::Param(std::string name, Eigen::Index rows, Eigen::Index cols)
    : name(std::move(name)), value(Matrix::Zero(rows, cols)), grad(Matrix::Zero(rows, cols)) {}

void glorot_uniform(Matrix& m, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = uniform(rng, -a, a);
  }
}

Dense::Dense(std::string name, std::size_t in, std::size_t out)
    : name_(std::move(name)),
      w_(name_ + ".weight", static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)),
      b_(name_ + ".bias", static_cast<Eigen::Index>(out), 1) {}

void Dense::init(Rng& rng) {
  glorot_uniform(w_.value, in(), out(), rng);
  b_.value.setZero();
}

Matrix Dense::forward(const Matrix& x) const {
  if (x.rows() != w_.value.cols()) {
    throw ShapeError(name_ + ": expected input dimension " + std::to_string(in()) +
                     ", got " + std::to_string(x.rows()));
  }
  Matrix y = w_.value * x;
  y.colwise() += b_.value.col(0);
  return y;
}

Matrix Dense::backward(const Matrix& x, const Matrix& dy) {
  if (dy.rows() != w_.value.rows() || dy.cols() != x.cols()) {
    throw ShapeError(name_ + ": gradient shape mismatch");
  }
  w_.grad.noalias() += dy * x.transpose();
  b_.grad.col(0) += dy.rowwise().sum();
  return w_.value.transpose() * dy;
}

Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double p, Rng& rng) {
  if (p < 0.0 || p >= 1.0) throw ValidationError("dropout rate must be in [0, 1)");
  Matrix mask(rows, cols);
  const double keep = 1.0 / (1.0 - p);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) mask(i, j) = uniform01(rng) < p ? 0.0 : keep;
  }
  return mask;
}

double mse(const Matrix& pred, const Matrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw ShapeError("mse: shape mismatch");
  }
  if (pred.size() == 0) return 0.0;
  return (pred - target).squaredNorm() / static_cast<double>(pred.size());
}

Matrix mse_grad(const Matrix& pred, const Matrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw ShapeError("mse: shape mismatch");
  }
  return 2.0 * (pred - target) / static_cast<double>(pred.size());
}

}  // namespace gazelab::nn
