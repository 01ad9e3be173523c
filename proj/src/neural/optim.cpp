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

#include "gazelab/error.hpp"
#include "gazelab/neural.hpp"

namespace gazelab::nn {

double WarmupSchedule::lr_at(std::size_t t) const {
  if (t == 0) throw ValidationError("lr_at: steps count from 1");
  if (warmup_steps == 0 || t >= warmup_steps) return peak_lr;
  return peak_lr * (static_cast<double>(t) / static_cast<double>(warmup_steps));
}

AdamW::AdamW(std::vector<Param*> params, AdamWConfig config)
    : params_(std::move(params)), config_(config) {
  for (const Param* p : params_) {
    m_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
  }
  param_steps_.assign(params_.size(), 0);
}

void AdamW::step(double lr) {
  ++t_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Param& p = *params_[k];
    if (p.frozen) continue;
    const double t = static_cast<double>(++param_steps_[k]);
    m_[k] = b1 * m_[k] + (1.0 - b1) * p.grad;
    v_[k] = b2 * v_[k] + (1.0 - b2) * p.grad.cwiseAbs2();
    const double c1 = 1.0 - std::pow(b1, t);
    const double c2 = 1.0 - std::pow(b2, t);
    const auto m_hat = m_[k].array() / c1;
    const auto v_hat = v_[k].array() / c2;
    p.value.array() -= lr * m_hat / (v_hat.sqrt() + config_.eps) +
                       lr * config_.weight_decay * p.value.array();
  }
}

void AdamW::zero_grad() {
  for (Param* p : params_) p->zero_grad();
}

}  // namespace gazelab::nn
