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

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gazelab/neural.hpp"

namespace gazelab::testing {

struct GradCheckResult {
  double worst = 0.0;
  std::string where;
  std::size_t checked = 0;
};

/// Compares the gradients stored in `params` when called with central
/// differences of `loss` (which may itself touch the gradients). Relative
/// error is |a - n| / max(|a| + |n|, floor).
inline GradCheckResult grad_check(const std::vector<nn::Param*>& params,
                                  const std::function<double()>& loss, double step = 1e-5,
                                  double floor = 1e-6) {
  GradCheckResult r;
  std::vector<nn::Matrix> analytic_grads;
  for (const nn::Param* p : params) analytic_grads.push_back(p->grad);
  for (std::size_t i = 0; i < params.size(); ++i) {
    nn::Param* p = params[i];
    for (Eigen::Index k = 0; k < p->value.size(); ++k) {
      double& w = p->value.data()[k];
      const double saved = w;
      w = saved + step;
      const double up = loss();
      w = saved - step;
      const double down = loss();
      w = saved;
      const double numeric = (up - down) / (2 * step);
      const double analytic = analytic_grads[i].data()[k];
      const double err =
          std::abs(analytic - numeric) / std::max(std::abs(analytic) + std::abs(numeric), floor);
      ++r.checked;
      if (err > r.worst) {
        r.worst = err;
        r.where = p->name + "[" + std::to_string(k) + "]";
      }
    }
  }
  return r;
}

}  // namespace gazelab::testing
