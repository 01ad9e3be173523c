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
#include <ostream>

#include "gazelab/csv.hpp"
#include "gazelab/error.hpp"
#include "gazelab/eval.hpp"
#include "gazelab/parallel.hpp"

namespace gazelab {

std::vector<MeasureValues> predict_scaled(const HybridModel& model,
                                          std::span<const Example> examples, std::size_t jobs) {
  std::vector<std::size_t> offset(examples.size() + 1, 0);
  for (std::size_t k = 0; k < examples.size(); ++k) {
    offset[k + 1] = offset[k] + static_cast<std::size_t>(examples[k].embeddings.cols());
  }
  std::vector<MeasureValues> out(offset.back());
  parallel_for(examples.size(), jobs, [&](std::size_t k) {
    const nn::Matrix y = model.forward(examples[k].embeddings, examples[k].context);
    for (Eigen::Index w = 0; w < y.cols(); ++w) {
      for (std::size_t m = 0; m < kMeasureCount; ++m) {
        out[offset[k] + static_cast<std::size_t>(w)][m] =
            std::clamp(y(static_cast<Eigen::Index>(m), w), 0.0, 100.0);
      }
    }
  });
  return out;
}

std::vector<MeasureValues> target_rows(std::span<const Example> examples) {
  std::vector<MeasureValues> out;
  for (const auto& ex : examples) {
    for (Eigen::Index w = 0; w < ex.target.cols(); ++w) {
      MeasureValues v{};
      for (std::size_t m = 0; m < kMeasureCount; ++m) v[m] = ex.target(static_cast<Eigen::Index>(m), w);
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Example> mask_groups(std::span<const Example> examples,
                                 const std::array<bool, kFeatureGroups.size()>& masked) {
  std::vector<Example> out(examples.begin(), examples.end());
  for (std::size_t g = 0; g < kFeatureGroups.size(); ++g) {
    if (!masked[g]) continue;
    const auto slice = group_slice(kFeatureGroups[g]);
    for (auto& ex : out) {
      ex.context.middleRows(static_cast<Eigen::Index>(slice.offset),
                            static_cast<Eigen::Index>(slice.width))
          .setZero();
    }
  }
  return out;
}

namespace {

double r2_of(const HybridModel& model, std::span<const Example> examples, std::size_t jobs) {
  const auto report = metrics(predict_scaled(model, examples, jobs), target_rows(examples));
  return report.r2.value_or(0.0);
}

}  // namespace

AblationReport ablate_groups(const HybridModel& model, std::span<const Example> test,
                             const AblationOptions& options) {
  if (test.empty()) throw ValidationError("ablation: empty test set");
  AblationReport report;
  report.full_r2 = r2_of(model, test, options.jobs);
  for (std::size_t g = 0; g < kFeatureGroups.size(); ++g) {
    std::array<bool, kFeatureGroups.size()> masked{};
    masked[g] = true;
    const auto masked_test = mask_groups(test, masked);
    if (options.retrain) {
      HybridModel fresh(model.config());
      fresh.init(options.init_seed);
      const auto masked_train = mask_groups(options.train_set, masked);
      const auto masked_dev = mask_groups(options.dev_set, masked);
      train(fresh, masked_train, masked_dev, options.train_config);
      report.masked_r2[g] = r2_of(fresh, masked_test, options.jobs);
    } else {
      report.masked_r2[g] = r2_of(model, masked_test, options.jobs);
    }
    report.drop[g] = report.full_r2 - report.masked_r2[g];
  }
  report.most_important = static_cast<std::size_t>(
      std::max_element(report.drop.begin(), report.drop.end()) - report.drop.begin());
  return report;
}

void write_ablation_csv(std::ostream& out, const AblationReport& report) {
  csv::Row header = {"row"};
  for (auto g : kFeatureGroups) header.emplace_back(group_name(g));
  csv::write_row(out, header);
  auto row = [&](const std::string& name, auto value) {
    csv::Row r = {name};
    for (std::size_t g = 0; g < kFeatureGroups.size(); ++g) r.push_back(csv::format_double(value(g)));
    csv::write_row(out, r);
  };
  row("full_r2", [&](std::size_t) { return report.full_r2; });
  row("masked_r2", [&](std::size_t g) { return report.masked_r2[g]; });
  row("drop", [&](std::size_t g) { return report.drop[g]; });
}

// ---------------------------------------------------------------- SP-LIME

double lime_kernel_width(std::size_t d) { return 0.75 * std::sqrt(static_cast<double>(d)); }

double lime_kernel(std::size_t hamming, std::size_t d) {
  const double sigma = lime_kernel_width(d);
  const auto h = static_cast<double>(hamming);
  return std::exp(-(h * h) / (sigma * sigma));
}

namespace {

std::vector<std::vector<bool>> sample_masks(std::size_t d, const LimeOptions& options) {
  if (d == 0) throw ValidationError("lime: no groups to explain");
  if (options.n_samples < d + 1) {
    throw ValidationError("lime: " + std::to_string(options.n_samples) + " samples cannot fit " +
                          std::to_string(d) + " coefficients and an intercept");
  }
  Rng rng(options.seed);
  std::vector<std::vector<bool>> masks;
  for (std::size_t s = 0; s < options.n_samples; ++s) {
    std::vector<bool> mask(d, true);
    if (s > 0) {
      for (std::size_t j = 0; j < d; ++j) mask[j] = uniform01(rng) < 0.5;
    }
    masks.push_back(std::move(mask));
  }
  return masks;
}

// One surrogate per column of y (n_samples x outputs), sharing the masks.
std::vector<LimeExplanation> fit_surrogates(const std::vector<std::vector<bool>>& masks,
                                            const nn::Matrix& y) {
  const std::size_t d = masks.front().size();
  const auto n = static_cast<Eigen::Index>(masks.size());
  const auto cols = static_cast<Eigen::Index>(d + 1);
  nn::Matrix x(n, cols);
  std::vector<double> weights;
  nn::Vector sw(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto& mask = masks[static_cast<std::size_t>(s)];
    const auto off = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), false));
    weights.push_back(lime_kernel(off, d));
    sw[s] = std::sqrt(weights.back());
    x(s, 0) = sw[s];
    for (std::size_t j = 0; j < d; ++j) {
      x(s, static_cast<Eigen::Index>(j + 1)) = mask[j] ? sw[s] : 0.0;
    }
  }
  Eigen::ColPivHouseholderQR<nn::Matrix> qr(x);
  if (qr.rank() < cols) {
    throw ValidationError("lime: singular design; the sampled masks do not separate all " +
                          std::to_string(d) + " groups");
  }
  const nn::Matrix beta = qr.solve(sw.asDiagonal() * y);
  std::vector<LimeExplanation> out(static_cast<std::size_t>(y.cols()));
  for (Eigen::Index k = 0; k < y.cols(); ++k) {
    auto& e = out[static_cast<std::size_t>(k)];
    e.intercept = beta(0, k);
    for (std::size_t j = 0; j < d; ++j) e.coefficients.push_back(beta(static_cast<Eigen::Index>(j + 1), k));
    e.masks = masks;
    e.weights = weights;
  }
  return out;
}

}  // namespace

LimeExplanation lime_local(std::size_t d, const std::function<double(const std::vector<bool>&)>& f,
                           const LimeOptions& options) {
  const auto masks = sample_masks(d, options);
  nn::Matrix y(static_cast<Eigen::Index>(masks.size()), 1);
  for (std::size_t s = 0; s < masks.size(); ++s) y(static_cast<Eigen::Index>(s), 0) = f(masks[s]);
  return fit_surrogates(masks, y).front();
}

std::vector<LimeExplanation> lime_model(const HybridModel& model,
                                        std::span<const Example> examples,
                                        const LimeOptions& options, std::size_t jobs) {
  constexpr std::size_t kGroups = kFeatureGroups.size();
  std::vector<LimeExplanation> out(examples.size() * kMeasureCount);
  parallel_for(examples.size(), jobs, [&](std::size_t k) {
    const Example& ex = examples[k];
    const auto masks = sample_masks(kGroups, {options.n_samples, options.seed + k});
    nn::Matrix y(static_cast<Eigen::Index>(masks.size()), static_cast<Eigen::Index>(kMeasureCount));
    for (std::size_t s = 0; s < masks.size(); ++s) {
      nn::Matrix context = ex.context;
      for (std::size_t g = 0; g < kGroups; ++g) {
        if (masks[s][g]) continue;
        const auto slice = group_slice(kFeatureGroups[g]);
        context.middleRows(static_cast<Eigen::Index>(slice.offset),
                           static_cast<Eigen::Index>(slice.width))
            .setZero();
      }
      const nn::Matrix pred = model.forward(ex.embeddings, context).cwiseMax(0.0).cwiseMin(100.0);
      y.row(static_cast<Eigen::Index>(s)) = pred.rowwise().mean().transpose();
    }
    auto fitted = fit_surrogates(masks, y);
    for (std::size_t m = 0; m < kMeasureCount; ++m) out[k * kMeasureCount + m] = std::move(fitted[m]);
  });
  return out;
}

std::vector<double> splime_global(std::span<const LimeExplanation> explanations) {
  if (explanations.empty()) return {};
  const std::size_t d = explanations.front().coefficients.size();
  std::vector<double> sum(d, 0.0);
  for (const auto& e : explanations) {
    if (e.coefficients.size() != d) throw ShapeError("splime: explanations differ in width");
    for (std::size_t j = 0; j < d; ++j) sum[j] += std::abs(e.coefficients[j]);
  }
  for (double& v : sum) v = std::sqrt(v);
  return sum;
}

}  // namespace gazelab
