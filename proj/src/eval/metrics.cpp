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
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "gazelab/csv.hpp"
#include "gazelab/error.hpp"
#include "gazelab/eval.hpp"

namespace gazelab {

MetricReport metrics(std::span<const MeasureValues> pred, std::span<const MeasureValues> target) {
  if (pred.size() != target.size()) {
    throw ShapeError("metrics: " + std::to_string(pred.size()) + " prediction rows for " +
                     std::to_string(target.size()) + " target rows");
  }
  if (pred.empty()) throw ValidationError("metrics: no rows");
  const auto n = static_cast<double>(pred.size());
  MetricReport report;
  report.words = pred.size();
  double mae_sum = 0, r2_sum = 0;
  std::size_t r2_count = 0;
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    double mean = 0;
    for (const auto& t : target) mean += t[m];
    mean /= n;
    double abs_err = 0, ss_res = 0, ss_tot = 0;
    for (std::size_t k = 0; k < pred.size(); ++k) {
      const double e = pred[k][m] - target[k][m];
      abs_err += std::abs(e);
      ss_res += e * e;
      ss_tot += (target[k][m] - mean) * (target[k][m] - mean);
    }
    MeasureMetrics& mm = report.measures[m];
    mm.mae = abs_err / n;
    mm.accuracy = 100.0 - mm.mae;
    if (ss_tot > 0) {
      mm.r2 = 100.0 * (1.0 - ss_res / ss_tot);
      r2_sum += *mm.r2;
      ++r2_count;
    }
    mae_sum += mm.mae;
  }
  report.mae = mae_sum / static_cast<double>(kMeasureCount);
  report.accuracy = 100.0 - report.mae;
  if (r2_count > 0) report.r2 = r2_sum / static_cast<double>(r2_count);
  return report;
}

void write_metrics_csv(std::ostream& out, const MetricReport& report) {
  auto cell = [](const std::optional<double>& v) { return v ? csv::format_double(*v) : ""; };
  csv::write_row(out, {"measure", "MAE", "Accuracy", "R2"});
  for (std::size_t m = 0; m < kMeasureCount; ++m) {
    const auto& mm = report.measures[m];
    csv::write_row(out, {std::string(measure_name(m)), csv::format_double(mm.mae),
                         csv::format_double(mm.accuracy), cell(mm.r2)});
  }
  csv::write_row(out, {"average", csv::format_double(report.mae),
                       csv::format_double(report.accuracy), cell(report.r2)});
}

std::vector<SentenceError> sentence_mae(std::span<const WordKey> words,
                                        std::span<const MeasureValues> pred,
                                        std::span<const MeasureValues> target) {
  if (words.size() != pred.size() || words.size() != target.size()) {
    throw ShapeError("sentence_mae: words, predictions and targets differ in length");
  }
  std::vector<SentenceError> out;
  std::vector<double> counts;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < words.size(); ++k) {
    auto [it, added] = index.emplace(words[k].sentence_id, out.size());
    if (added) {
      out.push_back({words[k].sentence_id, 0.0});
      counts.push_back(0.0);
    }
    for (std::size_t m = 0; m < kMeasureCount; ++m) {
      out[it->second].mae += std::abs(pred[k][m] - target[k][m]);
    }
    counts[it->second] += static_cast<double>(kMeasureCount);
  }
  for (std::size_t s = 0; s < out.size(); ++s) out[s].mae /= counts[s];
  return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("pearson: inputs differ in length");
  if (x.size() < 2) return std::nullopt;
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::size_t> decile_bins(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 10) {
    throw ValidationError("decile analysis needs at least 10 sentences, got " + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::size_t> bin(n);
  std::size_t pos = 0;
  for (std::size_t d = 0; d < 10; ++d) {
    const std::size_t size = n / 10 + (d < n % 10 ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k) bin[order[pos++]] = d;
  }
  return bin;
}

DecileCorrelation decile_correlation(std::span<const double> feature,
                                     std::span<const double> mae) {
  if (feature.size() != mae.size()) {
    throw ShapeError("decile_correlation: feature and MAE lengths differ");
  }
  const auto bin = decile_bins(feature);
  DecileCorrelation out;
  for (std::size_t k = 0; k < feature.size(); ++k) {
    out.mean_mae[bin[k]] += mae[k];
    ++out.sizes[bin[k]];
  }
  for (std::size_t d = 0; d < 10; ++d) out.mean_mae[d] /= static_cast<double>(out.sizes[d]);
  const auto [lo, hi] = std::minmax_element(feature.begin(), feature.end());
  if (*lo == *hi) return out;
  std::array<double, 10> index{};
  std::iota(index.begin(), index.end(), 1.0);
  out.r = pearson(index, out.mean_mae);
  return out;
}

std::vector<DecileRow> decile_table(std::span<const FeatureVector> features,
                                    std::span<const double> mae) {
  const auto& names = feature_names();
  std::vector<DecileRow> rows;
  std::vector<double> column(features.size());
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    for (std::size_t s = 0; s < features.size(); ++s) column[s] = features[s].values[f];
    DecileRow row{names[f], group_of(f), decile_correlation(column, mae), false};
    row.notable = row.result.r && std::abs(*row.result.r) > 0.2;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_decile_csv(std::ostream& out, std::span<const DecileRow> rows) {
  csv::Row header = {"feature", "group", "r", "notable"};
  for (int d = 1; d <= 10; ++d) header.push_back("d" + std::to_string(d));
  csv::write_row(out, header);
  for (const auto& row : rows) {
    csv::Row r = {row.feature, std::string(group_name(row.group)),
                  row.result.r ? csv::format_double(*row.result.r) : "",
                  row.notable ? "1" : "0"};
    for (double v : row.result.mean_mae) r.push_back(csv::format_double(v));
    csv::write_row(out, r);
  }
}

}  // namespace gazelab
