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
#include <array>
#include <cmath>
#include <numeric>

#include "gazelab/corpus.hpp"
#include "gazelab/error.hpp"
#include "gazelab/random.hpp"

namespace gazelab {

std::vector<std::size_t> split_sizes(std::size_t n, const SplitRatios& ratios) {
  const double r[3] = {ratios.train, ratios.dev, ratios.test};
  for (double x : r) {
    if (!(x >= 0.0)) throw ValidationError("split ratios must be non-negative");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) {
    throw ValidationError("split ratios must sum to 1");
  }
  std::vector<std::size_t> sizes(3);
  double frac[3];
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = r[i] * static_cast<double>(n);
    // Snap values like 8.0000000001 so exact divisions stay exact.
    const double snapped = std::round(exact);
    const double base = std::abs(exact - snapped) < 1e-9 ? snapped : std::floor(exact);
    sizes[i] = static_cast<std::size_t>(base);
    frac[i] = exact - base;
    assigned += sizes[i];
  }
  std::size_t left = n - assigned;
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frac[a] > frac[b]; });
  for (int k = 0; left > 0; k = (k + 1) % 3, --left) ++sizes[order[k]];
  return sizes;
}

CorpusSplit split(const std::vector<Document>& corpus, const SplitRatios& ratios,
                  std::uint64_t seed, SplitMode mode) {
  std::vector<SentenceRef> refs;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (std::size_t s = 0; s < corpus[d].sentences.size(); ++s) {
      refs.push_back({d, s});
    }
  }
  if (refs.empty()) throw ValidationError("cannot split an empty corpus");
  const auto sizes = split_sizes(refs.size(), ratios);
  if (mode == SplitMode::kRandom) {
    Rng rng(seed);
    shuffle(refs, rng);
  }
  CorpusSplit out;
  auto first = refs.begin();
  out.train.assign(first, first + sizes[0]);
  first += sizes[0];
  out.dev.assign(first, first + sizes[1]);
  first += sizes[1];
  out.test.assign(first, refs.end());
  if (mode == SplitMode::kRandom) {
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.dev.begin(), out.dev.end());
    std::sort(out.test.begin(), out.test.end());
  }
  return out;
}

}  // namespace gazelab
