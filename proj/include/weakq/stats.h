// Copyright 2026 The weakq Authors.
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

#ifndef WEAKQ_STATS_H_
#define WEAKQ_STATS_H_

#include <cstddef>
#include <span>

namespace weakq {

struct WilcoxonResult {
  double w = 0.0;        // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  double p_two_tailed = 1.0;
  std::size_t n_effective = 0;  // pairs with a non-zero difference
  bool all_zero = false;

  // W+ - W-; changes sign when the samples are swapped.
  double signed_statistic() const { return w_plus - w_minus; }
};

// Exact Wilcoxon signed-rank test on a - b. Zero differences are dropped,
// tied |d| get midranks, and the two-tailed p-value is
// min(1, 2 * min(P(W+ <= obs), P(W+ >= obs))) under the exact null
// distribution of all 2^n sign assignments. Throws InvalidInputError for
// mismatched or empty samples.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b);

struct TTestResult {
  double t = 0.0;
  double p_two_tailed = 1.0;
  std::size_t df = 0;
};

// Paired Student t-test on a - b. Throws InvalidInputError for fewer than
// two pairs and DegenerateSampleError when the differences have zero
// standard deviation.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace weakq

#endif  // WEAKQ_STATS_H_
