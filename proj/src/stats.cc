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

#include "weakq/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "weakq/errors.h"

namespace weakq {
namespace {

void check_pairs(std::span<const double> a, std::span<const double> b,
                 std::size_t minimum) {
  if (a.size() != b.size()) throw InvalidInputError("samples differ in length");
  if (a.size() < minimum) {
    throw InvalidInputError("need at least " + std::to_string(minimum) +
                            " paired samples");
  }
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b) {
  check_pairs(a, b, 1);
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) d.push_back(a[i] - b[i]);
  }
  WilcoxonResult result;
  result.n_effective = d.size();
  if (d.empty()) {
    result.all_zero = true;
    return result;
  }

  // Midranks of |d|, kept doubled so they stay integral.
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::fabs(d[x]) < std::fabs(d[y]);
  });
  std::vector<long> rank2(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::fabs(d[order[j + 1]]) == std::fabs(d[order[i]])) ++j;
    const long doubled = static_cast<long>(i + 1 + j + 1);  // 2 * midrank
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = doubled;
    i = j + 1;
  }

  long plus2 = 0;
  long total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (d[i] > 0) plus2 += rank2[i];
  }
  result.w_plus = plus2 / 2.0;
  result.w_minus = (total2 - plus2) / 2.0;
  result.w = std::min(result.w_plus, result.w_minus);

  // Null distribution of the doubled W+ over every sign vector, as
  // probabilities (each sign halves the mass).
  std::vector<double> dist(static_cast<std::size_t>(total2) + 1, 0.0);
  dist[0] = 1.0;
  long reach = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long r = rank2[i];
    for (long s = reach; s >= 0; --s) {
      if (dist[s] == 0.0) continue;
      dist[s + r] += 0.5 * dist[s];
      dist[s] *= 0.5;
    }
    reach += r;
  }
  double lower = 0.0;
  double upper = 0.0;
  for (long s = 0; s <= total2; ++s) {
    if (s <= plus2) lower += dist[s];
    if (s >= plus2) upper += dist[s];
  }
  result.p_two_tailed = std::min(1.0, 2.0 * std::min(lower, upper));
  return result;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  check_pairs(a, b, 2);
  const std::size_t n = a.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) {
    throw DegenerateSampleError("paired differences have zero variance");
  }
  TTestResult result;
  result.df = n - 1;
  result.t = mean * std::sqrt(static_cast<double>(n)) / sd;
  boost::math::students_t dist(static_cast<double>(result.df));
  result.p_two_tailed =
      std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(
                              dist, std::fabs(result.t))));
  return result;
}

}  // namespace weakq
