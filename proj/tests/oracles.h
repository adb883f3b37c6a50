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

// Slow reference implementations the tests compare the library against.
// They share no code with the library.

#ifndef WEAKQ_TESTS_ORACLES_H_
#define WEAKQ_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace weakq::oracle {

// Start positions where `phrase` occurs in `doc`, checked one by one.
inline std::size_t phrase_count(const std::vector<std::string> &doc,
                                const std::vector<std::string> &phrase) {
  if (phrase.empty() || phrase.size() > doc.size()) return 0;
  std::size_t count = 0;
  for (std::size_t s = 0; s + phrase.size() <= doc.size(); ++s) {
    bool match = true;
    for (std::size_t i = 0; i < phrase.size() && match; ++i) {
      match = doc[s + i] == phrase[i];
    }
    if (match) ++count;
  }
  return count;
}

// Largest number of pairwise disjoint intervals [s, e] with e - s + 1 <=
// width that each contain every term. Solved by DP over start positions:
// best(i) = max(best(i + 1), 1 + best(e + 1)) for every valid [i, e].
inline std::size_t uwindow_count(const std::vector<std::string> &doc,
                                 std::vector<std::string> terms,
                                 std::size_t width) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (terms.empty()) return 0;
  const std::size_t n = doc.size();
  std::vector<std::size_t> best(n + 2, 0);
  for (std::size_t i = n; i-- > 0;) {
    best[i] = best[i + 1];
    for (std::size_t e = i; e < n && e - i + 1 <= width; ++e) {
      bool all = true;
      for (const auto &t : terms) {
        all = all && std::find(doc.begin() + i, doc.begin() + e + 1, t) !=
                         doc.begin() + e + 1;
      }
      if (all) best[i] = std::max(best[i], 1 + best[e + 1]);
    }
  }
  return best[0];
}

struct SignedRankOracle {
  double w_plus = 0;
  double w_minus = 0;
  double p = 1;
  std::size_t n = 0;
};

// Exact signed-rank test by listing all 2^n sign vectors. Ranks are kept
// doubled so midranks stay integral.
inline SignedRankOracle signed_rank(const std::vector<double> &a,
                                    const std::vector<double> &b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] - b[i] != 0) d.push_back(a[i] - b[i]);
  }
  SignedRankOracle out;
  out.n = d.size();
  if (d.empty()) return out;
  std::vector<long> rank2(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    long below = 0, equal = 0;
    for (double x : d) {
      if (std::fabs(x) < std::fabs(d[i])) ++below;
      if (std::fabs(x) == std::fabs(d[i])) ++equal;
    }
    rank2[i] = 2 * below + equal + 1;  // 2 * midrank
  }
  long observed = 0, total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    total += rank2[i];
    if (d[i] > 0) observed += rank2[i];
  }
  std::uint64_t le = 0, ge = 0;
  const std::uint64_t cases = std::uint64_t{1} << d.size();
  for (std::uint64_t mask = 0; mask < cases; ++mask) {
    long w = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (mask >> i & 1) w += rank2[i];
    }
    if (w <= observed) ++le;
    if (w >= observed) ++ge;
  }
  out.w_plus = observed / 2.0;
  out.w_minus = (total - observed) / 2.0;
  out.p = std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) /
                            static_cast<double>(cases));
  return out;
}

// Two-tailed Student t p-value by Simpson integration of the density from
// 0 to |t|.
inline double t_two_tailed(double t, double df) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                   std::sqrt(df * M_PI);
  auto density = [&](double x) {
    return c * std::pow(1 + x * x / df, -(df + 1) / 2);
  };
  const int steps = 200000;
  const double h = std::fabs(t) / steps;
  double sum = density(0) + density(std::fabs(t));
  for (int i = 1; i < steps; ++i) sum += density(i * h) * (i % 2 ? 4 : 2);
  const double half_mass = sum * h / 3;
  return 1 - 2 * half_mass;
}

// Random document over the symbols a..(a + alphabet - 1).
inline std::vector<std::string> random_doc(std::mt19937 &rng,
                                           std::size_t max_len,
                                           int alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::vector<std::string> doc(len(rng));
  for (auto &tok : doc) tok = std::string(1, static_cast<char>('a' + sym(rng)));
  return doc;
}

}  // namespace weakq::oracle

#endif  // WEAKQ_TESTS_ORACLES_H_
