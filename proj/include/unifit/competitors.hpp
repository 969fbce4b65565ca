// Copyright 2026 The unifit Authors.
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

// Classical uniformity statistics used as benchmarks.
//
// KS, AD and CvM are returned in their usual n-scaled forms
//   D_n = sup |F_n - t|,  A^2_n = n int (F_n - t)^2 / (t(1-t)) dt,
//   W^2_n = n int (F_n - t)^2 dt,
// i.e. A^2 and W^2 here equal n times the bare integrals. The efficiency
// module works with population functionals and never calls these.

#ifndef UNIFIT_COMPETITORS_HPP
#define UNIFIT_COMPETITORS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "unifit/error.hpp"
#include "unifit/moment_tests.hpp"
#include "unifit/numeric.hpp"
#include "unifit/sample.hpp"

namespace unifit {

enum class CompetitorId { KS, AD, CVM, QC, HS };

inline double ks_statistic(const Sample& sample) {
  const auto x = sample.sorted();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - x[i];
    const double below = x[i] - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

struct AdOptions {
  /// Clamp observations into [eps, 1 - eps] before taking logs. When false,
  /// an observation at exactly 0 or 1 raises DegenerateValue.
  bool clamp = true;
  double eps = 1e-12;
};

inline double ad_statistic(const Sample& sample, const AdOptions& opts = {}) {
  const auto x = sample.sorted();
  const std::size_t n = x.size();
  auto guard = [&](double v) {
    if (opts.clamp) return std::clamp(v, opts.eps, 1.0 - opts.eps);
    if (v <= 0.0 || v >= 1.0) {
      throw Error(Errc::DegenerateValue, "Anderson-Darling needs values strictly inside (0,1)");
    }
    return v;
  };
  CompensatedSum acc;
  for (std::size_t i = 1; i <= n; ++i) {
    const double lo = guard(x[i - 1]);
    const double hi = guard(x[n - i]);
    acc += (2.0 * static_cast<double>(i) - 1.0) * (std::log(lo) + std::log1p(-hi));
  }
  const double nn = static_cast<double>(n);
  return -nn - acc.value() / nn;
}

inline double cvm_statistic(const Sample& sample) {
  const auto x = sample.sorted();
  const double n = static_cast<double>(x.size());
  CompensatedSum acc;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const double r = x[i - 1] - (2.0 * static_cast<double>(i) - 1.0) / (2.0 * n);
    acc += r * r;
  }
  return 1.0 / (12.0 * n) + acc.value();
}

/// Maximum-correlation statistic |6/n^2 sum (2i - n - 1) X_(i) - 1|.
inline double qc_statistic(const Sample& sample) {
  const auto x = sample.sorted();
  const double n = static_cast<double>(x.size());
  CompensatedSum acc;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    acc += (2.0 * static_cast<double>(i) - n - 1.0) * x[i - 1];
  }
  return std::abs(6.0 / (n * n) * acc.value() - 1.0);
}

/// Hashimoto-Shirahata kernel. It is already symmetric: the pairwise term
/// is, and the second term runs over all three pairings of the four points.
inline double hs_kernel(double x1, double x2, double x3, double x4) noexcept {
  auto sq = [](double v) { return v * v; };
  const double spread = sq(x1 - x2) + sq(x1 - x3) + sq(x1 - x4) + sq(x2 - x3) + sq(x2 - x4) +
                        sq(x3 - x4);
  auto pairing = [](double a, double b, double c, double d) {
    return (std::max(a, b) - std::max(c, d)) * (std::min(a, b) - std::min(c, d));
  };
  const double cross = pairing(x1, x2, x3, x4) + pairing(x1, x3, x2, x4) + pairing(x1, x4, x2, x3);
  return spread / 36.0 - cross / 6.0;
}

inline constexpr std::size_t hs_naive_cap = 120;

namespace detail {

// Sum of hs_kernel over all 4-subsets of sorted data in O(n).
//
// The pairwise term sums to C(n-2,2) * (n sum x^2 - (sum x)^2). Each pairing
// {P|Q} contributes max(P)min(P) + max(Q)min(Q) - max(P)min(Q) - max(Q)min(P);
// the first two add up to C(n-2,2) e2 over all subsets, and the cross terms
// run once over every ordered pair of disjoint pairs (P, Q). That sum is
// (sum_P max P)(sum_Q min Q) with the overlapping P = Q and |P & Q| = 1
// terms removed, which is where the per-element M_k m_k sums come from.
inline double hs_subset_sum_sorted(std::span<const double> x) {
  const std::size_t n = x.size();
  CompensatedSum total;
  CompensatedSum total_sq;
  for (double v : x) {
    total += v;
    total_sq += v * v;
  }
  const double s1 = total.value();
  const double s2 = total_sq.value();
  const double e2 = 0.5 * (s1 * s1 - s2);

  CompensatedSum sum_max;
  CompensatedSum sum_min;
  for (std::size_t k = 1; k <= n; ++k) {
    sum_max += static_cast<double>(k - 1) * x[k - 1];
    sum_min += static_cast<double>(n - k) * x[k - 1];
  }

  CompensatedSum shared;
  double prefix = 0.0;
  double suffix = s1;
  for (std::size_t k = 1; k <= n; ++k) {
    const double v = x[k - 1];
    suffix -= v;
    const double max_with_others = static_cast<double>(k - 1) * v + suffix;
    const double min_with_others = prefix + static_cast<double>(n - k) * v;
    shared += max_with_others * min_with_others;
    prefix += v;
  }
  const double disjoint = sum_max.value() * sum_min.value() + e2 - shared.value();
  const double c = binom(n - 2, 2);
  return c * (static_cast<double>(n) * s2 - s1 * s1) / 36.0 - (c * e2 - disjoint) / 6.0;
}

}  // namespace detail

/// C_n: average of hs_kernel over all 4-subsets.
inline double hs_statistic(const Sample& sample, EvalMode mode = EvalMode::fast) {
  const std::size_t n = sample.size();
  if (n < 4) throw Error(Errc::SampleTooSmall, "Hashimoto-Shirahata statistic needs n >= 4");
  const auto x = sample.sorted();
  if (mode == EvalMode::fast) return detail::hs_subset_sum_sorted(x) / binom(n, 4);
  if (n > hs_naive_cap) {
    throw Error(Errc::SampleTooLarge,
                "naive Hashimoto-Shirahata is capped at n=" + std::to_string(hs_naive_cap));
  }
  CompensatedSum acc;
  for_each_combination(n, 4, [&](const std::vector<std::size_t>& i) {
    acc += hs_kernel(x[i[0]], x[i[1]], x[i[2]], x[i[3]]);
  });
  return acc.value() / binom(n, 4);
}

/// h*(s1, s2) = E[h | X1 = s1, X2 = s2] under the null.
inline double hs_projection(double s1, double s2) noexcept {
  return (s1 * s1 * s2 + s2 * s2 * s1) / 6.0 + std::min(s1, s2) / 18.0 - 2.0 * s1 * s2 / 9.0 -
         s1 * s1 * s2 * s2 / 6.0;
}

}  // namespace unifit

#endif  // UNIFIT_COMPETITORS_HPP
