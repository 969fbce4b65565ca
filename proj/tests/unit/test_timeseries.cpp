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


#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "unifit/timeseries.hpp"

namespace unifit {
namespace {

TEST(Periodogram, ConstantSeriesIsZero) {
  const std::vector<double> x(50, 3.25);
  const auto p = periodogram(x);
  ASSERT_EQ(p.q(), 24u);
  for (double v : p.ordinates) EXPECT_NEAR(v, 0.0, 1e-25);
}

TEST(Periodogram, FrequenciesAndLength) {
  for (std::size_t n : {4u, 5u, 100u, 101u}) {
    const auto p = periodogram(std::vector<double>(n, 0.0));
    ASSERT_EQ(p.q(), (n - 1) / 2);
    for (std::size_t i = 0; i < p.q(); ++i) EXPECT_DOUBLE_EQ(p.freqs[i], 2.0 * pi * (i + 1.0) / n);
  }
  EXPECT_THROW(periodogram(std::vector<double>(3, 0.0)), Error);
}

TEST(Periodogram, FourierFrequencyConcentrates) {
  const std::size_t n = 64;
  for (std::size_t j : {1u, 5u, 20u}) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = std::cos(2.0 * pi * j * (t + 1.0) / n);
    const auto p = periodogram(x);
    const double peak = p.ordinates[j - 1];
    EXPECT_NEAR(peak, n / 4.0, 1e-9);
    for (std::size_t i = 0; i < p.q(); ++i) {
      if (i != j - 1) EXPECT_LT(p.ordinates[i], 1e-10 * peak);
    }
  }
}

TEST(Periodogram, ParsevalForOddLength) {
  Xoshiro256 rng(4);
  for (std::size_t n : {9u, 51u, 101u}) {
    const auto x = gaussian_series(n, rng);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const auto p = periodogram(x);
    const double total = std::accumulate(p.ordinates.begin(), p.ordinates.end(), 0.0);
    EXPECT_NEAR(2.0 * total, ss, 1e-8 * ss);
  }
}

TEST(Periodogram, ShiftInvariant) {
  Xoshiro256 rng(5);
  auto x = gaussian_series(80, rng);
  const auto a = periodogram(x);
  for (auto& v : x) v += 17.5;
  const auto b = periodogram(x);
  for (std::size_t i = 0; i < a.q(); ++i) EXPECT_NEAR(a.ordinates[i], b.ordinates[i], 1e-10);
}

TEST(CumulativeRatios, EqualOrdinatesGiveGrid) {
  Periodogram p;
  p.n = 21;
  p.ordinates.assign(10, 2.0);
  const Sample y = cumulative_ratios(p);
  ASSERT_EQ(y.size(), 8u);
  for (std::size_t k = 1; k <= 8; ++k) EXPECT_NEAR(y.sorted()[k - 1], k / 9.0, 1e-15);
}

TEST(CumulativeRatios, DominantFirstOrdinate) {
  Periodogram p;
  p.ordinates.assign(30, 1e-9);
  p.ordinates[0] = 1.0;
  const Sample y = cumulative_ratios(p);
  for (double v : y.sorted()) EXPECT_GT(v, 0.99);
}

TEST(CumulativeRatios, Errors) {
  Periodogram p;
  p.ordinates.assign(5, 0.0);
  try {
    cumulative_ratios(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroDenominator);
  }
  p.ordinates.assign(2, 1.0);
  EXPECT_THROW(cumulative_ratios(p), Error);
}

TEST(CumulativeRatios, OrderedWithinUnitInterval) {
  for (int rep = 0; rep < 50; ++rep) {
    auto rng = substream(3, stream_tag("ratios"), rep);
    const Sample y = cumulative_ratios(periodogram(gaussian_series(100, rng)));
    ASSERT_EQ(y.size(), 47u);
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_EQ(y.values()[i], y.sorted()[i]);  // already ordered
      EXPECT_GE(y.values()[i], 0.0);
      EXPECT_LE(y.values()[i], 1.0);
    }
  }
}

McConfig wn_config() {
  McConfig c;
  c.replicates = 10000;
  c.seed = 2024;
  return c;
}

TEST(Whitenoise, GaussianNoiseRarelyRejectsAtFivePercent) {
  McConfig c = wn_config();
  c.alpha = 0.05;
  int keep = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto rng = substream(600, stream_tag("wn-trial"), trial);
    if (!whitenoise_test(gaussian_series(100, rng), TestId::KS, c).outcome.reject) ++keep;
  }
  EXPECT_GE(keep, 930);
}

TEST(Whitenoise, NullCalibration) {
  const McConfig c = wn_config();
  const auto table = whitenoise_null_table(TestId::T1, 100, c);
  int reject = 0;
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    auto rng = substream(601, stream_tag("wn-cal"), trial);
    const auto x = gaussian_series(100, rng);
    if (table->p_value(pipeline_statistic(TestId::T1, x)) <= c.alpha) ++reject;
  }
  EXPECT_NEAR(reject / static_cast<double>(trials), 0.1, 0.015);
}

TEST(Whitenoise, PureSinusoidHitsMinimumP) {
  std::vector<double> x(100);
  for (std::size_t t = 0; t < x.size(); ++t) x[t] = std::sin((t + 1.0) * pi / 3.0);
  const McConfig c = wn_config();
  for (TestId id : {TestId::KS, TestId::T1}) {
    const auto r = whitenoise_test(x, id, c);
    EXPECT_DOUBLE_EQ(r.outcome.p_value, 1.0 / (c.replicates + 1.0)) << to_string(id);
    EXPECT_EQ(r.q, 49u);
  }
}

TEST(Whitenoise, ShortSeries) {
  EXPECT_THROW(whitenoise_test(std::vector<double>(7, 0.1), TestId::KS, wn_config()), Error);
}

}  // namespace
}  // namespace unifit
