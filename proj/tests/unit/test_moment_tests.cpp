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

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "unifit/moment_tests.hpp"
#include "unifit/montecarlo.hpp"
#include "unifit/quadrature.hpp"
#include "unifit/rng.hpp"

namespace unifit {
namespace {

// Kernel straight from its definition: average squared leave-one-out minima,
// minus 2/(m+1) times the second smallest, plus 2/((m+1)(m+2)).
double kernel_by_definition(int m, std::vector<double> x) {
  const double d = m + 1.0;
  double sq = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double lo = 2.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i != j) lo = std::min(lo, x[i]);
    }
    sq += lo * lo;
  }
  std::sort(x.begin(), x.end());
  return sq / d - 2.0 / d * x[1] + 2.0 / (d * (m + 2.0));
}

// Gauss-Legendre on each piece between sorted breakpoints; exact for
// piecewise polynomials of modest degree.
template <class F>
double piecewise_gl(F&& f, std::vector<double> breaks) {
  static const GaussLegendreRule rule(12);
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) acc += rule.integrate(f, breaks[i], breaks[i + 1]);
  }
  return acc;
}

TEST(CharacterizationResidual, UniformMomentsGiveZero) {
  EXPECT_NEAR(characterization_residual(1, 1, 1.0 / 3.0, 2.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(characterization_residual(1, 2, 1.0 / 6.0, 0.5), 0.0, 1e-15);
  // E X_{k,n}^2 = k(k+1)/((n+1)(n+2)),  E X_{k+1,n+1} = (k+1)/(n+2).
  for (int n = 1; n <= 12; ++n) {
    for (int k = 1; k <= n; ++k) {
      const double ex2 = k * (k + 1.0) / ((n + 1.0) * (n + 2.0));
      const double ex = (k + 1.0) / (n + 2.0);
      EXPECT_NEAR(characterization_residual(k, n, ex2, ex), 0.0, 1e-14) << k << "," << n;
    }
  }
}

TEST(CharacterizationResidual, NonUniformMomentsGiveNonZero) {
  EXPECT_GT(std::abs(characterization_residual(1, 1, 0.2, 2.0 / 3.0)), 1e-3);
}

TEST(CharacterizationResidual, InvalidIndices) {
  for (auto [k, n] : {std::pair{0, 3}, std::pair{4, 3}}) {
    try {
      characterization_residual(k, n, 0.0, 0.0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidIndices);
    }
  }
}

TEST(KernelPhi, Examples) {
  const std::vector<double> a{0.2, 0.8};
  EXPECT_NEAR(kernel_phi(KernelOrder(1), a), -0.126667, 1e-6);
  const std::vector<double> b{0.5, 0.5};
  EXPECT_NEAR(kernel_phi(KernelOrder(1), b), 1.0 / 12.0, 1e-15);
  const std::vector<double> c{0.1, 0.5, 0.9};
  EXPECT_NEAR(kernel_phi(KernelOrder(2), c), -0.076667, 1e-6);
}

TEST(KernelPhi, MatchesDefinitionAndIsSymmetric) {
  std::mt19937_64 gen(11);
  for (int m = 1; m <= 2; ++m) {
    for (int rep = 0; rep < 200; ++rep) {
      auto x = testing::uniforms(static_cast<std::size_t>(m + 1), gen);
      const double ref = kernel_by_definition(m, x);
      EXPECT_NEAR(kernel_phi(KernelOrder(m), x), ref, 1e-15);
      std::reverse(x.begin(), x.end());
      EXPECT_NEAR(kernel_phi(KernelOrder(m), x), ref, 1e-15);
    }
  }
}

TEST(KernelPhi, ArityAndOrderErrors) {
  const std::vector<double> three{0.1, 0.2, 0.3};
  try {
    kernel_phi(KernelOrder(1), three);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ArityMismatch);
  }
  EXPECT_THROW(KernelOrder(3), Error);
  EXPECT_THROW(KernelOrder(0), Error);
}

TEST(TStatistic, SmallCases) {
  EXPECT_NEAR(t_statistic(make_sample({0.2, 0.8}), KernelOrder(1)), -0.126667, 1e-6);
  const Sample three = make_sample({0.25, 0.5, 0.75});
  const double pairs = (kernel_by_definition(1, {0.25, 0.5}) + kernel_by_definition(1, {0.25, 0.75}) +
                        kernel_by_definition(1, {0.5, 0.75})) /
                       3.0;
  EXPECT_NEAR(t_statistic(three, KernelOrder(1)), pairs, 1e-15);
  EXPECT_NEAR(t_statistic(three, KernelOrder(1), EvalMode::naive), pairs, 1e-15);
  const Sample triple = make_sample({0.9, 0.1, 0.5});
  const double k = kernel_by_definition(2, {0.9, 0.1, 0.5});
  EXPECT_NEAR(t_statistic(triple, KernelOrder(2)), k, 1e-15);
  EXPECT_NEAR(t_statistic(triple, KernelOrder(2), EvalMode::naive), k, 1e-15);
}

TEST(TStatistic, FastEqualsNaiveEnumeration) {
  std::mt19937_64 gen(2026);
  std::uniform_int_distribution<std::size_t> size(3, 30);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const Sample s(testing::uniforms(size(gen), gen));
    for (int m = 1; m <= 2; ++m) {
      const double fast = t_statistic(s, KernelOrder(m), EvalMode::fast);
      const double naive = t_statistic(s, KernelOrder(m), EvalMode::naive);
      worst = std::max(worst, testing::rel_diff(fast, naive));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(TStatistic, FastMatchesPrintedSortedForms) {
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 3 + rep;
    const Sample s(testing::uniforms(n, gen));
    const auto x = s.sorted();
    const double nn = static_cast<double>(n);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      a += x[i - 1] * x[i - 1];
      b += (i - 1.0) * x[i - 1];
    }
    const double t1 = ((nn - 1.0) / 2.0 * a - b) / binom(n, 2) + 1.0 / 3.0;
    EXPECT_NEAR(t_statistic(s, KernelOrder(1)), t1, 1e-13);
    double c = 0.0, d = 0.0, e = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const double v = x[i - 1];
      c += binom(n - i, 2) * v * v;
      d += (i - 1.0) * (nn - i) * v * v;
      e += (i - 1.0) * (nn - i) * v;
    }
    const double t2 = (2.0 / 3.0 * c + d / 3.0 - 2.0 / 3.0 * e) / binom(n, 3) + 1.0 / 6.0;
    EXPECT_NEAR(t_statistic(s, KernelOrder(2)), t2, 1e-13);
  }
}

TEST(TStatistic, SizeErrors) {
  try {
    t_statistic(make_sample({0.1, 0.2}), KernelOrder(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SampleTooSmall);
  }
  std::mt19937_64 gen(1);
  const Sample big(testing::uniforms(81, gen));
  EXPECT_THROW(t_statistic(big, KernelOrder(2), EvalMode::naive), Error);
  EXPECT_NO_THROW(t_statistic(big, KernelOrder(2), EvalMode::fast));
  const Sample huge(testing::uniforms(5000, gen));
  EXPECT_NO_THROW(t_statistic(huge, KernelOrder(1)));
}

TEST(TStatistic, PermutationInvariant) {
  std::mt19937_64 gen(9);
  auto v = testing::uniforms(25, gen);
  const double a = t_statistic(Sample(v), KernelOrder(2));
  std::shuffle(v.begin(), v.end(), gen);
  EXPECT_EQ(a, t_statistic(Sample(v), KernelOrder(2)));
}

TEST(TStatistic, NullMeanIsZero) {
  for (int m = 1; m <= 2; ++m) {
    const std::size_t reps = 100000;
    const auto stats = parallel_replicates(reps, 1, [&](std::size_t i) {
      auto rng = substream(77, stream_tag("tmean"), i);
      return t_statistic(uniform_sample(20, rng), KernelOrder(m));
    });
    const double mean = std::accumulate(stats.begin(), stats.end(), 0.0) / reps;
    double var = 0.0;
    for (double s : stats) var += (s - mean) * (s - mean);
    const double se = std::sqrt(var / (reps - 1.0) / reps);
    EXPECT_LT(std::abs(mean), 4.0 * se) << "m=" << m;
  }
}

TEST(Projection, Examples) {
  EXPECT_NEAR(projection_phi_star(KernelOrder(1), 0.5, 0.5), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(projection_phi_star(KernelOrder(2), 0.0, 0.0), projection_phi_star_general(2, 0.0, 0.0), 1e-15);
}

TEST(Projection, SpecialisedAgreesWithGeneral) {
  for (int m = 1; m <= 2; ++m) {
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const double s = i / 20.0, t = j / 20.0;
        EXPECT_NEAR(projection_phi_star(KernelOrder(m), s, t), projection_phi_star_general(m, s, t), 1e-14);
      }
    }
  }
}

TEST(Projection, Symmetric) {
  std::mt19937_64 gen(4);
  for (int m = 1; m <= 5; ++m) {
    const ProjectionKernel k(m);
    for (int rep = 0; rep < 100; ++rep) {
      const auto st = testing::uniforms(2, gen);
      EXPECT_NEAR(k(st[0], st[1]), k(st[1], st[0]), 1e-14);
    }
  }
}

TEST(Projection, Degenerate) {
  for (int m = 1; m <= 4; ++m) {
    const ProjectionKernel k(m);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      const double v = integrate_split([&](double s) { return k(s, t); }, 0.0, 1.0, {t}, 1e-13);
      worst = std::max(worst, std::abs(v));
    }
    EXPECT_LT(worst, 1e-8) << "m=" << m;
  }
}

// phi*_m(s,t) = E Phi_m(s, t, U_1, ..., U_{m-1}), the kernel being
// piecewise polynomial so nested piecewise Gauss-Legendre is exact.
TEST(Projection, EqualsConditionalExpectationOfKernel) {
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 20; ++rep) {
    const auto st = testing::uniforms(2, gen);
    const double s = st[0], t = st[1];
    EXPECT_NEAR(projection_phi_star(KernelOrder(1), s, t), kernel_by_definition(1, {s, t}), 1e-15);
    const double e2 = piecewise_gl([&](double u) { return kernel_by_definition(2, {s, t, u}); }, {s, t});
    EXPECT_NEAR(projection_phi_star(KernelOrder(2), s, t), e2, 1e-13);
    const double e3 = piecewise_gl(
        [&](double u) {
          return piecewise_gl([&](double v) { return kernel_by_definition(3, {s, t, u, v}); }, {s, t, u});
        },
        {s, t});
    EXPECT_NEAR(projection_phi_star_general(3, s, t), e3, 1e-12);
  }
}

}  // namespace
}  // namespace unifit
