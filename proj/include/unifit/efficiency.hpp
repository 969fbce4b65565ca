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

// Local Bahadur efficiency e = lim c_T(theta) / 2K(theta) for close
// alternatives with score h, cumulative score H and Fisher information I.
//
// With c_T(theta) = s_T theta^2 + o(theta^2) and 2K(theta) = I theta^2 + o(theta^2),
// e = s_T / I, where the local slope coefficient s_T is
//
//   degenerate U-statistic   lambda_1 * <h, S h>, S the projection operator
//   Kolmogorov-Smirnov        4 (sup |H|)^2
//   Anderson-Darling          int H^2 / (t (1 - t)) dt
//   maximum correlation       5 (6 int h(u)(1 - u + u^2) du)^2
//
// For a degenerate kernel of degree r the large-deviation coefficient
// lambda_1 / (r (r - 1)) and the drift r (r - 1)/2 <h, S h> theta^2 combine
// so that r drops out; one formula covers T1, T2, HS and CvM.

#ifndef UNIFIT_EFFICIENCY_HPP
#define UNIFIT_EFFICIENCY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "unifit/alternatives.hpp"
#include "unifit/competitors.hpp"
#include "unifit/error.hpp"
#include "unifit/moment_tests.hpp"
#include "unifit/quadrature.hpp"
#include "unifit/spectral.hpp"
#include "unifit/statistics.hpp"

namespace unifit {

enum class SlopeKind { degenerate_kernel, sup_type, quadratic_functional, linear_functional };

struct SlopeModel {
  TestId test = TestId::T1;
  SlopeKind kind = SlopeKind::degenerate_kernel;
  double lambda1 = 0.0;
  std::function<double(double, double)> kernel;
};

struct EfficiencyOptions {
  std::size_t quad_order = 60;  // Gauss-Legendre order per triangle
  std::size_t sup_grid = 10000;
};

struct EfficiencyReport {
  TestId test = TestId::T1;
  std::string family;
  double efficiency = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  double fisher = std::numeric_limits<double>::quiet_NaN();
  double slope_coefficient = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> published;
  /// Value under a competing convention, when one exists (AD only).
  std::optional<double> alternate;
  std::vector<std::string> notes;
  bool ok = true;
};

/// lambda_1 of the T2 boundary problem, solved once per process.
inline double t2_principal_eigenvalue() {
  static const double value = solve_tm_eigen(2).lambda1;
  return value;
}

inline SlopeModel slope_model(TestId id) {
  switch (id) {
    case TestId::T1:
      return {id, SlopeKind::degenerate_kernel, pi * pi,
              [](double s, double t) { return projection_phi_star(KernelOrder(1), s, t); }};
    case TestId::CVM:
      // Same second projection as T1.
      return {id, SlopeKind::degenerate_kernel, pi * pi,
              [](double s, double t) { return projection_phi_star(KernelOrder(1), s, t); }};
    case TestId::T2:
      return {id, SlopeKind::degenerate_kernel, t2_principal_eigenvalue(),
              [](double s, double t) { return projection_phi_star(KernelOrder(2), s, t); }};
    case TestId::HS:
      return {id, SlopeKind::degenerate_kernel, 72.0 * pi * pi,
              [](double s, double t) { return hs_projection(s, t); }};
    case TestId::KS: return {id, SlopeKind::sup_type, 0.0, {}};
    case TestId::AD: return {id, SlopeKind::quadratic_functional, 0.0, {}};
    case TestId::QC: return {id, SlopeKind::linear_functional, 0.0, {}};
  }
  return {};
}

namespace detail {

inline void finish_report(EfficiencyReport& r) {
  r.efficiency = r.slope_coefficient / r.fisher;
  if (r.efficiency > 1.01) {
    std::ostringstream s;
    s << "efficiency " << r.efficiency << " exceeds the Raghavachari bound";
    r.notes.push_back(s.str());
  }
}

}  // namespace detail

/// e = lambda_1 * Delta / I with Delta = int int K(s,t) h(s) h(t) ds dt.
template <class Kernel>
EfficiencyReport eff_degenerate(double lambda1, Kernel&& kernel, const AlternativeFamily& fam,
                                const EfficiencyOptions& opts = {}) {
  if (!(lambda1 > 0.0)) throw Error(Errc::BadParameter, "lambda1 must be positive");
  EfficiencyReport r;
  r.family = fam.name();
  r.fisher = fam.fisher();
  r.delta = gauss_quad_2d([&](double s, double t) { return kernel(s, t) * fam.score(s) * fam.score(t); },
                          opts.quad_order);
  if (r.delta < -1e-10) {
    std::ostringstream s;
    s << "Delta = " << r.delta << " < 0 for a positive semi-definite kernel";
    throw Error(Errc::NegativeDelta, s.str());
  }
  r.delta = std::max(r.delta, 0.0);
  r.slope_coefficient = lambda1 * r.delta;
  detail::finish_report(r);
  return r;
}

/// sup_t |H(t)| on a grid, refined by golden-section search around the maximiser.
inline double sup_abs_cum_score(const AlternativeFamily& fam, std::size_t grid) {
  auto g = [&](double t) { return std::abs(fam.cum_score(t)); };
  std::size_t best = 1;
  double best_val = -1.0;
  for (std::size_t i = 1; i < grid; ++i) {
    const double v = g(static_cast<double>(i) / static_cast<double>(grid));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = static_cast<double>(best - 1) / static_cast<double>(grid);
  double b = static_cast<double>(best + 1) / static_cast<double>(grid);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - ratio * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + ratio * (b - a);
      gd = g(d);
    }
  }
  return std::max({best_val, gc, gd});
}

inline EfficiencyReport eff_ks(const AlternativeFamily& fam, const EfficiencyOptions& opts = {}) {
  EfficiencyReport r;
  r.test = TestId::KS;
  r.family = fam.name();
  r.fisher = fam.fisher();
  r.delta = sup_abs_cum_score(fam, opts.sup_grid);
  r.slope_coefficient = 4.0 * r.delta * r.delta;
  detail::finish_report(r);
  return r;
}

inline EfficiencyReport eff_ad(const AlternativeFamily& fam, const EfficiencyOptions& = {}) {
  EfficiencyReport r;
  r.test = TestId::AD;
  r.family = fam.name();
  r.fisher = fam.fisher();
  r.delta = integrate(
      [&](double t) {
        const double h = fam.cum_score(t);
        return h * h / (t * (1.0 - t));
      },
      0.0, 1.0, 1e-12);
  if (!std::isfinite(r.delta)) throw Error(Errc::QuadratureDivergence, "AD functional diverges");
  r.slope_coefficient = r.delta;
  detail::finish_report(r);
  r.alternate = 2.0 * r.efficiency;
  std::ostringstream s;
  s << "large-deviation coefficient f_A(a) = a with c = 2f(b) gives " << *r.alternate;
  r.notes.push_back(s.str());
  return r;
}

inline EfficiencyReport eff_qc(const AlternativeFamily& fam, const EfficiencyOptions& = {}) {
  EfficiencyReport r;
  r.test = TestId::QC;
  r.family = fam.name();
  r.fisher = fam.fisher();
  std::vector<double> breaks;
  if (fam.kind() == FamilyKind::LocallyOptimal) breaks = {0.25, 0.5, 0.75};
  const double integral =
      integrate_split([&](double u) { return fam.score(u) * (1.0 - u + u * u); }, 0.0, 1.0, breaks,
                      1e-12);
  r.delta = 6.0 * integral;
  r.slope_coefficient = 5.0 * r.delta * r.delta;
  detail::finish_report(r);
  return r;
}

inline EfficiencyReport efficiency(const SlopeModel& model, const AlternativeFamily& fam,
                                   const EfficiencyOptions& opts = {}) {
  EfficiencyReport r;
  switch (model.kind) {
    case SlopeKind::degenerate_kernel: r = eff_degenerate(model.lambda1, model.kernel, fam, opts); break;
    case SlopeKind::sup_type: r = eff_ks(fam, opts); break;
    case SlopeKind::quadratic_functional: r = eff_ad(fam, opts); break;
    case SlopeKind::linear_functional: r = eff_qc(fam, opts); break;
  }
  r.test = model.test;
  return r;
}

inline EfficiencyReport efficiency(TestId id, const AlternativeFamily& fam,
                                   const EfficiencyOptions& opts = {}) {
  return efficiency(slope_model(id), fam, opts);
}

/// Published local efficiencies, keyed by test and family specifier.
inline std::optional<double> published_efficiency(TestId id, std::string_view family) {
  struct Cell {
    TestId test;
    std::string_view family;
    double value;
  };
  static constexpr Cell cells[] = {
      {TestId::AD, "g1", 0.40},          {TestId::KS, "g1", 0.54},
      {TestId::T2, "g1", 0.81},          {TestId::QC, "g1", 0.14},
      {TestId::HS, "g1", 0.37},          {TestId::T1, "g1", 0.73},
      {TestId::AD, "g2", 0.5},           {TestId::KS, "g2", 0.75},
      {TestId::T2, "g2", 0.95},          {TestId::QC, "g2", 0.0},
      {TestId::HS, "g2", 0.66},          {TestId::T1, "g2", 0.98},
      {TestId::AD, "g3:beta=3", 0.48},   {TestId::KS, "g3:beta=3", 0.74},
      {TestId::T2, "g3:beta=3", 0.82},   {TestId::QC, "g3:beta=3", 0.06},
      {TestId::HS, "g3:beta=3", 0.63},   {TestId::T1, "g3:beta=3", 0.94},
      {TestId::AD, "g4", 0.49},          {TestId::KS, "g4", 0.81},
      {TestId::T2, "g4", 0.96},          {TestId::QC, "g4", 0.0},
      {TestId::HS, "g4", 0.76},          {TestId::T1, "g4", 1.0},
      {TestId::AD, "loc-gauss", 0.96},   {TestId::AD, "loc-cauchy", 0.66},
      {TestId::KS, "loc-gauss", 0.64},   {TestId::KS, "loc-cauchy", 0.81},
      {TestId::QC, "loc-gauss", 0.0},    {TestId::QC, "loc-cauchy", 0.0},
      {TestId::HS, "loc-gauss", 0.49},   {TestId::HS, "loc-cauchy", 1.0},
      {TestId::T1, "loc-gauss", 0.955},  {TestId::T1, "loc-cauchy", 0.76},
      {TestId::T2, "loc-gauss", 0.87},   {TestId::T2, "loc-cauchy", 0.72},
  };
  for (const auto& c : cells) {
    if (c.test == id && c.family == family) return c.value;
  }
  return std::nullopt;
}

/// Row-major (test, family) table. A failing cell is reported, not thrown.
inline std::vector<EfficiencyReport> efficiency_table(const std::vector<TestId>& tests,
                                                      const std::vector<AlternativeFamily>& families,
                                                      const EfficiencyOptions& opts = {}) {
  std::vector<EfficiencyReport> out;
  out.reserve(tests.size() * families.size());
  for (TestId id : tests) {
    for (const auto& fam : families) {
      EfficiencyReport r;
      try {
        r = efficiency(id, fam, opts);
      } catch (const std::exception& e) {
        r = EfficiencyReport{};
        r.test = id;
        r.family = fam.name();
        r.ok = false;
        r.notes.push_back(e.what());
      }
      r.published = published_efficiency(id, r.family);
      if (r.published && r.ok) {
        const double diff = std::abs(r.efficiency - *r.published);
        const bool alt_matches =
            r.alternate && std::abs(*r.alternate - *r.published) < diff;
        if (diff > 0.02) {
          std::ostringstream s;
          s << "differs from published " << *r.published << " by " << diff;
          if (alt_matches) s << "; the alternate convention matches better";
          r.notes.push_back(s.str());
        }
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace unifit

#endif  // UNIFIT_EFFICIENCY_HPP
