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

#ifndef UNIFIT_QUADRATURE_HPP
#define UNIFIT_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "unifit/error.hpp"
#include "unifit/numeric.hpp"

namespace unifit {

/// Gauss-Legendre nodes and weights mapped to [0,1]. All nodes are interior.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendreRule(std::size_t order) : nodes(order), weights(order) {
    if (order < 1) throw Error(Errc::BadParameter, "Gauss-Legendre order must be >= 1");
    const std::size_t n = order;
    if (n == 1) {
      nodes[0] = 0.5;
      weights[0] = 1.0;
      return;
    }
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
      // Tricomi's initial guess, then Newton on P_n.
      double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double kk = static_cast<double>(k);
          const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = 0.5 * (1.0 - x);
      nodes[n - 1 - i] = 0.5 * (1.0 + x);
      weights[i] = 0.5 * w;
      weights[n - 1 - i] = 0.5 * w;
    }
  }

  std::size_t size() const noexcept { return nodes.size(); }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    CompensatedSum acc;
    const double len = b - a;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(a + len * nodes[i]);
    return len * acc.value();
  }
};

/// Double integral of f over [0,1]^2 by tensor Gauss-Legendre on the two
/// triangles s < t and s > t (collapsed-coordinate map s = t v, and its
/// mirror). Integrands with a kink on the diagonal, such as min(s,t), are
/// smooth on each triangle.
template <class F>
double gauss_quad_2d(F&& f, std::size_t order) {
  if (order < 2) throw Error(Errc::BadParameter, "gauss_quad_2d needs order >= 2");
  const GaussLegendreRule rule(order);
  CompensatedSum acc;
  for (std::size_t i = 0; i < order; ++i) {
    const double t = rule.nodes[i];
    const double wt = rule.weights[i] * t;
    for (std::size_t j = 0; j < order; ++j) {
      const double s = t * rule.nodes[j];
      const double w = wt * rule.weights[j];
      acc += w * (f(s, t) + f(t, s));
    }
  }
  return acc.value();
}

/// Adaptive 1-D quadrature (double-exponential). Never evaluates f at the
/// end points, so integrable end-point singularities are fine.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
  if (!(b > a)) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = integrator.integrate(f, a, b, tol, &error, &l1);
  } catch (const boost::math::evaluation_error& e) {
    // Raised when the integrand returns NaN at an interior abscissa.
    throw Error(Errc::QuadratureDivergence, e.what());
  }
  if (!std::isfinite(value)) {
    throw Error(Errc::QuadratureDivergence, "integrand is not integrable on the interval");
  }
  return value;
}

/// integrate() over consecutive pieces split at the given interior points.
template <class F>
double integrate_split(F&& f, double a, double b, std::vector<double> breaks, double tol = 1e-12) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  CompensatedSum acc;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (hi > lo) acc += integrate(f, lo, hi, tol);
  }
  return acc.value();
}

}  // namespace unifit

#endif  // UNIFIT_QUADRATURE_HPP
