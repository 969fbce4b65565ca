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

// Eigenvalues of the projection operators.
//
// For T^m the integral equation nu f(t) = int phi*_m(s,t) f(s) ds, with
// y(t) = int_0^t f, is equivalent to the Dirichlet problem
//
//   y'' + lambda w(t) y = 0,  y(0) = y(1) = 0,  w(t) = 2 (1-t)^(m-1) / (m+1),
//
// with lambda = 1/nu. It is solved by RK4 shooting from y(0) = 0, y'(0) = 1
// and bisection on the sign of y(1; lambda).

#ifndef UNIFIT_SPECTRAL_HPP
#define UNIFIT_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unifit/error.hpp"
#include "unifit/numeric.hpp"

namespace unifit {

/// y'' + lambda w(t) y = 0 on [0,1] with y(0) = y(1) = 0.
struct BoundaryProblem {
  std::function<double(double)> weight;
};

inline BoundaryProblem tm_boundary_problem(int m) {
  if (m < 1) throw Error(Errc::BadParameter, "boundary problem needs m >= 1");
  const double mm = m;
  return BoundaryProblem{[mm](double t) { return 2.0 * std::pow(1.0 - t, mm - 1.0) / (mm + 1.0); }};
}

struct ShootingOptions {
  double step = 1e-4;  // RK4 step upper bound
  double scan_lo = 1.0;
  double scan_hi = 5000.0;
  double scan_step = 5.0;
  std::size_t grid_size = 2001;
  /// Re-solve with half the step and require agreement within tol.
  bool convergence_check = true;
  int max_bisection = 200;
};

/// Unit-norm eigenfunction f tabulated on a uniform grid together with f'
/// and y = int_0^t f; evaluated between nodes by cubic Hermite interpolation.
class Eigenfunction {
 public:
  Eigenfunction() = default;
  Eigenfunction(std::vector<double> f, std::vector<double> df, std::vector<double> y)
      : f_(std::move(f)), df_(std::move(df)), y_(std::move(y)) {
    if (f_.size() < 2 || df_.size() != f_.size() || y_.size() != f_.size()) {
      throw Error(Errc::BadParameter, "eigenfunction tables must share a grid of >= 2 nodes");
    }
    h_ = 1.0 / static_cast<double>(f_.size() - 1);
  }

  std::size_t grid_size() const noexcept { return f_.size(); }
  double node(std::size_t i) const noexcept { return static_cast<double>(i) * h_; }
  std::span<const double> values() const noexcept { return f_; }

  double operator()(double t) const noexcept { return hermite(f_, df_, t); }
  double derivative_at_node(std::size_t i) const noexcept { return df_[i]; }
  /// y(t) = int_0^t f(s) ds.
  double antiderivative(double t) const noexcept { return hermite(y_, f_, t); }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : f_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  double hermite(const std::vector<double>& v, const std::vector<double>& dv,
                 double t) const noexcept {
    t = std::clamp(t, 0.0, 1.0);
    const std::size_t last = v.size() - 1;
    auto i = static_cast<std::size_t>(t / h_);
    if (i >= last) i = last - 1;
    const double u = (t - static_cast<double>(i) * h_) / h_;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    return h00 * v[i] + h10 * h_ * dv[i] + h01 * v[i + 1] + h11 * h_ * dv[i + 1];
  }

  std::vector<double> f_;
  std::vector<double> df_;
  std::vector<double> y_;
  double h_ = 1.0;
};

struct SpectralSolution {
  double lambda1 = 0.0;
  Eigenfunction eigenfunction;
  std::size_t grid_size = 0;
};

namespace detail {

struct ShotRecord {
  std::vector<double> y;
  std::vector<double> dy;
  double energy = 0.0;  // int_0^1 y'^2
};

inline std::size_t shooting_steps(double step, std::size_t grid_size) {
  const std::size_t intervals = grid_size - 1;
  auto steps = static_cast<std::size_t>(std::ceil(1.0 / step));
  const std::size_t per = (steps + intervals - 1) / intervals;
  return per * intervals;
}

// RK4 on (y, y', E) with E' = y'^2. Records y and y' every `stride` steps
// when `rec` is given. Returns y(1).
inline double shoot(const BoundaryProblem& bp, double lambda, std::size_t steps,
                    std::size_t stride = 0, ShotRecord* rec = nullptr) {
  const double h = 1.0 / static_cast<double>(steps);
  double y = 0.0;
  double dy = 1.0;
  double e = 0.0;
  if (rec) {
    rec->y.assign(1, 0.0);
    rec->dy.assign(1, 1.0);
  }
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const double w0 = bp.weight(t);
    const double wm = bp.weight(t + 0.5 * h);
    const double w1 = bp.weight(t + h);
    const double k1y = dy;
    const double k1v = -lambda * w0 * y;
    const double k1e = dy * dy;
    const double y2 = y + 0.5 * h * k1y;
    const double v2 = dy + 0.5 * h * k1v;
    const double k2y = v2;
    const double k2v = -lambda * wm * y2;
    const double k2e = v2 * v2;
    const double y3 = y + 0.5 * h * k2y;
    const double v3 = dy + 0.5 * h * k2v;
    const double k3y = v3;
    const double k3v = -lambda * wm * y3;
    const double k3e = v3 * v3;
    const double y4 = y + h * k3y;
    const double v4 = dy + h * k3v;
    const double k4y = v4;
    const double k4v = -lambda * w1 * y4;
    const double k4e = v4 * v4;
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    dy += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    e += h / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
    if (rec && (k + 1) % stride == 0) {
      rec->y.push_back(y);
      rec->dy.push_back(dy);
    }
  }
  if (rec) rec->energy = e;
  return y;
}

// Bisection on a sign change of g inside [lo, hi] to relative width tol.
template <class G>
double bisect(G&& g, double lo, double hi, double glo, double tol, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol * std::max(1.0, std::abs(mid))) return mid;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= tol * std::max(1.0, std::abs(0.5 * (lo + hi)))) return 0.5 * (lo + hi);
  throw Error(Errc::ToleranceNotMet, "bisection did not reach the requested tolerance");
}

// First `count` sign-change brackets of g on the scan grid.
template <class G>
std::vector<std::pair<double, double>> scan_brackets(G&& g, double lo, double hi, double step,
                                                     std::size_t count) {
  std::vector<std::pair<double, double>> out;
  double a = lo;
  double ga = g(a);
  while (out.size() < count && a < hi) {
    const double b = std::min(a + step, hi);
    const double gb = g(b);
    if (ga == 0.0 || (ga < 0.0) != (gb < 0.0)) out.emplace_back(a, b);
    a = b;
    ga = gb;
  }
  if (out.size() < count) {
    throw Error(Errc::NoBracketFound, "eigenvalue scan exhausted [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "]");
  }
  return out;
}

inline std::vector<double> refine_eigenvalues(const BoundaryProblem& bp, std::size_t steps,
                                              const std::vector<std::pair<double, double>>& br,
                                              double tol, int max_iter) {
  std::vector<double> out;
  auto g = [&](double lam) { return shoot(bp, lam, steps); };
  for (const auto& [a, b] : br) out.push_back(bisect(g, a, b, g(a), tol, max_iter));
  return out;
}

}  // namespace detail

/// The first `count` eigenvalues of a Dirichlet boundary problem.
inline std::vector<double> boundary_eigenvalues(const BoundaryProblem& bp, std::size_t count,
                                                double tol, const ShootingOptions& opts = {}) {
  if (!(tol > 0.0 && tol <= 1e-4)) throw Error(Errc::BadParameter, "tol must lie in (0, 1e-4]");
  const std::size_t steps = detail::shooting_steps(opts.step, opts.grid_size);
  auto g = [&](double lam) { return detail::shoot(bp, lam, steps); };
  const auto br = detail::scan_brackets(g, opts.scan_lo, opts.scan_hi, opts.scan_step, count);
  auto values = detail::refine_eigenvalues(bp, steps, br, tol * 1e-3, opts.max_bisection);
  if (opts.convergence_check) {
    const auto halved = detail::refine_eigenvalues(bp, 2 * steps, br, tol * 1e-3, opts.max_bisection);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (std::abs(values[i] - halved[i]) > tol * values[i]) {
        throw Error(Errc::ToleranceNotMet, "halving the RK4 step moved eigenvalue " +
                                               std::to_string(i + 1) + " beyond tol");
      }
    }
  }
  return values;
}

inline std::vector<double> tm_eigenvalues(int m, std::size_t count, double tol = 1e-10,
                                          const ShootingOptions& opts = {}) {
  return boundary_eigenvalues(tm_boundary_problem(m), count, tol, opts);
}

/// Principal eigenvalue and normalised eigenfunction f = y' for T^m.
/// tol is relative. The eigenfunction has unit L2 norm, zero mean, f(0) > 0.
inline SpectralSolution solve_tm_eigen(int m, double tol = 1e-10, const ShootingOptions& opts = {}) {
  const BoundaryProblem bp = tm_boundary_problem(m);
  const double lambda = boundary_eigenvalues(bp, 1, tol, opts).front();
  const std::size_t steps = detail::shooting_steps(opts.step, opts.grid_size);
  detail::ShotRecord rec;
  detail::shoot(bp, lambda, steps, steps / (opts.grid_size - 1), &rec);
  const double norm = std::sqrt(rec.energy);
  std::vector<double> f(rec.dy.size());
  std::vector<double> df(rec.dy.size());
  std::vector<double> y(rec.y.size());
  const double h = 1.0 / static_cast<double>(opts.grid_size - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double t = static_cast<double>(i) * h;
    f[i] = rec.dy[i] / norm;
    df[i] = -lambda * bp.weight(t) * rec.y[i] / norm;
    y[i] = rec.y[i] / norm;
  }
  return SpectralSolution{lambda, Eigenfunction(std::move(f), std::move(df), std::move(y)),
                          opts.grid_size};
}

/// Left-hand side of the Hashimoto-Shirahata characteristic equation
/// sin(u) (sqrt(lambda) cos(u) - 6 sqrt(2) sin(u)),  u = sqrt(lambda) / (6 sqrt 2).
inline double hs_characteristic(double lambda) noexcept {
  const double r = std::sqrt(lambda);
  const double c = 6.0 * std::sqrt(2.0);
  const double u = r / c;
  return std::sin(u) * (r * std::cos(u) - c * std::sin(u));
}

/// Positive roots of hs_characteristic in ascending order; both the
/// u = k pi branch and the tan(u) = u branch are bracketed by the scan.
inline std::vector<double> hs_characteristic_roots(std::size_t count, double tol = 1e-12,
                                                   double scan_hi = 50000.0) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw Error(Errc::BadParameter, "tol must lie in (0, 1e-6]");
  auto g = [](double lam) { return hs_characteristic(lam); };
  const auto br = detail::scan_brackets(g, 1.0, scan_hi, 5.0, count);
  std::vector<double> out;
  for (const auto& [a, b] : br) out.push_back(detail::bisect(g, a, b, g(a), tol, 400));
  return out;
}

/// Smallest positive root; equals 72 pi^2.
inline double solve_hs_root(double tol = 1e-12) { return hs_characteristic_roots(1, tol).front(); }

}  // namespace unifit

#endif  // UNIFIT_SPECTRAL_HPP
