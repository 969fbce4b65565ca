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

// Alternatives to U(0,1) indexed by theta >= 0, with g(x, 0) = 1.
//
// Each family carries its score h(x) = d/dtheta g(x, theta) at 0, the
// cumulative score H(t) = int_0^t h, and the Fisher information
// I = int h^2, so that 2K(theta) = I theta^2 + o(theta^2).
//
//   g1  (theta+1) x^theta                h = 1 + ln x          I = 1
//   g2  1 + theta (2x - 1)               h = 2x - 1            I = 1/3
//   g3  1 - theta + beta theta x^(b-1)   h = beta x^(b-1) - 1  I = b^2/(2b-1) - 1
//   g4  1 - theta pi cos(pi x)           h = -pi cos(pi x)     I = pi^2/2
//
// The location families are the laws of F0(X), X ~ F0(. - theta), for the
// standard Gaussian and Cauchy F0; their scores are Phi^-1(u) and
// -sin(2 pi u).

#ifndef UNIFIT_ALTERNATIVES_HPP
#define UNIFIT_ALTERNATIVES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "unifit/error.hpp"
#include "unifit/moment_tests.hpp"
#include "unifit/numeric.hpp"
#include "unifit/quadrature.hpp"
#include "unifit/rng.hpp"
#include "unifit/sample.hpp"
#include "unifit/spectral.hpp"

namespace unifit {

inline double normal_pdf(double x) noexcept { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi); }
inline double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
inline double normal_quantile(double u) { return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u); }
inline double cauchy_cdf(double x) noexcept { return 0.5 + std::atan(x) / pi; }
inline double cauchy_quantile(double u) noexcept { return std::tan(pi * (u - 0.5)); }

enum class FamilyKind {
  G1Power,
  G2Linear,
  G3Mixture,
  G4LeyPaindaveine,
  LocGauss,
  LocCauchy,
  LocallyOptimal,
};

struct ThetaRange {
  double lo = 0.0;
  double hi = 0.0;
  bool hi_open = false;

  bool contains(double theta) const noexcept {
    return theta >= lo && (hi_open ? theta < hi : theta <= hi);
  }
};

class AlternativeFamily {
 public:
  static AlternativeFamily g1() { return AlternativeFamily(FamilyKind::G1Power); }
  static AlternativeFamily g2() { return AlternativeFamily(FamilyKind::G2Linear); }
  static AlternativeFamily g3(double beta) {
    if (!(beta > 1.0) || !std::isfinite(beta)) {
      throw Error(Errc::BadParameter, "g3 needs beta > 1");
    }
    AlternativeFamily f(FamilyKind::G3Mixture);
    f.beta_ = beta;
    return f;
  }
  static AlternativeFamily g4() { return AlternativeFamily(FamilyKind::G4LeyPaindaveine); }
  static AlternativeFamily loc_gauss() { return AlternativeFamily(FamilyKind::LocGauss); }
  static AlternativeFamily loc_cauchy() { return AlternativeFamily(FamilyKind::LocCauchy); }

  /// g = 1 + theta * scale * f, with f a unit-norm eigenfunction.
  static AlternativeFamily locally_optimal(int m, double scale,
                                           std::shared_ptr<const Eigenfunction> f) {
    if (!f) throw Error(Errc::BadParameter, "locally optimal family needs an eigenfunction");
    if (!(scale > 0.0)) throw Error(Errc::BadParameter, "scale C must be positive");
    AlternativeFamily fam(FamilyKind::LocallyOptimal);
    fam.m_ = m;
    fam.scale_ = scale;
    fam.eigen_ = std::move(f);
    fam.eigen_max_ = fam.eigen_->max_abs();
    return fam;
  }

  FamilyKind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  double scale() const noexcept { return scale_; }
  int order() const noexcept { return m_; }

  /// Specifier as accepted by parse_family().
  std::string name() const {
    switch (kind_) {
      case FamilyKind::G1Power: return "g1";
      case FamilyKind::G2Linear: return "g2";
      case FamilyKind::G3Mixture: {
        std::ostringstream s;
        s << "g3:beta=" << beta_;
        return s.str();
      }
      case FamilyKind::G4LeyPaindaveine: return "g4";
      case FamilyKind::LocGauss: return "loc-gauss";
      case FamilyKind::LocCauchy: return "loc-cauchy";
      case FamilyKind::LocallyOptimal: {
        std::ostringstream s;
        s << "lo:m=" << m_;
        if (scale_ != 1.0) s << ":c=" << scale_;
        return s.str();
      }
    }
    return "?";
  }

  ThetaRange theta_range() const noexcept {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
      case FamilyKind::G1Power: return {0.0, inf, true};
      case FamilyKind::G2Linear: return {0.0, 1.0, false};
      case FamilyKind::G3Mixture: return {0.0, 1.0, false};
      case FamilyKind::G4LeyPaindaveine: return {0.0, 1.0 / pi, false};
      case FamilyKind::LocGauss:
      case FamilyKind::LocCauchy: return {0.0, inf, true};
      case FamilyKind::LocallyOptimal: return {0.0, 1.0 / (scale_ * eigen_max_), true};
    }
    return {};
  }

  void require_theta(double theta) const {
    if (!theta_range().contains(theta)) {
      std::ostringstream msg;
      msg << "theta=" << theta << " outside the range of " << name();
      throw Error(Errc::ThetaOutOfRange, msg.str());
    }
  }

  double density(double x, double theta) const {
    switch (kind_) {
      case FamilyKind::G1Power: return (theta + 1.0) * std::pow(x, theta);
      case FamilyKind::G2Linear: return 1.0 + theta * (2.0 * x - 1.0);
      case FamilyKind::G3Mixture: return 1.0 - theta + beta_ * theta * std::pow(x, beta_ - 1.0);
      case FamilyKind::G4LeyPaindaveine: return 1.0 - theta * pi * std::cos(pi * x);
      case FamilyKind::LocGauss: {
        const double z = normal_quantile(x);
        return std::exp(theta * z - 0.5 * theta * theta);
      }
      case FamilyKind::LocCauchy: {
        const double z = cauchy_quantile(x);
        return (1.0 + z * z) / (1.0 + (z - theta) * (z - theta));
      }
      case FamilyKind::LocallyOptimal: return 1.0 + theta * scale_ * (*eigen_)(x);
    }
    return 0.0;
  }

  double cdf(double x, double theta) const {
    x = std::clamp(x, 0.0, 1.0);
    switch (kind_) {
      case FamilyKind::G1Power: return std::pow(x, theta + 1.0);
      case FamilyKind::G2Linear: return x + theta * (x * x - x);
      case FamilyKind::G3Mixture: return (1.0 - theta) * x + theta * std::pow(x, beta_);
      case FamilyKind::G4LeyPaindaveine: return x - theta * std::sin(pi * x);
      case FamilyKind::LocGauss:
        if (x <= 0.0 || x >= 1.0) return x;
        return normal_cdf(normal_quantile(x) - theta);
      case FamilyKind::LocCauchy:
        if (x <= 0.0 || x >= 1.0) return x;
        return cauchy_cdf(cauchy_quantile(x) - theta);
      case FamilyKind::LocallyOptimal: return x + theta * scale_ * eigen_->antiderivative(x);
    }
    return 0.0;
  }

  /// Inverse CDF.
  double quantile(double u, double theta) const {
    switch (kind_) {
      case FamilyKind::G1Power: return std::pow(u, 1.0 / (theta + 1.0));
      case FamilyKind::G2Linear: {
        // Root of theta x^2 + (1 - theta) x = u, written to stay exact at theta = 0.
        const double b = 1.0 - theta;
        return 2.0 * u / (b + std::sqrt(b * b + 4.0 * theta * u));
      }
      case FamilyKind::LocGauss: return normal_cdf(normal_quantile(u) + theta);
      case FamilyKind::LocCauchy: return cauchy_cdf(cauchy_quantile(u) + theta);
      case FamilyKind::G3Mixture:
      case FamilyKind::G4LeyPaindaveine:
      case FamilyKind::LocallyOptimal: return invert_cdf(u, theta);
    }
    return u;
  }

  double score(double x) const {
    switch (kind_) {
      case FamilyKind::G1Power: return 1.0 + std::log(x);
      case FamilyKind::G2Linear: return 2.0 * x - 1.0;
      case FamilyKind::G3Mixture: return beta_ * std::pow(x, beta_ - 1.0) - 1.0;
      case FamilyKind::G4LeyPaindaveine: return -pi * std::cos(pi * x);
      case FamilyKind::LocGauss: return normal_quantile(x);
      case FamilyKind::LocCauchy: return -std::sin(2.0 * pi * x);
      case FamilyKind::LocallyOptimal: return scale_ * (*eigen_)(x);
    }
    return 0.0;
  }

  double cum_score(double t) const {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    switch (kind_) {
      case FamilyKind::G1Power: return t * std::log(t);
      case FamilyKind::G2Linear: return t * t - t;
      case FamilyKind::G3Mixture: return std::pow(t, beta_) - t;
      case FamilyKind::G4LeyPaindaveine: return -std::sin(pi * t);
      case FamilyKind::LocGauss: return -normal_pdf(normal_quantile(t));
      case FamilyKind::LocCauchy: return (std::cos(2.0 * pi * t) - 1.0) / (2.0 * pi);
      case FamilyKind::LocallyOptimal: return scale_ * eigen_->antiderivative(t);
    }
    return 0.0;
  }

  double fisher() const noexcept {
    switch (kind_) {
      case FamilyKind::G1Power: return 1.0;
      case FamilyKind::G2Linear: return 1.0 / 3.0;
      case FamilyKind::G3Mixture: return beta_ * beta_ / (2.0 * beta_ - 1.0) - 1.0;
      case FamilyKind::G4LeyPaindaveine: return pi * pi / 2.0;
      case FamilyKind::LocGauss: return 1.0;
      case FamilyKind::LocCauchy: return 0.5;
      case FamilyKind::LocallyOptimal: return scale_ * scale_;
    }
    return 0.0;
  }

  /// One draw at theta (range is the caller's responsibility).
  template <class Rng>
  double draw(double theta, Rng& rng) const {
    if (kind_ == FamilyKind::G3Mixture) {
      const double pick = rng.uniform();
      const double u = rng.uniform();
      return pick < theta ? std::pow(u, 1.0 / beta_) : u;
    }
    return quantile(rng.uniform(), theta);
  }

 private:
  explicit AlternativeFamily(FamilyKind kind) : kind_(kind) {}

  // Safeguarded Newton on the (strictly increasing) CDF.
  double invert_cdf(double u, double theta) const {
    double lo = 0.0;
    double hi = 1.0;
    double x = u;
    for (int it = 0; it < 100; ++it) {
      const double r = cdf(x, theta) - u;
      if (r > 0.0) {
        hi = x;
      } else {
        lo = x;
      }
      if (std::abs(r) < 1e-15) break;
      const double d = density(x, theta);
      double next = d > 0.0 ? x - r / d : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - x) < 1e-16) {
        x = next;
        break;
      }
      x = next;
    }
    return x;
  }

  FamilyKind kind_;
  double beta_ = 3.0;
  int m_ = 0;
  double scale_ = 1.0;
  double eigen_max_ = 1.0;
  std::shared_ptr<const Eigenfunction> eigen_;
};

/// g = 1 + theta * C * f0_m for the principal eigenfunction f0_m of T^m.
inline AlternativeFamily locally_optimal_density(KernelOrder m, double theta,
                                                 const SpectralSolution& solution,
                                                 double scale = 1.0) {
  if (!(std::abs(theta) * scale * solution.eigenfunction.max_abs() < 1.0)) {
    throw Error(Errc::DensityNotPositive, "theta * C * max|f| must stay below 1");
  }
  auto f = std::make_shared<const Eigenfunction>(solution.eigenfunction);
  return AlternativeFamily::locally_optimal(m.value(), scale, std::move(f));
}

/// Parses `g1`, `g2`, `g3:beta=3`, `g4`, `loc-gauss`, `loc-cauchy`,
/// `lo:m=1` (optionally `lo:m=2:c=0.5`).
inline AlternativeFamily parse_family(std::string_view spec) {
  std::vector<std::string> parts;
  {
    std::string cur;
    for (char c : spec) {
      if (c == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
  }
  const std::string& head = parts.front();
  auto param = [&](std::string_view key, double fallback) {
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto eq = parts[i].find('=');
      if (eq == std::string::npos) {
        throw Error(Errc::BadParameter, "malformed family parameter '" + parts[i] + "'");
      }
      if (parts[i].substr(0, eq) == key) {
        try {
          return std::stod(parts[i].substr(eq + 1));
        } catch (const std::exception&) {
          throw Error(Errc::BadParameter, "bad value in '" + parts[i] + "'");
        }
      }
    }
    return fallback;
  };
  if (head == "g1") return AlternativeFamily::g1();
  if (head == "g2") return AlternativeFamily::g2();
  if (head == "g3") return AlternativeFamily::g3(param("beta", 3.0));
  if (head == "g4") return AlternativeFamily::g4();
  if (head == "loc-gauss") return AlternativeFamily::loc_gauss();
  if (head == "loc-cauchy") return AlternativeFamily::loc_cauchy();
  if (head == "lo") {
    const double m = param("m", 1.0);
    if (m != std::floor(m) || m < 1.0) throw Error(Errc::BadParameter, "lo needs integer m >= 1");
    const auto sol = solve_tm_eigen(static_cast<int>(m));
    return AlternativeFamily::locally_optimal(static_cast<int>(m), param("c", 1.0),
                                              std::make_shared<const Eigenfunction>(sol.eigenfunction));
  }
  throw Error(Errc::BadParameter, "unknown family '" + std::string(spec) + "'");
}

inline AlternativeFamily family(std::string_view spec) { return parse_family(spec); }

template <class Rng>
Sample sample_from(const AlternativeFamily& fam, double theta, std::size_t n, Rng& rng) {
  fam.require_theta(theta);
  if (n < 1) throw Error(Errc::EmptyInput, "sample size must be >= 1");
  std::vector<double> x(n);
  for (auto& v : x) v = fam.draw(theta, rng);
  return Sample(std::move(x));
}

inline Sample sample_from(const AlternativeFamily& fam, double theta, std::size_t n,
                          std::uint64_t seed) {
  Xoshiro256 rng(seed);
  return sample_from(fam, theta, n, rng);
}

/// K(theta) = int g ln g against the uniform null.
inline double kl_distance(const AlternativeFamily& fam, double theta) {
  fam.require_theta(theta);
  if (theta == 0.0) return 0.0;
  auto integrand = [&](double x) {
    const double g = fam.density(x, theta);
    return g > 0.0 ? g * std::log(g) : 0.0;
  };
  std::vector<double> breaks;
  if (fam.kind() == FamilyKind::LocallyOptimal || fam.kind() == FamilyKind::G4LeyPaindaveine) {
    breaks = {0.25, 0.5, 0.75};
  }
  return integrate_split(integrand, 0.0, 1.0, breaks, 1e-13);
}

enum class G12Normalization { printed, numeric };

/// Second locally optimal density for T^1,
///   c(theta) / (1 - theta cos(pi x)),
/// with c(theta) = 3(2-theta) theta / (2 atan sqrt(3 theta / (2 - theta))) as
/// printed, or the constant that makes it integrate to one.
struct G12Density {
  double theta = 0.0;
  double constant = 1.0;
  bool renormalized = false;

  G12Density(double th, G12Normalization norm) : theta(th) {
    if (!(theta >= 0.0 && theta < 1.0)) throw Error(Errc::ThetaOutOfRange, "need 0 <= theta < 1");
    if (theta == 0.0) return;
    const double mass = integrate([&](double x) { return 1.0 / (1.0 - theta * std::cos(pi * x)); },
                                  0.0, 1.0);
    constant = 3.0 * (2.0 - theta) * theta / (2.0 * std::atan(std::sqrt(3.0 * theta / (2.0 - theta))));
    if (norm == G12Normalization::numeric && std::abs(constant * mass - 1.0) > 1e-8) {
      constant = 1.0 / mass;
      renormalized = true;
    }
  }

  double operator()(double x) const noexcept {
    return constant / (1.0 - theta * std::cos(pi * x));
  }
};

}  // namespace unifit

#endif  // UNIFIT_ALTERNATIVES_HPP
