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

// Hidden periodicity test: the normalised cumulative periodogram of white
// noise behaves like ordered uniforms, so any uniformity statistic applies.
// The ratios are not an i.i.d. sample, so the null table is simulated through
// the whole pipeline under Gaussian white noise.

#ifndef UNIFIT_TIMESERIES_HPP
#define UNIFIT_TIMESERIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "unifit/error.hpp"
#include "unifit/montecarlo.hpp"
#include "unifit/numeric.hpp"
#include "unifit/rng.hpp"
#include "unifit/sample.hpp"
#include "unifit/statistics.hpp"

namespace unifit {

struct Periodogram {
  std::size_t n = 0;
  std::vector<double> freqs;      // 2 pi i / n, i = 1..q
  std::vector<double> ordinates;  // I(freqs[i-1])
  std::size_t q() const noexcept { return ordinates.size(); }
};

/// I(w_i) = |sum_t (x_t - mean) e^{-i w_i t}|^2 / n for i = 1..floor((n-1)/2).
inline Periodogram periodogram(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 4) throw Error(Errc::SeriesTooShort, "periodogram needs at least 4 points");
  CompensatedSum total;
  for (double x : series) total += x;
  const double mean = total.value() / static_cast<double>(n);
  std::vector<double> centred(n);
  for (std::size_t t = 0; t < n; ++t) centred[t] = series[t] - mean;

  std::vector<double> c(n), s(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = 2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
    c[k] = std::cos(a);
    s[k] = std::sin(a);
  }
  Periodogram p;
  p.n = n;
  const std::size_t q = (n - 1) / 2;
  p.freqs.resize(q);
  p.ordinates.resize(q);
  for (std::size_t i = 1; i <= q; ++i) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t t = 1; t <= n; ++t) {
      const std::size_t k = (i * t) % n;
      re += centred[t - 1] * c[k];
      im -= centred[t - 1] * s[k];
    }
    p.freqs[i - 1] = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
    p.ordinates[i - 1] = (re * re + im * im) / static_cast<double>(n);
  }
  return p;
}

/// Y_k = sum_{i<=k} I(w_i) / sum_{i<=q-1} I(w_i) for k = 1..q-2.
/// Y_{q-1} = 1 always and is left out.
inline Sample cumulative_ratios(const Periodogram& p) {
  const std::size_t q = p.q();
  if (q < 3) throw Error(Errc::SeriesTooShort, "need q >= 3 Fourier frequencies");
  CompensatedSum denom;
  for (std::size_t i = 0; i + 1 < q; ++i) denom += p.ordinates[i];
  const double d = denom.value();
  if (!(d > 0.0)) throw Error(Errc::ZeroDenominator, "periodogram ordinates sum to zero");
  std::vector<double> y(q - 2);
  CompensatedSum run;
  for (std::size_t k = 0; k + 2 < q; ++k) {
    run += p.ordinates[k];
    y[k] = std::min(1.0, run.value() / d);
  }
  return Sample(std::move(y));
}

struct WhitenoiseOutcome {
  TestOutcome outcome;
  std::size_t q = 0;
};

inline std::string whitenoise_stream_name(TestId id, std::size_t n) {
  return "whitenoise/" + std::string(to_string(id)) + "/n=" + std::to_string(n);
}

template <class Rng>
std::vector<double> gaussian_series(std::size_t n, Rng& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.normal();
  return x;
}

inline double pipeline_statistic(TestId id, std::span<const double> series) {
  return evaluate(id, cumulative_ratios(periodogram(series)));
}

inline NullTable simulate_whitenoise_null(TestId id, std::size_t n, const McConfig& config) {
  validate(config);
  const std::uint64_t tag = stream_tag(whitenoise_stream_name(id, n));
  return NullTable(parallel_replicates(config.replicates, config.workers, [&](std::size_t i) {
    auto rng = substream(config.seed, tag, i);
    const auto x = gaussian_series(n, rng);
    return pipeline_statistic(id, x);
  }));
}

inline std::shared_ptr<const NullTable> whitenoise_null_table(TestId id, std::size_t n,
                                                              const McConfig& config) {
  using Key = std::tuple<TestId, std::size_t, std::size_t, std::uint64_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const NullTable>> cache;
  const Key key{id, n, config.replicates, config.seed};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const NullTable>(simulate_whitenoise_null(id, n, config));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(table)).first->second;
}

inline WhitenoiseOutcome whitenoise_test(std::span<const double> series, TestId id, const McConfig& config) {
  if (series.size() < 8) throw Error(Errc::SeriesTooShort, "whitenoise test needs at least 8 points");
  const Periodogram p = periodogram(series);
  const Sample y = cumulative_ratios(p);
  const double stat = evaluate(id, y);
  const auto table = whitenoise_null_table(id, series.size(), config);
  return {outcome_from_table(id, stat, y.size(), *table, config.alpha), p.q()};
}

}  // namespace unifit

#endif  // UNIFIT_TIMESERIES_HPP
