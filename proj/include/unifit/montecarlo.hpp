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

// Null simulation, Monte Carlo p-values and power curves.
//
// Replicate i of a stream draws from substream(seed, tag, i); workers only
// decide which thread evaluates which block of indices, so every result is
// independent of the worker count.
//
// With R simulated statistics s_(1) <= ... <= s_(R) and
// K = floor(alpha (R + 1)) - 1, the critical value is c = s_(R-K).
// "statistic > c" then rejects exactly when p = (1 + #{s >= x})/(R + 1) <= alpha.

#ifndef UNIFIT_MONTECARLO_HPP
#define UNIFIT_MONTECARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "unifit/alternatives.hpp"
#include "unifit/error.hpp"
#include "unifit/rng.hpp"
#include "unifit/sample.hpp"
#include "unifit/statistics.hpp"

namespace unifit {

inline constexpr std::uint64_t default_seed = 20260101;

struct McConfig {
  std::size_t replicates = 10000;
  double alpha = 0.1;
  std::size_t n = 50;
  std::uint64_t seed = default_seed;
  std::size_t workers = 1;
  std::size_t hs_max_n = 50;
};

inline void validate(const McConfig& c) {
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw Error(Errc::BadParameter, "alpha must lie in (0,1)");
  if (c.workers < 1) throw Error(Errc::BadParameter, "workers must be >= 1");
  if (c.replicates < 100 || static_cast<double>(c.replicates) * c.alpha < 10.0) {
    throw Error(Errc::InsufficientReplicates,
                "need replicates >= 100 and replicates * alpha >= 10, got " +
                    std::to_string(c.replicates));
  }
}

/// Evaluates fn(i) for i in [0, count) on `workers` threads; out[i] = fn(i).
template <class Fn>
std::vector<double> parallel_replicates(std::size_t count, std::size_t workers, Fn&& fn) {
  std::vector<double> out(count);
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(count, (w + 1) * block);
        for (std::size_t i = w * block; i < end; ++i) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

template <class Rng>
Sample uniform_sample(std::size_t n, Rng& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform();
  return Sample(std::move(x));
}

/// Sorted simulated null statistics.
class NullTable {
 public:
  explicit NullTable(std::vector<double> stats) : sorted_(std::move(stats)) {
    std::sort(sorted_.begin(), sorted_.end());
  }

  std::size_t replicates() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }

  double critical_value(double alpha) const {
    const std::size_t r = sorted_.size();
    const auto k = static_cast<long long>(std::floor(alpha * static_cast<double>(r + 1))) - 1;
    if (k < 0 || static_cast<std::size_t>(k) >= r) {
      throw Error(Errc::InsufficientReplicates, "alpha too small for the table size");
    }
    return sorted_[r - 1 - static_cast<std::size_t>(k)];
  }

  std::size_t count_at_least(double x) const noexcept {
    return static_cast<std::size_t>(sorted_.end() - std::lower_bound(sorted_.begin(), sorted_.end(), x));
  }

  double p_value(double x) const noexcept {
    return (1.0 + static_cast<double>(count_at_least(x))) / (static_cast<double>(sorted_.size()) + 1.0);
  }

 private:
  std::vector<double> sorted_;
};

inline std::string null_stream_name(TestId id, std::size_t n) {
  return "null/" + std::string(to_string(id)) + "/n=" + std::to_string(n);
}

inline void check_hs_size(TestId id, std::size_t n, const McConfig& config) {
  if (id == TestId::HS && n > config.hs_max_n) {
    throw Error(Errc::SampleTooLarge, "HS simulation limited to n <= " + std::to_string(config.hs_max_n));
  }
}

inline NullTable simulate_null(TestId id, std::size_t n, const McConfig& config) {
  validate(config);
  if (n < min_sample_size(id)) {
    throw Error(Errc::SampleTooSmall, std::string(to_string(id)) + " needs n >= " +
                                          std::to_string(min_sample_size(id)));
  }
  check_hs_size(id, n, config);
  const std::uint64_t tag = stream_tag(null_stream_name(id, n));
  return NullTable(parallel_replicates(config.replicates, config.workers, [&](std::size_t i) {
    auto rng = substream(config.seed, tag, i);
    return evaluate(id, uniform_sample(n, rng));
  }));
}

namespace detail {

struct NullCache {
  using Key = std::tuple<TestId, std::size_t, std::size_t, std::uint64_t>;
  std::mutex mutex;
  std::map<Key, std::shared_ptr<const NullTable>> tables;
};

inline NullCache& null_cache() {
  static NullCache cache;
  return cache;
}

}  // namespace detail

/// Cached by (test, n, replicates, seed); the table does not depend on alpha.
inline std::shared_ptr<const NullTable> null_table(TestId id, std::size_t n, const McConfig& config) {
  auto& cache = detail::null_cache();
  const detail::NullCache::Key key{id, n, config.replicates, config.seed};
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.tables.find(key); it != cache.tables.end()) return it->second;
  }
  auto table = std::make_shared<const NullTable>(simulate_null(id, n, config));
  std::lock_guard lock(cache.mutex);
  return cache.tables.emplace(key, std::move(table)).first->second;
}

inline double critical_value(TestId id, std::size_t n, double alpha, const McConfig& config) {
  McConfig c = config;
  c.alpha = alpha;
  validate(c);
  return null_table(id, n, c)->critical_value(alpha);
}

struct TestOutcome {
  TestId test = TestId::T1;
  double statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.1;
  bool reject = false;
  std::size_t n = 0;
};

inline TestOutcome outcome_from_table(TestId id, double stat, std::size_t n, const NullTable& table,
                                      double alpha) {
  TestOutcome out;
  out.test = id;
  out.statistic = stat;
  out.p_value = table.p_value(stat);
  out.alpha = alpha;
  out.reject = out.p_value <= alpha;
  out.n = n;
  return out;
}

inline TestOutcome p_value(TestId id, const Sample& sample, const McConfig& config) {
  const double stat = evaluate(id, sample);
  const auto table = null_table(id, sample.size(), config);
  return outcome_from_table(id, stat, sample.size(), *table, config.alpha);
}

struct PowerCurve {
  TestId test = TestId::T1;
  std::string family;
  std::size_t n = 0;
  double alpha = 0.1;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  double critical_value = 0.0;
  std::vector<double> theta_grid;
  std::vector<double> power;
  std::vector<double> se;
};

inline std::string alt_stream_name(const AlternativeFamily& fam, std::size_t n) {
  return "alt/" + fam.name() + "/n=" + std::to_string(n);
}

/// All tests see the same alternative samples, and the same replicate
/// stream is reused across theta (common random numbers).
inline std::vector<PowerCurve> power_study(const std::vector<TestId>& tests, const AlternativeFamily& fam,
                                           const std::vector<double>& theta_grid, const McConfig& config) {
  validate(config);
  if (tests.empty()) throw Error(Errc::BadParameter, "no tests requested");
  if (theta_grid.empty()) throw Error(Errc::BadParameter, "empty theta grid");
  for (double th : theta_grid) fam.require_theta(th);
  const std::size_t n = config.n;
  std::vector<PowerCurve> curves;
  std::vector<double> crit;
  for (TestId id : tests) {
    PowerCurve pc;
    pc.test = id;
    pc.family = fam.name();
    pc.n = n;
    pc.alpha = config.alpha;
    pc.replicates = config.replicates;
    pc.seed = config.seed;
    pc.critical_value = critical_value(id, n, config.alpha, config);
    pc.theta_grid = theta_grid;
    crit.push_back(pc.critical_value);
    curves.push_back(std::move(pc));
  }
  const std::size_t nt = tests.size();
  if (nt > 52) throw Error(Errc::BadParameter, "too many tests in one study");
  const std::uint64_t tag = stream_tag(alt_stream_name(fam, n));
  for (double th : theta_grid) {
    // Encode the reject pattern of all tests for replicate i as bits.
    const auto flags = parallel_replicates(config.replicates, config.workers, [&](std::size_t i) {
      auto rng = substream(config.seed, tag, i);
      const Sample s = sample_from(fam, th, n, rng);
      double bits = 0.0;
      for (std::size_t k = 0; k < nt; ++k) {
        if (evaluate(tests[k], s) > crit[k]) bits += std::ldexp(1.0, static_cast<int>(k));
      }
      return bits;
    });
    for (std::size_t k = 0; k < nt; ++k) {
      std::size_t hits = 0;
      for (double b : flags) {
        if ((static_cast<unsigned long long>(b) >> k) & 1ULL) ++hits;
      }
      const double p = static_cast<double>(hits) / static_cast<double>(config.replicates);
      curves[k].power.push_back(p);
      curves[k].se.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(config.replicates)));
    }
  }
  return curves;
}

/// Rejection rate of a fresh null run against a table built with `config`.
inline double null_rejection_rate(TestId id, std::size_t n, const McConfig& config, std::uint64_t fresh_seed,
                                  std::size_t fresh_replicates) {
  const double c = critical_value(id, n, config.alpha, config);
  const std::uint64_t tag = stream_tag("fresh/" + null_stream_name(id, n));
  const auto stats = parallel_replicates(fresh_replicates, config.workers, [&](std::size_t i) {
    auto rng = substream(fresh_seed, tag, i);
    return evaluate(id, uniform_sample(n, rng));
  });
  const auto hits = std::count_if(stats.begin(), stats.end(), [c](double s) { return s > c; });
  return static_cast<double>(hits) / static_cast<double>(fresh_replicates);
}

}  // namespace unifit

#endif  // UNIFIT_MONTECARLO_HPP
