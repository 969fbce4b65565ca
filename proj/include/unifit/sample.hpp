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

#ifndef UNIFIT_SAMPLE_HPP
#define UNIFIT_SAMPLE_HPP

#include <algorithm>
#include <cstddef>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unifit/error.hpp"

namespace unifit {

/// Observations on [0,1] together with their ascending order.
///
/// A Sample is immutable once built. Ties are kept; the ordering is stable,
/// so equal values appear in input order.
class Sample {
 public:
  explicit Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw Error(Errc::EmptyInput, "a sample needs at least one observation");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double v = values_[i];
      // Written so that NaN fails too.
      if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream msg;
        msg << "value " << v << " at index " << i << " is outside [0,1]";
        throw Error(Errc::OutOfRange, msg.str());
      }
    }
    order_.resize(values_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [this](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
    sorted_.reserve(values_.size());
    for (std::size_t idx : order_) sorted_.push_back(values_[idx]);
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::size_t> sorted_index() const noexcept { return order_; }
  /// Order statistics X_(1) <= ... <= X_(n).
  std::span<const double> sorted() const noexcept { return sorted_; }

 private:
  std::vector<double> values_;
  std::vector<std::size_t> order_;
  std::vector<double> sorted_;
};

inline Sample make_sample(std::vector<double> raw) { return Sample(std::move(raw)); }

/// Probability-integral transform: F0(x_1), ..., F0(x_n).
template <class Cdf>
Sample pit_transform(std::span<const double> raw, Cdf&& f0) {
  std::vector<double> u;
  u.reserve(raw.size());
  for (double x : raw) u.push_back(f0(x));
  return Sample(std::move(u));
}

/// Right-continuous empirical CDF, #{X_i <= t} / n.
inline double ecdf(const Sample& sample, double t) {
  const auto s = sample.sorted();
  const auto count = std::upper_bound(s.begin(), s.end(), t) - s.begin();
  return static_cast<double>(count) / static_cast<double>(s.size());
}

/// Reads whitespace- or newline-separated reals. Lines whose first
/// non-blank character is '#' are skipped.
inline std::vector<double> read_observations(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw Error(Errc::ParseError,
                    "line " + std::to_string(line_no) + ": cannot parse '" + token + "'");
      }
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace unifit

#endif  // UNIFIT_SAMPLE_HPP
