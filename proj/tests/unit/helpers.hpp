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


#ifndef UNIFIT_TESTS_HELPERS_HPP
#define UNIFIT_TESTS_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "unifit/sample.hpp"

namespace unifit::testing {

// Input generator for oracle tests; deliberately not the library RNG.
inline std::vector<double> uniforms(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace unifit::testing

#endif  // UNIFIT_TESTS_HELPERS_HPP
