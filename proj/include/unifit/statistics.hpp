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

#ifndef UNIFIT_STATISTICS_HPP
#define UNIFIT_STATISTICS_HPP

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "unifit/competitors.hpp"
#include "unifit/error.hpp"
#include "unifit/moment_tests.hpp"
#include "unifit/sample.hpp"

namespace unifit {

/// Every uniformity test known to the harness. All reject for large values.
enum class TestId { T1, T2, HS, KS, AD, CVM, QC };

inline constexpr std::array<TestId, 7> all_tests = {TestId::T1, TestId::T2, TestId::HS, TestId::KS,
                                                    TestId::AD, TestId::CVM, TestId::QC};

constexpr std::string_view to_string(TestId id) noexcept {
  switch (id) {
    case TestId::T1: return "t1";
    case TestId::T2: return "t2";
    case TestId::HS: return "hs";
    case TestId::KS: return "ks";
    case TestId::AD: return "ad";
    case TestId::CVM: return "cvm";
    case TestId::QC: return "qc";
  }
  return "?";
}

inline TestId parse_test_id(std::string_view s) {
  for (TestId id : all_tests) {
    if (to_string(id) == s) return id;
  }
  throw Error(Errc::BadParameter, "unknown test '" + std::string(s) + "'");
}

inline std::vector<TestId> parse_test_list(std::string_view csv) {
  std::vector<TestId> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto end = csv.find(',', start);
    const auto tok = csv.substr(start, end == std::string_view::npos ? csv.size() - start : end - start);
    if (!tok.empty()) out.push_back(parse_test_id(tok));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (out.empty()) throw Error(Errc::BadParameter, "empty test list");
  return out;
}

constexpr std::size_t min_sample_size(TestId id) noexcept {
  switch (id) {
    case TestId::T1: return 2;
    case TestId::T2: return 3;
    case TestId::HS: return 4;
    default: return 1;
  }
}

/// Test-ready statistic (fast paths, n-scaled competitor forms).
inline double evaluate(TestId id, const Sample& sample) {
  switch (id) {
    case TestId::T1: return t_statistic(sample, KernelOrder(1));
    case TestId::T2: return t_statistic(sample, KernelOrder(2));
    case TestId::HS: return hs_statistic(sample);
    case TestId::KS: return ks_statistic(sample);
    case TestId::AD: return ad_statistic(sample);
    case TestId::CVM: return cvm_statistic(sample);
    case TestId::QC: return qc_statistic(sample);
  }
  return 0.0;
}

}  // namespace unifit

#endif  // UNIFIT_STATISTICS_HPP
