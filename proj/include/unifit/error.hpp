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

#ifndef UNIFIT_ERROR_HPP
#define UNIFIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace unifit {

enum class Errc {
  EmptyInput,
  OutOfRange,
  InvalidIndices,
  ArityMismatch,
  SampleTooSmall,
  SampleTooLarge,
  DegenerateValue,
  BadParameter,
  ThetaOutOfRange,
  DensityNotPositive,
  NoBracketFound,
  ToleranceNotMet,
  NegativeDelta,
  QuadratureDivergence,
  InsufficientReplicates,
  SeriesTooShort,
  ZeroDenominator,
  ParseError,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidIndices: return "InvalidIndices";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::SampleTooSmall: return "SampleTooSmall";
    case Errc::SampleTooLarge: return "SampleTooLarge";
    case Errc::DegenerateValue: return "DegenerateValue";
    case Errc::BadParameter: return "BadParameter";
    case Errc::ThetaOutOfRange: return "ThetaOutOfRange";
    case Errc::DensityNotPositive: return "DensityNotPositive";
    case Errc::NoBracketFound: return "NoBracketFound";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::NegativeDelta: return "NegativeDelta";
    case Errc::QuadratureDivergence: return "QuadratureDivergence";
    case Errc::InsufficientReplicates: return "InsufficientReplicates";
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace unifit

#endif  // UNIFIT_ERROR_HPP
