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

#ifndef UNIFIT_UNIFIT_HPP
#define UNIFIT_UNIFIT_HPP

#include "unifit/alternatives.hpp"
#include "unifit/competitors.hpp"
#include "unifit/efficiency.hpp"
#include "unifit/error.hpp"
#include "unifit/moment_tests.hpp"
#include "unifit/montecarlo.hpp"
#include "unifit/numeric.hpp"
#include "unifit/quadrature.hpp"
#include "unifit/rng.hpp"
#include "unifit/sample.hpp"
#include "unifit/spectral.hpp"
#include "unifit/statistics.hpp"
#include "unifit/timeseries.hpp"

#endif  // UNIFIT_UNIFIT_HPP
