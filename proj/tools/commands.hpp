// Copyright 2026 The vqsdp Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "vqsdp/solvers.hpp"

namespace vqsdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSummarySchema = "vqsdp-summary/1";

/// Entry point shared by the executable and the integration tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Per-iteration mean and population variance of |objective - reference|.
/// Shorter traces are extended with their final value.
struct GapCurve {
  std::vector<double> mean;
  std::vector<double> variance;
};

GapCurve gap_curve(const std::vector<Trace>& traces, double reference);

/// Trailing moving average; the first window-1 entries average what is available.
std::vector<double> moving_average(const std::vector<double>& values, int window);

}  // namespace vqsdp::cli
