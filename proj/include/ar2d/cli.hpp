// Copyright 2026 The ar2d Authors.
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

#ifndef AR2D_CLI_HPP_
#define AR2D_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>

#include "ar2d/montecarlo.hpp"
#include "ar2d/params.hpp"
#include "ar2d/simulate.hpp"

namespace ar2d {

enum class Command { kClassify, kSimulate, kEstimate, kAsymptotics, kMc };

/// Validated experiment configuration. Unknown JSON keys are rejected.
struct CliConfig {
  Command command = Command::kClassify;
  Params params;
  double tol = 1e-12;
  int n = 0;
  int m = 0;
  NoiseSpec noise;
  MCConfig mc;
  std::string out_path;     // simulate: field CSV
  std::string report_path;  // mc: JSON report
  std::string raw_path;     // mc: raw replicate CSV
  std::string field_path;   // estimate: field CSV
  std::string noise_path;   // estimate: optional innovation CSV
};

/// Parse and validate a JSON configuration document; diagnostics name the
/// offending key.
CliConfig parse_config(const std::string& text);

/// Execute a validated configuration. Returns the process exit code:
/// 0 on success, 1 on domain errors, 2 when an mc comparison gate fails.
int dispatch(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ar2d

#endif  // AR2D_CLI_HPP_
