// Copyright 2026 The qgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGAME_CLI_COMMANDS_HPP
#define QGAME_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "run_config.hpp"

namespace qgame::cli {

using Json = nlohmann::ordered_json;

struct Failure {
  std::string assertion;
  std::string detail;
};

struct CommandOutcome {
  Json report;
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }
};

/// Integrates the configured flow and writes trajectory.csv, summary.json
/// and (with export_theta) theta.json under cfg.out, default "qgame_out".
CommandOutcome run_simulate(const RunConfig& cfg);
/// eps sweep at the regularised origin; the report is keyed by eps.
CommandOutcome run_origin_analysis(const RunConfig& cfg);
/// Stiffness spectrum at the configured start point.
CommandOutcome run_stiffness(const RunConfig& cfg);
/// Classical Shannon inequalities on random tables plus the quantum witness.
CommandOutcome run_obstruction_check(const RunConfig& cfg);
/// Modular identity, planted Gibbs-lock recovery and dh/dbeta checks.
CommandOutcome run_gibbs_check(const RunConfig& cfg);

CommandOutcome run_command(const RunConfig& cfg);

/// Full driver: parses arguments, loads the config (a file, or standard
/// input for "--config -"), runs the command and reports. Returns the
/// process exit code: 0 on success, 1 when a mode assertion failed, 2 for
/// an invalid configuration, and CLI11's code for bad arguments.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qgame::cli

#endif  // QGAME_CLI_COMMANDS_HPP
