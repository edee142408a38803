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

#ifndef QGAME_CLI_RUN_CONFIG_HPP
#define QGAME_CLI_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgame/flow.hpp"

namespace qgame::cli {

/// Invalid or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { kSimulate, kOriginAnalysis, kStiffness, kObstructionCheck, kGibbsCheck };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& name);

/// Initial point of a flow or of a stiffness analysis.
struct StartSpec {
  enum class Kind { kRegularizedOrigin, kRandomAdmissible, kRandom, kTheta };
  Kind kind = Kind::kRegularizedOrigin;
  double scale = 0.05;
  std::vector<double> theta;
};

struct AnalysisSpec {
  std::vector<double> eps_sweep{0.3, 0.1, 0.03, 0.01};
  double soft_threshold = 1e-6;
};

struct ObstructionSpec {
  std::size_t samples = 10000;
  std::size_t max_alphabet = 5;
  double slack = 1e-12;
  std::size_t witness_q = 3;
};

struct GibbsSpec {
  std::size_t instances = 20;
  std::size_t dim = 3;
  double beta_range = 2.0;
  std::size_t states = 100;
};

struct RunConfig {
  Mode mode = Mode::kSimulate;
  std::vector<std::size_t> shape{3, 3};
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  bool bits = false;
  Clock clock = Clock::kEntropyTime;
  double duration = 100.0;
  bool export_theta = false;
  StartSpec start;
  FlowConfig flow;
  AnalysisSpec analysis;
  ObstructionSpec obstruction;
  GibbsSpec gibbs;

  /// Throws ConfigError on mode-specific problems.
  void validate() const;
};

/// Strict parser: unknown keys, wrong types and out-of-range values all
/// raise ConfigError. Missing keys keep their defaults.
RunConfig parse_run_config(const nlohmann::json& doc);

/// Reversible generator term, e.g. {"subsystem": 0, "gell_mann": 3} for
/// lambda_3 on subsystem 0, or {"subsystem": 1, "real": [[...]], "imag":
/// [[...]]} for an explicit matrix. An optional "scale" multiplies either.
LocalTerm parse_local_term(const nlohmann::json& term, const SubsystemShape& shape);

}  // namespace qgame::cli

#endif  // QGAME_CLI_RUN_CONFIG_HPP
