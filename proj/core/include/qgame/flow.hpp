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

#ifndef QGAME_FLOW_HPP
#define QGAME_FLOW_HPP

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgame/constraint.hpp"
#include "qgame/expfamily.hpp"
#include "qgame/integrator.hpp"

namespace qgame {

/// xi = sum_i xi_i (x) I_{~i}.
struct LocalTerm {
  std::size_t subsystem;
  HermitianOperator op;
};

struct LocalGenerator {
  std::vector<LocalTerm> terms;

  bool empty() const { return terms.empty(); }
  /// Full-dimension operator; throws DimensionMismatch on bad terms.
  CMatrix assemble(const SubsystemShape& shape) const;
};

/// Distance of xi from the span of local operators, in Frobenius norm.
double nonlocal_residual(const CMatrix& xi, const SubsystemShape& shape);

enum class Clock { kGameTime, kEntropyTime };

const char* to_string(Clock clock);

struct FlowConfig {
  /// Entropy production per unit entropy time (nats).
  double c = 1.0;
  /// Regularisation of the origin used by callers that start there.
  double eps = 0.05;
  StepControl step{};
  /// Runs stop once dH/dtau falls below this.
  double rate_min = 1e-10;
  /// Allowed |C(tau) - C(0)| before the run is aborted.
  double conservation_budget = 1e-6;
  /// Include the projected steepest-ascent part. False gives a pure
  /// commutator run (game time only).
  bool dissipative = true;
  LocalGenerator reversible;
  /// Experimental: scale the reversible part by this constant instead of
  /// the entropy-time dilation factor.
  std::optional<double> reversible_rate;
  ConstraintOptions constraint{};

  /// Throws DomainError on c <= 0, eps outside (0, 1) or nonpositive
  /// tolerances.
  void validate() const;
};

enum class TerminationStatus {
  kCompleted,
  kStationary,
  kMaxSteps,
  kStiffRegion,
  kConservationViolated,
};

const char* to_string(TerminationStatus status);

struct TrajectorySample {
  std::size_t step = 0;
  double tau = 0.0;
  double t = 0.0;
  RVector theta;
  double entropy = 0.0;
  double constraint = 0.0;
  std::vector<double> marginal_entropies;
  double rate = 0.0;  // dH/dtau
  double theta_norm = 0.0;
  /// max_i |rho_i - I/d_i|_F
  double marginal_deviation = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct Trajectory {
  Clock clock = Clock::kGameTime;
  double c = 1.0;
  TerminationStatus status = TerminationStatus::kCompleted;
  std::string message;
  std::size_t rejected_steps = 0;
  std::vector<TrajectorySample> samples;

  bool ok() const {
    return status == TerminationStatus::kCompleted || status == TerminationStatus::kStationary;
  }
  double max_constraint_drift() const;
  double max_marginal_deviation() const;
  /// Least-squares fit of H against entropy time t.
  LinearFit entropy_vs_time() const;
};

/// -Pi theta.
RVector dissipative_velocity(const ExpFamilyPoint& point, const ConstraintGeometry& geometry);

/// theta^T G Pi theta.
double entropy_production_rate(const ExpFamilyPoint& point, const ConstraintGeometry& geometry);

/// -c Pi theta / (theta^T G Pi theta). Throws StationaryPoint when the rate
/// is at or below rate_min.
RVector entropy_time_velocity(const ExpFamilyPoint& point, const ConstraintGeometry& geometry, double c,
                              double rate_min = 1e-10);

/// theta-space pushforward of rho_dot = -i[xi, rho]. Throws
/// NonLocalGenerator unless xi is a sum of single-subsystem terms.
RVector reversible_velocity(const ExpFamilyPoint& point, const CMatrix& xi);
RVector reversible_velocity(const ExpFamilyPoint& point, const LocalGenerator& xi);

/// (c / theta^T G Pi theta) (-Pi theta + ad_xi theta), or with the
/// reversible part scaled by config.reversible_rate when that is set.
RVector generic_velocity(const ExpFamilyPoint& point, const ConstraintGeometry& geometry, const FlowConfig& config);

/// Integrates the flow from `start` for `duration` units of the chosen
/// clock. Never throws for run-time failures: the terminal status and all
/// samples up to the failure are returned.
Trajectory integrate(const NaturalParams& start, std::shared_ptr<const OperatorBasis> basis, const FlowConfig& config,
                     Clock clock, double duration);

/// CSV with columns step,tau,t,H,C,h_0..h_{n-1},rate,theta_norm,status.
/// Entropy-valued columns are divided by log 2 when `bits` is set.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out, bool bits = false);

}  // namespace qgame

#endif  // QGAME_FLOW_HPP
