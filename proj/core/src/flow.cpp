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

#include "qgame/flow.hpp"

#include <cmath>
#include <string>

#include "qgame/errors.hpp"

namespace qgame {

CMatrix LocalGenerator::assemble(const SubsystemShape& shape) const {
  const auto d = static_cast<Eigen::Index>(shape.total());
  CMatrix out = CMatrix::Zero(d, d);
  for (const LocalTerm& term : terms) out += embed_local(term.op.matrix(), shape, term.subsystem);
  return out;
}

double nonlocal_residual(const CMatrix& xi, const SubsystemShape& shape) {
  const auto d = static_cast<Eigen::Index>(shape.total());
  if (xi.rows() != d || xi.cols() != d) throw DimensionMismatch("generator dimension does not match shape");
  // Sum of the local parts tr_{~i}(xi) / (d / d_i), which over-counts the
  // identity component n - 1 times.
  CMatrix local = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < shape.count(); ++i) {
    const double other = static_cast<double>(shape.total() / shape.dim(i));
    local += embed_local(partial_trace(xi, shape, i) / other, shape, i);
  }
  local -= static_cast<double>(shape.count() - 1) * xi.trace() / static_cast<double>(d) * CMatrix::Identity(d, d);
  return (xi - local).norm();
}

const char* to_string(Clock clock) { return clock == Clock::kGameTime ? "game-time" : "entropy-time"; }

void FlowConfig::validate() const {
  if (!(c > 0.0)) throw DomainError("entropy production rate c must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("regularisation eps must lie in (0, 1)");
  if (!(step.abs_tol > 0.0 && step.rel_tol > 0.0)) throw DomainError("integrator tolerances must be positive");
  if (!(step.initial_step > 0.0)) throw DomainError("initial step must be positive");
  if (!(rate_min >= 0.0)) throw DomainError("rate_min must be nonnegative");
  if (!(conservation_budget > 0.0)) throw DomainError("conservation budget must be positive");
}

const char* to_string(TerminationStatus status) {
  switch (status) {
    case TerminationStatus::kCompleted: return "completed";
    case TerminationStatus::kStationary: return "stationary";
    case TerminationStatus::kMaxSteps: return "max_steps";
    case TerminationStatus::kStiffRegion: return "stiff_region";
    case TerminationStatus::kConservationViolated: return "conservation_violated";
  }
  return "unknown";
}

double Trajectory::max_constraint_drift() const {
  double worst = 0.0;
  for (const TrajectorySample& s : samples) worst = std::max(worst, std::abs(s.constraint - samples.front().constraint));
  return worst;
}

double Trajectory::max_marginal_deviation() const {
  double worst = 0.0;
  for (const TrajectorySample& s : samples) worst = std::max(worst, s.marginal_deviation);
  return worst;
}

LinearFit Trajectory::entropy_vs_time() const {
  LinearFit fit;
  const auto n = static_cast<double>(samples.size());
  if (samples.size() < 2) return fit;
  double mt = 0.0, mh = 0.0;
  for (const TrajectorySample& s : samples) {
    mt += s.t;
    mh += s.entropy;
  }
  mt /= n;
  mh /= n;
  double stt = 0.0, sth = 0.0, shh = 0.0;
  for (const TrajectorySample& s : samples) {
    stt += (s.t - mt) * (s.t - mt);
    sth += (s.t - mt) * (s.entropy - mh);
    shh += (s.entropy - mh) * (s.entropy - mh);
  }
  if (stt == 0.0) return fit;
  fit.slope = sth / stt;
  fit.intercept = mh - fit.slope * mt;
  fit.r_squared = shh == 0.0 ? 1.0 : (sth * sth) / (stt * shh);
  return fit;
}

RVector dissipative_velocity(const ExpFamilyPoint& /*point*/, const ConstraintGeometry& geometry) {
  return -(geometry.projector * geometry.at);
}

double entropy_production_rate(const ExpFamilyPoint& point, const ConstraintGeometry& geometry) {
  return point.theta().dot(point.metric() * (geometry.projector * point.theta()));
}

RVector entropy_time_velocity(const ExpFamilyPoint& point, const ConstraintGeometry& geometry, double c,
                              double rate_min) {
  const double rate = entropy_production_rate(point, geometry);
  if (!(rate > rate_min))
    throw StationaryPoint("entropy production rate " + std::to_string(rate) + " at or below threshold");
  return (c / rate) * dissipative_velocity(point, geometry);
}

RVector reversible_velocity(const ExpFamilyPoint& point, const CMatrix& xi) {
  const double residual = nonlocal_residual(xi, point.shape());
  if (residual > 1e-10 * std::max(1.0, xi.norm()))
    throw NonLocalGenerator("generator has a correlation component of norm " + std::to_string(residual));
  const Complex minus_i{0.0, -1.0};
  return point.params_velocity(minus_i * commutator(xi, point.state_matrix()));
}

RVector reversible_velocity(const ExpFamilyPoint& point, const LocalGenerator& xi) {
  return reversible_velocity(point, xi.assemble(point.shape()));
}

RVector generic_velocity(const ExpFamilyPoint& point, const ConstraintGeometry& geometry, const FlowConfig& config) {
  const double rate = entropy_production_rate(point, geometry);
  if (!(rate > config.rate_min))
    throw StationaryPoint("entropy production rate " + std::to_string(rate) + " at or below threshold");
  const double dilation = config.c / rate;
  RVector v = dilation * dissipative_velocity(point, geometry);
  if (!config.reversible.empty())
    v += config.reversible_rate.value_or(dilation) * reversible_velocity(point, config.reversible);
  return v;
}

namespace {

double marginal_deviation(const ExpFamilyPoint& point, std::vector<double>& entropies) {
  const SubsystemShape& shape = point.shape();
  double worst = 0.0;
  entropies.clear();
  for (std::size_t i = 0; i < shape.count(); ++i) {
    const CMatrix reduced = partial_trace(point.state_matrix(), shape, i);
    const auto di = static_cast<Eigen::Index>(shape.dim(i));
    worst = std::max(worst, (reduced - CMatrix::Identity(di, di) / static_cast<double>(di)).norm());
    entropies.push_back(spectral_entropy(hermitian_eigen(reduced).values.cwiseMax(0.0)));
  }
  return worst;
}

}  // namespace

Trajectory integrate(const NaturalParams& start, std::shared_ptr<const OperatorBasis> basis, const FlowConfig& config,
                     Clock clock, double duration) {
  config.validate();
  if (!(duration > 0.0)) throw DomainError("integration duration must be positive");
  if (!config.dissipative && clock == Clock::kEntropyTime)
    throw DomainError("entropy time is undefined for a purely reversible run");
  if (!config.dissipative && config.reversible.empty())
    throw DomainError("a reversible run needs a nonempty generator");

  const ExpFamilyPoint initial(start, basis);
  initial.metric();  // rank-deficient start throws BoundaryState here
  const SubsystemShape& shape = basis->shape();
  const CMatrix xi = config.reversible.assemble(shape);
  if (!config.reversible.empty() && nonlocal_residual(xi, shape) > 1e-10 * std::max(1.0, xi.norm()))
    throw NonLocalGenerator("reversible generator must be local");

  const auto m = static_cast<Eigen::Index>(basis->size());
  const bool has_xi = !config.reversible.empty();
  const double xi_scale = config.reversible_rate.value_or(1.0);

  // Augmented state [theta; aux]: aux is t for the game clock and tau for
  // the entropy clock.
  auto rhs = [&](double, const RVector& y) -> RVector {
    const ExpFamilyPoint point(NaturalParams(y.head(m)), basis);
    RVector dy(m + 1);
    if (!config.dissipative) {
      const RVector v = reversible_velocity(point, xi);
      dy.head(m) = v;
      dy(m) = -point.theta().dot(point.metric() * v) / config.c;
      return dy;
    }
    const ConstraintGeometry geometry = ConstraintGeometry::compute(point, config.constraint);
    const double rate = entropy_production_rate(point, geometry);
    const RVector dissipative = dissipative_velocity(point, geometry);
    const RVector reversible = has_xi ? reversible_velocity(point, xi) : RVector::Zero(m);
    if (clock == Clock::kGameTime) {
      const RVector v = dissipative + xi_scale * reversible;
      dy.head(m) = v;
      dy(m) = -point.theta().dot(point.metric() * v) / config.c;
    } else {
      // Stages may dip below rate_min; the observer decides when to stop.
      if (!(rate > 0.0) || !std::isfinite(rate)) throw StationaryPoint("entropy production rate vanished");
      const double dilation = config.c / rate;
      dy.head(m) = dilation * dissipative + config.reversible_rate.value_or(dilation) * reversible;
      dy(m) = dilation;
    }
    return dy;
  };

  Trajectory traj;
  traj.clock = clock;
  traj.c = config.c;
  double c0 = 0.0;

  auto observer = [&](double s, const RVector& y) -> bool {
    const ExpFamilyPoint point(NaturalParams(y.head(m)), basis);
    TrajectorySample sample;
    sample.step = traj.samples.size();
    sample.theta = point.theta();
    sample.theta_norm = point.theta().norm();
    sample.entropy = point.entropy();
    sample.marginal_deviation = marginal_deviation(point, sample.marginal_entropies);
    sample.constraint = 0.0;
    for (double h : sample.marginal_entropies) sample.constraint += h;
    if (clock == Clock::kGameTime) {
      sample.tau = s;
      sample.t = y(m);
    } else {
      sample.t = s;
      sample.tau = y(m);
    }
    bool stationary = false;
    if (config.dissipative) {
      try {
        const ConstraintGeometry geometry = ConstraintGeometry::compute(point, config.constraint);
        sample.rate = entropy_production_rate(point, geometry);
        stationary = !(sample.rate > config.rate_min);
      } catch (const Error& e) {
        traj.status = TerminationStatus::kStiffRegion;
        traj.message = e.what();
        traj.samples.push_back(std::move(sample));
        return false;
      }
    } else {
      sample.rate = -point.theta().dot(point.metric() * reversible_velocity(point, xi));
    }
    if (traj.samples.empty()) c0 = sample.constraint;
    const double drift = std::abs(sample.constraint - c0);
    traj.samples.push_back(std::move(sample));
    if (drift > config.conservation_budget) {
      traj.status = TerminationStatus::kConservationViolated;
      traj.message = "marginal-entropy sum drifted by " + std::to_string(drift);
      return false;
    }
    if (stationary) {
      traj.status = TerminationStatus::kStationary;
      traj.message = "entropy production rate below threshold";
      return false;
    }
    return true;
  };

  RVector y0(m + 1);
  y0.head(m) = start.values();
  y0(m) = 0.0;

  IntegrationResult result;
  try {
    result = integrate_dopri5(rhs, 0.0, y0, duration, config.step, observer);
  } catch (const Error& e) {
    // Only the very first right-hand-side evaluation can escape the
    // integrator, e.g. a start point that is already stationary.
    traj.status = traj.samples.empty() || traj.samples.back().rate > config.rate_min ? TerminationStatus::kStiffRegion
                                                                                      : TerminationStatus::kStationary;
    traj.message = e.what();
    return traj;
  }
  traj.rejected_steps = result.rejected;
  switch (result.status) {
    case IntegrationStatus::kCompleted:
      traj.status = TerminationStatus::kCompleted;
      break;
    case IntegrationStatus::kStopped:
      break;  // status already set by the observer
    case IntegrationStatus::kMaxSteps:
      traj.status = TerminationStatus::kMaxSteps;
      traj.message = "step budget exhausted";
      break;
    case IntegrationStatus::kStepUnderflow:
      traj.status = TerminationStatus::kStiffRegion;
      traj.message = "step size underflow";
      break;
  }
  return traj;
}

}  // namespace qgame
