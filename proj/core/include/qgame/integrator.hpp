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

#ifndef QGAME_INTEGRATOR_HPP
#define QGAME_INTEGRATOR_HPP

#include <cstddef>
#include <functional>
#include <limits>

#include "qgame/operators.hpp"

namespace qgame {

struct StepControl {
  double initial_step = 1e-2;
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  double min_step = 1e-14;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 100000;
};

enum class IntegrationStatus {
  kCompleted,      // reached the end of the interval
  kStopped,        // the observer asked to stop
  kMaxSteps,
  kStepUnderflow,  // step size fell below min_step
};

struct IntegrationResult {
  IntegrationStatus status = IntegrationStatus::kCompleted;
  double time = 0.0;
  RVector state;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Right-hand side f(t, y). May throw qgame::Error at trial points; the
/// step is then rejected and retried with half the step size.
using OdeRhs = std::function<RVector(double, const RVector&)>;
/// Called at t0 and after every accepted step; return false to stop.
using OdeObserver = std::function<bool(double, const RVector&)>;

/// Adaptive Dormand-Prince 5(4) with mixed absolute/relative RMS error
/// control. The final step is clipped to land exactly on t_end.
IntegrationResult integrate_dopri5(const OdeRhs& rhs, double t0, const RVector& y0, double t_end,
                                   const StepControl& control, const OdeObserver& observer);

}  // namespace qgame

#endif  // QGAME_INTEGRATOR_HPP
