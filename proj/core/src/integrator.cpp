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

#include "qgame/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qgame/errors.hpp"

namespace qgame {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (fifth minus fourth order weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Trial {
  RVector y;
  RVector k7;
  double error;
};

std::optional<Trial> attempt(const OdeRhs& f, double t, const RVector& y, const RVector& k1, double h,
                             const StepControl& ctl) {
  try {
    const RVector k2 = f(t + c2 * h, y + h * (a21 * k1));
    const RVector k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const RVector k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const RVector k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const RVector k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    RVector y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    RVector k7 = f(t + h, y_new);
    const RVector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const RVector scale = (ctl.abs_tol + ctl.rel_tol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).matrix();
    const double norm = std::sqrt((err.array() / scale.array()).square().mean());
    if (!std::isfinite(norm)) return std::nullopt;
    return Trial{std::move(y_new), std::move(k7), norm};
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

IntegrationResult integrate_dopri5(const OdeRhs& rhs, double t0, const RVector& y0, double t_end,
                                   const StepControl& control, const OdeObserver& observer) {
  IntegrationResult result;
  result.time = t0;
  result.state = y0;
  if (!observer(t0, y0)) {
    result.status = IntegrationStatus::kStopped;
    return result;
  }

  RVector k1 = rhs(t0, y0);
  double h = std::min(control.initial_step, control.max_step);
  while (result.time < t_end) {
    if (result.accepted >= control.max_steps) {
      result.status = IntegrationStatus::kMaxSteps;
      return result;
    }
    const double remaining = t_end - result.time;
    const bool last = h >= remaining;
    const double step = last ? remaining : h;

    std::optional<Trial> trial = attempt(rhs, result.time, result.state, k1, step, control);
    if (!trial || trial->error > 1.0) {
      ++result.rejected;
      const double shrink = trial ? std::max(0.2, 0.9 * std::pow(trial->error, -0.2)) : 0.5;
      h = step * shrink;
      if (h < control.min_step) {
        result.status = IntegrationStatus::kStepUnderflow;
        return result;
      }
      continue;
    }

    ++result.accepted;
    result.time = last ? t_end : result.time + step;
    result.state = std::move(trial->y);
    k1 = std::move(trial->k7);
    const double grow = trial->error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(trial->error, -0.2), 0.2, 5.0);
    h = std::min(step * grow, control.max_step);
    if (!observer(result.time, result.state)) {
      result.status = IntegrationStatus::kStopped;
      return result;
    }
  }
  result.status = IntegrationStatus::kCompleted;
  return result;
}

}  // namespace qgame
