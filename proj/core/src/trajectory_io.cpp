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

#include <cmath>
#include <ostream>

#include "qgame/flow.hpp"

namespace qgame {

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out, bool bits) {
  const double unit = bits ? 1.0 / std::log(2.0) : 1.0;
  const std::size_t n = trajectory.samples.empty() ? 0 : trajectory.samples.front().marginal_entropies.size();
  const auto old_precision = out.precision(17);
  out << "step,tau,t,H,C";
  for (std::size_t i = 0; i < n; ++i) out << ",h_" << i;
  out << ",rate,theta_norm,status\n";
  for (std::size_t k = 0; k < trajectory.samples.size(); ++k) {
    const TrajectorySample& s = trajectory.samples[k];
    const bool last = k + 1 == trajectory.samples.size();
    out << s.step << ',' << s.tau << ',' << s.t << ',' << s.entropy * unit << ',' << s.constraint * unit;
    for (double h : s.marginal_entropies) out << ',' << h * unit;
    out << ',' << s.rate * unit << ',' << s.theta_norm << ',' << (last ? to_string(trajectory.status) : "running")
        << '\n';
  }
  out.precision(old_precision);
}

}  // namespace qgame
