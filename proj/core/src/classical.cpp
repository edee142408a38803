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

#include "qgame/classical.hpp"

#include <algorithm>
#include <cmath>

#include "qgame/errors.hpp"
#include "qgame/states.hpp"

namespace qgame {

JointDistribution::JointDistribution(RMatrix table) : table_(std::move(table)) {
  if (table_.size() == 0) throw DomainError("joint distribution table is empty");
  if (table_.minCoeff() < 0.0) throw DomainError("joint distribution has a negative entry");
  if (std::abs(table_.sum() - 1.0) > 1e-12) throw DomainError("joint distribution does not sum to 1");
}

ShannonEntropies shannon_entropies(const JointDistribution& j) {
  ShannonEntropies e;
  e.h1 = spectral_entropy(j.marginal_x());
  e.h2 = spectral_entropy(j.marginal_y());
  e.joint = spectral_entropy(j.table().reshaped());
  e.mutual = e.h1 + e.h2 - e.joint;
  e.h1_given_2 = e.joint - e.h2;
  return e;
}

ObstructionCertificate classical_origin_infeasible(const JointDistribution& j, double eta) {
  if (eta < 0.0) throw DomainError("joint-entropy threshold must be nonnegative");
  constexpr double slack = 1e-12;
  ObstructionCertificate cert;
  cert.entropies = shannon_entropies(j);
  const ShannonEntropies& e = cert.entropies;
  cert.conditional_nonnegative = e.h1_given_2 >= -slack && (e.joint - e.h1) >= -slack;
  cert.mutual_below_min = e.mutual <= std::min(e.h1, e.h2) + slack;
  cert.point_mass = j.table().maxCoeff() == 1.0;
  cert.joint_below_threshold = e.joint <= eta;
  if (cert.joint_below_threshold) {
    // h_i <= H(X, Y) because conditional entropies are nonnegative.
    cert.marginal_sum_bound = 2.0 * eta;
    cert.marginal_sum_certified = e.h1 + e.h2 <= cert.marginal_sum_bound + slack;
    if (eta == 0.0) cert.marginal_sum_certified = cert.marginal_sum_certified && cert.point_mass && e.h1 == 0.0 && e.h2 == 0.0;
  }
  return cert;
}

BernoulliChart bernoulli_chart(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("Bernoulli parameter must lie in (0, 1)");
  const double theta = std::log(p) - std::log1p(-p);
  // log(1 + e^theta) without overflow for large theta.
  const double psi = theta > 0.0 ? theta + std::log1p(std::exp(-theta)) : std::log1p(std::exp(theta));
  return {theta, psi};
}

JointDistribution random_joint_distribution(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  if (rows == 0 || cols == 0) throw DomainError("alphabet sizes must be positive");
  std::gamma_distribution<double> gamma(1.0, 1.0);
  RMatrix table(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < table.size(); ++i) table(i) = gamma(rng);
  table /= table.sum();
  // Put the rounding residue on the largest cell so the sum is 1 to ~1 ulp.
  Eigen::Index imax = 0;
  table.reshaped().maxCoeff(&imax);
  table(imax) += 1.0 - table.sum();
  return JointDistribution(std::move(table));
}

}  // namespace qgame
