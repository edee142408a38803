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

#ifndef QGAME_CLASSICAL_HPP
#define QGAME_CLASSICAL_HPP

#include <cstddef>
#include <cstdint>
#include <random>

#include "qgame/operators.hpp"

namespace qgame {

/// p(x, y) over finite alphabets; rows index x, columns index y.
class JointDistribution {
 public:
  /// Throws DomainError on negative entries or |sum - 1| > 1e-12.
  explicit JointDistribution(RMatrix table);

  const RMatrix& table() const { return table_; }
  RVector marginal_x() const { return table_.rowwise().sum(); }
  RVector marginal_y() const { return table_.colwise().sum().transpose(); }

 private:
  RMatrix table_;
};

struct ShannonEntropies {
  double h1 = 0.0;         // H(X)
  double h2 = 0.0;         // H(Y)
  double joint = 0.0;      // H(X, Y)
  double mutual = 0.0;     // I = h1 + h2 - joint
  double h1_given_2 = 0.0; // H(X|Y) = joint - h2
};

ShannonEntropies shannon_entropies(const JointDistribution& j);

/// Outcome of checking that a (near) zero-joint-entropy table cannot carry
/// nonzero marginal entropy.
struct ObstructionCertificate {
  ShannonEntropies entropies;
  bool joint_below_threshold = false;  // joint <= eta
  bool point_mass = false;             // a single cell carries all mass
  double marginal_sum_bound = 0.0;     // certified cap on h1 + h2
  bool marginal_sum_certified = false; // h1 + h2 <= marginal_sum_bound
  bool conditional_nonnegative = false;  // H(X|Y) >= -1e-12
  bool mutual_below_min = false;         // I <= min(h1, h2) + 1e-12
  bool holds() const {
    return conditional_nonnegative && mutual_below_min && (!joint_below_threshold || marginal_sum_certified);
  }
};

/// For eta >= 0. Both marginal entropies are bounded by the joint entropy,
/// so joint <= eta certifies h1 + h2 <= 2 eta; eta = 0 forces a point mass
/// and h1 = h2 = 0.
ObstructionCertificate classical_origin_infeasible(const JointDistribution& j, double eta);

struct BernoulliChart {
  double theta;
  double psi;
};

/// theta = log(p / (1 - p)), psi = log(1 + e^theta). Throws DomainError
/// for p outside (0, 1).
BernoulliChart bernoulli_chart(double p);

/// Uniform sample from the simplex of rows x cols tables (Dirichlet(1,...,1)).
JointDistribution random_joint_distribution(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

}  // namespace qgame

#endif  // QGAME_CLASSICAL_HPP
