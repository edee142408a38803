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

#ifndef QGAME_MODULAR_HPP
#define QGAME_MODULAR_HPP

#include "qgame/operators.hpp"
#include "qgame/states.hpp"

namespace qgame {

/// K_i = -log rho_i for a faithful state. Note the sign: this is the
/// negative of the exponential-family generator up to an identity shift.
/// Throws BoundaryState if the smallest eigenvalue is <= 1e-12.
HermitianOperator modular_hamiltonian(const DensityMatrix& rho);

/// sum_i tr(rho_i K_i), which equals the marginal-entropy sum.
double modular_energy_sum(const DensityMatrix& rho);

/// rho(beta) = exp(-beta H) / Z(beta).
class GibbsFamily {
 public:
  GibbsFamily(HermitianOperator generator, double beta);

  const HermitianOperator& generator() const { return generator_; }
  double beta() const { return beta_; }
  double partition() const { return partition_; }
  double log_partition() const { return log_partition_; }
  DensityMatrix state() const;
  double entropy() const;
  /// tr(rho H^2) - tr(rho H)^2.
  double variance() const;

 private:
  HermitianOperator generator_;
  double beta_;
  RVector energies_;
  RVector populations_;
  double log_partition_;
  double partition_;
};

/// d h / d beta = -beta var(H) inside the one-parameter family.
double gibbs_entropy_derivative(const GibbsFamily& family);

struct GibbsLockFit {
  double beta_star;
  double residual;  // min over beta, c of |K - beta H - c I|_F
};

/// Fits rho_i to the Gibbs family of h_local. beta* is located by
/// golden-section search on the identity-free residual, bracketed by
/// doubling. Throws BoundaryState for non-faithful rho_i and DomainError
/// when h_local is proportional to the identity.
GibbsLockFit gibbs_lock_residual(const DensityMatrix& rho_i, const HermitianOperator& h_local);

}  // namespace qgame

#endif  // QGAME_MODULAR_HPP
