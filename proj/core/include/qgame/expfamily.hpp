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

#ifndef QGAME_EXPFAMILY_HPP
#define QGAME_EXPFAMILY_HPP

#include <memory>
#include <optional>
#include <vector>

#include "qgame/basis.hpp"
#include "qgame/operators.hpp"
#include "qgame/states.hpp"

namespace qgame {

/// Natural coordinates theta of the matrix exponential family.
class NaturalParams {
 public:
  /// Throws DomainError on non-finite entries.
  explicit NaturalParams(RVector values);
  static NaturalParams zero(std::size_t m) { return NaturalParams(RVector::Zero(static_cast<Eigen::Index>(m))); }

  const RVector& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double norm() const { return values_.norm(); }

 private:
  RVector values_;
};

/// Smallest eigenvalue accepted by params_from_state. Smaller values are
/// rejected rather than clipped.
inline constexpr double kFaithfulFloor = 1e-12;

/// psi(theta) = log tr exp(K(theta)), evaluated as a log-sum-exp over the
/// spectrum of K.
double log_partition(const NaturalParams& theta, const OperatorBasis& basis);

/// rho(theta) = exp(K(theta) - psi(theta) I). Always full rank.
DensityMatrix state_from_params(const NaturalParams& theta, const OperatorBasis& basis);

/// theta_a = tr(F_a log rho). Throws BoundaryState if the smallest
/// eigenvalue of rho is at or below kFaithfulFloor.
NaturalParams params_from_state(const DensityMatrix& rho, const OperatorBasis& basis);

/// BKM kernel: the logarithmic mean (p - q) / (log p - log q), and p on the
/// diagonal (|p - q| < 1e-12 max(p, q)).
double bkm_kernel(double p, double q);

/// Immutable snapshot of one point of the family. All cached quantities
/// are computed eagerly on construction.
///
/// Sign convention: generator() is the family exponent K_fam with
/// rho = exp(K_fam - psi I). The modular Hamiltonian -log rho equals
/// -K_fam + psi I; see modular.hpp.
class ExpFamilyPoint {
 public:
  ExpFamilyPoint(NaturalParams theta, std::shared_ptr<const OperatorBasis> basis);

  const NaturalParams& params() const { return theta_; }
  const RVector& theta() const { return theta_.values(); }
  const OperatorBasis& basis() const { return *basis_; }
  const std::shared_ptr<const OperatorBasis>& basis_ptr() const { return basis_; }
  const SubsystemShape& shape() const { return basis_->shape(); }
  std::size_t size() const { return basis_->size(); }

  const CMatrix& generator() const { return generator_; }
  double log_partition() const { return psi_; }
  const CMatrix& state_matrix() const { return rho_; }
  DensityMatrix state() const;
  /// Eigenvalues of rho (ascending) and log of each, log p_j = lambda_j - psi.
  const RVector& populations() const { return populations_; }
  const RVector& log_populations() const { return log_populations_; }
  const CMatrix& eigenvectors() const { return eigenvectors_; }

  /// mu_a = tr(rho F_a).
  const RVector& mean() const { return mean_; }
  /// Throws BoundaryState if rho is numerically rank deficient.
  const RMatrix& metric() const;
  bool has_metric() const { return metric_.has_value(); }

  /// H = -theta . mu + psi.
  double entropy() const { return entropy_; }

  /// sum_b v_b d rho / d theta_b.
  CMatrix rho_derivative(const RVector& v) const;
  /// d rho / d theta_b for every b.
  std::vector<CMatrix> rho_derivatives() const;
  /// Pushforward of a traceless Hermitian state velocity into theta space:
  /// G^{-1} w with w_a = tr(F_a rho_dot).
  RVector params_velocity(const CMatrix& rho_dot) const;

 private:
  CMatrix derivative_in_eigenbasis(const CMatrix& centered_eig) const;

  NaturalParams theta_;
  std::shared_ptr<const OperatorBasis> basis_;
  CMatrix generator_;
  double psi_ = 0.0;
  RVector log_populations_;
  RVector populations_;
  CMatrix eigenvectors_;
  CMatrix rho_;
  RVector mean_;
  RMatrix kernel_;             // Phi_jk = bkm_kernel(p_j, p_k)
  CMatrix centered_eigbasis_;  // column a: vec(U^H (F_a - mu_a I) U)
  std::optional<RMatrix> metric_;
  double entropy_ = 0.0;
};

RVector mean_params(const ExpFamilyPoint& point);
RMatrix bkm_metric(const ExpFamilyPoint& point);

struct EntropyAndGradient {
  double entropy;
  RVector gradient;  // -G theta
};

EntropyAndGradient entropy_and_gradient(const ExpFamilyPoint& point);

}  // namespace qgame

#endif  // QGAME_EXPFAMILY_HPP
