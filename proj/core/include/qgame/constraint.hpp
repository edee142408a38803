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

#ifndef QGAME_CONSTRAINT_HPP
#define QGAME_CONSTRAINT_HPP

#include <optional>
#include <vector>

#include "qgame/expfamily.hpp"

namespace qgame {

struct ConstraintOptions {
  /// Singular values below kernel_threshold * sigma_max count as zero.
  double kernel_threshold = 1e-8;
  /// Compute the (finite-difference) constraint Hessian as well.
  bool with_hessian = false;
  /// Hessian FD step is hessian_step * max(1, |theta|).
  double hessian_step = 1e-4;
  /// Upper bound on cond(N^T G N) accepted by the projector.
  double max_condition = 1e12;
};

/// Marginal-entropy constraint geometry at one point of the family.
struct ConstraintGeometry {
  RVector at;
  double value = 0.0;       // C = sum_i h(rho_i)
  RVector gradient;         // a = grad C
  RMatrix jacobian;         // M: Hermitian-vec rows of every d rho_i / d theta
  RVector singular_values;  // of M, descending
  std::optional<RMatrix> hessian;
  RMatrix kernel;           // N: orthonormal basis of ker M
  RMatrix projector;        // Pi_marg = N (N^T G N)^{-1} N^T G

  static ConstraintGeometry compute(const ExpFamilyPoint& point, const ConstraintOptions& options = {});
};

/// Real coordinates of a Hermitian matrix: the diagonal followed by
/// sqrt(2) Re and sqrt(2) Im of each upper-triangle entry (row-major), so
/// the Euclidean norm equals the Frobenius norm.
RVector hermitian_vec(const CMatrix& x);

double marginal_entropy_sum(const ExpFamilyPoint& point);

/// a_b = -sum_i tr[log rho_i tr_{~i}(d rho / d theta_b)]. Throws
/// BoundaryState if a marginal is rank deficient.
RVector constraint_gradient(const ExpFamilyPoint& point);

/// Central differences of constraint_gradient with step
/// step_scale * max(1, |theta|), symmetrised.
RMatrix constraint_hessian(const ExpFamilyPoint& point, double step_scale = 1e-4);

RMatrix marginal_jacobian(const ExpFamilyPoint& point);

/// Orthonormal basis of ker M from the SVD. M == 0 gives the identity;
/// an empty kernel throws FullyConstrained.
RMatrix kernel_basis(const RMatrix& jacobian, double threshold = 1e-8);

/// G-orthogonal projector onto span(N). Throws NumericalDegeneracy when
/// N^T G N is not positive definite or its condition number exceeds
/// max_condition.
RMatrix marginal_projector(const RMatrix& metric, const RMatrix& kernel, double max_condition = 1e12);
RMatrix marginal_projector(const ExpFamilyPoint& point, const RMatrix& kernel, double max_condition = 1e12);

/// v^T (hess C) v.
double second_order_admissibility(const RMatrix& hessian, const RVector& v);
double second_order_admissibility(const ExpFamilyPoint& point, const RVector& v);

/// kappa(v) = v^T (-hess C) v / v^T G v.
double stiffness_quotient(const RMatrix& hessian, const RMatrix& metric, const RVector& v);

struct StiffnessSpectrum {
  RVector values;   // ascending
  RMatrix vectors;  // G-orthonormal columns
  /// Columns whose eigenvalue is below `threshold`.
  RMatrix soft_modes(double threshold) const;
  std::size_t soft_count(double threshold) const;
};

/// Generalised eigenpairs of (-hess C) v = lambda G v.
StiffnessSpectrum stiffness_spectrum(const RMatrix& hessian, const RMatrix& metric);
StiffnessSpectrum stiffness_spectrum(const ExpFamilyPoint& point);

/// Principal angles (radians, ascending) between the column spans of a
/// and b. Returns min(rank a, rank b) angles.
RVector principal_angles(const RMatrix& a, const RMatrix& b);

}  // namespace qgame

#endif  // QGAME_CONSTRAINT_HPP
