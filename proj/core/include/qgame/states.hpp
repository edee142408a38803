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

#ifndef QGAME_STATES_HPP
#define QGAME_STATES_HPP

#include <cstddef>
#include <vector>

#include "qgame/operators.hpp"

namespace qgame {

/// Eigenvalues in [-kEigenvalueClip, 0) are treated as round-off and
/// clipped to zero; anything more negative violates positivity.
inline constexpr double kEigenvalueClip = 1e-10;

/// Hermitian, positive semidefinite, unit-trace operator over a
/// subsystem shape.
class DensityMatrix {
 public:
  /// Throws DimensionMismatch if the operator does not match the shape and
  /// DomainError if trace or positivity invariants fail.
  DensityMatrix(HermitianOperator op, SubsystemShape shape);
  /// Convenience for a single-factor shape [d].
  explicit DensityMatrix(HermitianOperator op);

  /// Normalises `m` by its trace before validation.
  static DensityMatrix normalized(const CMatrix& m, const SubsystemShape& shape);
  static DensityMatrix maximally_mixed(const SubsystemShape& shape);

  const HermitianOperator& op() const { return op_; }
  const CMatrix& matrix() const { return op_.matrix(); }
  const SubsystemShape& shape() const { return shape_; }
  std::size_t dim() const { return op_.dim(); }

  /// Ascending eigenvalues with round-off negatives clipped to zero.
  RVector eigenvalues() const;
  double purity() const;

 private:
  HermitianOperator op_;
  SubsystemShape shape_;
};

/// Reduced state of subsystem `keep`, returned over the shape [d_keep].
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemShape& shape, std::size_t keep);
std::vector<DensityMatrix> marginals(const DensityMatrix& rho);

/// Shannon entropy (nats) of a probability vector, 0 log 0 = 0.
double spectral_entropy(const RVector& probabilities);
double von_neumann_entropy(const DensityMatrix& rho);
std::vector<double> marginal_entropies(const DensityMatrix& rho);

/// Projector onto q^{-1/2} sum_j |jj>. Throws UnsupportedShape unless the
/// shape is bipartite with equal local dimensions.
DensityMatrix lme_origin(const SubsystemShape& shape);

/// (1 - eps) rho_origin + eps I/d for eps in (0, 1). The marginals stay
/// exactly maximally mixed.
DensityMatrix regularized_origin(const SubsystemShape& shape, double eps);

/// sum_i h(rho_i) - H(rho).
double multi_information(const DensityMatrix& rho);

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qgame

#endif  // QGAME_STATES_HPP
