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

#ifndef QGAME_BASIS_HPP
#define QGAME_BASIS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qgame/operators.hpp"

namespace qgame {

/// Which subsystems a basis element acts on nontrivially.
struct Sector {
  std::vector<std::size_t> subsystems;

  bool is_local() const { return subsystems.size() == 1; }
  bool is_correlation() const { return subsystems.size() > 1; }
  bool acts_on(std::size_t site) const;
  std::string label() const;
};

/// Standard generalised Gell-Mann matrices for dimension d, normalised to
/// tr(L_a L_b) = 2 delta_ab. Ordering: for k = 1..d-1, the symmetric and
/// antisymmetric pairs (j, k) for j < k followed by the k-th diagonal
/// element, which reproduces lambda_1..lambda_8 for d = 3 and the Pauli
/// matrices for d = 2.
std::vector<CMatrix> generalized_gell_mann(std::size_t d);

/// Orthonormal traceless Hermitian basis {F_a}: tr F_a = 0 and
/// tr(F_a F_b) = delta_ab.
class OperatorBasis {
 public:
  /// Validates tracelessness (1e-12) and orthonormality (1e-10); throws
  /// DomainError on violation.
  OperatorBasis(SubsystemShape shape, std::vector<HermitianOperator> elements, std::vector<Sector> sectors);

  /// Full basis of d^2 - 1 elements built from products of normalised
  /// Gell-Mann matrices over every nonempty subset of subsystems, with
  /// I/sqrt(d_j) on the remaining factors. For a bipartite shape this is
  /// {G_a (x) I/sqrt(d2)}, {I/sqrt(d1) (x) G_b}, {G_a (x) G_b} in that order.
  static OperatorBasis product(const SubsystemShape& shape);

  const SubsystemShape& shape() const { return shape_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t dim() const { return shape_.total(); }
  bool is_complete() const { return size() + 1 == dim() * dim(); }

  const HermitianOperator& operator[](std::size_t a) const { return elements_[a]; }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  const Sector& sector(std::size_t a) const { return sectors_[a]; }
  const std::vector<Sector>& sectors() const { return sectors_; }

  /// Indices of elements in local (one-subsystem) or correlation sectors.
  std::vector<std::size_t> local_indices() const;
  std::vector<std::size_t> correlation_indices() const;

  /// sum_a coeffs_a F_a.
  CMatrix combine(const RVector& coeffs) const;
  /// tr(F_a X) for every a (real part).
  RVector coefficients(const CMatrix& x) const;

 private:
  SubsystemShape shape_;
  std::vector<HermitianOperator> elements_;
  std::vector<Sector> sectors_;
};

}  // namespace qgame

#endif  // QGAME_BASIS_HPP
