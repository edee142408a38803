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

#ifndef QGAME_OPERATORS_HPP
#define QGAME_OPERATORS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace qgame {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Local dimensions of a composite system. Subsystem 0 is the
/// slowest-varying Kronecker factor.
class SubsystemShape {
 public:
  explicit SubsystemShape(std::vector<std::size_t> dims);
  SubsystemShape(std::initializer_list<std::size_t> dims)
      : SubsystemShape(std::vector<std::size_t>(dims)) {}

  /// Two subsystems of equal dimension q.
  static SubsystemShape bipartite(std::size_t q) { return SubsystemShape{q, q}; }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t count() const { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  std::size_t total() const { return total_; }

  /// Sum of log d_i: the largest attainable marginal-entropy sum.
  double max_marginal_entropy_sum() const;

  bool operator==(const SubsystemShape& other) const { return dims_ == other.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_;
};

/// Absolute per-entry tolerance for the Hermitian-symmetry invariant.
inline constexpr double kHermitianTolerance = 1e-12;

/// A complex square matrix equal to its conjugate transpose.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  /// Checked construction; throws DomainError if |A - A^H| exceeds
  /// kHermitianTolerance in any entry.
  explicit HermitianOperator(CMatrix entries);

  /// Unchecked construction from (A + A^H) / 2, for results of arithmetic
  /// whose Hermiticity only holds up to round-off.
  static HermitianOperator symmetrized(const CMatrix& entries);
  static HermitianOperator identity(std::size_t d);
  static HermitianOperator zero(std::size_t d);
  static HermitianOperator diagonal(const RVector& values);

  const CMatrix& matrix() const { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  double trace() const { return entries_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;

 private:
  CMatrix entries_;
};

inline HermitianOperator operator*(double scale, const HermitianOperator& op) { return op * scale; }

/// Eigendecomposition A = U diag(values) U^H, values ascending.
struct HermitianSpectrum {
  RVector values;
  CMatrix vectors;
};

bool is_hermitian(const CMatrix& a, double tolerance = kHermitianTolerance);

/// Hermitian-specialised eigensolver; the input is symmetrised first.
HermitianSpectrum hermitian_eigen(const CMatrix& a);

/// Hilbert-Schmidt inner product Re tr(A B) for Hermitian arguments.
double hs_inner(const CMatrix& a, const CMatrix& b);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);

/// I_{left} (x) op (x) I_{right}, with op acting on subsystem `site`.
CMatrix embed_local(const CMatrix& op, const SubsystemShape& shape, std::size_t site);

/// Reduced operator on subsystem `keep`, tracing out every other factor.
/// Throws DimensionMismatch if a's dimension differs from shape.total().
CMatrix partial_trace(const CMatrix& a, const SubsystemShape& shape, std::size_t keep);

/// U f(Lambda) U^H from the eigendecomposition of A.
HermitianOperator matrix_function(const HermitianOperator& a, const std::function<double(double)>& f);

HermitianOperator matrix_exp(const HermitianOperator& a);
/// Throws DomainError unless a is positive definite.
HermitianOperator matrix_log(const HermitianOperator& a);
/// Integer powers accept any Hermitian input; fractional powers require
/// a positive definite one (DomainError otherwise).
HermitianOperator matrix_power(const HermitianOperator& a, double exponent);

/// Divided difference (e^x - e^y) / (x - y), with the stable
/// e^{(x+y)/2} sinh(delta/2)/(delta/2) form near x == y.
double exp_divided_difference(double x, double y);

/// Directional derivative D exp(A)[E], evaluated in the eigenbasis of A
/// with the exp divided-difference kernel.
CMatrix frechet_exp(const CMatrix& a, const CMatrix& e);
HermitianOperator frechet_exp(const HermitianOperator& a, const HermitianOperator& e);

}  // namespace qgame

#endif  // QGAME_OPERATORS_HPP
