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

#include "qgame/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qgame/errors.hpp"

namespace qgame {

SubsystemShape::SubsystemShape(std::vector<std::size_t> dims) : dims_(std::move(dims)), total_(1) {
  if (dims_.empty()) throw UnsupportedShape("subsystem shape must have at least one factor");
  for (std::size_t d : dims_) {
    if (d < 2) throw UnsupportedShape("every local dimension must be at least 2");
    total_ *= d;
  }
}

double SubsystemShape::max_marginal_entropy_sum() const {
  double sum = 0.0;
  for (std::size_t d : dims_) sum += std::log(static_cast<double>(d));
  return sum;
}

HermitianOperator::HermitianOperator(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw DimensionMismatch("Hermitian operator must be square");
  if (!is_hermitian(entries_)) throw DomainError("matrix is not Hermitian");
}

HermitianOperator HermitianOperator::symmetrized(const CMatrix& entries) {
  if (entries.rows() != entries.cols()) throw DimensionMismatch("Hermitian operator must be square");
  HermitianOperator out;
  out.entries_ = 0.5 * (entries + entries.adjoint());
  return out;
}

HermitianOperator HermitianOperator::identity(std::size_t d) {
  return symmetrized(CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
}

HermitianOperator HermitianOperator::zero(std::size_t d) {
  return symmetrized(CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
}

HermitianOperator HermitianOperator::diagonal(const RVector& values) {
  return symmetrized(values.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("operator dimensions differ");
  return symmetrized(entries_ + other.entries_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("operator dimensions differ");
  return symmetrized(entries_ - other.entries_);
}

HermitianOperator HermitianOperator::operator*(double scale) const { return symmetrized(entries_ * scale); }

bool is_hermitian(const CMatrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

HermitianSpectrum hermitian_eigen(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("eigendecomposition needs a square matrix");
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalDegeneracy("Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double hs_inner(const CMatrix& a, const CMatrix& b) {
  // tr(AB) = sum_jk A_jk B_kj
  return (a.array() * b.transpose().array()).sum().real();
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator::symmetrized(kron(a.matrix(), b.matrix()));
}

namespace {

struct SiteSplit {
  Eigen::Index left;
  Eigen::Index local;
  Eigen::Index right;
};

SiteSplit split_at(const SubsystemShape& shape, std::size_t site) {
  if (site >= shape.count())
    throw DimensionMismatch("subsystem index " + std::to_string(site) + " out of range");
  SiteSplit s{1, static_cast<Eigen::Index>(shape.dim(site)), 1};
  for (std::size_t i = 0; i < site; ++i) s.left *= static_cast<Eigen::Index>(shape.dim(i));
  for (std::size_t i = site + 1; i < shape.count(); ++i) s.right *= static_cast<Eigen::Index>(shape.dim(i));
  return s;
}

}  // namespace

CMatrix embed_local(const CMatrix& op, const SubsystemShape& shape, std::size_t site) {
  const SiteSplit s = split_at(shape, site);
  if (op.rows() != s.local || op.cols() != s.local)
    throw DimensionMismatch("local operator dimension does not match subsystem");
  return kron(kron(CMatrix::Identity(s.left, s.left), op), CMatrix::Identity(s.right, s.right));
}

CMatrix partial_trace(const CMatrix& a, const SubsystemShape& shape, std::size_t keep) {
  const auto d = static_cast<Eigen::Index>(shape.total());
  if (a.rows() != d || a.cols() != d)
    throw DimensionMismatch("operator dimension " + std::to_string(a.rows()) + " does not match shape total " +
                            std::to_string(d));
  const SiteSplit s = split_at(shape, keep);
  CMatrix out = CMatrix::Zero(s.local, s.local);
  for (Eigen::Index x = 0; x < s.local; ++x) {
    for (Eigen::Index y = 0; y < s.local; ++y) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index l = 0; l < s.left; ++l) {
        const Eigen::Index row0 = (l * s.local + x) * s.right;
        const Eigen::Index col0 = (l * s.local + y) * s.right;
        for (Eigen::Index r = 0; r < s.right; ++r) acc += a(row0 + r, col0 + r);
      }
      out(x, y) = acc;
    }
  }
  return out;
}

HermitianOperator matrix_function(const HermitianOperator& a, const std::function<double(double)>& f) {
  const HermitianSpectrum spec = hermitian_eigen(a.matrix());
  const RVector fv = spec.values.unaryExpr(f);
  return HermitianOperator::symmetrized(spec.vectors * fv.cast<Complex>().asDiagonal() * spec.vectors.adjoint());
}

HermitianOperator matrix_exp(const HermitianOperator& a) {
  return matrix_function(a, [](double x) { return std::exp(x); });
}

HermitianOperator matrix_log(const HermitianOperator& a) {
  const HermitianSpectrum spec = hermitian_eigen(a.matrix());
  if (spec.values.size() == 0 || spec.values.minCoeff() <= 0.0)
    throw DomainError("matrix logarithm requires a positive definite argument");
  const RVector fv = spec.values.array().log();
  return HermitianOperator::symmetrized(spec.vectors * fv.cast<Complex>().asDiagonal() * spec.vectors.adjoint());
}

HermitianOperator matrix_power(const HermitianOperator& a, double exponent) {
  const HermitianSpectrum spec = hermitian_eigen(a.matrix());
  const bool integral = std::floor(exponent) == exponent;
  if (!integral && (spec.values.size() == 0 || spec.values.minCoeff() <= 0.0))
    throw DomainError("fractional matrix power requires a positive definite argument");
  const RVector fv = spec.values.unaryExpr([exponent](double x) { return std::pow(x, exponent); });
  return HermitianOperator::symmetrized(spec.vectors * fv.cast<Complex>().asDiagonal() * spec.vectors.adjoint());
}

double exp_divided_difference(double x, double y) {
  const double delta = x - y;
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  if (std::abs(delta) < 1e-12 * scale) return std::exp(0.5 * (x + y));
  if (std::abs(delta) < 1.0) {
    const double half = 0.5 * delta;
    return std::exp(0.5 * (x + y)) * std::sinh(half) / half;
  }
  return (std::exp(x) - std::exp(y)) / delta;
}

CMatrix frechet_exp(const CMatrix& a, const CMatrix& e) {
  if (a.rows() != e.rows() || a.cols() != e.cols()) throw DimensionMismatch("frechet_exp operands differ in size");
  const HermitianSpectrum spec = hermitian_eigen(a);
  const Eigen::Index n = spec.values.size();
  CMatrix inner = spec.vectors.adjoint() * e * spec.vectors;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) inner(j, k) *= exp_divided_difference(spec.values(j), spec.values(k));
  return spec.vectors * inner * spec.vectors.adjoint();
}

HermitianOperator frechet_exp(const HermitianOperator& a, const HermitianOperator& e) {
  return HermitianOperator::symmetrized(frechet_exp(a.matrix(), e.matrix()));
}

}  // namespace qgame
