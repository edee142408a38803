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

#include "qgame/states.hpp"

#include <cmath>
#include <string>

#include "qgame/errors.hpp"

namespace qgame {

DensityMatrix::DensityMatrix(HermitianOperator op, SubsystemShape shape) : op_(std::move(op)), shape_(std::move(shape)) {
  if (op_.dim() != shape_.total())
    throw DimensionMismatch("density matrix dimension " + std::to_string(op_.dim()) + " does not match shape total " +
                            std::to_string(shape_.total()));
  if (std::abs(op_.trace() - 1.0) > 1e-12) throw DomainError("density matrix trace differs from 1");
  const RVector values = hermitian_eigen(op_.matrix()).values;
  if (values.minCoeff() < -kEigenvalueClip) throw DomainError("density matrix has a negative eigenvalue");
}

DensityMatrix::DensityMatrix(HermitianOperator op) : DensityMatrix(op, SubsystemShape{op.dim()}) {}

DensityMatrix DensityMatrix::normalized(const CMatrix& m, const SubsystemShape& shape) {
  const Complex tr = m.trace();
  if (std::abs(tr) == 0.0) throw DomainError("cannot normalise a traceless matrix");
  return DensityMatrix(HermitianOperator::symmetrized(m / tr.real()), shape);
}

DensityMatrix DensityMatrix::maximally_mixed(const SubsystemShape& shape) {
  const auto d = static_cast<Eigen::Index>(shape.total());
  return DensityMatrix(HermitianOperator::symmetrized(CMatrix::Identity(d, d) / static_cast<double>(d)), shape);
}

RVector DensityMatrix::eigenvalues() const {
  RVector values = hermitian_eigen(op_.matrix()).values;
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    if (values(j) < -kEigenvalueClip) throw DomainError("density matrix has a negative eigenvalue");
    if (values(j) < 0.0) values(j) = 0.0;
  }
  return values;
}

double DensityMatrix::purity() const { return hs_inner(op_.matrix(), op_.matrix()); }

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemShape& shape, std::size_t keep) {
  CMatrix reduced = partial_trace(rho.matrix(), shape, keep);
  return DensityMatrix(HermitianOperator::symmetrized(reduced), SubsystemShape{shape.dim(keep)});
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) { return partial_trace(rho, rho.shape(), keep); }

std::vector<DensityMatrix> marginals(const DensityMatrix& rho) {
  std::vector<DensityMatrix> out;
  out.reserve(rho.shape().count());
  for (std::size_t i = 0; i < rho.shape().count(); ++i) out.push_back(partial_trace(rho, i));
  return out;
}

double spectral_entropy(const RVector& probabilities) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < probabilities.size(); ++j) {
    const double q = probabilities(j);
    if (q > 0.0) h -= q * std::log(q);
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) { return spectral_entropy(rho.eigenvalues()); }

std::vector<double> marginal_entropies(const DensityMatrix& rho) {
  std::vector<double> out;
  for (const DensityMatrix& m : marginals(rho)) out.push_back(von_neumann_entropy(m));
  return out;
}

DensityMatrix lme_origin(const SubsystemShape& shape) {
  if (shape.count() != 2 || shape.dim(0) != shape.dim(1))
    throw UnsupportedShape("LME origin is only constructed for bipartite shapes with equal local dimensions");
  const auto q = static_cast<Eigen::Index>(shape.dim(0));
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(q * q);
  for (Eigen::Index j = 0; j < q; ++j) phi(j * q + j) = 1.0 / std::sqrt(static_cast<double>(q));
  return DensityMatrix(HermitianOperator::symmetrized(phi * phi.adjoint()), shape);
}

DensityMatrix regularized_origin(const SubsystemShape& shape, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("regularisation eps must lie in (0, 1)");
  const DensityMatrix origin = lme_origin(shape);
  const auto d = static_cast<Eigen::Index>(shape.total());
  const CMatrix mixed = (1.0 - eps) * origin.matrix() + eps * CMatrix::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix(HermitianOperator::symmetrized(mixed), shape);
}

double multi_information(const DensityMatrix& rho) {
  double sum = 0.0;
  for (double h : marginal_entropies(rho)) sum += h;
  return sum - von_neumann_entropy(rho);
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::size_t> dims = a.shape().dims();
  dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
  return DensityMatrix(tensor_product(a.op(), b.op()), SubsystemShape(dims));
}

}  // namespace qgame
