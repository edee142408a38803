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

#include "qgame/constraint.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qgame/errors.hpp"

namespace qgame {

namespace {

// reduced[i][b] = tr_{~i}(d rho / d theta_b)
std::vector<std::vector<CMatrix>> reduced_derivatives(const ExpFamilyPoint& point) {
  const SubsystemShape& shape = point.shape();
  const std::vector<CMatrix> drho = point.rho_derivatives();
  std::vector<std::vector<CMatrix>> out(shape.count());
  for (std::size_t i = 0; i < shape.count(); ++i) {
    out[i].reserve(drho.size());
    for (const CMatrix& d : drho) out[i].push_back(partial_trace(d, shape, i));
  }
  return out;
}

std::vector<HermitianSpectrum> marginal_spectra(const ExpFamilyPoint& point) {
  std::vector<HermitianSpectrum> out;
  for (std::size_t i = 0; i < point.shape().count(); ++i)
    out.push_back(hermitian_eigen(partial_trace(point.state_matrix(), point.shape(), i)));
  return out;
}

RVector gradient_from(const ExpFamilyPoint& point, const std::vector<std::vector<CMatrix>>& reduced) {
  const std::vector<HermitianSpectrum> spectra = marginal_spectra(point);
  RVector a = RVector::Zero(static_cast<Eigen::Index>(point.size()));
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const HermitianSpectrum& s = spectra[i];
    if (s.values.minCoeff() <= kFaithfulFloor)
      throw BoundaryState("marginal " + std::to_string(i) + " is rank deficient");
    const RVector logs = s.values.array().log();
    const CMatrix log_rho = s.vectors * logs.cast<Complex>().asDiagonal() * s.vectors.adjoint();
    for (std::size_t b = 0; b < reduced[i].size(); ++b)
      a(static_cast<Eigen::Index>(b)) -= hs_inner(log_rho, reduced[i][b]);
  }
  return a;
}

RMatrix jacobian_from(const ExpFamilyPoint& point, const std::vector<std::vector<CMatrix>>& reduced) {
  const SubsystemShape& shape = point.shape();
  Eigen::Index rows = 0;
  for (std::size_t d : shape.dims()) rows += static_cast<Eigen::Index>(d * d);
  RMatrix m(rows, static_cast<Eigen::Index>(point.size()));
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < shape.count(); ++i) {
    const auto block = static_cast<Eigen::Index>(shape.dim(i) * shape.dim(i));
    for (std::size_t b = 0; b < reduced[i].size(); ++b)
      m.block(offset, static_cast<Eigen::Index>(b), block, 1) = hermitian_vec(reduced[i][b]);
    offset += block;
  }
  return m;
}

}  // namespace

RVector hermitian_vec(const CMatrix& x) {
  const Eigen::Index n = x.rows();
  RVector out(n * n);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < n; ++j) out(k++) = x(j, j).real();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = j + 1; l < n; ++l) {
      out(k++) = std::sqrt(2.0) * x(j, l).real();
      out(k++) = std::sqrt(2.0) * x(j, l).imag();
    }
  }
  return out;
}

double marginal_entropy_sum(const ExpFamilyPoint& point) {
  double c = 0.0;
  for (const HermitianSpectrum& s : marginal_spectra(point)) {
    RVector q = s.values.cwiseMax(0.0);
    c += spectral_entropy(q);
  }
  return c;
}

RVector constraint_gradient(const ExpFamilyPoint& point) { return gradient_from(point, reduced_derivatives(point)); }

RMatrix constraint_hessian(const ExpFamilyPoint& point, double step_scale) {
  const RVector& theta = point.theta();
  const auto m = theta.size();
  const double h = step_scale * std::max(1.0, theta.norm());
  RMatrix hess(m, m);
  for (Eigen::Index b = 0; b < m; ++b) {
    RVector plus = theta;
    RVector minus = theta;
    plus(b) += h;
    minus(b) -= h;
    const RVector ap = constraint_gradient(ExpFamilyPoint(NaturalParams(plus), point.basis_ptr()));
    const RVector am = constraint_gradient(ExpFamilyPoint(NaturalParams(minus), point.basis_ptr()));
    hess.col(b) = (ap - am) / (2.0 * h);
  }
  return 0.5 * (hess + hess.transpose());
}

RMatrix marginal_jacobian(const ExpFamilyPoint& point) { return jacobian_from(point, reduced_derivatives(point)); }

RMatrix kernel_basis(const RMatrix& jacobian, double threshold) {
  const Eigen::Index m = jacobian.cols();
  if (jacobian.rows() == 0 || jacobian.cwiseAbs().maxCoeff() == 0.0) return RMatrix::Identity(m, m);
  Eigen::JacobiSVD<RMatrix> svd(jacobian, Eigen::ComputeFullV);
  const RVector& sigma = svd.singularValues();
  const double cutoff = threshold * sigma(0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  if (rank >= m) throw FullyConstrained("marginal constraints leave no admissible direction");
  return svd.matrixV().rightCols(m - rank);
}

RMatrix marginal_projector(const RMatrix& metric, const RMatrix& kernel, double max_condition) {
  if (metric.rows() != kernel.rows()) throw DimensionMismatch("metric and kernel basis differ in size");
  const RMatrix gn = metric * kernel;
  RMatrix reduced = kernel.transpose() * gn;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(reduced, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > max_condition)
    throw NumericalDegeneracy("N^T G N is ill-conditioned (condition " + std::to_string(hi / lo) + ")");
  Eigen::LLT<RMatrix> chol(reduced);
  return kernel * chol.solve(gn.transpose());
}

RMatrix marginal_projector(const ExpFamilyPoint& point, const RMatrix& kernel, double max_condition) {
  return marginal_projector(point.metric(), kernel, max_condition);
}

ConstraintGeometry ConstraintGeometry::compute(const ExpFamilyPoint& point, const ConstraintOptions& options) {
  ConstraintGeometry g;
  g.at = point.theta();
  const auto reduced = reduced_derivatives(point);
  g.value = marginal_entropy_sum(point);
  g.gradient = gradient_from(point, reduced);
  g.jacobian = jacobian_from(point, reduced);
  g.singular_values = Eigen::JacobiSVD<RMatrix>(g.jacobian).singularValues();
  if (options.with_hessian) g.hessian = constraint_hessian(point, options.hessian_step);
  g.kernel = kernel_basis(g.jacobian, options.kernel_threshold);
  g.projector = marginal_projector(point.metric(), g.kernel, options.max_condition);
  return g;
}

double second_order_admissibility(const RMatrix& hessian, const RVector& v) { return v.dot(hessian * v); }

double second_order_admissibility(const ExpFamilyPoint& point, const RVector& v) {
  return second_order_admissibility(constraint_hessian(point), v);
}

double stiffness_quotient(const RMatrix& hessian, const RMatrix& metric, const RVector& v) {
  return -v.dot(hessian * v) / v.dot(metric * v);
}

RMatrix StiffnessSpectrum::soft_modes(double threshold) const {
  return vectors.leftCols(static_cast<Eigen::Index>(soft_count(threshold)));
}

std::size_t StiffnessSpectrum::soft_count(double threshold) const {
  std::size_t n = 0;
  while (n < static_cast<std::size_t>(values.size()) && values(static_cast<Eigen::Index>(n)) < threshold) ++n;
  return n;
}

StiffnessSpectrum stiffness_spectrum(const RMatrix& hessian, const RMatrix& metric) {
  const RMatrix neg = -0.5 * (hessian + hessian.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<RMatrix> solver(neg, metric, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw NumericalDegeneracy("generalised eigensolver failed; is G positive definite?");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StiffnessSpectrum stiffness_spectrum(const ExpFamilyPoint& point) {
  return stiffness_spectrum(constraint_hessian(point), point.metric());
}

RVector principal_angles(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("subspaces live in different ambient dimensions");
  if (a.cols() == 0 || b.cols() == 0) return RVector(0);
  auto orth = [](const RMatrix& x) {
    Eigen::JacobiSVD<RMatrix> svd(x, Eigen::ComputeThinU);
    const RVector& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > 1e-12 * s(0)) ++r;
    return RMatrix(svd.matrixU().leftCols(r));
  };
  const RMatrix qa = orth(a);
  const RMatrix qb = orth(b);
  const RVector cosines = Eigen::JacobiSVD<RMatrix>(qa.transpose() * qb).singularValues();
  RVector angles(cosines.size());
  for (Eigen::Index j = 0; j < cosines.size(); ++j) angles(j) = std::acos(std::min(1.0, cosines(j)));
  std::sort(angles.data(), angles.data() + angles.size());
  return angles;
}

}  // namespace qgame
