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

#include "qgame/expfamily.hpp"

#include <algorithm>
#include <cmath>

#include "qgame/errors.hpp"

namespace qgame {

NaturalParams::NaturalParams(RVector values) : values_(std::move(values)) {
  if (!values_.allFinite()) throw DomainError("natural parameters must be finite");
}

namespace {

void check_length(const NaturalParams& theta, const OperatorBasis& basis) {
  if (theta.size() != basis.size()) throw DimensionMismatch("natural parameter length does not match basis size");
}

double log_sum_exp(const RVector& values) {
  const double top = values.maxCoeff();
  return top + std::log((values.array() - top).unaryExpr([](double x) { return std::exp(x); }).sum());
}

}  // namespace

double log_partition(const NaturalParams& theta, const OperatorBasis& basis) {
  check_length(theta, basis);
  return log_sum_exp(hermitian_eigen(basis.combine(theta.values())).values);
}

DensityMatrix state_from_params(const NaturalParams& theta, const OperatorBasis& basis) {
  check_length(theta, basis);
  const HermitianSpectrum spec = hermitian_eigen(basis.combine(theta.values()));
  const double psi = log_sum_exp(spec.values);
  const RVector p = (spec.values.array() - psi).unaryExpr([](double x) { return std::exp(x); });
  const CMatrix rho = spec.vectors * p.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
  return DensityMatrix(HermitianOperator::symmetrized(rho), basis.shape());
}

NaturalParams params_from_state(const DensityMatrix& rho, const OperatorBasis& basis) {
  if (!(rho.shape() == basis.shape())) throw DimensionMismatch("state shape does not match basis shape");
  const HermitianSpectrum spec = hermitian_eigen(rho.matrix());
  if (spec.values.minCoeff() <= kFaithfulFloor)
    throw BoundaryState("state is not faithful: smallest eigenvalue " + std::to_string(spec.values.minCoeff()));
  const RVector logs = spec.values.array().log();
  const CMatrix log_rho = spec.vectors * logs.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
  return NaturalParams(basis.coefficients(log_rho));
}

double bkm_kernel(double p, double q) {
  const double hi = std::max(p, q);
  const double lo = std::min(p, q);
  if (hi - lo < 1e-12 * hi) return p;
  if (!(lo > 0.0)) return 0.0;
  // hi * u / log(1 + u) with u = lo/hi - 1 in (-1, 0).
  const double u = lo / hi - 1.0;
  if (u < -0.5) return (hi - lo) / (std::log(hi) - std::log(lo));
  return hi * u / std::log1p(u);
}

ExpFamilyPoint::ExpFamilyPoint(NaturalParams theta, std::shared_ptr<const OperatorBasis> basis)
    : theta_(std::move(theta)), basis_(std::move(basis)) {
  if (!basis_) throw DomainError("exponential family point needs a basis");
  check_length(theta_, *basis_);

  generator_ = basis_->combine(theta_.values());
  const HermitianSpectrum spec = hermitian_eigen(generator_);
  psi_ = log_sum_exp(spec.values);
  log_populations_ = spec.values.array() - psi_;
  populations_ = log_populations_.array().unaryExpr([](double x) { return std::exp(x); });
  eigenvectors_ = spec.vectors;
  rho_ = eigenvectors_ * populations_.cast<Complex>().asDiagonal() * eigenvectors_.adjoint();
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();

  const auto m = static_cast<Eigen::Index>(basis_->size());
  const auto d = static_cast<Eigen::Index>(basis_->dim());
  mean_.resize(m);
  centered_eigbasis_.resize(d * d, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    CMatrix f = eigenvectors_.adjoint() * (*basis_)[static_cast<std::size_t>(a)].matrix() * eigenvectors_;
    // tr(rho F_a) is the population-weighted diagonal in the eigenbasis.
    double mu = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) mu += populations_(j) * f(j, j).real();
    mean_(a) = mu;
    f.diagonal().array() -= mu;
    centered_eigbasis_.col(a) = f.reshaped();
  }

  entropy_ = -theta_.values().dot(mean_) + psi_;

  kernel_.resize(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) kernel_(j, k) = bkm_kernel(populations_(j), populations_(k));

  if (populations_.minCoeff() > 0.0) {
    // G_ab = sum_jk (F~_a)_jk (F~_b)_kj Phi_jk = Re <sqrt(Phi) o F~_b, sqrt(Phi) o F~_a>.
    const RVector weight = kernel_.reshaped().array().sqrt();
    CMatrix weighted = centered_eigbasis_;
    for (Eigen::Index a = 0; a < m; ++a) weighted.col(a).array() *= weight.array().cast<Complex>();
    RMatrix g = (weighted.adjoint() * weighted).real();
    metric_ = 0.5 * (g + g.transpose());
  }
}

DensityMatrix ExpFamilyPoint::state() const {
  return DensityMatrix(HermitianOperator::symmetrized(rho_), basis_->shape());
}

const RMatrix& ExpFamilyPoint::metric() const {
  if (!metric_) throw BoundaryState("BKM metric undefined: state is numerically rank deficient");
  return *metric_;
}

CMatrix ExpFamilyPoint::derivative_in_eigenbasis(const CMatrix& centered_eig) const {
  const auto d = static_cast<Eigen::Index>(basis_->dim());
  CMatrix inner = centered_eig.reshaped(d, d);
  inner.array() *= kernel_.array().cast<Complex>();
  return eigenvectors_ * inner * eigenvectors_.adjoint();
}

CMatrix ExpFamilyPoint::rho_derivative(const RVector& v) const {
  if (v.size() != static_cast<Eigen::Index>(basis_->size())) throw DimensionMismatch("direction length mismatch");
  return derivative_in_eigenbasis(centered_eigbasis_ * v.cast<Complex>());
}

std::vector<CMatrix> ExpFamilyPoint::rho_derivatives() const {
  std::vector<CMatrix> out;
  out.reserve(basis_->size());
  for (Eigen::Index b = 0; b < centered_eigbasis_.cols(); ++b)
    out.push_back(derivative_in_eigenbasis(centered_eigbasis_.col(b)));
  return out;
}

RVector ExpFamilyPoint::params_velocity(const CMatrix& rho_dot) const {
  const RVector w = basis_->coefficients(rho_dot);
  Eigen::LLT<RMatrix> chol(metric());
  if (chol.info() != Eigen::Success) throw NumericalDegeneracy("BKM metric is not positive definite");
  return chol.solve(w);
}

RVector mean_params(const ExpFamilyPoint& point) { return point.mean(); }

RMatrix bkm_metric(const ExpFamilyPoint& point) { return point.metric(); }

EntropyAndGradient entropy_and_gradient(const ExpFamilyPoint& point) {
  return {point.entropy(), -(point.metric() * point.theta())};
}

}  // namespace qgame
