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

#include "qgame/modular.hpp"

#include <cmath>

#include "qgame/errors.hpp"
#include "qgame/expfamily.hpp"

namespace qgame {

HermitianOperator modular_hamiltonian(const DensityMatrix& rho) {
  const HermitianSpectrum spec = hermitian_eigen(rho.matrix());
  if (spec.values.minCoeff() <= kFaithfulFloor) throw BoundaryState("modular Hamiltonian needs a faithful state");
  const RVector k = -spec.values.array().log();
  return HermitianOperator::symmetrized(spec.vectors * k.cast<Complex>().asDiagonal() * spec.vectors.adjoint());
}

double modular_energy_sum(const DensityMatrix& rho) {
  double sum = 0.0;
  for (const DensityMatrix& m : marginals(rho)) sum += hs_inner(m.matrix(), modular_hamiltonian(m).matrix());
  return sum;
}

GibbsFamily::GibbsFamily(HermitianOperator generator, double beta)
    : generator_(std::move(generator)), beta_(beta) {
  if (!std::isfinite(beta_)) throw DomainError("inverse temperature must be finite");
  energies_ = hermitian_eigen(generator_.matrix()).values;
  const RVector exponents = -beta_ * energies_;
  const double top = exponents.maxCoeff();
  log_partition_ = top + std::log((exponents.array() - top).unaryExpr([](double x) { return std::exp(x); }).sum());
  populations_ = (exponents.array() - log_partition_).unaryExpr([](double x) { return std::exp(x); });
  partition_ = std::exp(log_partition_);
}

DensityMatrix GibbsFamily::state() const {
  const HermitianSpectrum spec = hermitian_eigen(generator_.matrix());
  const CMatrix rho = spec.vectors * populations_.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
  return DensityMatrix(HermitianOperator::symmetrized(rho), SubsystemShape{generator_.dim()});
}

double GibbsFamily::entropy() const { return spectral_entropy(populations_); }

double GibbsFamily::variance() const {
  const double mean = populations_.dot(energies_);
  return populations_.dot((energies_.array() - mean).square().matrix());
}

double gibbs_entropy_derivative(const GibbsFamily& family) { return -family.beta() * family.variance(); }

namespace {

CMatrix traceless_part(const CMatrix& x) {
  const auto d = x.rows();
  return x - x.trace() / static_cast<double>(d) * CMatrix::Identity(d, d);
}

}  // namespace

GibbsLockFit gibbs_lock_residual(const DensityMatrix& rho_i, const HermitianOperator& h_local) {
  if (rho_i.dim() != h_local.dim()) throw DimensionMismatch("state and generator dimensions differ");
  const CMatrix k0 = traceless_part(modular_hamiltonian(rho_i).matrix());
  const CMatrix h0 = traceless_part(h_local.matrix());
  if (h0.norm() < 1e-12) throw DomainError("generator is proportional to the identity; beta is unidentifiable");

  auto objective = [&](double beta) { return (k0 - beta * h0).squaredNorm(); };

  // Bracket a < b < c with f(b) <= f(a), f(c) by doubling outwards from 0.
  double a = -1.0, b = 0.0, c = 1.0;
  double fa = objective(a), fb = objective(b), fc = objective(c);
  for (int iter = 0; iter < 200 && !(fb <= fa && fb <= fc); ++iter) {
    if (fc < fb) {
      a = b, fa = fb;
      b = c, fb = fc;
      c = b + 2.0 * (b - a);
      fc = objective(c);
    } else {
      c = b, fc = fb;
      b = a, fb = fa;
      a = b - 2.0 * (c - b);
      fa = objective(a);
    }
  }

  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = c - ratio * (c - a);
  double x2 = a + ratio * (c - a);
  double f1 = objective(x1), f2 = objective(x2);
  for (int iter = 0; iter < 400 && (c - a) > 1e-14 + 1e-13 * std::abs(b); ++iter) {
    if (f1 <= f2) {
      c = x2;
      x2 = x1, f2 = f1;
      x1 = c - ratio * (c - a);
      f1 = objective(x1);
      b = x2;
    } else {
      a = x1;
      x1 = x2, f1 = f2;
      x2 = a + ratio * (c - a);
      f2 = objective(x2);
      b = x1;
    }
  }
  const double beta = f1 <= f2 ? x1 : x2;
  return {beta, std::sqrt(objective(beta))};
}

}  // namespace qgame
