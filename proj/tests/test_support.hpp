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

#ifndef QGAME_TESTS_TEST_SUPPORT_HPP
#define QGAME_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <random>

#include "qgame/basis.hpp"
#include "qgame/expfamily.hpp"
#include "qgame/operators.hpp"
#include "qgame/random.hpp"
#include "qgame/states.hpp"

namespace qgame::testing {

using ScalarField = std::function<double(const RVector&)>;

inline std::shared_ptr<const OperatorBasis> product_basis(const SubsystemShape& shape) {
  return std::make_shared<const OperatorBasis>(OperatorBasis::product(shape));
}

inline RVector random_vector(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

inline RVector unit(Eigen::Index n, Eigen::Index k) {
  RVector e = RVector::Zero(n);
  e(k) = 1.0;
  return e;
}

/// Central first differences of f.
inline RVector fd_gradient(const ScalarField& f, const RVector& x, double h) {
  RVector g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const RVector e = unit(x.size(), k) * h;
    g(k) = (f(x + e) - f(x - e)) / (2.0 * h);
  }
  return g;
}

/// Central second differences of f, using the four-point stencil for the
/// mixed partials.
inline RMatrix fd_hessian(const ScalarField& f, const RVector& x, double h) {
  const Eigen::Index n = x.size();
  RMatrix hess(n, n);
  const double f0 = f(x);
  for (Eigen::Index a = 0; a < n; ++a) {
    const RVector ea = unit(n, a) * h;
    hess(a, a) = (f(x + ea) - 2.0 * f0 + f(x - ea)) / (h * h);
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const RVector eb = unit(n, b) * h;
      hess(a, b) = (f(x + ea + eb) - f(x + ea - eb) - f(x - ea + eb) + f(x - ea - eb)) / (4.0 * h * h);
      hess(b, a) = hess(a, b);
    }
  }
  return hess;
}

/// Second directional difference of f at x along v.
inline double fd_curvature(const ScalarField& f, const RVector& x, const RVector& v, double h) {
  return (f(x + h * v) - 2.0 * f(x) + f(x - h * v)) / (h * h);
}

inline double relative_frobenius(const RMatrix& a, const RMatrix& reference) {
  return (a - reference).norm() / reference.norm();
}

inline double psi_at(const OperatorBasis& basis, const RVector& theta) {
  return log_partition(NaturalParams(theta), basis);
}

inline double entropy_at(const std::shared_ptr<const OperatorBasis>& basis, const RVector& theta) {
  return ExpFamilyPoint(NaturalParams(theta), basis).entropy();
}

/// Straightforward O(d^2 d_keep^2) partial trace over a bipartite index
/// (i k),(j l) layout, used as an oracle.
inline CMatrix partial_trace_by_blocks(const CMatrix& rho, std::size_t d1, std::size_t d2, std::size_t keep) {
  const auto n1 = static_cast<Eigen::Index>(d1), n2 = static_cast<Eigen::Index>(d2);
  if (keep == 0) {
    CMatrix out = CMatrix::Zero(n1, n1);
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n1; ++j)
        for (Eigen::Index k = 0; k < n2; ++k) out(i, j) += rho(i * n2 + k, j * n2 + k);
    return out;
  }
  CMatrix out = CMatrix::Zero(n2, n2);
  for (Eigen::Index k = 0; k < n2; ++k)
    for (Eigen::Index l = 0; l < n2; ++l)
      for (Eigen::Index i = 0; i < n1; ++i) out(k, l) += rho(i * n2 + k, i * n2 + l);
  return out;
}

/// Random theta of a full-rank state with a well-conditioned spectrum.
inline RVector random_theta(const OperatorBasis& basis, std::mt19937_64& rng, double scale = 0.5) {
  return random_vector(static_cast<Eigen::Index>(basis.size()), rng, scale);
}

}  // namespace qgame::testing

#endif  // QGAME_TESTS_TEST_SUPPORT_HPP
