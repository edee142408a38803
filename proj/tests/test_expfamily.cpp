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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "qgame/errors.hpp"
#include "qgame/expfamily.hpp"
#include "qgame/random.hpp"
#include "test_support.hpp"

using namespace qgame;
using namespace qgame::testing;

namespace {

std::shared_ptr<const OperatorBasis> qubit_z_basis() {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0 / std::sqrt(2.0);
  z(1, 1) = -1.0 / std::sqrt(2.0);
  return std::make_shared<const OperatorBasis>(SubsystemShape{2}, std::vector<HermitianOperator>{HermitianOperator(z)},
                                               std::vector<Sector>{Sector{{0}}});
}

/// The d - 1 diagonal Gell-Mann elements, rescaled to unit norm.
std::shared_ptr<const OperatorBasis> diagonal_basis(std::size_t d) {
  std::vector<HermitianOperator> elements;
  std::vector<Sector> sectors;
  for (const CMatrix& g : generalized_gell_mann(d)) {
    if (!g.isDiagonal()) continue;
    elements.emplace_back(g / std::sqrt(2.0));
    sectors.push_back(Sector{{0}});
  }
  return std::make_shared<const OperatorBasis>(SubsystemShape{d}, elements, sectors);
}

}  // namespace

TEST_SUITE("expfamily") {

TEST_CASE("natural params reject non-finite entries") {
  RVector v(2);
  v << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(NaturalParams{v}, DomainError);
  v(1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(NaturalParams{v}, DomainError);
}

TEST_CASE("log partition") {
  const auto q3 = product_basis(SubsystemShape::bipartite(3));
  CHECK(log_partition(NaturalParams::zero(80), *q3) == doctest::Approx(std::log(9.0)).epsilon(1e-15));

  const auto z = qubit_z_basis();
  for (double s : {-3.0, -0.2, 0.0, 0.7, 5.0, 800.0}) {
    RVector theta(1);
    theta << s;
    const double x = s / std::sqrt(2.0);
    const double oracle = std::abs(x) + std::log1p(std::exp(-2.0 * std::abs(x)));  // log(2 cosh x)
    CHECK(log_partition(NaturalParams(theta), *z) == doctest::Approx(oracle).epsilon(1e-14));
  }

  std::mt19937_64 rng(1);
  const auto b22 = product_basis(SubsystemShape{2, 2});
  for (int trial = 0; trial < 50; ++trial) {
    const RVector t1 = random_theta(*b22, rng, 1.5), t2 = random_theta(*b22, rng, 1.5);
    CHECK(psi_at(*b22, 0.5 * (t1 + t2)) <= 0.5 * (psi_at(*b22, t1) + psi_at(*b22, t2)) + 1e-14);
  }
}

TEST_CASE("state from params") {
  const auto b23 = product_basis(SubsystemShape{2, 3});
  CHECK((state_from_params(NaturalParams::zero(35), *b23).matrix() - CMatrix::Identity(6, 6) / 6.0).norm() <= 1e-15);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density_matrix(b23->shape(), rng);
    const DensityMatrix back = state_from_params(params_from_state(rho, *b23), *b23);
    CHECK((back.matrix() - rho.matrix()).norm() / rho.matrix().norm() <= 1e-9);
  }

  const auto q3 = product_basis(SubsystemShape::bipartite(3));
  const DensityMatrix rho = state_from_params(params_from_state(regularized_origin(q3->shape(), 0.05), *q3), *q3);
  for (const DensityMatrix& m : marginals(rho)) CHECK((m.matrix() - CMatrix::Identity(3, 3) / 3.0).norm() <= 1e-9);
}

TEST_CASE("params from state") {
  const auto q3 = product_basis(SubsystemShape::bipartite(3));
  CHECK(params_from_state(DensityMatrix::maximally_mixed(q3->shape()), *q3).norm() <= 1e-14);
  CHECK_THROWS_AS(params_from_state(lme_origin(q3->shape()), *q3), BoundaryState);
  CHECK(params_from_state(regularized_origin(q3->shape(), 1e-6), *q3).norm() > 10.0);

  SUBCASE("gibbs state along sigma_z") {
    const auto z = qubit_z_basis();
    const double beta = 0.8;
    RVector energies(2);
    energies << 1.0, -1.0;
    const DensityMatrix gibbs = DensityMatrix::normalized(
        HermitianOperator::diagonal((-beta * energies).array().exp().matrix()).matrix(), SubsystemShape{2});
    const NaturalParams theta = params_from_state(gibbs, *z);
    CHECK(theta.values()(0) == doctest::Approx(-std::sqrt(2.0) * beta).epsilon(1e-14));
    CHECK((state_from_params(theta, *z).matrix() - gibbs.matrix()).norm() <= 1e-14);
  }
}

TEST_CASE("point invariants on random parameters") {
  std::mt19937_64 rng(3);
  const auto b23 = product_basis(SubsystemShape{2, 3});
  for (int trial = 0; trial < 20; ++trial) {
    const ExpFamilyPoint p(NaturalParams(random_theta(*b23, rng, 0.8)), b23);
    CHECK(std::abs(p.state_matrix().trace() - 1.0) <= 1e-10);
    for (std::size_t a = 0; a < b23->size(); ++a)
      CHECK(std::abs(p.mean()(static_cast<Eigen::Index>(a)) - hs_inner(p.state_matrix(), (*b23)[a].matrix())) <= 1e-10);
    const RMatrix& g = p.metric();
    CHECK((g - g.transpose()).norm() <= 1e-10);
    CHECK(Eigen::SelfAdjointEigenSolver<RMatrix>(g).eigenvalues().minCoeff() > 0.0);
    CHECK(p.entropy() == doctest::Approx(von_neumann_entropy(p.state())).epsilon(1e-12));
  }
}

TEST_CASE("mean parameters") {
  const auto b22 = product_basis(SubsystemShape{2, 2});
  CHECK(mean_params(ExpFamilyPoint(NaturalParams::zero(15), b22)).norm() <= 1e-15);

  std::mt19937_64 rng(4);
  for (const auto& basis : {product_basis(SubsystemShape{2}), product_basis(SubsystemShape{3}), b22}) {
    for (int trial = 0; trial < 10; ++trial) {
      const RVector theta = random_theta(*basis, rng, 0.7);
      const RVector fd = fd_gradient([&](const RVector& x) { return psi_at(*basis, x); }, theta, 1e-5);
      CHECK((mean_params(ExpFamilyPoint(NaturalParams(theta), basis)) - fd).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }

  const auto z = qubit_z_basis();
  for (double s : {-2.0, 0.3, 1.7}) {
    RVector theta(1);
    theta << s;
    const double mu = ExpFamilyPoint(NaturalParams(theta), z).mean()(0);
    CHECK(mu == doctest::Approx(std::tanh(s / std::sqrt(2.0)) / std::sqrt(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("bkm kernel") {
  CHECK(bkm_kernel(0.3, 0.3) == 0.3);
  CHECK(bkm_kernel(0.2, 0.1) == doctest::Approx(0.1 / std::log(2.0)).epsilon(1e-15));
  CHECK(bkm_kernel(0.1, 0.2) == bkm_kernel(0.2, 0.1));
  const double p = 0.25;
  CHECK(bkm_kernel(p, p * (1.0 + 1e-9)) == doctest::Approx(p * (1.0 + 0.5e-9)).epsilon(1e-15));
  CHECK(bkm_kernel(1e-300, 1e-320) > 0.0);
}

TEST_CASE("bkm metric") {
  SUBCASE("at the centre") {
    for (const SubsystemShape& shape : {SubsystemShape{3}, SubsystemShape{2, 3}}) {
      const auto basis = product_basis(shape);
      const RMatrix g = bkm_metric(ExpFamilyPoint(NaturalParams::zero(basis->size()), basis));
      const auto m = static_cast<Eigen::Index>(basis->size());
      CHECK((g - RMatrix::Identity(m, m) / static_cast<double>(shape.total())).norm() <= 1e-14);
    }
  }
  SUBCASE("finite-difference hessian of psi") {
    std::mt19937_64 rng(5);
    for (const auto& basis : {product_basis(SubsystemShape{2}), product_basis(SubsystemShape{3}), product_basis(SubsystemShape{2, 2})}) {
      for (int trial = 0; trial < 5; ++trial) {
        const RVector theta = random_theta(*basis, rng, 0.7);
        const RMatrix fd = fd_hessian([&](const RVector& x) { return psi_at(*basis, x); }, theta, 5e-4);
        CHECK(relative_frobenius(bkm_metric(ExpFamilyPoint(NaturalParams(theta), basis)), fd) <= 1e-6);
      }
    }
  }
  SUBCASE("frechet derivative route") {
    std::mt19937_64 rng(6);
    const auto basis = product_basis(SubsystemShape{2, 2});
    for (int trial = 0; trial < 5; ++trial) {
      const ExpFamilyPoint p(NaturalParams(random_theta(*basis, rng, 0.7)), basis);
      const CMatrix exponent = p.generator() - p.log_partition() * CMatrix::Identity(4, 4);
      const RMatrix& g = p.metric();
      for (std::size_t b = 0; b < basis->size(); ++b) {
        const CMatrix centred = (*basis)[b].matrix() - p.mean()(static_cast<Eigen::Index>(b)) * CMatrix::Identity(4, 4);
        const CMatrix drho = frechet_exp(exponent, centred);
        for (std::size_t a = 0; a < basis->size(); ++a)
          CHECK(std::abs(hs_inner((*basis)[a].matrix(), drho) - g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) <= 1e-9);
      }
    }
  }
  SUBCASE("commutative reduction to a covariance") {
    std::mt19937_64 rng(7);
    const auto basis = diagonal_basis(4);
    for (int trial = 0; trial < 10; ++trial) {
      const ExpFamilyPoint p(NaturalParams(random_theta(*basis, rng, 1.0)), basis);
      const RVector prob = p.state_matrix().diagonal().real();
      RMatrix stats(4, 3);
      for (Eigen::Index a = 0; a < 3; ++a) stats.col(a) = (*basis)[static_cast<std::size_t>(a)].matrix().diagonal().real();
      const RVector mean = stats.transpose() * prob;
      const RMatrix cov = stats.transpose() * prob.asDiagonal() * stats - mean * mean.transpose();
      CHECK((p.metric() - cov).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("degenerates toward the pure origin") {
    const auto q3 = product_basis(SubsystemShape::bipartite(3));
    double previous = std::numeric_limits<double>::infinity();
    for (double eps : {0.3, 0.1, 0.03, 0.01}) {
      const ExpFamilyPoint p(params_from_state(regularized_origin(q3->shape(), eps), *q3), q3);
      const RVector dir = p.theta().normalized();
      const double along = dir.dot(p.metric() * dir);
      const double lowest = Eigen::SelfAdjointEigenSolver<RMatrix>(p.metric()).eigenvalues().minCoeff();
      CHECK(lowest > 0.0);
      CHECK(lowest < previous);
      CHECK(along < 2.0 * eps);
      previous = lowest;
    }
  }
  SUBCASE("rank-deficient point") {
    const auto z = qubit_z_basis();
    RVector theta(1);
    theta << 1500.0;
    const ExpFamilyPoint p(NaturalParams(theta), z);
    CHECK_FALSE(p.has_metric());
    CHECK_THROWS_AS(p.metric(), BoundaryState);
    CHECK(std::isfinite(p.log_partition()));
  }
}

TEST_CASE("entropy and gradient") {
  const auto q3 = product_basis(SubsystemShape::bipartite(3));
  const EntropyAndGradient centre = entropy_and_gradient(ExpFamilyPoint(NaturalParams::zero(80), q3));
  CHECK(centre.entropy == doctest::Approx(std::log(9.0)).epsilon(1e-15));
  CHECK(centre.gradient.norm() == 0.0);

  std::mt19937_64 rng(8);
  for (const auto& basis : {product_basis(SubsystemShape{2, 2}), product_basis(SubsystemShape{3})}) {
    for (int trial = 0; trial < 10; ++trial) {
      const RVector theta = random_theta(*basis, rng, 0.8);
      const RVector fd = fd_gradient([&](const RVector& x) { return entropy_at(basis, x); }, theta, 1e-5);
      const EntropyAndGradient eg = entropy_and_gradient(ExpFamilyPoint(NaturalParams(theta), basis));
      CHECK((eg.gradient - fd).cwiseAbs().maxCoeff() <= 1e-7);
    }
  }

  SUBCASE("near the pure origin the gradient shrinks while theta grows") {
    double previous_theta = 0.0, previous_grad = std::numeric_limits<double>::infinity();
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const ExpFamilyPoint p(params_from_state(regularized_origin(q3->shape(), eps), *q3), q3);
      const double grad = entropy_and_gradient(p).gradient.norm();
      CHECK(p.params().norm() > previous_theta);
      CHECK(grad < previous_grad);
      previous_theta = p.params().norm();
      previous_grad = grad;
    }
    CHECK(previous_theta > 10.0);
    CHECK(previous_grad < 1e-3);
  }
}

TEST_CASE("entropy is concave near the centre") {
  std::mt19937_64 rng(9);
  const auto basis = product_basis(SubsystemShape{2, 2});
  for (int trial = 0; trial < 100; ++trial) {
    RVector a = random_theta(*basis, rng), b = random_theta(*basis, rng);
    a *= 0.5 / std::max(0.5, a.norm());
    b *= 0.5 / std::max(0.5, b.norm());
    for (double s : {0.25, 0.5, 0.75}) {
      const double mixed = entropy_at(basis, (1.0 - s) * a + s * b);
      CHECK(mixed >= (1.0 - s) * entropy_at(basis, a) + s * entropy_at(basis, b) - 1e-13);
    }
  }
}

TEST_CASE("entropy is not globally concave in natural coordinates") {
  // The Bernoulli entropy as a function of its logit turns convex at large
  // |theta|; this fixes a concrete segment where the chord lies above H.
  const auto z = qubit_z_basis();
  auto h = [&](double s) {
    RVector theta(1);
    theta << s;
    return entropy_at(z, theta);
  };
  const double lo = 3.0, hi = 6.0;
  CHECK(h(0.5 * (lo + hi)) < 0.5 * (h(lo) + h(hi)));
}

TEST_CASE("state velocity pushforward") {
  std::mt19937_64 rng(10);
  const auto basis = product_basis(SubsystemShape{2, 2});
  const ExpFamilyPoint p(NaturalParams(random_theta(*basis, rng, 0.6)), basis);
  const RVector v = random_theta(*basis, rng);
  const CMatrix rho_dot = p.rho_derivative(v);
  CHECK(std::abs(rho_dot.trace()) <= 1e-14);
  CHECK((p.params_velocity(rho_dot) - v).norm() <= 1e-10 * v.norm());
  const std::vector<CMatrix> columns = p.rho_derivatives();
  CMatrix sum = CMatrix::Zero(4, 4);
  for (std::size_t b = 0; b < columns.size(); ++b) sum += v(static_cast<Eigen::Index>(b)) * columns[b];
  CHECK((sum - rho_dot).norm() <= 1e-14);
}

}  // TEST_SUITE
