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
#include <random>

#include "qgame/constraint.hpp"
#include "qgame/errors.hpp"
#include "qgame/flow.hpp"
#include "qgame/modular.hpp"
#include "qgame/random.hpp"
#include "test_support.hpp"

using namespace qgame;
using namespace qgame::testing;

namespace {

/// h(beta) for the qubit family exp(-beta sigma_z) / Z.
double qubit_gibbs_entropy(double beta) { return std::log(2.0 * std::cosh(beta)) - beta * std::tanh(beta); }

HermitianOperator sigma_z() {
  RVector e(2);
  e << 1.0, -1.0;
  return HermitianOperator::diagonal(e);
}

}  // namespace

TEST_SUITE("modular") {

TEST_CASE("modular hamiltonian") {
  SUBCASE("maximally mixed") {
    for (std::size_t d : {2u, 3u, 5u}) {
      const HermitianOperator k = modular_hamiltonian(DensityMatrix::maximally_mixed(SubsystemShape{d}));
      const auto n = static_cast<Eigen::Index>(d);
      CHECK((k.matrix() - std::log(static_cast<double>(d)) * CMatrix::Identity(n, n)).norm() <= 1e-14);
    }
  }
  SUBCASE("gibbs state") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
      const HermitianOperator h = random_hermitian(3, rng);
      const GibbsFamily family(h, 0.9);
      const HermitianOperator k = modular_hamiltonian(family.state());
      const CMatrix expect = 0.9 * h.matrix() + family.log_partition() * CMatrix::Identity(3, 3);
      CHECK((k.matrix() - expect).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("round trip") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_density_matrix(SubsystemShape{4}, rng);
      const CMatrix e = matrix_exp(modular_hamiltonian(rho) * -1.0).matrix();
      CHECK((e / e.trace() - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("boundary") {
    CHECK_THROWS_AS(modular_hamiltonian(lme_origin(SubsystemShape::bipartite(2))), BoundaryState);
  }
}

TEST_CASE("modular energy sum") {
  const double cmax = 2.0 * std::log(3.0);
  const SubsystemShape q3 = SubsystemShape::bipartite(3);
  CHECK(modular_energy_sum(regularized_origin(q3, 0.05)) == doctest::Approx(cmax).epsilon(1e-14));
  CHECK(modular_energy_sum(DensityMatrix::maximally_mixed(SubsystemShape{2, 3, 2})) ==
        doctest::Approx(SubsystemShape({2, 3, 2}).max_marginal_entropy_sum()).epsilon(1e-14));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density_matrix(trial % 2 ? SubsystemShape{2, 3} : SubsystemShape{3, 3}, rng);
    double c = 0.0;
    for (double h : marginal_entropies(rho)) c += h;
    CHECK(std::abs(modular_energy_sum(rho) - c) <= 1e-10);
    for (const DensityMatrix& m : marginals(rho))
      CHECK(std::abs(von_neumann_entropy(m) - hs_inner(m.matrix(), modular_hamiltonian(m).matrix())) <= 1e-10);
  }
}

TEST_CASE("confined regime has trivial modular generators") {
  const auto q3 = product_basis(SubsystemShape::bipartite(3));
  for (double eps : {0.3, 0.01}) {
    const ExpFamilyPoint p(params_from_state(regularized_origin(q3->shape(), eps), *q3), q3);
    for (const DensityMatrix& m : marginals(p.state()))
      CHECK((modular_hamiltonian(m).matrix() - std::log(3.0) * CMatrix::Identity(3, 3)).norm() <= 1e-8);
  }
}

TEST_CASE("modular energy is conserved along the flow") {
  std::mt19937_64 rng(4);
  const auto b22 = product_basis(SubsystemShape{2, 2});
  FlowConfig cfg;
  const Trajectory traj = integrate(NaturalParams(random_theta(*b22, rng, 0.8)), b22, cfg, Clock::kGameTime, 2.0);
  REQUIRE(traj.ok());
  const double k0 = modular_energy_sum(state_from_params(NaturalParams(traj.samples.front().theta), *b22));
  for (const TrajectorySample& s : traj.samples) {
    const double k = modular_energy_sum(state_from_params(NaturalParams(s.theta), *b22));
    CHECK(std::abs(k - k0) <= 1e-6);
    CHECK(std::abs(k - s.constraint) <= 1e-10);
  }
}

TEST_CASE("gibbs family") {
  SUBCASE("normalisation") {
    std::mt19937_64 rng(5);
    const GibbsFamily family(random_hermitian(4, rng), 1.3);
    CHECK(std::abs(family.state().matrix().trace().real() - 1.0) <= 1e-12);
    CHECK(family.partition() == doctest::Approx(std::exp(family.log_partition())));
    CHECK_THROWS_AS(GibbsFamily(sigma_z(), std::nan("")), DomainError);
  }
  SUBCASE("entropy derivative") {
    CHECK(gibbs_entropy_derivative(GibbsFamily(sigma_z(), 0.0)) == 0.0);
    for (double beta : {-1.2, 0.3, 1.0, 2.5}) {
      const double h = 1e-4;
      const double fd = (qubit_gibbs_entropy(beta + h) - qubit_gibbs_entropy(beta - h)) / (2.0 * h);
      const double closed = -beta / (std::cosh(beta) * std::cosh(beta));
      const double derivative = gibbs_entropy_derivative(GibbsFamily(sigma_z(), beta));
      CHECK(std::abs(derivative - closed) <= 1e-12);
      CHECK(std::abs(derivative - fd) <= 1e-7);
      CHECK(GibbsFamily(sigma_z(), beta).entropy() == doctest::Approx(qubit_gibbs_entropy(beta)).epsilon(1e-14));
    }
    std::mt19937_64 rng(6);
    const HermitianOperator g = random_hermitian(3, rng);
    for (double beta : {0.4, 1.1}) {
      const double h = 1e-4;
      const double fd = (GibbsFamily(g, beta + h).entropy() - GibbsFamily(g, beta - h).entropy()) / (2.0 * h);
      CHECK(std::abs(gibbs_entropy_derivative(GibbsFamily(g, beta)) - fd) <= 1e-7);
    }
  }
  SUBCASE("entropy decreases in beta") {
    double previous = std::log(2.0) + 1e-15;
    for (double beta = 0.0; beta <= 5.0; beta += 0.25) {
      const double h = GibbsFamily(sigma_z(), beta).entropy();
      CHECK(h < previous);
      previous = h;
    }
  }
}

TEST_CASE("gibbs lock residual") {
  std::mt19937_64 rng(7);
  SUBCASE("planted beta is recovered") {
    for (double beta : {0.7, -1.4, 3.0}) {
      const HermitianOperator h = random_hermitian(3, rng);
      const GibbsLockFit fit = gibbs_lock_residual(GibbsFamily(h, beta).state(), h);
      CHECK(std::abs(fit.beta_star - beta) <= 1e-8);
      CHECK(fit.residual <= 1e-10);
    }
  }
  SUBCASE("maximally mixed state fits any generator at beta 0") {
    for (int trial = 0; trial < 5; ++trial) {
      const GibbsLockFit fit = gibbs_lock_residual(DensityMatrix::maximally_mixed(SubsystemShape{3}), random_hermitian(3, rng));
      CHECK(std::abs(fit.beta_star) <= 1e-10);
      CHECK(fit.residual <= 1e-12);
    }
  }
  SUBCASE("generic mismatch") {
    const GibbsLockFit fit = gibbs_lock_residual(random_density_matrix(SubsystemShape{3}, rng), random_hermitian(3, rng));
    CHECK(fit.residual > 1e-3);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(gibbs_lock_residual(DensityMatrix::maximally_mixed(SubsystemShape{2}), HermitianOperator::identity(2)), DomainError);
    CHECK_THROWS_AS(gibbs_lock_residual(lme_origin(SubsystemShape::bipartite(2)), random_hermitian(4, rng)), BoundaryState);
    CHECK_THROWS_AS(gibbs_lock_residual(DensityMatrix::maximally_mixed(SubsystemShape{3}), sigma_z()), DimensionMismatch);
  }
}

}  // TEST_SUITE
