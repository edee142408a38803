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

#include "qgame/errors.hpp"
#include "qgame/random.hpp"
#include "qgame/states.hpp"
#include "test_support.hpp"

using namespace qgame;
using namespace qgame::testing;

TEST_SUITE("states") {

TEST_CASE("density matrix invariants") {
  CMatrix m = CMatrix::Identity(2, 2) * 0.6;
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator(m)), DomainError);  // trace 1.2
  RVector v(2);
  v << 1.1, -0.1;
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator::diagonal(v)), DomainError);
  v << 1.0 + 5e-11, -5e-11;
  const DensityMatrix clipped(HermitianOperator::diagonal(v));
  CHECK(clipped.eigenvalues().minCoeff() == 0.0);
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator::identity(4) * 0.25, SubsystemShape{3}), DimensionMismatch);
  CHECK(DensityMatrix::normalized(CMatrix::Identity(3, 3) * 7.0, SubsystemShape{3}).purity() ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("von neumann entropy") {
  const SubsystemShape q3 = SubsystemShape::bipartite(3);
  CHECK(std::abs(von_neumann_entropy(lme_origin(q3))) <= 1e-14);
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(SubsystemShape{3})) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(q3)) == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-15));
  CHECK(std::log(3.0) == doctest::Approx(1.098612).epsilon(1e-6));
}

TEST_CASE("lme origin") {
  SUBCASE("two qutrits") {
    const DensityMatrix phi = lme_origin(SubsystemShape::bipartite(3));
    CMatrix expect = CMatrix::Zero(9, 9);
    for (int j : {0, 4, 8})
      for (int k : {0, 4, 8}) expect(j, k) = 1.0 / 3.0;
    CHECK((phi.matrix() - expect).norm() <= 1e-15);
    const std::vector<double> h = marginal_entropies(phi);
    CHECK(h[0] == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(h[0] + h[1] == doctest::Approx(SubsystemShape::bipartite(3).max_marginal_entropy_sum()).epsilon(1e-14));
  }
  SUBCASE("bell pair") {
    const DensityMatrix phi = lme_origin(SubsystemShape::bipartite(2));
    CHECK(phi.purity() == doctest::Approx(1.0));
    CHECK((partial_trace(phi, 1).matrix() - CMatrix::Identity(2, 2) / 2.0).norm() <= 1e-15);
  }
  SUBCASE("unsupported shapes") {
    CHECK_THROWS_AS(lme_origin(SubsystemShape{2, 3}), UnsupportedShape);
    CHECK_THROWS_AS(lme_origin(SubsystemShape{2, 2, 2}), UnsupportedShape);
    CHECK_THROWS_AS(lme_origin(SubsystemShape{4}), UnsupportedShape);
  }
}

TEST_CASE("regularized origin") {
  const SubsystemShape q3 = SubsystemShape::bipartite(3);
  CHECK_THROWS_AS(regularized_origin(q3, 0.0), DomainError);
  CHECK_THROWS_AS(regularized_origin(q3, 1.0), DomainError);
  CHECK((regularized_origin(q3, 1.0 - 1e-15).matrix() - CMatrix::Identity(9, 9) / 9.0).norm() <= 1e-14);

  const double eps = 0.01;
  const DensityMatrix rho = regularized_origin(q3, eps);
  for (const DensityMatrix& m : marginals(rho)) CHECK((m.matrix() - CMatrix::Identity(3, 3) / 3.0).norm() <= 1e-15);
  const double top = 1.0 - eps + eps / 9.0, rest = eps / 9.0;
  const double oracle = -top * std::log(top) - 8.0 * rest * std::log(rest);
  CHECK(von_neumann_entropy(rho) == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(von_neumann_entropy(rho) > 0.0);

  double previous = 2.0;
  for (double e = 0.05; e < 1.0; e += 0.05) {
    const double purity = regularized_origin(q3, e).purity();
    CHECK(purity < previous);
    previous = purity;
  }
}

TEST_CASE("multi-information") {
  const SubsystemShape q3 = SubsystemShape::bipartite(3);
  CHECK(multi_information(lme_origin(q3)) == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-14));
  CHECK(std::abs(multi_information(DensityMatrix::maximally_mixed(q3))) <= 1e-14);
  std::mt19937_64 rng(4);
  const DensityMatrix ab =
      product_state(random_density_matrix(SubsystemShape{2}, rng), random_density_matrix(SubsystemShape{3}, rng));
  CHECK(std::abs(multi_information(ab)) <= 1e-13);
}

TEST_CASE("entropy bounds and subadditivity on random states") {
  std::mt19937_64 rng(17);
  const SubsystemShape shapes[] = {SubsystemShape{2, 2}, SubsystemShape{2, 3}, SubsystemShape{3, 3}, SubsystemShape{2, 2, 2}};
  for (int trial = 0; trial < 200; ++trial) {
    const SubsystemShape& shape = shapes[trial % 4];
    const DensityMatrix rho = random_density_matrix(shape, rng);
    const double h = von_neumann_entropy(rho);
    CHECK(h >= -1e-12);
    CHECK(h <= std::log(static_cast<double>(shape.total())) + 1e-12);
    const std::vector<double> hs = marginal_entropies(rho);
    for (std::size_t i = 0; i < shape.count(); ++i) CHECK(hs[i] <= std::log(static_cast<double>(shape.dim(i))) + 1e-10);
    CHECK(multi_information(rho) >= -1e-12);
  }
}

TEST_CASE("negative conditional entropy at the origin") {
  for (std::size_t q : {2u, 3u, 4u}) {
    const DensityMatrix phi = lme_origin(SubsystemShape::bipartite(q));
    const double conditional = von_neumann_entropy(phi) - marginal_entropies(phi)[1];
    CHECK(conditional == doctest::Approx(-std::log(static_cast<double>(q))).epsilon(1e-13));
  }
}

TEST_CASE("spectral entropy convention") {
  RVector p(3);
  p << 0.5, 0.5, 0.0;
  CHECK(spectral_entropy(p) == doctest::Approx(std::log(2.0)));
}

}  // TEST_SUITE
