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

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "qgame/constraint.hpp"
#include "qgame/expfamily.hpp"
#include "qgame/flow.hpp"
#include "qgame/operators.hpp"
#include "qgame/random.hpp"
#include "qgame/states.hpp"

namespace {

using namespace qgame;

std::shared_ptr<const OperatorBasis> basis_for(std::size_t q) {
  return std::make_shared<const OperatorBasis>(OperatorBasis::product(SubsystemShape::bipartite(q)));
}

ExpFamilyPoint origin(const std::shared_ptr<const OperatorBasis>& basis, double eps) {
  return ExpFamilyPoint(params_from_state(regularized_origin(basis->shape(), eps), *basis), basis);
}

void BM_MatrixExp(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const HermitianOperator h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(h));
}
BENCHMARK(BM_MatrixExp)->Arg(4)->Arg(9)->Arg(16);

void BM_BkmMetric(benchmark::State& state) {
  const auto basis = basis_for(static_cast<std::size_t>(state.range(0)));
  const NaturalParams theta = origin(basis, 0.05).params();
  for (auto _ : state) {
    const ExpFamilyPoint p(theta, basis);
    benchmark::DoNotOptimize(p.metric());
  }
}
BENCHMARK(BM_BkmMetric)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ConstraintGeometry(benchmark::State& state) {
  const auto basis = basis_for(static_cast<std::size_t>(state.range(0)));
  const ExpFamilyPoint p = origin(basis, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(ConstraintGeometry::compute(p));
}
BENCHMARK(BM_ConstraintGeometry)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ConstraintHessian(benchmark::State& state) {
  const auto basis = basis_for(3);
  const ExpFamilyPoint p = origin(basis, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(constraint_hessian(p));
}
BENCHMARK(BM_ConstraintHessian)->Unit(benchmark::kMillisecond);

void BM_FlowVelocity(benchmark::State& state) {
  const auto basis = basis_for(3);
  const FlowConfig cfg;
  const NaturalParams theta = origin(basis, 0.05).params();
  for (auto _ : state) {
    const ExpFamilyPoint p(theta, basis);
    const ConstraintGeometry geo = ConstraintGeometry::compute(p);
    benchmark::DoNotOptimize(generic_velocity(p, geo, cfg));
  }
}
BENCHMARK(BM_FlowVelocity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
