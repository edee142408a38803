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

#ifndef QGAME_RANDOM_HPP
#define QGAME_RANDOM_HPP

#include <cstddef>
#include <random>

#include "qgame/operators.hpp"
#include "qgame/states.hpp"

namespace qgame {

/// Hermitian matrix with independent N(0, scale^2) real and imaginary parts
/// above the diagonal and N(0, scale^2) on it.
HermitianOperator random_hermitian(std::size_t d, std::mt19937_64& rng, double scale = 1.0);

/// Full-rank density matrix from a square Ginibre matrix, rho = A A^H / tr.
DensityMatrix random_density_matrix(const SubsystemShape& shape, std::mt19937_64& rng);

}  // namespace qgame

#endif  // QGAME_RANDOM_HPP
