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

#include "qgame/random.hpp"

namespace qgame {

HermitianOperator random_hermitian(std::size_t d, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j, j) = normal(rng);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      a(j, k) = Complex{normal(rng), normal(rng)};
      a(k, j) = std::conj(a(j, k));
    }
  }
  return HermitianOperator(a);
}

DensityMatrix random_density_matrix(const SubsystemShape& shape, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(shape.total());
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) g(j, k) = Complex{normal(rng), normal(rng)};
  return DensityMatrix::normalized(g * g.adjoint(), shape);
}

}  // namespace qgame
