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

#include "qgame/basis.hpp"

#include <algorithm>
#include <cmath>

#include "qgame/errors.hpp"

namespace qgame {

bool Sector::acts_on(std::size_t site) const {
  return std::find(subsystems.begin(), subsystems.end(), site) != subsystems.end();
}

std::string Sector::label() const {
  std::string out = is_local() ? "local:" : "corr:";
  for (std::size_t i = 0; i < subsystems.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(subsystems[i]);
  }
  return out;
}

std::vector<CMatrix> generalized_gell_mann(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  const Complex i{0.0, 1.0};
  std::vector<CMatrix> out;
  out.reserve(d * d - 1);
  for (Eigen::Index k = 1; k < n; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) {
      CMatrix sym = CMatrix::Zero(n, n);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      out.push_back(std::move(sym));
      CMatrix anti = CMatrix::Zero(n, n);
      anti(j, k) = -i;
      anti(k, j) = i;
      out.push_back(std::move(anti));
    }
    CMatrix diag = CMatrix::Zero(n, n);
    const double norm = std::sqrt(2.0 / static_cast<double>(k * (k + 1)));
    for (Eigen::Index j = 0; j < k; ++j) diag(j, j) = norm;
    diag(k, k) = -static_cast<double>(k) * norm;
    out.push_back(std::move(diag));
  }
  return out;
}

OperatorBasis::OperatorBasis(SubsystemShape shape, std::vector<HermitianOperator> elements,
                             std::vector<Sector> sectors)
    : shape_(std::move(shape)), elements_(std::move(elements)), sectors_(std::move(sectors)) {
  if (elements_.empty()) throw DomainError("operator basis is empty");
  if (sectors_.size() != elements_.size()) throw DimensionMismatch("one sector label per basis element required");
  const auto d = static_cast<Eigen::Index>(shape_.total());
  if (elements_.size() + 1 > static_cast<std::size_t>(d * d))
    throw DomainError("more basis elements than traceless directions");

  CMatrix stacked(d * d, static_cast<Eigen::Index>(elements_.size()));
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    const CMatrix& f = elements_[a].matrix();
    if (f.rows() != d) throw DimensionMismatch("basis element dimension does not match shape");
    if (std::abs(f.trace()) > 1e-12) throw DomainError("basis element " + std::to_string(a) + " is not traceless");
    stacked.col(static_cast<Eigen::Index>(a)) = f.reshaped();
  }
  const RMatrix gram = (stacked.adjoint() * stacked).real();
  const RMatrix dev = gram - RMatrix::Identity(gram.rows(), gram.cols());
  if (dev.cwiseAbs().maxCoeff() > 1e-10) throw DomainError("basis elements are not orthonormal");
}

OperatorBasis OperatorBasis::product(const SubsystemShape& shape) {
  const std::size_t n = shape.count();
  std::vector<std::vector<CMatrix>> local(n);
  for (std::size_t s = 0; s < n; ++s) {
    local[s] = generalized_gell_mann(shape.dim(s));
    for (CMatrix& g : local[s]) g /= std::sqrt(2.0);
  }

  // Nonempty subsets of subsystems, ordered by size then lexicographically.
  std::vector<std::vector<std::size_t>> subsets;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> sub;
    for (std::size_t s = 0; s < n; ++s)
      if (mask & (1u << s)) sub.push_back(s);
    subsets.push_back(std::move(sub));
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::vector<HermitianOperator> elements;
  std::vector<Sector> sectors;
  for (const auto& sub : subsets) {
    std::size_t combos = 1;
    for (std::size_t s : sub) combos *= local[s].size();
    // Mixed-radix decode of `c` into Gell-Mann indices, first site slowest.
    for (std::size_t c = 0; c < combos; ++c) {
      std::vector<std::size_t> idx(sub.size());
      std::size_t rest = c;
      for (std::size_t k = sub.size(); k-- > 0;) {
        idx[k] = rest % local[sub[k]].size();
        rest /= local[sub[k]].size();
      }
      CMatrix acc = CMatrix::Identity(1, 1);
      std::size_t pos = 0;
      for (std::size_t s = 0; s < n; ++s) {
        const auto ds = static_cast<Eigen::Index>(shape.dim(s));
        if (pos < sub.size() && sub[pos] == s) {
          acc = kron(acc, local[s][idx[pos]]);
          ++pos;
        } else {
          acc = kron(acc, CMatrix::Identity(ds, ds) / std::sqrt(static_cast<double>(ds)));
        }
      }
      elements.push_back(HermitianOperator::symmetrized(acc));
      sectors.push_back(Sector{sub});
    }
  }
  return OperatorBasis(shape, std::move(elements), std::move(sectors));
}

std::vector<std::size_t> OperatorBasis::local_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < sectors_.size(); ++a)
    if (sectors_[a].is_local()) out.push_back(a);
  return out;
}

std::vector<std::size_t> OperatorBasis::correlation_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < sectors_.size(); ++a)
    if (sectors_[a].is_correlation()) out.push_back(a);
  return out;
}

CMatrix OperatorBasis::combine(const RVector& coeffs) const {
  if (static_cast<std::size_t>(coeffs.size()) != elements_.size())
    throw DimensionMismatch("coefficient vector length does not match basis size");
  const auto d = static_cast<Eigen::Index>(dim());
  CMatrix out = CMatrix::Zero(d, d);
  for (std::size_t a = 0; a < elements_.size(); ++a) out += coeffs(static_cast<Eigen::Index>(a)) * elements_[a].matrix();
  return out;
}

RVector OperatorBasis::coefficients(const CMatrix& x) const {
  RVector out(static_cast<Eigen::Index>(elements_.size()));
  for (std::size_t a = 0; a < elements_.size(); ++a) out(static_cast<Eigen::Index>(a)) = hs_inner(elements_[a].matrix(), x);
  return out;
}

}  // namespace qgame
