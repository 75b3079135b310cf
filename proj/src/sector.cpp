// Copyright 2026 The srlaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srlaser/sector.hpp"

#include "srlaser/errors.hpp"

namespace srl {

namespace {

int charge_of(const Space& space, Index vec_index) {
  const Index d = space.dim();
  return space.excitations(vec_index % d) - space.excitations(vec_index / d);
}

}  // namespace

Sector::Sector(const Space& space, int charge) : charge_(charge) {
  const Index n = space.dim() * space.dim();
  local_.assign(static_cast<std::size_t>(n), -1);
  for (Index v = 0; v < n; ++v) {
    if (charge_of(space, v) == charge) {
      local_[v] = static_cast<Index>(indices_.size());
      indices_.push_back(v);
    }
  }
}

Vector Sector::gather(const Vector& full) const {
  if (full.size() != full_size()) throw DimensionError("sector gather: wrong vector size");
  Vector out(size());
  for (Index k = 0; k < size(); ++k) out(k) = full(indices_[k]);
  return out;
}

Vector Sector::scatter(const Vector& part) const {
  if (part.size() != size()) throw DimensionError("sector scatter: wrong vector size");
  Vector out = Vector::Zero(full_size());
  for (Index k = 0; k < size(); ++k) out(indices_[k]) = part(k);
  return out;
}

std::optional<int> single_sector(const Space& space, const Vector& v) {
  std::optional<int> charge;
  for (Index k = 0; k < v.size(); ++k) {
    if (v(k) == cd(0.0)) continue;
    const int c = charge_of(space, k);
    if (charge && *charge != c) return std::nullopt;
    charge = c;
  }
  return charge;
}

SectorOperator::SectorOperator(const Superoperator& op, int charge) : sector_(op.space(), charge) {
  const SparseMatrix& full = op.matrix();
  std::vector<Eigen::Triplet<cd>> t;
  t.reserve(static_cast<std::size_t>(full.nonZeros() / 2 + 1));
  for (Index col = 0; col < full.outerSize(); ++col) {
    const Index local_col = sector_.local(col);
    for (SparseMatrix::InnerIterator it(full, col); it; ++it) {
      const Index local_row = sector_.local(it.row());
      if ((local_row < 0) != (local_col < 0)) {
        throw DimensionError("superoperator couples excitation sector " + std::to_string(charge) +
                             " to the rest of the space");
      }
      if (local_col >= 0) t.emplace_back(local_row, local_col, it.value());
    }
  }
  matrix_.resize(sector_.size(), sector_.size());
  matrix_.setFromTriplets(t.begin(), t.end());
  matrix_.makeCompressed();
  rows_ = matrix_;
  rows_.makeCompressed();
}

}  // namespace srl
