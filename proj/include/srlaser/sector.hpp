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

#pragma once

#include "srlaser/model.hpp"

#include <optional>
#include <vector>

namespace srl {

/// Vectorized operators |r><c| whose excitation numbers differ by a fixed
/// charge exc(r) - exc(c).
///
/// Every term of the model conserves atomic plus photonic excitations up to
/// the same jump on both sides of rho, so the Liouvillian is block diagonal
/// in the charge. Steady states live in charge 0; a rho_ss lives in charge -1.
class Sector {
 public:
  Sector(const Space& space, int charge);

  int charge() const { return charge_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  /// Sorted vec(rho) positions belonging to the sector.
  const std::vector<Index>& indices() const { return indices_; }
  /// Position inside the sector, or -1.
  Index local(Index global) const { return local_[global]; }
  Index full_size() const { return static_cast<Index>(local_.size()); }

  Vector gather(const Vector& full) const;
  Vector scatter(const Vector& part) const;

 private:
  int charge_;
  std::vector<Index> indices_;
  std::vector<Index> local_;
};

/// Charge shared by every nonzero entry of v, or nullopt if v mixes sectors
/// (or is identically zero).
std::optional<int> single_sector(const Space& space, const Vector& v);

/// Diagonal block of a superoperator on one sector.
class SectorOperator {
 public:
  /// Throws DimensionError if `op` couples the sector to anything outside it.
  SectorOperator(const Superoperator& op, int charge);

  const Sector& sector() const { return sector_; }
  const SparseMatrix& matrix() const { return matrix_; }
  const kernels::RowMajorSparse& row_major() const { return rows_; }
  Index size() const { return sector_.size(); }

 private:
  Sector sector_;
  SparseMatrix matrix_;
  kernels::RowMajorSparse rows_;
};

}  // namespace srl
