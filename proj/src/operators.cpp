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

#include "srlaser/operators.hpp"

#include "srlaser/errors.hpp"

#include "json.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <vector>

namespace srl {

namespace {

using Triplet = Eigen::Triplet<cd>;

SparseMatrix from_triplets(Index dim, const std::vector<Triplet>& triplets) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

void require_same_space(const SparseOperator& a, const SparseOperator& b, const char* what) {
  if (!(a.space() == b.space())) {
    throw DimensionError(std::string(what) + ": operands on different spaces (" + a.space().describe() +
                         " vs " + b.space().describe() + ")");
  }
}

void require_atom(const Space& space, int atom) {
  if (space.kind() != SpaceKind::atomic) {
    throw DimensionError("single-atom operators need an atomic space, got " + space.describe());
  }
  if (atom < 0 || atom >= space.n_atoms()) {
    throw DimensionError("atom index " + std::to_string(atom) + " out of range for " + space.describe());
  }
}

// |..0_i..> -> |..1_i..> when raise, the reverse otherwise.
SparseOperator flip_atom(const Space& space, int atom, bool raise) {
  require_atom(space, atom);
  const Index bit = Index{1} << atom;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(space.dim() / 2));
  for (Index s = 0; s < space.atomic_dim(); ++s) {
    const bool excited = (s & bit) != 0;
    if (excited == raise) continue;
    const Index target = raise ? (s | bit) : (s & ~bit);
    for (int n = 0; n <= space.fock_cutoff(); ++n) {
      t.emplace_back(space.index(target, n), space.index(s, n), 1.0);
    }
  }
  return SparseOperator(space, from_triplets(space.dim(), t));
}

}  // namespace

Space::Space(SpaceKind kind, int n_atoms, int fock_cutoff)
    : kind_(kind), n_atoms_(n_atoms), fock_cutoff_(fock_cutoff) {
  if (fock_cutoff < 0) {
    throw DimensionError("fock cutoff must be >= 0");
  }
  if (kind == SpaceKind::atomic) {
    if (n_atoms < 0 || n_atoms > 24) {
      throw DimensionError("atomic space supports 0..24 atoms, got " + std::to_string(n_atoms));
    }
    atomic_dim_ = Index{1} << n_atoms;
  } else {
    if (n_atoms < 1) {
      throw DimensionError("dicke space needs at least one atom");
    }
    atomic_dim_ = n_atoms + 1;
  }
}

Space Space::atomic(int n_atoms, int fock_cutoff) { return Space(SpaceKind::atomic, n_atoms, fock_cutoff); }

Space Space::dicke(int n_atoms, int fock_cutoff) { return Space(SpaceKind::dicke, n_atoms, fock_cutoff); }

int Space::atomic_excitations(Index i) const {
  const Index a = atomic_index(i);
  if (kind_ == SpaceKind::atomic) {
    return std::popcount(static_cast<std::uint64_t>(a));
  }
  return static_cast<int>(a);
}

std::string Space::describe() const {
  return std::string(kind_ == SpaceKind::atomic ? "atomic" : "dicke") + "(N=" + std::to_string(n_atoms_) +
         ", n_max=" + std::to_string(fock_cutoff_) + ", dim=" + std::to_string(dim()) + ")";
}

SparseOperator::SparseOperator(Space space, SparseMatrix matrix) : space_(space), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
    throw DimensionError("operator shape " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                         " does not match " + space_.describe());
  }
  matrix_.makeCompressed();
}

SparseOperator SparseOperator::adjoint() const { return SparseOperator(space_, SparseMatrix(matrix_.adjoint())); }

cd SparseOperator::trace() const {
  cd sum = 0.0;
  for (Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      if (it.row() == it.col()) sum += it.value();
    }
  }
  return sum;
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  require_same_space(a, b, "operator+");
  return SparseOperator(a.space_, SparseMatrix(a.matrix_ + b.matrix_));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  require_same_space(a, b, "operator-");
  return SparseOperator(a.space_, SparseMatrix(a.matrix_ - b.matrix_));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  require_same_space(a, b, "operator*");
  SparseMatrix product = (a.matrix_ * b.matrix_).pruned();
  return SparseOperator(a.space_, std::move(product));
}

SparseOperator operator*(cd scale, const SparseOperator& a) {
  return SparseOperator(a.space_, SparseMatrix(scale * a.matrix_));
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  require_same_space(a, b, "commutator");
  SparseMatrix c = (a.matrix() * b.matrix() - b.matrix() * a.matrix()).pruned();
  return SparseOperator(a.space(), std::move(c));
}

SparseOperator identity(const Space& space) {
  SparseMatrix m(space.dim(), space.dim());
  m.setIdentity();
  return SparseOperator(space, std::move(m));
}

SparseOperator sigma_plus(const Space& space, int atom) { return flip_atom(space, atom, true); }

SparseOperator sigma_minus(const Space& space, int atom) { return flip_atom(space, atom, false); }

SparseOperator sigma_z(const Space& space, int atom) {
  require_atom(space, atom);
  const Index bit = Index{1} << atom;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(space.dim()));
  for (Index i = 0; i < space.dim(); ++i) {
    t.emplace_back(i, i, (space.atomic_index(i) & bit) ? 1.0 : -1.0);
  }
  return SparseOperator(space, from_triplets(space.dim(), t));
}

SparseOperator annihilation(const Space& space) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(space.atomic_dim() * space.fock_cutoff()));
  for (Index s = 0; s < space.atomic_dim(); ++s) {
    for (int n = 1; n <= space.fock_cutoff(); ++n) {
      t.emplace_back(space.index(s, n - 1), space.index(s, n), std::sqrt(static_cast<double>(n)));
    }
  }
  return SparseOperator(space, from_triplets(space.dim(), t));
}

SparseOperator creation(const Space& space) { return annihilation(space).adjoint(); }

SparseOperator number_operator(const Space& space) {
  std::vector<Triplet> t;
  for (Index i = 0; i < space.dim(); ++i) {
    if (space.photons(i) > 0) t.emplace_back(i, i, static_cast<double>(space.photons(i)));
  }
  return SparseOperator(space, from_triplets(space.dim(), t));
}

void write_triplets_json(const SparseOperator& op, std::ostream& out) {
  nlohmann::json j;
  j["space"] = {{"kind", op.space().kind() == SpaceKind::atomic ? "atomic" : "dicke"},
                {"n_atoms", op.space().n_atoms()},
                {"fock_cutoff", op.space().fock_cutoff()},
                {"dim", op.space().dim()}};
  nlohmann::json entries = nlohmann::json::array();
  const SparseMatrix& m = op.matrix();
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      entries.push_back({it.row(), it.col(), it.value().real(), it.value().imag()});
    }
  }
  j["entries"] = std::move(entries);
  out << j.dump() << '\n';
}

void write_triplets_binary(const SparseOperator& op, std::ostream& out) {
  static_assert(std::endian::native == std::endian::little, "binary dump assumes little endian");
  const char magic[8] = {'S', 'R', 'L', 'O', 'P', '1', '\0', '\0'};
  out.write(magic, sizeof(magic));
  const std::int64_t dim = op.space().dim();
  const std::int64_t nnz = op.nonzeros();
  out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
  out.write(reinterpret_cast<const char*>(&nnz), sizeof(nnz));
  const SparseMatrix& m = op.matrix();
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      const std::int64_t rc[2] = {it.row(), it.col()};
      const double v[2] = {it.value().real(), it.value().imag()};
      out.write(reinterpret_cast<const char*>(rc), sizeof(rc));
      out.write(reinterpret_cast<const char*>(v), sizeof(v));
    }
  }
}

}  // namespace srl
