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

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace srl {

using cd = std::complex<double>;
using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<cd>;  // column-major, as SparseLU wants
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class SpaceKind { atomic, dicke };

/// Composite space (atoms) x (Fock states 0..fock_cutoff).
///
/// Basis index = atomic_index * (fock_cutoff + 1) + photons. For the atomic
/// kind the atomic index is a bit string with atom i on bit i (1 = excited,
/// atom 0 least significant). For the dicke kind it is k = m + N/2, the
/// number of excitations of the symmetric spin-N/2 multiplet. Index 0 is the
/// all-ground vacuum in both cases. This ordering is serialized, do not change.
class Space {
 public:
  static Space atomic(int n_atoms, int fock_cutoff);
  static Space dicke(int n_atoms, int fock_cutoff);

  SpaceKind kind() const { return kind_; }
  int n_atoms() const { return n_atoms_; }
  int fock_cutoff() const { return fock_cutoff_; }
  Index fock_dim() const { return fock_cutoff_ + 1; }
  Index atomic_dim() const { return atomic_dim_; }
  Index dim() const { return atomic_dim_ * fock_dim(); }

  int photons(Index i) const { return static_cast<int>(i % fock_dim()); }
  Index atomic_index(Index i) const { return i / fock_dim(); }
  /// Number of excited atoms in basis state i.
  int atomic_excitations(Index i) const;
  /// Atomic plus photonic excitations; conserved by every term of the model.
  int excitations(Index i) const { return atomic_excitations(i) + photons(i); }
  Index index(Index atomic, int photons) const { return atomic * fock_dim() + photons; }

  std::string describe() const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  Space(SpaceKind kind, int n_atoms, int fock_cutoff);

  SpaceKind kind_ = SpaceKind::atomic;
  int n_atoms_ = 0;
  int fock_cutoff_ = 0;
  Index atomic_dim_ = 1;
};

/// N two-level atoms times a truncated Fock space, dim = 2^N (n_max + 1).
inline Space hilbert_space(int n_atoms, int fock_cutoff) { return Space::atomic(n_atoms, fock_cutoff); }

/// Sparse complex operator bound to a space. Immutable once built.
class SparseOperator {
 public:
  SparseOperator(Space space, SparseMatrix matrix);

  const Space& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  Index nonzeros() const { return matrix_.nonZeros(); }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }

  SparseOperator adjoint() const;
  cd trace() const;

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(cd scale, const SparseOperator& a);
  friend SparseOperator operator*(const SparseOperator& a, cd scale) { return scale * a; }

 private:
  Space space_;
  SparseMatrix matrix_;
};

/// Commutator AB - BA.
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

SparseOperator identity(const Space& space);

// Single-atom embeddings on an atomic space; throw DimensionError for a bad index.
SparseOperator sigma_plus(const Space& space, int atom);
SparseOperator sigma_minus(const Space& space, int atom);
SparseOperator sigma_z(const Space& space, int atom);

/// a|n> = sqrt(n)|n-1>, identity on the atoms. Works for both space kinds.
SparseOperator annihilation(const Space& space);
/// a^dagger, with a^dagger|n_max> = 0 from the truncation. [a, a^dagger] is
/// the identity except on the n = n_max rows, where it equals -n_max.
SparseOperator creation(const Space& space);
SparseOperator number_operator(const Space& space);

/// Triplet dump {"space": ..., "entries": [[row, col, re, im], ...]}.
void write_triplets_json(const SparseOperator& op, std::ostream& out);
/// Binary triplet dump: magic "SRLOP1\0\0", int64 dim, int64 nnz, then nnz
/// records of (int64 row, int64 col, double re, double im), little endian.
void write_triplets_binary(const SparseOperator& op, std::ostream& out);

}  // namespace srl
