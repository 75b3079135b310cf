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
#include "srlaser/sector.hpp"
#include "srlaser/state.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace srl {

enum class SteadyStateMethod { automatic, direct_sparse, krylov_nullspace };

std::string_view to_string(SteadyStateMethod method);
SteadyStateMethod parse_steady_state_method(std::string_view name);

struct SolverOptions {
  SteadyStateMethod method = SteadyStateMethod::automatic;
  /// ||L[rho]||_max <= residual_tol * max|L_ij|.
  double residual_tol = 1e-10;
  int max_iterations = 50;
  /// automatic picks direct_sparse up to this many unknowns in the charge-0 block.
  Index direct_limit = 250000;

  /// direct_sparse: the trace-bordered system must not be numerically
  /// singular. krylov_nullspace: a second inverse iteration from a random
  /// start has to land on the same state. Disable for generators with a
  /// known degenerate kernel.
  bool verify_uniqueness = true;
  double uniqueness_tol = 1e-8;
  std::uint64_t seed = 0x5eed;
  /// Start vector for inverse iteration. Inverse iteration stays inside any
  /// invariant subspace of its start, which picks one kernel element when
  /// the kernel is degenerate (e.g. the totally symmetric sector).
  std::optional<DenseMatrix> initial_guess;
  /// Inverse-iteration shift relative to max|L_ij|.
  double inverse_shift = 1e-6;

  /// Steady-state population of the top Fock level above this is flagged.
  double truncation_tol = 1e-6;

  double time_rtol = 1e-9;
  double time_atol = 1e-12;
  /// More adaptive steps than this between two output times counts as stiff.
  int max_steps_per_output = 200000;

  void validate() const;
};

struct SteadyState {
  DensityMatrix rho;
  /// ||L[rho]||_max / max|L_ij|.
  double relative_residual = 0.0;
  SteadyStateMethod method_used = SteadyStateMethod::direct_sparse;
  int iterations = 0;
  bool truncation_warning = false;
  DensityMatrix::Diagnostics diagnostics;
};

/// Trace-one kernel element of L, computed on the charge-0 excitation block.
///
/// direct_sparse replaces one equation with Tr rho = 1 and solves with sparse
/// LU; krylov_nullspace runs shifted inverse iteration. Throws
/// MultiplicityError when the solve is singular, the residual does not
/// converge or the uniqueness check finds a second kernel element.
SteadyState steady_state(const Superoperator& L, const SolverOptions& opts = {});

using Observer = std::function<void(double, const Vector&)>;

/// Integrates dx/dt = M x (M = L or one of its sector blocks) with adaptive
/// Dormand-Prince steps and dense output. Calls observe(t, x) for every t in
/// `times` (ascending; times[0] is the start time) and leaves x at times.back().
/// Throws StiffnessError if the step size collapses.
void integrate_linear(const kernels::RowMajorSparse& m, Vector& x, std::span<const double> times,
                      const Observer& observe, const SolverOptions& opts = {});

/// rho(t) for every t in t_grid (ascending, starting at 0).
std::vector<DenseMatrix> evolve(const Superoperator& L, const DenseMatrix& rho0, std::span<const double> t_grid,
                                const SolverOptions& opts = {});

struct CorrelationOptions {
  double dtau = 0.05;
  double tau_initial = 200.0;
  double tau_max = 1600.0;
  /// The window is long enough once |g| over its last 5% is below decay_tol * g(0).
  double decay_tol = 1e-4;
};

struct Correlation {
  double dtau = 0.0;
  std::vector<cd> values;  // g(k dtau)
  bool decayed = true;
  int extensions = 0;

  double tau_end() const { return values.empty() ? 0.0 : dtau * static_cast<double>(values.size() - 1); }
};

/// a rho together with the functional X -> Tr[a+ X], restricted to the
/// excitation sector of a rho when it occupies a single one.
class RegressionSetup {
 public:
  RegressionSetup(const Superoperator& L, const DensityMatrix& rho);

  /// Generator block the seed evolves under (the sector block or all of L).
  const kernels::RowMajorSparse& row_major() const { return block_ ? block_->row_major() : full_->row_major(); }
  const SparseMatrix& matrix() const { return block_ ? block_->matrix() : full_->matrix(); }
  Index size() const { return seed_.size(); }
  bool restricted() const { return block_ != nullptr; }

  const Vector& seed() const { return seed_; }
  /// Tr[a+ X] for X in the block representation.
  cd measure(const Vector& x) const { return weights_.transpose() * x; }
  bool trivial() const { return seed_.isZero(0.0); }

 private:
  const Superoperator* full_;
  std::shared_ptr<const SectorOperator> block_;
  Vector seed_;
  Vector weights_;
};

/// g(tau) = Tr[a+ e^{L tau}(a rho)] by quantum regression. The window starts
/// at tau_initial and doubles until g has decayed or tau_max is reached, in
/// which case `decayed` is false.
Correlation correlation_adag_a(const Superoperator& L, const DensityMatrix& rho, const CorrelationOptions& opts = {},
                               const SolverOptions& solver = {});

/// Checkpoint of a steady state: magic "SRLRHO1\0", int32 kind (0 atomic,
/// 1 dicke), int32 n_atoms, int32 fock_cutoff, int32 reserved, int64 dim,
/// then dim*dim row-major (re, im) double pairs.
void write_checkpoint(const DensityMatrix& rho, const std::string& path);
DensityMatrix read_checkpoint(const std::string& path);

}  // namespace srl
