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

#include "srlaser/solvers.hpp"

#include "srlaser/errors.hpp"

#include <Eigen/SparseLU>
#include <boost/numeric/odeint.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

namespace srl {

namespace ode = boost::numeric::odeint;

namespace {

using OdeState = std::vector<cd>;

// Relative growth of A^{-1} on random vectors above which the bordered direct
// system counts as singular. Measured: ~1e17 with a degenerate kernel, below
// ~1e4 for regular generators with rates down to 1e-3.
constexpr double kSingularGrowth = 1e10;

double max_abs_entry(const SparseMatrix& m) {
  double s = 0.0;
  for (Index k = 0; k < m.nonZeros(); ++k) s = std::max(s, std::abs(m.valuePtr()[k]));
  return s;
}

// Positions (inside the charge-0 sector) of the diagonal entries rho_ii.
std::vector<Index> diagonal_positions(const Space& space, const Sector& sector) {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(space.dim()));
  for (Index i = 0; i < space.dim(); ++i) out.push_back(sector.local(i * space.dim() + i));
  return out;
}

cd sector_trace(const Vector& x, const std::vector<Index>& diag) {
  cd t = 0.0;
  for (Index p : diag) t += x(p);
  return t;
}

DensityMatrix to_density(const Space& space, const Sector& sector, const Vector& x) {
  DenseMatrix rho = unvectorize(sector.scatter(x), space.dim());
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(space, std::move(rho));
}

class SectorLU {
 public:
  explicit SectorLU(const SparseMatrix& m) {
    lu_.analyzePattern(m);
    lu_.factorize(m);
    if (lu_.info() != Eigen::Success) {
      throw MultiplicityError("steady state: sparse LU failed (" + lu_.lastErrorMessage() +
                              "); the kernel is probably degenerate");
    }
  }
  Vector solve_raw(const Vector& b) const { return lu_.solve(b); }
  Vector solve(const Vector& b) const {
    Vector x = lu_.solve(b);
    if (!x.allFinite()) throw MultiplicityError("steady state: non-finite solution from sparse LU");
    return x;
  }

 private:
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

struct DirectSolve {
  Vector x;
  /// Largest ||A^{-1} w|| / ||w|| seen in a few inverse power steps on the
  /// bordered system A, times max|L_ij|.
  double inverse_growth = 0.0;
};

DirectSolve solve_direct(const SparseMatrix& block, Index trace_row, const std::vector<Index>& diag,
                         std::uint64_t seed) {
  std::vector<Eigen::Triplet<cd>> t;
  t.reserve(static_cast<std::size_t>(block.nonZeros() + static_cast<Index>(diag.size())));
  for (Index col = 0; col < block.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(block, col); it; ++it) {
      if (it.row() != trace_row) t.emplace_back(it.row(), col, it.value());
    }
  }
  for (Index p : diag) t.emplace_back(trace_row, p, 1.0);
  SparseMatrix system(block.rows(), block.cols());
  system.setFromTriplets(t.begin(), t.end());
  system.makeCompressed();

  Vector rhs = Vector::Zero(block.rows());
  rhs(trace_row) = 1.0;
  const SectorLU lu(system);
  DirectSolve out{lu.solve(rhs), 0.0};

  // A degenerate kernel leaves A singular; round-off hides that from the
  // pivots but not from the growth of A^{-1} on a random vector.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector w(block.rows());
  for (Index k = 0; k < w.size(); ++k) w(k) = cd(normal(rng), normal(rng));
  w.normalize();
  for (int step = 0; step < 3; ++step) {
    Vector v = lu.solve_raw(w);
    const double g = v.norm();
    if (!std::isfinite(g)) {
      out.inverse_growth = std::numeric_limits<double>::infinity();
      break;
    }
    out.inverse_growth = std::max(out.inverse_growth, g);
    w = v / g;
  }
  return out;
}

struct InverseIteration {
  Vector x;
  int iterations = 0;
};

// Shifted inverse iteration (M - sigma)^{-1} with a small positive shift;
// every eigenvalue of a Lindblad generator has Re <= 0, so M - sigma is
// regular while the kernel direction is amplified by 1/sigma per step.
// Round-off of the solve lands in the kernel at a level ~ eps / sigma, which
// matters when the kernel is degenerate, so sigma should not be tiny.
class ShiftedInverse {
 public:
  ShiftedInverse(const SparseMatrix& block, double shift) : shift_(shift) {
    SparseMatrix shifted = block;
    SparseMatrix id(block.rows(), block.cols());
    id.setIdentity();
    shifted -= shift_ * id;
    shifted.makeCompressed();
    lu_ = std::make_unique<SectorLU>(shifted);
  }

  InverseIteration run(Vector x, const std::vector<Index>& diag, int max_iterations) const {
    InverseIteration out;
    normalize(x, diag);
    for (int it = 1; it <= max_iterations; ++it) {
      Vector next = lu_->solve(x);
      normalize(next, diag);
      const double change = (next - x).cwiseAbs().maxCoeff();
      x = std::move(next);
      out.iterations = it;
      if (change <= 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff())) break;
    }
    out.x = std::move(x);
    return out;
  }

 private:
  static void normalize(Vector& x, const std::vector<Index>& diag) {
    const cd tr = sector_trace(x, diag);
    if (std::abs(tr) > 1e-300) {
      x /= tr;
    } else {
      x /= x.norm();
    }
  }

  double shift_;
  std::unique_ptr<SectorLU> lu_;
};

Vector random_start(const Sector& sector, const Space& space, std::uint64_t seed) {
  // Random Hermitian positive start so the iterate has a nonzero trace.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const Index d = space.dim();
  DenseMatrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = cd(normal(rng), normal(rng));
  DenseMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return sector.gather(vectorize(rho));
}

}  // namespace

std::string_view to_string(SteadyStateMethod method) {
  switch (method) {
    case SteadyStateMethod::automatic: return "auto";
    case SteadyStateMethod::direct_sparse: return "direct_sparse";
    case SteadyStateMethod::krylov_nullspace: return "krylov_nullspace";
  }
  return "auto";
}

SteadyStateMethod parse_steady_state_method(std::string_view name) {
  if (name == "auto") return SteadyStateMethod::automatic;
  if (name == "direct_sparse") return SteadyStateMethod::direct_sparse;
  if (name == "krylov_nullspace") return SteadyStateMethod::krylov_nullspace;
  throw ConfigurationError("unknown solver method '" + std::string(name) + "'");
}

void SolverOptions::validate() const {
  if (!(residual_tol > 0.0) || !(uniqueness_tol > 0.0) || !(time_rtol > 0.0) || !(time_atol > 0.0) ||
      !(truncation_tol > 0.0) || !(inverse_shift > 0.0) || max_steps_per_output < 1) {
    throw ConfigurationError("solver tolerances must be > 0");
  }
  if (max_iterations < 1) throw ConfigurationError("solver max_iterations must be >= 1");
}

SteadyState steady_state(const Superoperator& L, const SolverOptions& opts) {
  opts.validate();
  const Space& space = L.space();
  const SectorOperator block(L, 0);
  const Sector& sector = block.sector();
  const std::vector<Index> diag = diagonal_positions(space, sector);
  const double scale = std::max(max_abs_entry(block.matrix()), 1e-300);

  SteadyStateMethod method = opts.method;
  if (method == SteadyStateMethod::automatic) {
    method = block.size() <= opts.direct_limit ? SteadyStateMethod::direct_sparse
                                               : SteadyStateMethod::krylov_nullspace;
  }

  std::unique_ptr<ShiftedInverse> inverse;
  auto inverse_solver = [&]() -> const ShiftedInverse& {
    if (!inverse) inverse = std::make_unique<ShiftedInverse>(block.matrix(), opts.inverse_shift * scale);
    return *inverse;
  };

  Vector x;
  int iterations = 0;
  double inverse_growth = 0.0;
  if (method == SteadyStateMethod::direct_sparse) {
    DirectSolve d = solve_direct(block.matrix(), diag.front(), diag, opts.seed);
    x = std::move(d.x);
    inverse_growth = d.inverse_growth * scale;
    iterations = 1;
  } else {
    Vector start;
    if (opts.initial_guess) {
      if (opts.initial_guess->rows() != space.dim() || opts.initial_guess->cols() != space.dim()) {
        throw DimensionError("steady state: initial guess has the wrong shape");
      }
      start = sector.gather(vectorize(*opts.initial_guess));
    } else {
      start = sector.gather(vectorize(DenseMatrix::Identity(space.dim(), space.dim())));
    }
    InverseIteration result = inverse_solver().run(std::move(start), diag, opts.max_iterations);
    x = std::move(result.x);
    iterations = result.iterations;
  }

  DensityMatrix rho = to_density(space, sector, x);
  const Vector xr = sector.gather(vectorize(rho.data()));
  Vector lx(block.size());
  kernels::spmv_serial(block.row_major(), {xr.data(), static_cast<std::size_t>(xr.size())},
                       {lx.data(), static_cast<std::size_t>(lx.size())});
  const double residual = (lx.size() ? lx.cwiseAbs().maxCoeff() : 0.0) / scale;
  if (!(residual <= opts.residual_tol)) {
    throw MultiplicityError("steady state residual " + std::to_string(residual) + " above tolerance " +
                            std::to_string(opts.residual_tol) + " (" + std::string(to_string(method)) + ")");
  }

  if (opts.verify_uniqueness && method == SteadyStateMethod::direct_sparse && inverse_growth > kSingularGrowth) {
    throw MultiplicityError("steady state is not unique: the trace-bordered generator is numerically singular "
                            "(inverse growth " + std::to_string(inverse_growth) + ")");
  }
  if (opts.verify_uniqueness && method == SteadyStateMethod::krylov_nullspace && block.size() > 1) {
    InverseIteration check = inverse_solver().run(random_start(sector, space, opts.seed), diag, opts.max_iterations);
    const DensityMatrix other = to_density(space, sector, check.x);
    const double diff = (other.data() - rho.data()).cwiseAbs().maxCoeff();
    if (diff > opts.uniqueness_tol) {
      throw MultiplicityError("steady state is not unique: a second start converged to a state " +
                              std::to_string(diff) + " away");
    }
  }

  SteadyState out{std::move(rho), residual, method, iterations, false, {}};
  out.diagnostics = out.rho.check_physical();
  if (space.fock_cutoff() > 0 && out.rho.top_fock_population() > opts.truncation_tol) {
    out.truncation_warning = true;
    spdlog::warn("steady state: population {:.3e} in Fock level {} exceeds {:.1e} on {}",
                 out.rho.top_fock_population(), space.fock_cutoff(), opts.truncation_tol, space.describe());
  }
  return out;
}

void integrate_linear(const kernels::RowMajorSparse& m, Vector& x, std::span<const double> times,
                      const Observer& observe, const SolverOptions& opts) {
  if (x.size() != m.rows()) throw DimensionError("integrate: state size does not match the generator");
  if (times.empty()) return;
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw DomainError("integrate: time grid must be strictly ascending");
  }

  OdeState state(x.data(), x.data() + x.size());
  auto rhs = [&m](const OdeState& in, OdeState& out, double) {
    kernels::spmv_parallel(m, in, out);
  };

  double last_t = times.front();
  auto observer = [&](const OdeState& s, double t) {
    last_t = t;
    if (observe) observe(t, Eigen::Map<const Vector>(s.data(), static_cast<Index>(s.size())));
  };

  if (times.size() == 1) {
    observer(state, times.front());
    return;
  }

  double first_step = std::min(1e-3, 0.1 * (times[1] - times[0]));
  auto stepper = ode::make_dense_output(opts.time_atol, opts.time_rtol, ode::runge_kutta_dopri5<OdeState>());
  try {
    ode::integrate_times(stepper, rhs, state, times.begin(), times.end(), first_step, observer,
                         ode::max_step_checker(opts.max_steps_per_output));
  } catch (const std::exception& e) {
    throw StiffnessError(std::string("adaptive stepping stalled near t = ") + std::to_string(last_t) + " (" +
                         e.what() + "); consider a dense matrix exponential for small dimensions");
  }
  x = Eigen::Map<const Vector>(state.data(), static_cast<Index>(state.size()));
}

std::vector<DenseMatrix> evolve(const Superoperator& L, const DenseMatrix& rho0, std::span<const double> t_grid,
                                const SolverOptions& opts) {
  if (rho0.rows() != L.dim() || rho0.cols() != L.dim()) throw DimensionError("evolve: rho0 has the wrong shape");
  if (t_grid.empty()) return {};
  if (t_grid.front() != 0.0) throw DomainError("evolve: time grid must start at 0");

  std::vector<DenseMatrix> out;
  out.reserve(t_grid.size());
  const Vector v0 = vectorize(rho0);
  const std::optional<int> charge = single_sector(L.space(), v0);
  if (charge) {
    const SectorOperator block(L, *charge);
    Vector x = block.sector().gather(v0);
    integrate_linear(block.row_major(), x, t_grid,
                     [&](double, const Vector& s) { out.push_back(unvectorize(block.sector().scatter(s), L.dim())); },
                     opts);
  } else {
    Vector x = v0;
    integrate_linear(L.row_major(), x, t_grid, [&](double, const Vector& s) { out.push_back(unvectorize(s, L.dim())); },
                     opts);
  }
  return out;
}

RegressionSetup::RegressionSetup(const Superoperator& L, const DensityMatrix& rho) : full_(&L) {
  if (!(rho.space() == L.space())) throw DimensionError("regression: state and generator on different spaces");
  const Space& space = L.space();
  const Index d = space.dim();
  const SparseOperator a = annihilation(space);
  const Vector v0 = vectorize(a.matrix() * rho.data());

  // Tr[a+ X] = sum_{i,j} (a+)_{ij} X_{ji} = sum conj(a_{ji}) X_{ji}
  Vector weights = Vector::Zero(d * d);
  for (Index col = 0; col < a.matrix().outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(a.matrix(), col); it; ++it) {
      weights(it.col() * d + it.row()) += std::conj(it.value());
    }
  }

  if (const std::optional<int> charge = single_sector(space, v0)) {
    block_ = std::make_shared<const SectorOperator>(L, *charge);
    seed_ = block_->sector().gather(v0);
    weights_ = block_->sector().gather(weights);
  } else {
    seed_ = v0;
    weights_ = std::move(weights);
  }
}

Correlation correlation_adag_a(const Superoperator& L, const DensityMatrix& rho, const CorrelationOptions& opts,
                               const SolverOptions& solver) {
  if (!(opts.dtau > 0.0) || !(opts.tau_initial > 0.0) || opts.tau_max < opts.tau_initial) {
    throw ConfigurationError("correlation: need dtau > 0 and 0 < tau_initial <= tau_max");
  }
  const RegressionSetup setup(L, rho);

  Correlation out;
  out.dtau = opts.dtau;
  if (setup.trivial()) {
    const auto n = static_cast<std::size_t>(std::llround(opts.tau_initial / opts.dtau)) + 1;
    out.values.assign(n, cd(0.0));
    return out;
  }

  Vector x = setup.seed();
  const double g0 = std::abs(setup.measure(x));
  auto record = [&](double, const Vector& s) { out.values.push_back(setup.measure(s)); };

  double tau_end = opts.tau_initial;
  std::size_t done = 0;
  while (true) {
    const auto last = static_cast<std::size_t>(std::llround(tau_end / opts.dtau));
    std::vector<double> times;
    times.reserve(last - done + 1);
    for (std::size_t k = done; k <= last; ++k) times.push_back(static_cast<double>(k) * opts.dtau);
    if (done > 0) out.values.pop_back();  // the chunk restarts at the previous end point
    integrate_linear(setup.row_major(), x, times, record, solver);
    done = last;

    const std::size_t tail = std::max<std::size_t>(1, out.values.size() / 20);
    double tail_max = 0.0;
    for (std::size_t k = out.values.size() - tail; k < out.values.size(); ++k) {
      tail_max = std::max(tail_max, std::abs(out.values[k]));
    }
    out.decayed = tail_max <= opts.decay_tol * g0;
    if (out.decayed || tau_end >= opts.tau_max) break;
    tau_end = std::min(2.0 * tau_end, opts.tau_max);
    ++out.extensions;
  }
  if (!out.decayed) {
    spdlog::warn("correlation: |g| still {:.2e} of g(0) at tau = {}", std::abs(out.values.back()) / g0,
                 out.tau_end());
  }
  return out;
}

void write_checkpoint(const DensityMatrix& rho, const std::string& path) {
  static_assert(std::endian::native == std::endian::little, "checkpoint format is little endian");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open checkpoint '" + path + "' for writing");
  const char magic[8] = {'S', 'R', 'L', 'R', 'H', 'O', '1', '\0'};
  f.write(magic, sizeof(magic));
  const std::int32_t header[4] = {rho.space().kind() == SpaceKind::atomic ? 0 : 1, rho.space().n_atoms(),
                                  rho.space().fock_cutoff(), 0};
  f.write(reinterpret_cast<const char*>(header), sizeof(header));
  const std::int64_t dim = rho.dim();
  f.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
  for (Index r = 0; r < rho.dim(); ++r) {
    for (Index c = 0; c < rho.dim(); ++c) {
      const double v[2] = {rho.data()(r, c).real(), rho.data()(r, c).imag()};
      f.write(reinterpret_cast<const char*>(v), sizeof(v));
    }
  }
  if (!f) throw Error("failed writing checkpoint '" + path + "'");
}

DensityMatrix read_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open checkpoint '" + path + "'");
  char magic[8];
  std::int32_t header[4];
  std::int64_t dim = 0;
  f.read(magic, sizeof(magic));
  f.read(reinterpret_cast<char*>(header), sizeof(header));
  f.read(reinterpret_cast<char*>(&dim), sizeof(dim));
  if (!f || std::string(magic, 7) != "SRLRHO1") throw Error("'" + path + "' is not a steady-state checkpoint");
  const Space space = header[0] == 0 ? Space::atomic(header[1], header[2]) : Space::dicke(header[1], header[2]);
  if (space.dim() != dim) throw Error("checkpoint header inconsistent with its dimension");
  DenseMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      double v[2];
      f.read(reinterpret_cast<char*>(v), sizeof(v));
      m(r, c) = cd(v[0], v[1]);
    }
  }
  if (!f) throw Error("checkpoint '" + path + "' is truncated");
  return DensityMatrix(space, std::move(m));
}

}  // namespace srl
