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

#include "srlaser/spectrum.hpp"

#include "srlaser/errors.hpp"

#include <Eigen/SparseLU>
#include <fftw3.h>
#include <omp.h>
#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace srl {

namespace {

// FFTW planning is not thread safe, execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftwForward {
 public:
  explicit FftwForward(std::size_t n) : n_(n) {
    in_ = fftw_alloc_complex(n);
    out_ = fftw_alloc_complex(n);
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~FftwForward() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  FftwForward(const FftwForward&) = delete;
  FftwForward& operator=(const FftwForward&) = delete;

  cd* input() { return reinterpret_cast<cd*>(in_); }
  const cd* output() const { return reinterpret_cast<const cd*>(out_); }
  void execute() { fftw_execute(plan_); }

 private:
  std::size_t n_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

double trapezoid_integral(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (std::isnan(y[k]) || std::isnan(y[k - 1])) continue;
    s += 0.5 * (y[k] + y[k - 1]) * (x[k] - x[k - 1]);
  }
  return s;
}

struct LorentzModel {
  // p = (amplitude, center, half width, baseline)
  static double value(const Eigen::Vector4d& p, double w) {
    const double hw2 = p(2) * p(2);
    const double d = w - p(1);
    return p(0) * hw2 / (d * d + hw2) + p(3);
  }
};

struct LorentzFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const std::vector<double>* x;
  const std::vector<double>* y;

  int inputs() const { return 4; }
  int values() const { return static_cast<int>(x->size()); }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
    for (int k = 0; k < values(); ++k) r(k) = LorentzModel::value(p.head<4>(), (*x)[k]) - (*y)[k];
    return 0;
  }
  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
    const double a = p(0), c = p(1), h = p(2);
    for (int k = 0; k < values(); ++k) {
      const double d = (*x)[k] - c;
      const double den = d * d + h * h;
      const double shape = h * h / den;
      jac(k, 0) = shape;
      jac(k, 1) = a * h * h * 2.0 * d / (den * den);
      jac(k, 2) = a * 2.0 * h * d * d / (den * den);
      jac(k, 3) = 1.0;
    }
    return 0;
  }
};

struct Window {
  std::vector<double> x;
  std::vector<double> y;
};

Window select_window(const SpectrumResult& spec, double center, double width, double widths) {
  Window w;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (std::isnan(spec.values[k])) continue;
    if (std::abs(spec.omega[k] - center) <= widths * width) {
      w.x.push_back(spec.omega[k]);
      w.y.push_back(spec.values[k]);
    }
  }
  return w;
}

}  // namespace

std::string_view to_string(SpectrumMethod method) {
  return method == SpectrumMethod::fft_time_domain ? "fft_time_domain" : "resolvent";
}

double SpectrumResult::peak() const {
  double p = 0.0;
  for (double v : values) {
    if (!std::isnan(v)) p = std::max(p, v);
  }
  return p;
}

SpectrumResult spectrum_fft(std::span<const cd> corr, double dtau, const FftOptions& opts) {
  if (corr.size() < 2 || !(dtau > 0.0)) throw DomainError("spectrum_fft: need at least two samples and dtau > 0");
  if (opts.zero_pad < 1) throw ConfigurationError("spectrum_fft: zero_pad must be >= 1");

  SpectrumResult out;
  out.method = SpectrumMethod::fft_time_domain;
  out.dtau = dtau;
  out.tau_end = dtau * static_cast<double>(corr.size() - 1);

  const double g0 = std::abs(corr.front());
  const std::size_t tail = std::max<std::size_t>(1, corr.size() / 20);
  double tail_max = 0.0;
  for (std::size_t k = corr.size() - tail; k < corr.size(); ++k) tail_max = std::max(tail_max, std::abs(corr[k]));
  if (tail_max > opts.decay_tol * g0) {
    if (opts.require_decay) {
      throw WindowingError("correlation has not decayed by tau = " + std::to_string(out.tau_end) + " (|g|/g(0) = " +
                           std::to_string(tail_max / g0) + "); extend the tau window");
    }
    out.window_warning = true;
  }

  const std::size_t n = std::bit_ceil(static_cast<std::size_t>(opts.zero_pad) * corr.size());
  FftwForward fft(n);
  cd* in = fft.input();
  std::fill(in, in + n, cd(0.0));
  for (std::size_t k = 0; k < corr.size(); ++k) in[k] = (k == 0 ? 0.5 : 1.0) * dtau * corr[k];
  fft.execute();
  const cd* f = fft.output();

  const double step = 2.0 * std::numbers::pi / (static_cast<double>(n) * dtau);
  const std::size_t half = n / 2;
  out.omega.resize(n);
  out.values.resize(n);
  // negative frequencies first: bins half..n-1, then 0..half-1
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t bin = (k + half) % n;
    const double w = bin >= half ? (static_cast<double>(bin) - static_cast<double>(n)) * step
                                 : static_cast<double>(bin) * step;
    out.omega[k] = w;
    out.values[k] = 2.0 * f[bin].real();
  }
  double sum = 0.0;
  for (double v : out.values) sum += v;
  out.norm_integral = sum * step / (2.0 * std::numbers::pi);

  if (opts.omega_limit > 0.0) {
    std::vector<double> w, v;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(out.omega[k]) <= opts.omega_limit) {
        w.push_back(out.omega[k]);
        v.push_back(out.values[k]);
      }
    }
    out.omega = std::move(w);
    out.values = std::move(v);
  }
  return out;
}

SpectrumResult spectrum_fft(const Correlation& corr, const FftOptions& opts) {
  return spectrum_fft(std::span<const cd>(corr.values), corr.dtau, opts);
}

SpectrumResult spectrum_resolvent(const Superoperator& L, const DensityMatrix& rho, std::span<const double> omega,
                                  bool parallel) {
  for (std::size_t k = 1; k < omega.size(); ++k) {
    if (!(omega[k] > omega[k - 1])) throw DomainError("spectrum_resolvent: omega grid must be ascending");
  }
  SpectrumResult out;
  out.method = SpectrumMethod::resolvent;
  out.omega.assign(omega.begin(), omega.end());
  out.values.assign(omega.size(), 0.0);
  if (omega.empty()) return out;

  const RegressionSetup setup(L, rho);
  if (setup.trivial()) {
    out.tau_end = 0.0;
    return out;
  }
  const SparseMatrix& m = setup.matrix();
  SparseMatrix id(m.rows(), m.cols());
  id.setIdentity();
  // iw - M has the sparsity pattern of M plus the diagonal
  const SparseMatrix pattern = (SparseMatrix(m) + id).pruned(cd(0.0));

  const auto count = static_cast<std::ptrdiff_t>(omega.size());
  int skipped = 0;
  auto solve_range = [&](std::ptrdiff_t begin, std::ptrdiff_t end, int stride) {
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(pattern);
    for (std::ptrdiff_t k = begin; k < end; k += stride) {
      double value = std::numeric_limits<double>::quiet_NaN();
      for (double nudge : {0.0, 1e-9, -1e-9}) {
        const double w = omega[k] + nudge * std::max(1.0, std::abs(omega[k]));
        SparseMatrix a = cd(0.0, w) * id - m;
        a.makeCompressed();
        lu.factorize(a);
        if (lu.info() != Eigen::Success) continue;
        const Vector x = lu.solve(setup.seed());
        if (!x.allFinite()) continue;
        value = 2.0 * setup.measure(x).real();
        break;
      }
      if (std::isnan(value)) {
#pragma omp atomic
        ++skipped;
      }
      out.values[k] = value;
    }
  };

  if (parallel && omega.size() > 1) {
#pragma omp parallel
    {
      solve_range(omp_get_thread_num(), count, omp_get_num_threads());
    }
  } else {
    solve_range(0, count, 1);
  }
  out.skipped_points = skipped;
  out.norm_integral = trapezoid_integral(out.omega, out.values) / (2.0 * std::numbers::pi);
  out.tau_end = 0.0;
  return out;
}

LorentzFit lorentz_fit(const SpectrumResult& spec, const LorentzFitOptions& opts) {
  if (spec.size() < 5) throw FitError("lorentz_fit: spectrum too short");

  std::size_t peak = 0;
  bool found = false;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (std::isnan(spec.values[k])) continue;
    if (!found || spec.values[k] > spec.values[peak]) {
      peak = k;
      found = true;
    }
  }
  if (!found || !(spec.values[peak] > 0.0)) throw FitError("lorentz_fit: spectrum has no positive peak");
  const double top = spec.values[peak];

  LorentzFit fit;
  for (std::size_t k = 1; k + 1 < spec.size(); ++k) {
    if (k == peak) continue;
    const double v = spec.values[k];
    if (v > spec.values[k - 1] && v >= spec.values[k + 1] && v > opts.secondary_peak_ratio * top) {
      fit.multi_peak = true;
      break;
    }
  }

  // half-maximum crossings for the first width estimate
  const double half = 0.5 * top;
  auto crossing = [&](int dir) {
    std::ptrdiff_t k = static_cast<std::ptrdiff_t>(peak);
    while (k + dir >= 0 && k + dir < static_cast<std::ptrdiff_t>(spec.size()) && spec.values[k + dir] > half) k += dir;
    const std::ptrdiff_t j = k + dir;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(spec.size())) return spec.omega[k];
    const double y0 = spec.values[k], y1 = spec.values[j];
    const double t = (y0 - half) / (y0 - y1);
    return spec.omega[k] + t * (spec.omega[j] - spec.omega[k]);
  };
  double width = crossing(+1) - crossing(-1);
  const double grid_step = spec.omega[std::min(peak + 1, spec.size() - 1)] - spec.omega[peak > 0 ? peak - 1 : 0];
  width = std::max(width, grid_step);

  Eigen::VectorXd p(4);
  p << top, spec.omega[peak], 0.5 * width, 0.0;

  Window win;
  for (int pass = 0; pass < std::max(1, opts.passes); ++pass) {
    win = select_window(spec, p(1), 2.0 * std::abs(p(2)), opts.window_widths);
    if (win.x.size() < 6) throw FitError("lorentz_fit: fewer than 6 points inside the fit window");
    LorentzFunctor functor{&win.x, &win.y};
    Eigen::LevenbergMarquardt<LorentzFunctor> lm(functor);
    lm.parameters.xtol = opts.xtol;
    lm.parameters.ftol = 1e-15;
    lm.parameters.maxfev = 4000;
    const auto status = lm.minimize(p);
    using Status = Eigen::LevenbergMarquardtSpace::Status;
    if (status == Status::ImproperInputParameters || status == Status::TooManyFunctionEvaluation) {
      throw FitError("lorentz_fit: Levenberg-Marquardt did not converge (status " + std::to_string(int(status)) + ")");
    }
    if (!p.allFinite()) throw FitError("lorentz_fit: non-finite parameters");
  }

  fit.amplitude = p(0);
  fit.center_shift = p(1);
  fit.linewidth = 2.0 * std::abs(p(2));
  fit.baseline = p(3);
  fit.window_points = static_cast<int>(win.x.size());

  double sq = 0.0;
  const Eigen::Vector4d pv = p.head<4>();
  for (std::size_t k = 0; k < win.x.size(); ++k) {
    const double r = LorentzModel::value(pv, win.x[k]) - win.y[k];
    sq += r * r;
  }
  fit.fit_residual = std::sqrt(sq / static_cast<double>(win.x.size())) / std::max(std::abs(fit.amplitude), 1e-300);
  fit.unreliable = fit.multi_peak || fit.fit_residual > opts.unreliable_residual || !(fit.linewidth > 0.0) ||
                   fit.window_points < 12;
  return fit;
}

}  // namespace srl
