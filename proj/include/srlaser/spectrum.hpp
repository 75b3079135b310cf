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
#include "srlaser/solvers.hpp"
#include "srlaser/state.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace srl {

enum class SpectrumMethod { fft_time_domain, resolvent };

std::string_view to_string(SpectrumMethod method);

/// S(omega) on an ascending grid. Frequencies are relative to the bare atomic
/// transition (the rotating-frame zero), in the same units as the generator.
struct SpectrumResult {
  std::vector<double> omega;
  std::vector<double> values;
  SpectrumMethod method = SpectrumMethod::fft_time_domain;
  // Window metadata: tau_end and dtau for fft, the omega range for resolvent.
  double tau_end = 0.0;
  double dtau = 0.0;
  /// (1/2pi) int S domega over the full computed grid.
  double norm_integral = 0.0;
  bool window_warning = false;
  /// Resolvent points where the linear solve failed; values there are NaN.
  int skipped_points = 0;

  std::size_t size() const { return omega.size(); }
  double peak() const;
};

struct FftOptions {
  /// Output grid has at least zero_pad * samples points (next power of two).
  int zero_pad = 4;
  /// Throw WindowingError unless the tail of g is below decay_tol * |g(0)|.
  bool require_decay = true;
  double decay_tol = 1e-4;
  /// Keep only |omega| <= omega_limit in the result (0 keeps the whole grid).
  /// norm_integral always refers to the full grid.
  double omega_limit = 0.0;
};

/// One-sided transform S(omega) = 2 Re int_0^inf e^{-i omega tau} g(tau) dtau,
/// trapezoidal in tau and evaluated with an FFT.
SpectrumResult spectrum_fft(std::span<const cd> corr, double dtau, const FftOptions& opts = {});
SpectrumResult spectrum_fft(const Correlation& corr, const FftOptions& opts = {});

/// Frequency-domain route: solve (i omega - L) x = a rho for every omega and
/// take S = 2 Re Tr[a+ x]. Frequencies are independent and run in parallel
/// unless `parallel` is false.
SpectrumResult spectrum_resolvent(const Superoperator& L, const DensityMatrix& rho, std::span<const double> omega,
                                  bool parallel = true);

struct LorentzFit {
  double linewidth = 0.0;      // FWHM gamma_L
  double center_shift = 0.0;   // delta = omega_peak - omega_0
  double amplitude = 0.0;
  double baseline = 0.0;
  double fit_residual = 0.0;   // RMS misfit / amplitude over the fit window
  bool unreliable = false;
  bool multi_peak = false;
  int window_points = 0;

  /// delta_a = omega_0 - omega_L.
  double atom_laser_detuning() const { return -center_shift; }
};

struct LorentzFitOptions {
  /// Fit window half-width in units of the current FWHM estimate.
  double window_widths = 5.0;
  int passes = 2;
  double xtol = 1e-10;
  double unreliable_residual = 0.05;
  double secondary_peak_ratio = 0.2;
};

/// Least-squares fit of A (w/2)^2 / ((omega - c)^2 + (w/2)^2) + b around the
/// dominant peak. Multi-peak spectra are flagged, not rejected. Throws
/// FitError when the spectrum has no usable peak or the fit does not converge.
LorentzFit lorentz_fit(const SpectrumResult& spec, const LorentzFitOptions& opts = {});

}  // namespace srl
