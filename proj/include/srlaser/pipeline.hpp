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

#include "srlaser/config.hpp"
#include "srlaser/observables.hpp"
#include "srlaser/spectrum.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace srl {

#ifndef SRLASER_VERSION_STRING
#define SRLASER_VERSION_STRING "0.0.0"
#endif

inline constexpr const char* kVersion = SRLASER_VERSION_STRING;

/// One sweep point: the run configuration with the axis values applied.
struct PointSpec {
  std::size_t index = 0;  // row-major over the axes, first axis slowest
  std::vector<std::string> axis_labels;
  RunConfig config;
};

std::vector<PointSpec> expand_points(const RunConfig& cfg);

enum class PointStatus { ok, config_error, solver_error };

struct PointResult {
  std::size_t index = 0;
  std::vector<std::string> axis_labels;
  /// Everything needed to re-run this point on its own.
  nlohmann::json params;
  PointStatus status = PointStatus::ok;
  std::string error;

  int fock_cutoff_used = 0;
  long long space_dim = 0;
  ObservableSet obs;
  bool truncation_warning = false;
  bool physical_warning = false;

  bool spectrum_computed = false;
  bool no_emission = false;  // nothing to transform (vanishing a rho)
  LorentzFit fit;
  bool fit_failed = false;
  double norm_integral = 0.0;
  double norm_error = 0.0;  // relative Parseval mismatch against <a+a>
  bool norm_warning = false;
  bool window_warning = false;
  double tau_end = 0.0;
  std::optional<LorentzFit> fit_resolvent;
  /// Cropped to |omega| <= omega_max when kept for writing.
  std::optional<SpectrumResult> spectrum;
  std::optional<SpectrumResult> spectrum_resolvent;

  bool ok() const { return status == PointStatus::ok; }
};

/// Solves a single point. Never throws: failures land in status/error.
PointResult evaluate_point(const PointSpec& point, bool keep_spectrum);

struct RunResult {
  RunConfig config;
  std::vector<PointResult> rows;

  std::size_t failed() const;
  /// 0 all points fine, 2 every point failed, 3 some failed.
  int exit_code() const;
};

/// Evaluates every point with `workers` OpenMP threads; rows come back in
/// point order whatever the scheduling.
RunResult run_sweep(const RunConfig& cfg, int workers);

struct OutputFiles {
  std::string csv;
  std::string json;
  std::vector<std::string> spectra;
};

/// CSV table, JSON summary and (if kept) per-point spectrum files.
OutputFiles write_outputs(const RunResult& run, const std::string& dir);

/// Table rows as CSV text. The first comment line carries a timestamp; all
/// other bytes depend only on the configuration.
std::string render_csv(const RunResult& run, const std::string& timestamp);
nlohmann::json render_json(const RunResult& run, const std::string& timestamp);
std::string render_spectrum_csv(const SpectrumResult& spec, double kappa, const std::string& header);

struct ValidationReport {
  struct Entry {
    std::string variant;
    ModelKind model = ModelKind::full;
    int max_atoms = 0;
    int fock_cutoff = 0;
    long long dim = 0;
    long long superop_side = 0;  // dim^2
    long long sector_unknowns = 0;  // charge-0 block actually solved
    double memory_mb = 0.0;
    std::string recommendation;
    bool hard_stop = false;
    std::vector<std::string> warnings;
    std::size_t points = 0;
  };
  std::vector<Entry> entries;

  bool hard_stop() const;
  std::string text() const;
};

ValidationReport validate_runs(const std::vector<RunConfig>& runs);

}  // namespace srl
