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

#include "srlaser/pipeline.hpp"

#include "srlaser/collective.hpp"
#include "srlaser/errors.hpp"
#include "srlaser/format.hpp"
#include "srlaser/solvers.hpp"

#include <omp.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace srl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Below this <a+a> the spectrum is not computed.
constexpr double kEmissionFloor = 1e-12;
constexpr double kNormTolerance = 1e-2;

bool degenerate_symmetric(const RunConfig& c) {
  return c.model == ModelKind::full && c.geometry.n_atoms >= 2 &&
         c.params.decay_mode == DecayMode::fully_collective && c.params.pump_mode == PumpMode::collective;
}

nlohmann::json point_params(const RunConfig& c) {
  nlohmann::json j = c.echo();
  for (const char* k : {"sweep", "output", "workers", "outputs", "command"}) j.erase(k);
  return j;
}

struct Solved {
  Superoperator L;
  SteadyState ss;
};

Solved solve_once(const RunConfig& c, int nmax) {
  const int n = c.geometry.n_atoms;
  if (n == 0) {
    ModelParams p = c.params;
    p.geometry = Geometry{};
    Superoperator L = liouvillian(p, hilbert_space(0, nmax));
    SteadyState ss = steady_state(L, c.solver);
    return {std::move(L), std::move(ss)};
  }
  if (c.model == ModelKind::collective) {
    Superoperator L = collective_liouvillian(c.params, dicke_space(n, nmax));
    SteadyState ss = steady_state(L, c.solver);
    return {std::move(L), std::move(ss)};
  }
  ModelParams p = c.params;
  p.geometry = c.geometry.build();
  Superoperator L = liouvillian(p, hilbert_space(n, nmax));
  SolverOptions opts = c.solver;
  if (degenerate_symmetric(c)) {
    // one stationary state per total-spin sector; pick the symmetric one
    const Eigen::MatrixXcd iso = dicke_embedding(n, nmax).cast<cd>();
    opts.method = SteadyStateMethod::krylov_nullspace;
    opts.verify_uniqueness = false;
    opts.inverse_shift = std::max(opts.inverse_shift, 1e-4);
    opts.initial_guess = iso * iso.adjoint();
  }
  SteadyState ss = steady_state(L, opts);
  return {std::move(L), std::move(ss)};
}

void compute_spectrum(const RunConfig& c, const Superoperator& L, const DensityMatrix& rho, bool keep,
                      PointResult& out) {
  const bool empty_cavity = c.geometry.n_atoms == 0;
  const DensityMatrix seed = empty_cavity ? thermal_state(L.space(), c.spectrum.empty_cavity_seed) : rho;
  const double n_ref = photon_number(seed);
  if (n_ref < kEmissionFloor) {
    out.no_emission = true;
    return;
  }

  const Correlation corr = correlation_adag_a(L, seed, c.spectrum.correlation, c.solver);
  FftOptions fo;
  fo.require_decay = false;
  fo.decay_tol = c.spectrum.correlation.decay_tol;
  SpectrumResult spec = spectrum_fft(corr, fo);
  out.spectrum_computed = true;
  out.window_warning = spec.window_warning || !corr.decayed;
  out.tau_end = corr.tau_end();
  out.norm_integral = spec.norm_integral;
  out.norm_error = std::abs(spec.norm_integral - n_ref) / n_ref;
  if (out.norm_error > kNormTolerance) {
    out.norm_warning = true;
    spdlog::warn("point {}: (1/2pi) int S = {:.6g} vs <a+a> = {:.6g}", out.index, spec.norm_integral, n_ref);
  }
  try {
    out.fit = lorentz_fit(spec);
  } catch (const FitError& e) {
    out.fit_failed = true;
    spdlog::warn("point {}: {}", out.index, e.what());
  }

  const double kappa = c.params.kappa;
  const double limit = c.spectrum.omega_max * kappa;
  if (c.spectrum.cross_check) {
    const int m = c.spectrum.resolvent_points;
    double lo = -limit, hi = limit;
    if (!out.fit_failed) {
      // resolve the line: +-10 fitted widths around the peak, inside the window
      const double half = 10.0 * out.fit.linewidth;
      lo = std::max(lo, out.fit.center_shift - half);
      hi = std::min(hi, out.fit.center_shift + half);
    }
    std::vector<double> grid(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) grid[k] = lo + (hi - lo) * k / (m - 1);
    // already inside a sweep worker: the resolvent sweep runs serially
    SpectrumResult res = spectrum_resolvent(L, seed, grid, omp_in_parallel() == 0);
    try {
      out.fit_resolvent = lorentz_fit(res);
    } catch (const FitError& e) {
      spdlog::warn("point {}: resolvent {}", out.index, e.what());
    }
    if (keep) out.spectrum_resolvent = std::move(res);
  }

  if (keep) {
    SpectrumResult cropped = spec;
    cropped.omega.clear();
    cropped.values.clear();
    for (std::size_t k = 0; k < spec.omega.size(); ++k) {
      if (std::abs(spec.omega[k]) <= limit) {
        cropped.omega.push_back(spec.omega[k]);
        cropped.values.push_back(spec.values[k]);
      }
    }
    out.spectrum = std::move(cropped);
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

std::string flag(bool b) { return b ? "1" : "0"; }

std::string_view status_name(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::config_error: return "config_error";
    case PointStatus::solver_error: return "solver_error";
  }
  return "ok";
}

std::string file_stem(const RunConfig& c) {
  return c.variant.empty() ? c.output.prefix : c.output.prefix + "_" + c.variant;
}

std::string spectrum_file(const RunResult& run, const PointResult& row, bool resolvent) {
  std::string name = file_stem(run.config) + "_spectrum";
  if (run.rows.size() > 1) name += "_p" + std::to_string(row.index);
  if (resolvent) name += "_resolvent";
  return name + ".csv";
}

bool fit_columns(const RunConfig& c) { return c.wants_spectrum(); }

double to_kappa(double x, const RunConfig& c) { return x / c.params.kappa; }

}  // namespace

std::vector<PointSpec> expand_points(const RunConfig& cfg) {
  std::vector<PointSpec> out;
  const std::size_t total = cfg.point_count();
  out.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    PointSpec p;
    p.index = flat;
    p.config = cfg;
    p.config.sweep.clear();
    p.config.solver.seed = cfg.seed;
    std::size_t rest = flat;
    std::vector<std::size_t> idx(cfg.sweep.size());
    for (std::size_t a = cfg.sweep.size(); a-- > 0;) {
      idx[a] = rest % cfg.sweep[a].values.size();
      rest /= cfg.sweep[a].values.size();
    }
    for (std::size_t a = 0; a < cfg.sweep.size(); ++a) {
      const AxisValue& v = cfg.sweep[a].values[idx[a]];
      p.axis_labels.push_back(v.label);
      apply_axis_value(p.config, cfg.sweep[a].name, v);
    }
    out.push_back(std::move(p));
  }
  return out;
}

PointResult evaluate_point(const PointSpec& point, bool keep_spectrum) {
  PointResult out;
  out.index = point.index;
  out.axis_labels = point.axis_labels;
  const RunConfig& c = point.config;
  out.params = point_params(c);
  out.obs.inversion = kNaN;
  out.obs.photon_number = kNaN;
  try {
    int nmax = c.hilbert.fock_cutoff;
    std::optional<Solved> solved;
    for (int attempt = 0;; ++attempt) {
      solved.emplace(solve_once(c, nmax));
      if (!solved->ss.truncation_warning || !c.hilbert.auto_extend || attempt >= c.hilbert.max_extensions) break;
      spdlog::info("point {}: extending Fock cutoff {} -> {}", point.index, nmax, nmax + 2);
      nmax += 2;
    }
    const SteadyState& ss = solved->ss;
    out.fock_cutoff_used = nmax;
    out.space_dim = ss.rho.dim();
    out.truncation_warning = ss.truncation_warning;
    if (!ss.diagnostics.ok) {
      out.physical_warning = true;
      spdlog::warn("point {} ({}): {}", point.index, out.params.dump(), ss.diagnostics.message);
    }
    out.obs = (c.model == ModelKind::collective && c.geometry.n_atoms > 0) ? collective_observables(ss.rho)
                                                                            : observables(ss.rho);
    if (c.wants_spectrum()) compute_spectrum(c, solved->L, ss.rho, keep_spectrum, out);
  } catch (const ConfigurationError& e) {
    out.status = PointStatus::config_error;
    out.error = e.what();
  } catch (const DomainError& e) {
    out.status = PointStatus::config_error;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.status = PointStatus::solver_error;
    out.error = e.what();
  }
  if (!out.ok()) spdlog::error("point {} failed: {}", point.index, out.error);
  out.params["hilbert"]["fock_cutoff_used"] = out.fock_cutoff_used;
  return out;
}

std::size_t RunResult::failed() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const PointResult& r) { return !r.ok(); }));
}

int RunResult::exit_code() const {
  const std::size_t bad = failed();
  if (bad == 0) return 0;
  return bad == rows.size() ? 2 : 3;
}

RunResult run_sweep(const RunConfig& cfg, int workers) {
  const std::vector<PointSpec> points = expand_points(cfg);
  RunResult run{cfg, std::vector<PointResult>(points.size())};
  const bool keep = cfg.wants(OutputField::spectrum) || cfg.output.write_point_spectra;
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(points.size())));
  const auto n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long k = 0; k < n; ++k) {
    run.rows[k] = evaluate_point(points[k], keep);
  }
  return run;
}

std::string render_csv(const RunResult& run, const std::string& timestamp) {
  const RunConfig& c = run.config;
  std::ostringstream os;
  os << "# generated " << timestamp << "\n";
  os << "# srlaser " << kVersion << " " << to_string(c.command);
  if (!c.variant.empty()) os << " variant " << c.variant;
  os << "\n";
  if (!c.description.empty()) os << "# " << c.description << "\n";
  os << "# assumed coupling g/kappa = " << format_number(c.params.g / c.params.kappa)
     << "; rates and frequencies in units of kappa, distances in units of lambda0\n";

  std::vector<std::string> cols;
  for (const auto& ax : c.sweep) cols.emplace_back(to_string(ax.name));
  for (auto f : {OutputField::n, OutputField::inversion, OutputField::g2}) {
    if (c.wants(f)) cols.emplace_back(to_string(f));
  }
  const bool fits = fit_columns(c);
  if (fits) {
    for (const char* k : {"linewidth", "shift", "shift_from_cavity", "delta_a_over_gamma", "fit_residual", "norm_error"})
      cols.emplace_back(k);
    if (c.spectrum.cross_check) cols.emplace_back("linewidth_resolvent");
  }
  if (c.wants(OutputField::g2)) cols.emplace_back("anti_bunching");
  cols.emplace_back("truncation_warning");
  if (fits) {
    for (const char* k : {"fit_unreliable", "multi_peak", "window_warning", "norm_warning"}) cols.emplace_back(k);
  }
  for (const char* k : {"fock_cutoff", "status", "error"}) cols.emplace_back(k);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";

  for (const PointResult& r : run.rows) {
    std::vector<std::string> cells;
    for (const auto& label : r.axis_labels) cells.push_back(csv_escape(label));
    const bool ok = r.ok();
    if (c.wants(OutputField::n)) cells.push_back(format_number(ok ? r.obs.photon_number : kNaN));
    if (c.wants(OutputField::inversion)) cells.push_back(format_number(ok ? r.obs.inversion : kNaN));
    if (c.wants(OutputField::g2)) cells.push_back(format_number(ok && r.obs.g2_zero ? *r.obs.g2_zero : kNaN));
    const bool have_fit = ok && r.spectrum_computed && !r.fit_failed;
    if (fits) {
      const double gamma0 = r.params["model"]["gamma0"].get<double>();
      const double detuning = r.params["model"]["detuning"].get<double>();
      cells.push_back(format_number(have_fit ? to_kappa(r.fit.linewidth, c) : kNaN));
      cells.push_back(format_number(have_fit ? to_kappa(r.fit.center_shift, c) : kNaN));
      cells.push_back(format_number(have_fit ? to_kappa(r.fit.center_shift - detuning, c) : kNaN));
      cells.push_back(format_number(have_fit && gamma0 > 0.0 ? r.fit.atom_laser_detuning() / gamma0 : kNaN));
      cells.push_back(format_number(have_fit ? r.fit.fit_residual : kNaN));
      cells.push_back(format_number(ok && r.spectrum_computed ? r.norm_error : kNaN));
      if (c.spectrum.cross_check) {
        cells.push_back(format_number(r.fit_resolvent ? to_kappa(r.fit_resolvent->linewidth, c) : kNaN));
      }
    }
    if (c.wants(OutputField::g2)) cells.push_back(flag(ok && r.obs.anti_bunched()));
    cells.push_back(flag(r.truncation_warning));
    if (fits) {
      cells.push_back(flag(r.spectrum_computed && (r.fit_failed || r.fit.unreliable)));
      cells.push_back(flag(have_fit && r.fit.multi_peak));
      cells.push_back(flag(r.window_warning));
      cells.push_back(flag(r.norm_warning));
    }
    cells.push_back(std::to_string(r.fock_cutoff_used));
    cells.emplace_back(status_name(r.status));
    cells.push_back(csv_escape(r.error));
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  }
  return os.str();
}

namespace {

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json fit_json(const LorentzFit& f) {
  return {{"linewidth", f.linewidth},
          {"center_shift", f.center_shift},
          {"atom_laser_detuning", f.atom_laser_detuning()},
          {"amplitude", f.amplitude},
          {"baseline", f.baseline},
          {"fit_residual", f.fit_residual},
          {"window_points", f.window_points},
          {"unreliable", f.unreliable},
          {"multi_peak", f.multi_peak}};
}

}  // namespace

nlohmann::json render_json(const RunResult& run, const std::string& timestamp) {
  using nlohmann::json;
  const RunConfig& c = run.config;
  json j;
  j["version"] = kVersion;
  j["generated"] = timestamp;
  j["assumed_g_over_kappa"] = c.params.g / c.params.kappa;
  j["config"] = c.echo();
  j["points"] = run.rows.size();
  j["failed"] = run.failed();
  json rows = json::array();
  for (const PointResult& r : run.rows) {
    json row;
    row["index"] = r.index;
    json axes = json::object();
    for (std::size_t a = 0; a < c.sweep.size(); ++a) axes[std::string(to_string(c.sweep[a].name))] = r.axis_labels[a];
    row["axes"] = axes;
    row["params"] = r.params;
    row["status"] = status_name(r.status);
    if (!r.ok()) {
      row["error"] = r.error;
      rows.push_back(row);
      continue;
    }
    json obs = {{"n", r.obs.photon_number},
                {"inversion", r.obs.inversion},
                {"g2", r.obs.g2_zero ? json(*r.obs.g2_zero) : json(nullptr)},
                {"anti_bunching", r.obs.anti_bunched()},
                {"per_atom_inversion", r.obs.per_atom_inversion}};
    row["observables"] = obs;
    row["flags"] = {{"truncation_warning", r.truncation_warning}, {"physical_warning", r.physical_warning}};
    row["space_dim"] = r.space_dim;
    if (r.spectrum_computed) {
      json s = {{"norm_integral", r.norm_integral},
                {"norm_error", r.norm_error},
                {"norm_warning", r.norm_warning},
                {"window_warning", r.window_warning},
                {"tau_end", r.tau_end}};
      if (r.fit_failed) {
        s["fit"] = nullptr;
      } else {
        s["fit"] = fit_json(r.fit);
        const double gamma0 = r.params["model"]["gamma0"].get<double>();
        s["delta_a_over_gamma"] = number_or_null(gamma0 > 0.0 ? r.fit.atom_laser_detuning() / gamma0 : kNaN);
      }
      if (r.fit_resolvent) s["fit_resolvent"] = fit_json(*r.fit_resolvent);
      if (r.spectrum) s["file"] = spectrum_file(run, r, false);
      if (r.spectrum_resolvent) s["file_resolvent"] = spectrum_file(run, r, true);
      row["spectrum"] = s;
    } else if (r.no_emission) {
      row["spectrum"] = {{"skipped", "no emission"}};
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

std::string render_spectrum_csv(const SpectrumResult& spec, double kappa, const std::string& header) {
  std::ostringstream os;
  if (!header.empty()) os << "# " << header << "\n";
  os << "omega_over_kappa,S\n";
  for (std::size_t k = 0; k < spec.omega.size(); ++k) {
    os << format_number(spec.omega[k] / kappa) << "," << format_number(spec.values[k]) << "\n";
  }
  return os.str();
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

OutputFiles write_outputs(const RunResult& run, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string ts = utc_timestamp();
  const std::string stem = file_stem(run.config);
  OutputFiles files;
  files.csv = (fs::path(dir) / (stem + ".csv")).string();
  files.json = (fs::path(dir) / (stem + ".json")).string();
  write_file(files.csv, render_csv(run, ts));
  write_file(files.json, render_json(run, ts).dump(2) + "\n");
  for (const PointResult& r : run.rows) {
    std::string label;
    for (std::size_t a = 0; a < run.config.sweep.size(); ++a) {
      label += (a ? " " : "") + std::string(to_string(run.config.sweep[a].name)) + "=" + r.axis_labels[a];
    }
    if (r.spectrum) {
      const auto path = (fs::path(dir) / spectrum_file(run, r, false)).string();
      write_file(path, render_spectrum_csv(*r.spectrum, run.config.params.kappa, label));
      files.spectra.push_back(path);
    }
    if (r.spectrum_resolvent) {
      const auto path = (fs::path(dir) / spectrum_file(run, r, true)).string();
      write_file(path, render_spectrum_csv(*r.spectrum_resolvent, run.config.params.kappa, label));
      files.spectra.push_back(path);
    }
  }
  return files;
}

namespace {

long long binomial(int n, int k) {
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Unknowns in the excitation-conserving block that holds the steady state:
// sum over total excitation e of (number of basis states with e)^2.
long long sector_unknowns(ModelKind kind, int n_atoms, int nmax) {
  std::vector<long long> count(static_cast<std::size_t>(n_atoms + nmax + 1), 0);
  for (int a = 0; a <= n_atoms; ++a) {
    const long long mult = kind == ModelKind::collective ? 1 : binomial(n_atoms, a);
    for (int n = 0; n <= nmax; ++n) count[a + n] += mult;
  }
  long long total = 0;
  for (long long c : count) total += c * c;
  return total;
}

}  // namespace

bool ValidationReport::hard_stop() const {
  return std::any_of(entries.begin(), entries.end(), [](const Entry& e) { return e.hard_stop; });
}

std::string ValidationReport::text() const {
  std::ostringstream os;
  for (const Entry& e : entries) {
    os << "run" << (e.variant.empty() ? "" : " " + e.variant) << ": " << to_string(e.model) << " model, " << e.points
       << " point(s)\n";
    os << "  largest point: N=" << e.max_atoms << ", n_max=" << e.fock_cutoff << "\n";
    os << "  dim=" << e.dim << ", superoperator side=" << e.superop_side << ", steady-state unknowns=" << e.sector_unknowns
       << "\n";
    os << "  memory estimate ~" << format_number(std::round(e.memory_mb * 10.0) / 10.0) << " MB\n";
    os << "  recommendation: " << e.recommendation << "\n";
    for (const auto& w : e.warnings) os << "  warning: " << w << "\n";
  }
  return os.str();
}

ValidationReport validate_runs(const std::vector<RunConfig>& runs) {
  ValidationReport rep;
  for (const RunConfig& c : runs) {
    ValidationReport::Entry e;
    e.variant = c.variant;
    e.model = c.model;
    e.fock_cutoff = c.hilbert.fock_cutoff;
    e.points = c.point_count();
    for (const PointSpec& p : expand_points(c)) e.max_atoms = std::max(e.max_atoms, p.config.geometry.n_atoms);
    const int n = e.max_atoms;
    const long long atomic = c.model == ModelKind::collective ? n + 1 : (1LL << n);
    e.dim = atomic * (e.fock_cutoff + 1);
    e.superop_side = e.dim * e.dim;
    e.sector_unknowns = sector_unknowns(c.model, n, e.fock_cutoff);
    // generator rows carry O(N^2) entries for the pair terms; the LU factor
    // is taken as ~20x the generator
    const double per_row = c.model == ModelKind::collective ? 12.0 : 2.0 * n * n + 4.0 * n + 6.0;
    e.memory_mb = static_cast<double>(e.sector_unknowns) * per_row * 20.0 * 16.0 / 1e6;

    SolverOptions probe = c.solver;
    const bool direct =
        probe.method == SteadyStateMethod::direct_sparse ||
        (probe.method == SteadyStateMethod::automatic && e.sector_unknowns <= probe.direct_limit);
    e.recommendation = direct ? "direct" : "krylov_nullspace";
    if (degenerate_symmetric(c)) {
      e.recommendation = "krylov_nullspace (degenerate kernel, symmetric start)";
    }
    if (c.model == ModelKind::full && n >= 12) {
      e.hard_stop = true;
      e.warnings.push_back("hard stop: full model with N=" + std::to_string(n) + " has dim " +
                           std::to_string(1LL << n) + "*(n_max+1); direct solve infeasible, use the collective model");
    } else if (e.superop_side > 1'000'000'000LL) {
      e.hard_stop = true;
      e.warnings.push_back("hard stop: superoperator side above 1e9");
    } else if (e.superop_side > 10'000'000LL) {
      e.warnings.push_back("large problem: expect minutes per point");
    }
    if (e.fock_cutoff < 4 && c.model == ModelKind::full && n > 0) {
      e.warnings.push_back("fock_cutoff below 4; rely on auto_extend or raise it");
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace srl
