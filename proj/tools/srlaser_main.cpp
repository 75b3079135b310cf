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

#include "srlaser/config.hpp"
#include "srlaser/errors.hpp"
#include "srlaser/pipeline.hpp"
#include "srlaser/selftest.hpp"

#include "CLI11.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#ifndef SRLASER_PRESET_DIR
#define SRLASER_PRESET_DIR "presets"
#endif

namespace {

enum Exit { kOk = 0, kConfig = 1, kSolver = 2, kPartial = 3 };

struct Flags {
  std::string config;
  std::optional<int> workers;
  std::optional<std::string> out;
  bool cross_check = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> coarse;
  bool quiet = false;
};

void add_common(CLI::App* sub, Flags& f, bool needs_config) {
  auto* opt = sub->add_option("--config,-c", f.config, "YAML run configuration");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  sub->add_option("--workers,-j", f.workers, "sweep worker threads")->check(CLI::Range(1, 1024));
  sub->add_option("--out,-o", f.out, "output directory");
  sub->add_flag("--cross-check", f.cross_check, "also compute the resolvent spectrum and compare fits");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--coarse", f.coarse, "keep at most this many values per sweep axis")->check(CLI::Range(1, 100000));
  sub->add_flag("--quiet,-q", f.quiet, "only print errors");
}

std::string preset_dir() {
  if (const char* env = std::getenv("SRLASER_PRESETS")) return env;
  return SRLASER_PRESET_DIR;
}

void apply_flags(std::vector<srl::RunConfig>& runs, const Flags& f) {
  for (auto& c : runs) {
    if (f.workers) c.workers = *f.workers;
    if (f.out) c.output.dir = *f.out;
    if (f.cross_check) c.spectrum.cross_check = true;
    if (f.seed) c.seed = *f.seed;
    if (f.coarse) srl::coarsen_sweep(c, *f.coarse);
  }
}

void shape_for(srl::Command cmd, srl::RunConfig& c) {
  using srl::OutputField;
  c.command = cmd;
  if (cmd == srl::Command::steady) {
    if (!c.sweep.empty()) throw srl::ConfigurationError("steady runs a single point; remove 'sweep' or use the sweep command");
    std::erase_if(c.outputs, [](OutputField f) {
      return f == OutputField::spectrum || f == OutputField::linewidth || f == OutputField::shift;
    });
    if (c.outputs.empty()) c.outputs = {OutputField::n, OutputField::inversion, OutputField::g2};
  } else if (cmd == srl::Command::spectrum) {
    for (auto f : {OutputField::spectrum, OutputField::linewidth, OutputField::shift}) {
      if (!c.wants(f)) c.outputs.push_back(f);
    }
    std::sort(c.outputs.begin(), c.outputs.end());
  }
}

int run_all(std::vector<srl::RunConfig> runs, const Flags& f) {
  const auto report = srl::validate_runs(runs);
  if (report.hard_stop()) {
    std::cerr << report.text();
    return kConfig;
  }
  std::size_t failed = 0, total = 0;
  for (const auto& c : runs) {
    if (!f.quiet) {
      std::cout << "running " << srl::to_string(c.command) << (c.variant.empty() ? "" : " [" + c.variant + "]") << ": "
                << c.point_count() << " point(s), " << c.workers << " worker(s)\n";
    }
    const srl::RunResult result = srl::run_sweep(c, c.workers);
    const srl::OutputFiles files = srl::write_outputs(result, c.output.dir);
    if (!f.quiet) {
      std::cout << "  wrote " << files.csv << "\n  wrote " << files.json << "\n";
      if (!files.spectra.empty()) std::cout << "  wrote " << files.spectra.size() << " spectrum file(s)\n";
      if (result.failed() > 0) std::cout << "  " << result.failed() << " point(s) failed\n";
    }
    failed += result.failed();
    total += result.rows.size();
  }
  if (failed == 0) return kOk;
  return failed == total ? kSolver : kPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srlaser: superradiant lattice laser simulator"};
  app.set_version_flag("--version", std::string(srl::kVersion));
  app.require_subcommand(1);

  Flags flags;
  std::string preset_name;
  bool list_presets = false;

  auto* validate = app.add_subcommand("validate", "check a configuration and estimate problem size");
  add_common(validate, flags, true);
  auto* steady = app.add_subcommand("steady", "steady state and observables of a single point");
  add_common(steady, flags, true);
  auto* spectrum = app.add_subcommand("spectrum", "emission spectrum and Lorentzian fit");
  add_common(spectrum, flags, true);
  auto* sweep = app.add_subcommand("sweep", "parameter sweep over up to two axes");
  add_common(sweep, flags, true);
  auto* preset = app.add_subcommand("preset", "run a bundled figure preset");
  add_common(preset, flags, false);
  preset->add_option("name", preset_name, "preset name, e.g. fig4");
  preset->add_flag("--list", list_presets, "list available presets");
  auto* selftest = app.add_subcommand("selftest", "randomized invariant checks on small systems");
  add_common(selftest, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  spdlog::set_default_logger(spdlog::stderr_color_mt("srlaser"));
  spdlog::set_level(flags.quiet ? spdlog::level::err : spdlog::level::warn);

  try {
    if (*selftest) {
      return srl::run_selftest(flags.seed.value_or(1), std::cout) ? kOk : kSolver;
    }

    if (*preset) {
      namespace fs = std::filesystem;
      if (list_presets) {
        std::vector<std::string> names;
        for (const auto& e : fs::directory_iterator(preset_dir())) {
          if (e.path().extension() == ".yaml") names.push_back(e.path().stem().string());
        }
        std::sort(names.begin(), names.end());
        for (const auto& n : names) std::cout << n << "\n";
        return kOk;
      }
      if (preset_name.empty()) throw srl::ConfigurationError("preset needs a name (see preset --list)");
      flags.config = (fs::path(preset_dir()) / (preset_name + ".yaml")).string();
      if (!fs::exists(flags.config)) throw srl::ConfigurationError("no preset named '" + preset_name + "'");
    }

    auto runs = srl::load_config(flags.config);
    apply_flags(runs, flags);

    if (*validate) {
      std::cout << srl::validate_runs(runs).text();
      return kOk;
    }
    for (auto& c : runs) {
      if (*steady) shape_for(srl::Command::steady, c);
      if (*spectrum) shape_for(srl::Command::spectrum, c);
      if (*sweep) shape_for(srl::Command::sweep, c);
      if (*preset) shape_for(c.command, c);
    }
    return run_all(std::move(runs), flags);
  } catch (const srl::ConfigurationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
}
