// Copyright 2026 The fdsched Authors
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

// fdsched command line: run experiments, validate configs, dump scenarios.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fdsched/fdsched.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

constexpr const char* kOutputDirEnv = "FDSCHED_OUTPUT_DIR";

void print_summary(const fdsched::ExperimentResult& res) {
  const auto& cfg = res.config;
  std::cout << cfg.name << ": " << cfg.iterations << " drops, seed " << cfg.params.rng_seed << '\n';
  for (auto wm : cfg.weight_modes)
    for (double mu : cfg.mus)
      for (const auto& s : cfg.strategies) {
        std::cout << "  " << s << " mu=" << mu << ' ' << fdsched::to_string(wm);
        for (auto m : fdsched::kMetricNames) std::cout << "  " << m << "=" << fdsched::median(res.cdf(m, s, mu, wm));
        std::cout << '\n';
      }
  std::cout << "results in " << cfg.output_dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-node full-duplex pairing and power allocation simulator"};
  app.require_subcommand(1);

  std::string config_file;
  std::string canned;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> jobs;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  auto* run_cfg = run->add_option("--config", config_file, "Experiment JSON file")->check(CLI::ExistingFile);
  auto* run_canned = run->add_option("--canned", canned, "Canned experiment")->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  run_cfg->excludes(run_canned);
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--iters", iters, "Number of drops");
  run->add_option("--jobs", jobs, "Drops evaluated concurrently");
  run->add_option("--out", out_dir, "Output directory (overrides " + std::string(kOutputDirEnv) + ")");

  auto* validate = app.add_subcommand("validate", "Check an experiment config");
  validate->add_option("--config", config_file, "Experiment JSON file")->required()->check(CLI::ExistingFile);

  auto* dump = app.add_subcommand("dump-scenario", "Write one drop's positions and gains as JSON");
  dump->add_option("--seed", seed, "Master seed")->required();
  dump->add_option("--out", out_dir, "Output JSON file")->required();
  std::size_t drop_index = 0;
  dump->add_option("--drop", drop_index, "Drop index under the seed");
  auto* dump_cfg = dump->add_option("--config", config_file, "Take scenario parameters from this config")->check(CLI::ExistingFile);
  auto* dump_canned = dump->add_option("--canned", canned, "Take scenario parameters from a canned experiment")
                          ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  dump_cfg->excludes(dump_canned);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitConfig;
  }

  fdsched::ExperimentConfig cfg;
  try {
    if (!config_file.empty())
      cfg = fdsched::load_config(config_file);
    else if (!canned.empty())
      cfg = fdsched::canned_experiment(canned);
    else if (*run)
      throw fdsched::ConfigError("run needs --config or --canned");
    else
      cfg = fdsched::canned_experiment("fig2");

    if (seed) cfg.params.rng_seed = *seed;
    if (iters) cfg.iterations = *iters;
    if (jobs) cfg.parallelism = *jobs;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) cfg.output_dir = env;
    if (*run && !out_dir.empty()) cfg.output_dir = out_dir;

    const auto report = fdsched::validate_config(cfg);
    if (!report.ok()) {
      for (const auto& v : report.violations) std::cerr << "config error: " << v << '\n';
      return kExitConfig;
    }
    if (*validate) {
      std::cout << "OK\n";
      return kExitOk;
    }
  } catch (const fdsched::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*dump) {
      const auto gains = fdsched::drop_gain_table(cfg.params, drop_index);
      std::ofstream os(out_dir);
      if (!os) throw fdsched::RunError("cannot write " + out_dir);
      os << fdsched::gain_table_to_json(gains).dump(2) << '\n';
      return kExitOk;
    }
    const auto res = fdsched::run_experiment(cfg);
    print_summary(res);
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
