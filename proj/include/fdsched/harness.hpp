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

/**
 * \file fdsched/harness.hpp
 *
 * \brief Seeded Monte Carlo experiments over strategies, mu values and
 *  weight modes, with the canned setups behind the published figures.
 *
 * Every drop owns counter-addressed random streams derived from the master
 * seed, so results do not depend on the number of worker threads. All
 * requested (strategy, mu, weight mode) combinations are evaluated on the
 * same gain table of a drop.
 */

#ifndef FDSCHED_HARNESS_HPP
#define FDSCHED_HARNESS_HPP

#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "metrics.hpp"
#include "model.hpp"
#include "random.hpp"
#include "scenario.hpp"
#include "solvers.hpp"

namespace fdsched {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string name = "custom";
  ScenarioParams params{};
  std::vector<std::string> strategies;
  std::vector<double> mus;
  std::vector<WeightMode> weight_modes;
  std::size_t iterations = 400;
  std::filesystem::path output_dir = "results";
  std::size_t parallelism = 1;
  bool dump_scenarios = false;
};

inline ValidationReport validate_config(const ExperimentConfig& cfg,
                                        const StrategyRegistry& registry = StrategyRegistry::with_builtins()) {
  auto r = validate_params(cfg.params);
  auto require = [&r](bool cond, std::string what) {
    if (!cond) r.violations.push_back(std::move(what));
  };
  require(cfg.iterations >= 1, "iterations >= 1");
  require(!cfg.strategies.empty(), "at least one strategy");
  require(!cfg.mus.empty(), "at least one mu");
  require(!cfg.weight_modes.empty(), "at least one weight mode");
  require(cfg.parallelism >= 1, "parallelism >= 1");
  for (double mu : cfg.mus) require(mu >= 0.0 && mu <= 1.0, "mu in [0,1]");
  for (const auto& s : cfg.strategies) {
    require(registry.contains(s), "unknown strategy '" + s + "'");
    if (s == to_string(StrategyId::POpt))
      require(cfg.params.num_ul + cfg.params.num_dl <= kPOptMaxUsers, "P-OPT requires I + J <= 10");
  }
  return r;
}

/// Canned experiment setups; all physical constants are the ScenarioParams defaults.
inline ExperimentConfig canned_experiment(std::string_view name) {
  ExperimentConfig cfg;
  cfg.name = std::string(name);
  cfg.iterations = 400;
  if (name == "fig2") {
    cfg.params.num_ul = cfg.params.num_dl = cfg.params.num_channels = 4;
    cfg.mus = {0.1, 0.5, 0.9};
    cfg.weight_modes = {WeightMode::SumRate};
    cfg.strategies = {"P-OPT", "C-HUN"};
  } else if (name == "fig3" || name == "fig4") {
    cfg.params.num_ul = cfg.params.num_dl = cfg.params.num_channels = 25;
    cfg.mus = {0.9};
    cfg.weight_modes = {WeightMode::SumRate, WeightMode::PathLossCompensation};
    cfg.strategies = {"C-HUN", "C-NINT", "R-EPA"};
  } else {
    throw ConfigError("unknown canned experiment '" + std::string(name) + "' (expected fig2, fig3 or fig4)");
  }
  cfg.params.mu = cfg.mus.front();
  cfg.params.weight_mode = cfg.weight_modes.front();
  return cfg;
}

// Records -----------------------------------------------------------------------

struct RunRecord {
  std::size_t drop = 0;
  std::string strategy;
  double mu = 0.0;
  WeightMode weight_mode = WeightMode::SumRate;
  std::uint64_t master_seed = 0;
  std::uint64_t gain_hash = 0;
  double objective = 0.0;
  double sum_se = 0.0;
  double min_se = 0.0;
  double jain = 0.0;
  std::vector<double> se;  // UL then DL
  double wall_seconds = 0.0;
};

/// FNV-1a over the raw bytes of every gain.
inline std::uint64_t hash_gains(const GainTable& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  };
  for (double v : g.g_ul) mix(v);
  for (double v : g.g_dl) mix(v);
  for (double v : g.g_cross.data()) mix(v);
  return h;
}

/// Stream ids under a drop.
enum class StreamTag : std::uint64_t { Scenario = 0, Strategy = 1 };

inline RandomStream drop_stream(std::uint64_t master, std::size_t drop, StreamTag tag) {
  return RandomStream(master, {static_cast<std::uint64_t>(drop), static_cast<std::uint64_t>(tag)});
}

inline GainTable drop_gain_table(const ScenarioParams& p, std::size_t drop) {
  auto rng = drop_stream(p.rng_seed, drop, StreamTag::Scenario);
  return build_gain_table(p, rng);
}

struct DropResult {
  GainTable gains;
  std::vector<RunRecord> records;
};

inline DropResult run_drop(const ExperimentConfig& cfg, const StrategyRegistry& registry, std::size_t drop) {
  DropResult out;
  out.gains = drop_gain_table(cfg.params, drop);
  const std::uint64_t hash = hash_gains(out.gains);
  for (WeightMode wm : cfg.weight_modes) {
    for (double mu : cfg.mus) {
      ScenarioParams p = cfg.params;
      p.mu = mu;
      p.weight_mode = wm;
      for (const auto& name : cfg.strategies) {
        // Every strategy of a drop gets the same fresh stream.
        auto rng = drop_stream(cfg.params.rng_seed, drop, StreamTag::Strategy);
        const auto t0 = std::chrono::steady_clock::now();
        const auto o = registry.at(name)(out.gains, p, rng);
        const auto t1 = std::chrono::steady_clock::now();
        if (hash_gains(out.gains) != hash) throw RunError("gain table changed during a drop");
        RunRecord r;
        r.drop = drop;
        r.strategy = name;
        r.mu = mu;
        r.weight_mode = wm;
        r.master_seed = cfg.params.rng_seed;
        r.gain_hash = hash;
        r.objective = o.objective;
        r.sum_se = o.sum_se;
        r.min_se = o.min_se;
        r.jain = o.jain;
        r.se = o.all_se();
        r.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
        out.records.push_back(std::move(r));
      }
    }
  }
  return out;
}

// Aggregation ------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 4> kMetricNames{"objective", "sum_se", "min_se", "jain"};

inline double metric_value(const RunRecord& r, std::string_view metric) {
  if (metric == "objective") return r.objective;
  if (metric == "sum_se") return r.sum_se;
  if (metric == "min_se") return r.min_se;
  if (metric == "jain") return r.jain;
  throw InvalidArgument("unknown metric '" + std::string(metric) + "'");
}

/// Key of one curve: (metric, strategy, mu, weight mode).
using SeriesKey = std::tuple<std::string, std::string, double, std::string>;

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunRecord> records;      // drop-major, in config order within a drop
  std::vector<GainTable> gain_tables;  // kept only with dump_scenarios
  std::map<SeriesKey, CdfSeries> series;

  const CdfSeries& cdf(std::string_view metric, std::string_view strategy, double mu, WeightMode wm) const {
    const auto it = series.find({std::string(metric), std::string(strategy), mu, std::string(to_string(wm))});
    if (it == series.end()) throw InvalidArgument("no such series");
    return it->second;
  }
};

inline std::map<SeriesKey, CdfSeries> build_series(const std::vector<RunRecord>& records) {
  std::map<SeriesKey, std::vector<double>> samples;
  for (const auto& r : records)
    for (auto m : kMetricNames)
      samples[{std::string(m), r.strategy, r.mu, std::string(to_string(r.weight_mode))}].push_back(metric_value(r, m));
  std::map<SeriesKey, CdfSeries> out;
  for (auto& [key, v] : samples) {
    auto cdf = empirical_cdf(std::move(v));
    std::tie(cdf.metric, cdf.strategy, cdf.mu, cdf.weight_mode) = key;
    out.emplace(key, std::move(cdf));
  }
  return out;
}

// Running -----------------------------------------------------------------------------

/// Runs every drop, `cfg.parallelism` drops at a time. On failure the
/// records of all drops before the first failing one are kept in
/// `partial` and a RunError is thrown.
inline ExperimentResult simulate(const ExperimentConfig& cfg, std::vector<RunRecord>* partial = nullptr,
                                 const StrategyRegistry& registry = StrategyRegistry::with_builtins()) {
  const auto report = validate_config(cfg, registry);
  if (!report.ok()) {
    std::string msg = "invalid experiment config:";
    for (const auto& v : report.violations) msg += " [" + v + "]";
    throw ConfigError(msg);
  }

  const std::size_t n = cfg.iterations;
  std::vector<DropResult> drops(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
      try {
        drops[k] = run_drop(cfg, registry, k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t threads = std::min(cfg.parallelism, n);
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  ExperimentResult res;
  res.config = cfg;
  for (std::size_t k = 0; k < n; ++k) {
    if (errors[k]) {
      if (partial) *partial = std::move(res.records);
      try {
        std::rethrow_exception(errors[k]);
      } catch (const std::exception& e) {
        throw RunError("drop " + std::to_string(k) + " failed: " + e.what());
      }
    }
    for (auto& r : drops[k].records) res.records.push_back(std::move(r));
    if (cfg.dump_scenarios) res.gain_tables.push_back(std::move(drops[k].gains));
  }
  res.series = build_series(res.records);
  return res;
}

}  // namespace fdsched

#endif  // FDSCHED_HARNESS_HPP
