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
 * \file fdsched/io.hpp
 *
 * \brief JSON configuration, scenario dump/load and result files.
 *
 * Configuration uses the units of the published parameter table (dBm, dB,
 * m, GHz); values are converted to linear units on load.
 */

#ifndef FDSCHED_IO_HPP
#define FDSCHED_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "harness.hpp"
#include "model.hpp"

namespace fdsched {

using nlohmann::json;

// Scenario dump ---------------------------------------------------------------

inline json gain_table_to_json(const GainTable& g) {
  auto pts = [](const std::vector<Point>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back({p.x, p.y});
    return a;
  };
  json cross = json::array();
  for (std::size_t i = 0; i < g.g_cross.rows(); ++i) {
    const auto row = g.g_cross.row(i);
    cross.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return json{{"bs", {g.bs.x, g.bs.y}},
              {"ul_positions", pts(g.ul_positions)},
              {"dl_positions", pts(g.dl_positions)},
              {"g_ul", g.g_ul},
              {"g_dl", g.g_dl},
              {"g_cross", cross}};
}

inline GainTable gain_table_from_json(const json& j) {
  try {
    GainTable g;
    auto pt = [](const json& a) { return Point{a.at(0).get<double>(), a.at(1).get<double>()}; };
    g.bs = pt(j.at("bs"));
    for (const auto& a : j.at("ul_positions")) g.ul_positions.push_back(pt(a));
    for (const auto& a : j.at("dl_positions")) g.dl_positions.push_back(pt(a));
    g.g_ul = j.at("g_ul").get<std::vector<double>>();
    g.g_dl = j.at("g_dl").get<std::vector<double>>();
    const auto& cross = j.at("g_cross");
    g.g_cross = Matrix<double>(g.g_ul.size(), g.g_dl.size());
    if (cross.size() != g.g_ul.size()) throw InvalidArgument("g_cross must have I rows");
    for (std::size_t i = 0; i < cross.size(); ++i) {
      if (cross[i].size() != g.g_dl.size()) throw InvalidArgument("g_cross rows must have J entries");
      for (std::size_t k = 0; k < cross[i].size(); ++k) g.g_cross(i, k) = cross[i][k].get<double>();
    }
    check_gains(g);
    return g;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("scenario json: ") + e.what());
  }
}

// Configuration --------------------------------------------------------------------

namespace detail {

inline void reject_unknown_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

inline LosRule los_rule_from_string(const std::string& s) {
  if (s == "umi") return LosRule::UrbanMicro;
  if (s == "los") return LosRule::ForceLos;
  if (s == "nlos") return LosRule::ForceNlos;
  throw ConfigError("los_rule must be umi, los or nlos");
}

inline CrossLinkRule cross_rule_from_string(const std::string& s) {
  if (s == "same") return CrossLinkRule::SameAsDirect;
  if (s == "los") return CrossLinkRule::ForceLos;
  if (s == "nlos") return CrossLinkRule::ForceNlos;
  throw ConfigError("cross_link_rule must be same, los or nlos");
}

inline void scenario_from_json(const json& j, ScenarioParams& p) {
  reject_unknown_keys(j,
                      {"cell_radius_m", "num_ul", "num_dl", "num_channels", "carrier_ghz", "noise_dbm",
                       "si_cancellation_db", "p_max_ul_dbm", "p_max_dl_dbm", "min_bs_ue_distance_m", "los_rule",
                       "cross_link_rule", "shadowing"},
                      "scenario");
  p.cell_radius_m = j.value("cell_radius_m", p.cell_radius_m);
  p.num_ul = j.value("num_ul", p.num_ul);
  p.num_dl = j.value("num_dl", p.num_dl);
  p.num_channels = j.value("num_channels", p.num_channels);
  if (j.contains("carrier_ghz")) p.carrier_hz = j.at("carrier_ghz").get<double>() * 1e9;
  if (j.contains("noise_dbm")) p.noise_power_w = dbm_to_watts(j.at("noise_dbm").get<double>());
  if (j.contains("si_cancellation_db")) p.si_cancellation = db_to_linear(j.at("si_cancellation_db").get<double>());
  if (j.contains("p_max_ul_dbm")) p.p_max_ul_w = dbm_to_watts(j.at("p_max_ul_dbm").get<double>());
  if (j.contains("p_max_dl_dbm")) p.p_max_dl_w = dbm_to_watts(j.at("p_max_dl_dbm").get<double>());
  p.min_bs_ue_distance_m = j.value("min_bs_ue_distance_m", p.min_bs_ue_distance_m);
  if (j.contains("los_rule")) p.propagation.los_rule = los_rule_from_string(j.at("los_rule").get<std::string>());
  if (j.contains("cross_link_rule"))
    p.propagation.cross_link_rule = cross_rule_from_string(j.at("cross_link_rule").get<std::string>());
  p.propagation.shadowing = j.value("shadowing", p.propagation.shadowing);
}

}  // namespace detail

/// Parses an experiment document. A "canned" key starts from that setup and
/// lets the remaining keys override it.
inline ExperimentConfig config_from_json(const json& j) {
  try {
    detail::reject_unknown_keys(j,
                                {"name", "canned", "scenario", "strategies", "mu", "weight_modes", "iterations",
                                 "seed", "parallelism", "output_dir", "dump_scenarios"},
                                "config");
    ExperimentConfig cfg;
    if (j.contains("canned")) cfg = canned_experiment(j.at("canned").get<std::string>());
    cfg.name = j.value("name", cfg.name);
    if (j.contains("scenario")) detail::scenario_from_json(j.at("scenario"), cfg.params);
    if (j.contains("strategies")) cfg.strategies = j.at("strategies").get<std::vector<std::string>>();
    if (j.contains("mu")) cfg.mus = j.at("mu").get<std::vector<double>>();
    if (j.contains("weight_modes")) {
      cfg.weight_modes.clear();
      for (const auto& s : j.at("weight_modes")) cfg.weight_modes.push_back(weight_mode_from_string(s.get<std::string>()));
    }
    cfg.iterations = j.value("iterations", cfg.iterations);
    cfg.params.rng_seed = j.value("seed", cfg.params.rng_seed);
    cfg.parallelism = j.value("parallelism", cfg.parallelism);
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    cfg.dump_scenarios = j.value("dump_scenarios", cfg.dump_scenarios);
    if (!cfg.mus.empty()) cfg.params.mu = cfg.mus.front();
    if (!cfg.weight_modes.empty()) cfg.params.weight_mode = cfg.weight_modes.front();
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + file.string() + ": " + e.what());
  }
  return config_from_json(j);
}

// Results ----------------------------------------------------------------------------

inline std::string series_file_name(const CdfSeries& s) {
  char mu[32];
  std::snprintf(mu, sizeof mu, "%g", s.mu);
  return "cdf_" + s.metric + "_" + s.strategy + "_mu" + mu + "_" + s.weight_mode + ".csv";
}

inline json summary_json(const ExperimentResult& res) {
  const auto& cfg = res.config;
  json out;
  out["name"] = cfg.name;
  out["iterations"] = cfg.iterations;
  out["seed"] = cfg.params.rng_seed;
  out["num_ul"] = cfg.params.num_ul;
  out["num_dl"] = cfg.params.num_dl;
  out["num_channels"] = cfg.params.num_channels;
  json series = json::array();
  for (const auto& [key, s] : res.series)
    series.push_back({{"metric", s.metric},
                      {"strategy", s.strategy},
                      {"mu", s.mu},
                      {"weight_mode", s.weight_mode},
                      {"median", median(s)},
                      {"p10", percentile(s, 10)},
                      {"p90", percentile(s, 90)},
                      {"min", s.values.front()},
                      {"max", s.values.back()}});
  out["series"] = series;
  json gaps = json::array();
  for (WeightMode wm : cfg.weight_modes)
    for (double mu : cfg.mus)
      for (auto metric : kMetricNames)
        for (const auto& a : cfg.strategies)
          for (const auto& b : cfg.strategies) {
            if (a == b) continue;
            json g{{"metric", metric}, {"mu", mu}, {"weight_mode", to_string(wm)}, {"a", a}, {"b", b}};
            try {
              g["median_gap"] = median_gap(res.cdf(metric, a, mu, wm), res.cdf(metric, b, mu, wm));
            } catch (const std::domain_error&) {
              g["median_gap"] = nullptr;
            }
            gaps.push_back(std::move(g));
          }
  out["gaps"] = gaps;
  return out;
}

inline void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << "drop,strategy,mu,weight_mode,master_seed,gain_hash,objective,sum_se,min_se,jain,se\n";
  for (const auto& r : records) {
    os << r.drop << ',' << r.strategy << ',' << format_double(r.mu) << ',' << to_string(r.weight_mode) << ','
       << r.master_seed << ',' << r.gain_hash << ',' << format_double(r.objective) << ',' << format_double(r.sum_se)
       << ',' << format_double(r.min_se) << ',' << format_double(r.jain) << ',';
    for (std::size_t k = 0; k < r.se.size(); ++k) os << (k ? ";" : "") << format_double(r.se[k]);
    os << '\n';
  }
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw RunError("cannot write " + file.string());
  return os;
}

}  // namespace detail

/// Writes runs.csv, one CDF csv per series, summary.json, the timing
/// sidecar and (optionally) one scenario JSON per drop.
inline void write_results(const ExperimentResult& res, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto os = detail::open_out(dir / "runs.csv");
    write_records_csv(os, res.records);
  }
  for (const auto& [key, s] : res.series) {
    auto os = detail::open_out(dir / series_file_name(s));
    write_csv(os, s);
  }
  {
    auto os = detail::open_out(dir / "summary.json");
    os << summary_json(res).dump(2) << '\n';
  }
  {
    auto os = detail::open_out(dir / "timing.log");
    double total = 0.0;
    for (const auto& r : res.records) {
      os << r.drop << ' ' << r.strategy << ' ' << r.mu << ' ' << to_string(r.weight_mode) << ' ' << r.wall_seconds << '\n';
      total += r.wall_seconds;
    }
    os << "# total strategy seconds " << total << '\n';
  }
  if (!res.gain_tables.empty()) {
    std::filesystem::create_directories(dir / "scenarios");
    for (std::size_t k = 0; k < res.gain_tables.size(); ++k) {
      auto os = detail::open_out(dir / "scenarios" / ("drop_" + std::to_string(k) + ".json"));
      os << gain_table_to_json(res.gain_tables[k]).dump() << '\n';
    }
  }
}

/// Flushes whatever was computed before a failure plus a FAILED marker.
inline void write_failure(const std::vector<RunRecord>& partial, const std::filesystem::path& dir,
                          const std::string& reason) {
  std::filesystem::create_directories(dir);
  {
    auto os = detail::open_out(dir / "runs.partial.csv");
    write_records_csv(os, partial);
  }
  auto os = detail::open_out(dir / "FAILED");
  os << reason << '\n';
}

/// simulate() + write_results(), or write_failure() and rethrow.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  std::vector<RunRecord> partial;
  try {
    auto res = simulate(cfg, &partial);
    write_results(res, cfg.output_dir);
    return res;
  } catch (const RunError& e) {
    write_failure(partial, cfg.output_dir, e.what());
    throw;
  }
}

}  // namespace fdsched

#endif  // FDSCHED_IO_HPP
