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
 * \file fdsched/model.hpp
 *
 * \brief Shared domain types for three-node full-duplex scheduling.
 *
 * Everything in here is expressed in linear units (watts, linear path
 * gains).  Conversion from dB/dBm happens only at configuration and report
 * boundaries.
 */

#ifndef FDSCHED_MODEL_HPP
#define FDSCHED_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdsched {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unit conversions ---------------------------------------------------------

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Scenario parameters ------------------------------------------------------

enum class WeightMode { SumRate, PathLossCompensation };

inline std::string_view to_string(WeightMode m) {
  return m == WeightMode::SumRate ? "SR" : "PL";
}

inline WeightMode weight_mode_from_string(std::string_view s) {
  if (s == "SR" || s == "sum_rate" || s == "SumRate") return WeightMode::SumRate;
  if (s == "PL" || s == "path_loss" || s == "PathLossCompensation")
    return WeightMode::PathLossCompensation;
  throw InvalidArgument("unknown weight mode '" + std::string(s) + "'");
}

/// How the LOS/NLOS state of a link is chosen.
enum class LosRule { UrbanMicro, ForceLos, ForceNlos };

/// Which propagation rule applies to UE-to-UE (cross) links.
enum class CrossLinkRule { SameAsDirect, ForceLos, ForceNlos };

struct PropagationOptions {
  LosRule los_rule = LosRule::UrbanMicro;
  CrossLinkRule cross_link_rule = CrossLinkRule::SameAsDirect;
  bool shadowing = true;
};

struct ScenarioParams {
  double cell_radius_m = 100.0;
  std::size_t num_ul = 4;
  std::size_t num_dl = 4;
  std::size_t num_channels = 4;
  double carrier_hz = 2.5e9;
  double noise_power_w = dbm_to_watts(-116.4);
  double si_cancellation = db_to_linear(-100.0);  // beta
  double p_max_ul_w = dbm_to_watts(24.0);
  double p_max_dl_w = dbm_to_watts(24.0);
  double mu = 0.5;
  WeightMode weight_mode = WeightMode::SumRate;
  double min_bs_ue_distance_m = 3.0;
  std::uint64_t rng_seed = 1;
  PropagationOptions propagation{};
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

inline ValidationReport validate_params(const ScenarioParams& p) {
  ValidationReport r;
  auto require = [&r](bool cond, const char* what) {
    if (!cond) r.violations.emplace_back(what);
  };
  require(p.num_ul <= p.num_channels, "I <= F");
  require(p.num_dl <= p.num_channels, "J <= F");
  require(p.num_channels >= 1, "F >= 1");
  require(p.mu >= 0.0 && p.mu <= 1.0, "mu in [0,1]");
  require(std::isfinite(p.cell_radius_m) && p.cell_radius_m > 0.0, "cell radius > 0");
  require(std::isfinite(p.noise_power_w) && p.noise_power_w > 0.0, "noise power > 0");
  require(std::isfinite(p.p_max_ul_w) && p.p_max_ul_w > 0.0, "UL max power > 0");
  require(std::isfinite(p.p_max_dl_w) && p.p_max_dl_w > 0.0, "DL max power > 0");
  require(p.si_cancellation > 0.0 && p.si_cancellation <= 1.0, "beta in (0,1]");
  require(std::isfinite(p.carrier_hz) && p.carrier_hz > 0.0, "carrier frequency > 0");
  require(p.min_bs_ue_distance_m >= 0.0 && p.min_bs_ue_distance_m < p.cell_radius_m,
          "min BS-UE distance in [0, radius)");
  return r;
}

// Gains ---------------------------------------------------------------------

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Row-major dense matrix; just enough for I x J gain and benefit tables.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T init = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, init) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const T> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

struct GainTable {
  std::vector<double> g_ul;   // UL UE i -> BS
  std::vector<double> g_dl;   // BS -> DL UE j
  Matrix<double> g_cross;     // UL UE i -> DL UE j
  Point bs{};
  std::vector<Point> ul_positions;
  std::vector<Point> dl_positions;

  std::size_t num_ul() const { return g_ul.size(); }
  std::size_t num_dl() const { return g_dl.size(); }

  friend bool operator==(const GainTable& a, const GainTable& b) {
    auto same_pts = [](const std::vector<Point>& u, const std::vector<Point>& v) {
      return std::equal(u.begin(), u.end(), v.begin(), v.end(),
                        [](Point p, Point q) { return p.x == q.x && p.y == q.y; });
    };
    return a.g_ul == b.g_ul && a.g_dl == b.g_dl && a.g_cross == b.g_cross &&
           a.bs.x == b.bs.x && a.bs.y == b.bs.y && same_pts(a.ul_positions, b.ul_positions) &&
           same_pts(a.dl_positions, b.dl_positions);
  }
};

/// Checks dimensions and that every gain is finite. With `strictly_positive`
/// zero gains are rejected too (the generator never produces them, but hand
/// built tables in tests do).
inline void check_gains(const GainTable& g, bool strictly_positive = false) {
  if (g.g_cross.rows() != g.num_ul() || g.g_cross.cols() != g.num_dl())
    throw InvalidArgument("gain table: cross matrix must be I x J");
  auto bad = [strictly_positive](double v) {
    return !std::isfinite(v) || v < 0.0 || (strictly_positive && v <= 0.0);
  };
  if (std::any_of(g.g_ul.begin(), g.g_ul.end(), bad) ||
      std::any_of(g.g_dl.begin(), g.g_dl.end(), bad) ||
      std::any_of(g.g_cross.data().begin(), g.g_cross.data().end(), bad))
    throw InvalidArgument("gain table: gains must be finite and non-negative");
}

// Pairing -------------------------------------------------------------------

/// Partial matching between UL and DL users. Each user has at most one
/// partner; an unpaired user is alone on its channel.
class Pairing {
 public:
  Pairing() = default;
  Pairing(std::size_t num_ul, std::size_t num_dl)
      : ul_(num_ul, std::nullopt), dl_(num_dl, std::nullopt) {}

  /// Builds from the UL-side view; throws if a DL index repeats or is out of range.
  static Pairing from_ul_partners(std::span<const std::optional<std::size_t>> partner_of_ul,
                                  std::size_t num_dl) {
    Pairing p(partner_of_ul.size(), num_dl);
    for (std::size_t i = 0; i < partner_of_ul.size(); ++i)
      if (partner_of_ul[i]) p.pair(i, *partner_of_ul[i]);
    return p;
  }

  void pair(std::size_t ul, std::size_t dl) {
    if (ul >= ul_.size() || dl >= dl_.size()) throw InvalidArgument("pairing: index out of range");
    if (ul_[ul] || dl_[dl]) throw InvalidArgument("pairing: user already paired");
    ul_[ul] = dl;
    dl_[dl] = ul;
  }

  std::size_t num_ul() const { return ul_.size(); }
  std::size_t num_dl() const { return dl_.size(); }
  const std::optional<std::size_t>& partner_of_ul(std::size_t i) const { return ul_.at(i); }
  const std::optional<std::size_t>& partner_of_dl(std::size_t j) const { return dl_.at(j); }
  std::span<const std::optional<std::size_t>> ul_view() const { return ul_; }
  std::span<const std::optional<std::size_t>> dl_view() const { return dl_; }

  std::size_t num_pairs() const {
    return static_cast<std::size_t>(std::count_if(ul_.begin(), ul_.end(),
                                                  [](const auto& o) { return o.has_value(); }));
  }

  /// Frequency channels occupied: one per pair plus one per solo user.
  std::size_t channels_used() const { return ul_.size() + dl_.size() - num_pairs(); }

  Matrix<int> to_matrix() const {
    Matrix<int> x(ul_.size(), dl_.size(), 0);
    for (std::size_t i = 0; i < ul_.size(); ++i)
      if (ul_[i]) x(i, *ul_[i]) = 1;
    return x;
  }

  friend bool operator==(const Pairing&, const Pairing&) = default;

 private:
  std::vector<std::optional<std::size_t>> ul_;
  std::vector<std::optional<std::size_t>> dl_;
};

struct PowerAllocation {
  std::vector<double> p_ul;
  std::vector<double> p_dl;

  static PowerAllocation full(const ScenarioParams& p) {
    return {std::vector<double>(p.num_ul, p.p_max_ul_w), std::vector<double>(p.num_dl, p.p_max_dl_w)};
  }

  bool within_limits(const ScenarioParams& p) const {
    auto in = [](double v, double hi) { return v >= 0.0 && v <= hi; };
    return std::all_of(p_ul.begin(), p_ul.end(), [&](double v) { return in(v, p.p_max_ul_w); }) &&
           std::all_of(p_dl.begin(), p_dl.end(), [&](double v) { return in(v, p.p_max_dl_w); });
  }

  friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;
};

struct WeightVector {
  std::vector<double> alpha_ul;
  std::vector<double> alpha_dl;
};

struct ScheduleOutcome {
  Pairing pairing;
  PowerAllocation powers;
  std::vector<double> se_ul;
  std::vector<double> se_dl;
  double objective = 0.0;
  double sum_se = 0.0;
  double min_se = 0.0;
  double jain = 0.0;

  /// UL then DL spectral efficiencies.
  std::vector<double> all_se() const {
    std::vector<double> c(se_ul);
    c.insert(c.end(), se_dl.begin(), se_dl.end());
    return c;
  }
};

/// Scalarized objective: (1-mu) * sum(alpha * C) + mu * min(C) over all users.
inline double scalarized_objective(std::span<const double> se_ul, std::span<const double> se_dl,
                                   const WeightVector& w, double mu) {
  double weighted = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < se_ul.size(); ++i) {
    weighted += w.alpha_ul[i] * se_ul[i];
    lo = std::min(lo, se_ul[i]);
  }
  for (std::size_t j = 0; j < se_dl.size(); ++j) {
    weighted += w.alpha_dl[j] * se_dl[j];
    lo = std::min(lo, se_dl[j]);
  }
  if (!std::isfinite(lo)) lo = 0.0;
  return (1.0 - mu) * weighted + mu * lo;
}

}  // namespace fdsched

#endif  // FDSCHED_MODEL_HPP
