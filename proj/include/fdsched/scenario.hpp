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
 * \file fdsched/scenario.hpp
 *
 * \brief Random network drops for a single hexagonal urban-micro cell.
 *
 * The BS sits at the origin. UEs are dropped uniformly over the hexagon and
 * every link (UE->BS, BS->UE, UL UE->DL UE) gets a LOS state, a distance
 * based path loss and log-normal shadowing.
 */

#ifndef FDSCHED_SCENARIO_HPP
#define FDSCHED_SCENARIO_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "model.hpp"
#include "random.hpp"

namespace fdsched {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PropagationModel {
  double los_intercept_db = 34.96;
  double los_slope = 22.7;
  double nlos_intercept_db = 33.36;
  double nlos_slope = 38.35;
  double shadow_std_los_db = 3.0;
  double shadow_std_nlos_db = 4.0;
  double min_distance_m = 1.0;

  double path_loss_db(double d, bool los) const {
    const double dd = std::max(d, min_distance_m);
    return los ? los_intercept_db + los_slope * std::log10(dd)
               : nlos_intercept_db + nlos_slope * std::log10(dd);
  }

  double shadow_std_db(bool los) const { return los ? shadow_std_los_db : shadow_std_nlos_db; }
};

/// Urban-micro LOS probability: min(18/d, 1) (1 - e^{-d/36}) + e^{-d/36}.
inline double los_probability(double d) {
  const double e = std::exp(-d / 36.0);
  return std::min(18.0 / d, 1.0) * (1.0 - e) + e;
}

/// Linear gain 10^{-(PL(d) + shadow)/10}; distances below 1 m are clamped.
inline double link_gain(const PropagationModel& model, double d, bool los, double shadow_db) {
  return std::pow(10.0, -(model.path_loss_db(d, los) + shadow_db) / 10.0);
}

/// True when (x, y) lies in the flat-topped hexagon of the given circumradius.
inline bool inside_hexagon(double x, double y, double radius) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  const double s3 = std::sqrt(3.0);
  return ay <= 0.5 * s3 * radius && s3 * ax + ay <= s3 * radius;
}

inline constexpr std::size_t kMaxDropAttempts = 100000;

/// Drops one UE uniformly over the hexagon, at least `min_bs_ue_distance_m` from the BS.
inline Point drop_user(const ScenarioParams& p, RandomStream& rng) {
  const double half_h = 0.5 * std::sqrt(3.0) * p.cell_radius_m;
  for (std::size_t attempt = 0; attempt < kMaxDropAttempts; ++attempt) {
    const double x = rng.uniform(-p.cell_radius_m, p.cell_radius_m);
    const double y = rng.uniform(-half_h, half_h);
    if (!inside_hexagon(x, y, p.cell_radius_m)) continue;
    if (std::hypot(x, y) < p.min_bs_ue_distance_m) continue;
    return {x, y};
  }
  throw ScenarioError("drop_users: rejection sampling did not converge; check radius and minimum distance");
}

struct UserPositions {
  std::vector<Point> ul;
  std::vector<Point> dl;
};

inline UserPositions drop_users(const ScenarioParams& p, RandomStream& rng) {
  UserPositions pos;
  pos.ul.reserve(p.num_ul);
  pos.dl.reserve(p.num_dl);
  for (std::size_t i = 0; i < p.num_ul; ++i) pos.ul.push_back(drop_user(p, rng));
  for (std::size_t j = 0; j < p.num_dl; ++j) pos.dl.push_back(drop_user(p, rng));
  return pos;
}

namespace detail {

inline bool draw_los(LosRule rule, double d, RandomStream& rng) {
  switch (rule) {
    case LosRule::ForceLos: return true;
    case LosRule::ForceNlos: return false;
    case LosRule::UrbanMicro: break;
  }
  return rng.uniform01() < los_probability(std::max(d, 1.0));
}

inline double draw_link(const PropagationModel& model, const PropagationOptions& opts, LosRule rule, double d,
                        RandomStream& rng) {
  const bool los = draw_los(rule, d, rng);
  const double shadow = opts.shadowing ? rng.normal(0.0, model.shadow_std_db(los)) : 0.0;
  return link_gain(model, d, los, shadow);
}

inline LosRule cross_rule(const PropagationOptions& opts) {
  switch (opts.cross_link_rule) {
    case CrossLinkRule::ForceLos: return LosRule::ForceLos;
    case CrossLinkRule::ForceNlos: return LosRule::ForceNlos;
    case CrossLinkRule::SameAsDirect: break;
  }
  return opts.los_rule;
}

}  // namespace detail

/// Gains for already placed users. Draw order is UL links, DL links, then
/// the cross matrix row by row.
inline GainTable gain_table_for(const ScenarioParams& p, const UserPositions& pos, RandomStream& rng,
                                const PropagationModel& model = {}) {
  const auto& opts = p.propagation;
  GainTable g;
  g.bs = {0.0, 0.0};
  g.ul_positions = pos.ul;
  g.dl_positions = pos.dl;
  g.g_ul.reserve(pos.ul.size());
  g.g_dl.reserve(pos.dl.size());
  for (const auto& u : pos.ul)
    g.g_ul.push_back(detail::draw_link(model, opts, opts.los_rule, distance(u, g.bs), rng));
  for (const auto& d : pos.dl)
    g.g_dl.push_back(detail::draw_link(model, opts, opts.los_rule, distance(g.bs, d), rng));
  const LosRule cross = detail::cross_rule(opts);
  g.g_cross = Matrix<double>(pos.ul.size(), pos.dl.size());
  for (std::size_t i = 0; i < pos.ul.size(); ++i)
    for (std::size_t j = 0; j < pos.dl.size(); ++j)
      g.g_cross(i, j) = detail::draw_link(model, opts, cross, distance(pos.ul[i], pos.dl[j]), rng);
  return g;
}

inline GainTable build_gain_table(const ScenarioParams& p, RandomStream& rng,
                                  const PropagationModel& model = {}) {
  const auto pos = drop_users(p, rng);
  return gain_table_for(p, pos, rng, model);
}

}  // namespace fdsched

#endif  // FDSCHED_SCENARIO_HPP
