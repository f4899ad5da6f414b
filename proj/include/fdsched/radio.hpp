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
 * \file fdsched/radio.hpp
 *
 * \brief SINR, spectral efficiency, user weights and the per-pair
 *  corner-point power choice.
 *
 * A UL user i sharing a channel with DL user j sees the residual BS self
 * interference beta * P_j^d; the DL user sees UE-to-UE interference
 * P_i^u * G_ij. Users alone on a channel see noise only.
 */

#ifndef FDSCHED_RADIO_HPP
#define FDSCHED_RADIO_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "metrics.hpp"
#include "model.hpp"

namespace fdsched {

inline double sinr_ul(double p_u, double g_ib, double p_d_paired, double beta, double noise) {
  return p_u * g_ib / (noise + p_d_paired * beta);
}

inline double sinr_dl(double p_d, double g_bj, double p_u_paired, double g_ij, double noise) {
  return p_d * g_bj / (noise + p_u_paired * g_ij);
}

inline double spectral_efficiency(double sinr) { return std::log2(1.0 + sinr); }

inline WeightVector make_weights(WeightMode mode, const GainTable& gains) {
  WeightVector w;
  if (mode == WeightMode::SumRate) {
    w.alpha_ul.assign(gains.num_ul(), 1.0);
    w.alpha_dl.assign(gains.num_dl(), 1.0);
    return w;
  }
  auto inverse = [](double g) {
    if (!(g > 0.0) || !std::isfinite(g)) throw InvalidArgument("path-loss weights need strictly positive gains");
    return 1.0 / g;
  };
  w.alpha_ul.reserve(gains.num_ul());
  w.alpha_dl.reserve(gains.num_dl());
  for (double g : gains.g_ul) w.alpha_ul.push_back(inverse(g));
  for (double g : gains.g_dl) w.alpha_dl.push_back(inverse(g));
  return w;
}

/// Benefit of a pair: (1-mu)(a_u C_u + a_d C_d) + mu min(C_u, C_d).
inline double pair_benefit(double se_ul, double se_dl, double alpha_ul, double alpha_dl, double mu) {
  return (1.0 - mu) * (alpha_ul * se_ul + alpha_dl * se_dl) + mu * std::min(se_ul, se_dl);
}

struct PowerPair {
  double ul = 0.0;
  double dl = 0.0;
  friend bool operator==(const PowerPair&, const PowerPair&) = default;
};

/// The three candidate corners, in tie-break priority order.
inline std::array<PowerPair, 3> corner_points(const ScenarioParams& p) {
  return {{{p.p_max_ul_w, p.p_max_dl_w}, {p.p_max_ul_w, 0.0}, {0.0, p.p_max_dl_w}}};
}

/// SEs of UL user i and DL user j sharing one channel at the given powers.
inline std::pair<double, double> pair_spectral_efficiencies(std::size_t i, std::size_t j, PowerPair pw,
                                                            const GainTable& g, const ScenarioParams& p) {
  const double cu = spectral_efficiency(sinr_ul(pw.ul, g.g_ul[i], pw.dl, p.si_cancellation, p.noise_power_w));
  const double cd = spectral_efficiency(sinr_dl(pw.dl, g.g_dl[j], pw.ul, g.g_cross(i, j), p.noise_power_w));
  return {cu, cd};
}

struct PairEvaluation {
  std::size_t ul_index = 0;
  std::size_t dl_index = 0;
  PowerPair best_powers;
  double se_ul = 0.0;
  double se_dl = 0.0;
  double benefit = 0.0;
};

inline PairEvaluation evaluate_pair(std::size_t i, std::size_t j, const GainTable& g, const ScenarioParams& p,
                                    const WeightVector& w) {
  PairEvaluation best{i, j, {}};
  bool first = true;
  for (const auto& corner : corner_points(p)) {
    const auto [cu, cd] = pair_spectral_efficiencies(i, j, corner, g, p);
    const double s = pair_benefit(cu, cd, w.alpha_ul[i], w.alpha_dl[j], p.mu);
    // strict improvement only, so earlier corners win ties
    if (first || s > best.benefit) {
      best.best_powers = corner;
      best.se_ul = cu;
      best.se_dl = cd;
      best.benefit = s;
      first = false;
    }
  }
  return best;
}

struct SoloEvaluation {
  double se = 0.0;
  double contribution = 0.0;  // (1-mu) * alpha * se
};

inline SoloEvaluation evaluate_solo_ul(std::size_t i, const GainTable& g, const ScenarioParams& p,
                                       const WeightVector& w) {
  const double se = spectral_efficiency(sinr_ul(p.p_max_ul_w, g.g_ul[i], 0.0, p.si_cancellation, p.noise_power_w));
  return {se, (1.0 - p.mu) * w.alpha_ul[i] * se};
}

inline SoloEvaluation evaluate_solo_dl(std::size_t j, const GainTable& g, const ScenarioParams& p,
                                       const WeightVector& w) {
  const double se = spectral_efficiency(sinr_dl(p.p_max_dl_w, g.g_dl[j], 0.0, 0.0, p.noise_power_w));
  return {se, (1.0 - p.mu) * w.alpha_dl[j] * se};
}

/// Realized per-user SEs and scalar metrics for a full pairing/power state.
inline ScheduleOutcome outcome_metrics(const Pairing& pairing, const PowerAllocation& powers, const GainTable& g,
                                       const ScenarioParams& p, const WeightVector& w) {
  const std::size_t ni = g.num_ul();
  const std::size_t nj = g.num_dl();
  if (pairing.num_ul() != ni || pairing.num_dl() != nj || powers.p_ul.size() != ni || powers.p_dl.size() != nj ||
      w.alpha_ul.size() != ni || w.alpha_dl.size() != nj || g.g_cross.rows() != ni || g.g_cross.cols() != nj)
    throw InvalidArgument("outcome_metrics: inconsistent pairing/power/gain dimensions");

  ScheduleOutcome out;
  out.pairing = pairing;
  out.powers = powers;
  out.se_ul.resize(ni);
  out.se_dl.resize(nj);
  for (std::size_t i = 0; i < ni; ++i) {
    const auto& j = pairing.partner_of_ul(i);
    const double p_d = j ? powers.p_dl[*j] : 0.0;
    out.se_ul[i] = spectral_efficiency(sinr_ul(powers.p_ul[i], g.g_ul[i], p_d, p.si_cancellation, p.noise_power_w));
  }
  for (std::size_t j = 0; j < nj; ++j) {
    const auto& i = pairing.partner_of_dl(j);
    const double p_u = i ? powers.p_ul[*i] : 0.0;
    const double g_ij = i ? g.g_cross(*i, j) : 0.0;
    out.se_dl[j] = spectral_efficiency(sinr_dl(powers.p_dl[j], g.g_dl[j], p_u, g_ij, p.noise_power_w));
  }
  out.objective = scalarized_objective(out.se_ul, out.se_dl, w, p.mu);
  const auto all = out.all_se();
  out.sum_se = 0.0;
  for (double c : all) out.sum_se += c;
  out.min_se = all.empty() ? 0.0 : *std::min_element(all.begin(), all.end());
  out.jain = all.empty() ? 1.0 : jain_index(all);
  return out;
}

}  // namespace fdsched

#endif  // FDSCHED_RADIO_HPP
