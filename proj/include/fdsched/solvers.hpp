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
 * \file fdsched/solvers.hpp
 *
 * \brief Scheduling strategies: exhaustive optimum (P-OPT), the
 *  Hungarian-based centralized heuristic (C-HUN), its interference-blind
 *  variant (C-NINT) and random pairing at full power (R-EPA).
 *
 * Every strategy returns the realized ScheduleOutcome computed with the true
 * gains, so outcomes are comparable across strategies on the same drop.
 */

#ifndef FDSCHED_SOLVERS_HPP
#define FDSCHED_SOLVERS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "assignment.hpp"
#include "model.hpp"
#include "radio.hpp"
#include "random.hpp"

namespace fdsched {

enum class StrategyId { POpt, CHun, CNInt, REpa };

inline std::string_view to_string(StrategyId s) {
  switch (s) {
    case StrategyId::POpt: return "P-OPT";
    case StrategyId::CHun: return "C-HUN";
    case StrategyId::CNInt: return "C-NINT";
    case StrategyId::REpa: return "R-EPA";
  }
  return "?";
}

inline StrategyId strategy_from_string(std::string_view s) {
  for (auto id : {StrategyId::POpt, StrategyId::CHun, StrategyId::CNInt, StrategyId::REpa})
    if (s == to_string(id)) return id;
  throw InvalidArgument("unknown strategy '" + std::string(s) + "'");
}

/// Largest I + J the exhaustive search accepts.
inline constexpr std::size_t kPOptMaxUsers = 10;

// C-HUN / C-NINT --------------------------------------------------------------

struct Plan {
  Pairing pairing;
  PowerAllocation powers;
  BenefitMatrix benefits;
  double planned_total = 0.0;
};

/// Builds s_ij for every (i, j) from the best corner, solves the assignment
/// with solo fallback, and applies the stored corner powers (max power for
/// users left alone).
inline Plan plan_hungarian(const GainTable& planning_gains, const ScenarioParams& p, const WeightVector& w) {
  const std::size_t ni = planning_gains.num_ul();
  const std::size_t nj = planning_gains.num_dl();
  Plan plan;
  plan.benefits.values = Matrix<double>(ni, nj);
  Matrix<PowerPair> corner(ni, nj);
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t j = 0; j < nj; ++j) {
      const auto e = evaluate_pair(i, j, planning_gains, p, w);
      plan.benefits.values(i, j) = e.benefit;
      corner(i, j) = e.best_powers;
    }
  }
  for (std::size_t i = 0; i < ni; ++i) plan.benefits.solo_ul.push_back(evaluate_solo_ul(i, planning_gains, p, w).contribution);
  for (std::size_t j = 0; j < nj; ++j) plan.benefits.solo_dl.push_back(evaluate_solo_dl(j, planning_gains, p, w).contribution);

  auto assigned = assign_with_solo(plan.benefits, p.num_channels);
  plan.pairing = std::move(assigned.pairing);
  plan.planned_total = assigned.total;
  plan.powers = PowerAllocation::full(p);
  for (std::size_t i = 0; i < ni; ++i) {
    if (const auto& j = plan.pairing.partner_of_ul(i)) {
      plan.powers.p_ul[i] = corner(i, *j).ul;
      plan.powers.p_dl[*j] = corner(i, *j).dl;
    }
  }
  return plan;
}

inline ScheduleOutcome solve_c_hun(const GainTable& gains, const ScenarioParams& p) {
  const auto w = make_weights(p.weight_mode, gains);
  const auto plan = plan_hungarian(gains, p, w);
  return outcome_metrics(plan.pairing, plan.powers, gains, p, w);
}

/// Copy of `gains` with every UE-to-UE gain set to zero.
inline GainTable without_cross_interference(const GainTable& gains) {
  GainTable g = gains;
  g.g_cross = Matrix<double>(gains.num_ul(), gains.num_dl(), 0.0);
  return g;
}

/// Plans as C-HUN does but blind to UE-to-UE interference; the outcome is
/// evaluated with the true gains.
inline ScheduleOutcome solve_c_nint(const GainTable& gains, const ScenarioParams& p) {
  const auto w = make_weights(p.weight_mode, gains);
  const auto plan = plan_hungarian(without_cross_interference(gains), p, w);
  return outcome_metrics(plan.pairing, plan.powers, gains, p, w);
}

// R-EPA -------------------------------------------------------------------------

/// Random pairing of min(I, J) users, everyone at max power.
inline ScheduleOutcome solve_r_epa(const GainTable& gains, const ScenarioParams& p, RandomStream& rng) {
  const std::size_t ni = gains.num_ul();
  const std::size_t nj = gains.num_dl();
  std::vector<std::size_t> ul(ni), dl(nj);
  std::iota(ul.begin(), ul.end(), std::size_t{0});
  std::iota(dl.begin(), dl.end(), std::size_t{0});
  std::shuffle(ul.begin(), ul.end(), rng.engine());
  std::shuffle(dl.begin(), dl.end(), rng.engine());
  Pairing pairing(ni, nj);
  for (std::size_t k = 0; k < std::min(ni, nj); ++k) pairing.pair(ul[k], dl[k]);
  const auto w = make_weights(p.weight_mode, gains);
  return outcome_metrics(pairing, PowerAllocation::full(p), gains, p, w);
}

// P-OPT -------------------------------------------------------------------------

struct POptOptions {
  /// When >= 2, the best corner solution is refined pair by pair over a
  /// grid of this many points per axis (others held fixed). 0 disables.
  std::size_t refine_grid_points = 0;
};

namespace detail {

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const GainTable& g, const ScenarioParams& p, const WeightVector& w)
      : g_(g), p_(p), w_(w), ni_(g.num_ul()), nj_(g.num_dl()), corners_(corner_points(p)),
        pair_se_(ni_ * nj_ * corners_.size()), solo_ul_(ni_), solo_dl_(nj_), se_ul_(ni_), se_dl_(nj_),
        partner_(ni_, kNone), corner_of_(ni_, 0), dl_used_(nj_, 0), best_partner_(ni_, kNone),
        best_corner_(ni_, 0) {
    for (std::size_t i = 0; i < ni_; ++i)
      for (std::size_t j = 0; j < nj_; ++j)
        for (std::size_t c = 0; c < corners_.size(); ++c) pair_se_[index(i, j, c)] = pair_spectral_efficiencies(i, j, corners_[c], g, p);
    for (std::size_t i = 0; i < ni_; ++i) solo_ul_[i] = evaluate_solo_ul(i, g, p, w).se;
    for (std::size_t j = 0; j < nj_; ++j) solo_dl_[j] = evaluate_solo_dl(j, g, p, w).se;
    const std::size_t total = ni_ + nj_;
    min_pairs_ = total > p.num_channels ? total - p.num_channels : 0;
  }

  void run() { recurse(0, 0); }

  Pairing best_pairing() const {
    Pairing pairing(ni_, nj_);
    for (std::size_t i = 0; i < ni_; ++i)
      if (best_partner_[i] != kNone) pairing.pair(i, best_partner_[i]);
    return pairing;
  }

  PowerAllocation best_powers() const {
    auto pw = PowerAllocation::full(p_);
    for (std::size_t i = 0; i < ni_; ++i) {
      if (best_partner_[i] == kNone) continue;
      pw.p_ul[i] = corners_[best_corner_[i]].ul;
      pw.p_dl[best_partner_[i]] = corners_[best_corner_[i]].dl;
    }
    return pw;
  }

  bool found() const { return found_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t index(std::size_t i, std::size_t j, std::size_t c) const { return (i * nj_ + j) * corners_.size() + c; }

  void recurse(std::size_t i, std::size_t pairs) {
    // Not enough UL users left to reach the channel budget.
    if (pairs + (ni_ - i) < min_pairs_) return;
    if (i == ni_) {
      leaf();
      return;
    }
    for (std::size_t j = 0; j < nj_; ++j) {
      if (dl_used_[j]) continue;
      dl_used_[j] = 1;
      partner_[i] = j;
      for (std::size_t c = 0; c < corners_.size(); ++c) {
        corner_of_[i] = c;
        const auto [cu, cd] = pair_se_[index(i, j, c)];
        se_ul_[i] = cu;
        se_dl_[j] = cd;
        recurse(i + 1, pairs + 1);
      }
      dl_used_[j] = 0;
    }
    partner_[i] = kNone;
    se_ul_[i] = solo_ul_[i];
    recurse(i + 1, pairs);
  }

  void leaf() {
    for (std::size_t j = 0; j < nj_; ++j)
      if (!dl_used_[j]) se_dl_[j] = solo_dl_[j];
    const double obj = scalarized_objective(se_ul_, se_dl_, w_, p_.mu);
    if (!found_ || obj > best_objective_) {
      found_ = true;
      best_objective_ = obj;
      best_partner_ = partner_;
      best_corner_ = corner_of_;
    }
  }

  const GainTable& g_;
  const ScenarioParams& p_;
  const WeightVector& w_;
  std::size_t ni_, nj_;
  std::array<PowerPair, 3> corners_;
  std::vector<std::pair<double, double>> pair_se_;
  std::vector<double> solo_ul_, solo_dl_;
  std::vector<double> se_ul_, se_dl_;
  std::vector<std::size_t> partner_, corner_of_;
  std::vector<char> dl_used_;
  std::size_t min_pairs_ = 0;
  bool found_ = false;
  double best_objective_ = 0.0;
  std::vector<std::size_t> best_partner_, best_corner_;
};

inline ScheduleOutcome refine_on_grid(ScheduleOutcome best, const GainTable& g, const ScenarioParams& p,
                                      const WeightVector& w, std::size_t points) {
  const auto step = [points](double hi, std::size_t k) { return hi * static_cast<double>(k) / static_cast<double>(points - 1); };
  for (std::size_t i = 0; i < g.num_ul(); ++i) {
    const auto& j = best.pairing.partner_of_ul(i);
    if (!j) continue;
    auto trial = best.powers;
    for (std::size_t a = 0; a < points; ++a) {
      for (std::size_t b = 0; b < points; ++b) {
        trial.p_ul[i] = step(p.p_max_ul_w, a);
        trial.p_dl[*j] = step(p.p_max_dl_w, b);
        auto o = outcome_metrics(best.pairing, trial, g, p, w);
        if (o.objective > best.objective) best = std::move(o);
      }
    }
  }
  return best;
}

}  // namespace detail

/// Exhaustive search over every partial matching that fits the channel
/// budget and every corner-point power choice per pair; solo users at max
/// power. Scores use the true objective (global min over all users).
inline ScheduleOutcome solve_p_opt(const GainTable& gains, const ScenarioParams& p, const POptOptions& opts = {}) {
  if (gains.num_ul() + gains.num_dl() > kPOptMaxUsers)
    throw InvalidArgument("solve_p_opt: I + J exceeds the exhaustive-search guard of 10");
  if (gains.num_ul() > p.num_channels || gains.num_dl() > p.num_channels)
    throw InvalidArgument("solve_p_opt: more users in one direction than channels");
  const auto w = make_weights(p.weight_mode, gains);
  detail::ExhaustiveSearch search(gains, p, w);
  search.run();
  auto best = outcome_metrics(search.best_pairing(), search.best_powers(), gains, p, w);
  if (opts.refine_grid_points >= 2) best = detail::refine_on_grid(std::move(best), gains, p, w, opts.refine_grid_points);
  return best;
}

// Dual multipliers -------------------------------------------------------------

/// Solution of  min c.lambda  s.t.  sum(lambda) = mu, lambda >= 0:
/// all mass mu on the (first) smallest entry of c.
inline std::vector<double> dual_multipliers(std::span<const double> c, double mu) {
  if (c.empty()) throw InvalidArgument("dual_multipliers: empty vector");
  std::vector<double> lambda(c.size(), 0.0);
  const auto it = std::min_element(c.begin(), c.end());
  lambda[static_cast<std::size_t>(it - c.begin())] = mu;
  return lambda;
}

// Registry ----------------------------------------------------------------------

/// A strategy maps a drop to an outcome. Strategies that need randomness
/// draw from the stream they are handed and nothing else.
using StrategyFn = std::function<ScheduleOutcome(const GainTable&, const ScenarioParams&, RandomStream&)>;

class StrategyRegistry {
 public:
  static StrategyRegistry with_builtins() {
    StrategyRegistry r;
    r.add(std::string(to_string(StrategyId::POpt)),
          [](const GainTable& g, const ScenarioParams& p, RandomStream&) { return solve_p_opt(g, p); });
    r.add(std::string(to_string(StrategyId::CHun)),
          [](const GainTable& g, const ScenarioParams& p, RandomStream&) { return solve_c_hun(g, p); });
    r.add(std::string(to_string(StrategyId::CNInt)),
          [](const GainTable& g, const ScenarioParams& p, RandomStream&) { return solve_c_nint(g, p); });
    r.add(std::string(to_string(StrategyId::REpa)),
          [](const GainTable& g, const ScenarioParams& p, RandomStream& rng) { return solve_r_epa(g, p, rng); });
    return r;
  }

  void add(std::string name, StrategyFn fn) { fns_[std::move(name)] = std::move(fn); }

  bool contains(std::string_view name) const { return fns_.find(std::string(name)) != fns_.end(); }

  const StrategyFn& at(std::string_view name) const {
    const auto it = fns_.find(std::string(name));
    if (it == fns_.end()) throw InvalidArgument("unknown strategy '" + std::string(name) + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : fns_) out.push_back(k);
    return out;
  }

 private:
  std::map<std::string, StrategyFn, std::less<>> fns_;
};

}  // namespace fdsched

#endif  // FDSCHED_SOLVERS_HPP
