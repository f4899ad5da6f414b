#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fdsched/radio.hpp"
#include "test_support.hpp"

namespace fdsched {
namespace {

using testing::params_for;
using testing::random_gains;

TEST(Sinr, UplinkUnpairedIsSnr) {
  EXPECT_DOUBLE_EQ(sinr_ul(0.5, 1e-9, 0.0, 1e-10, 1e-14), 0.5 * 1e-9 / 1e-14);
}

TEST(Sinr, UplinkWithSelfInterference) {
  // 24 dBm on both ends, -80 dB path gain, -100 dB cancellation, -116.4 dBm noise.
  const double p = dbm_to_watts(24.0);
  const double s = sinr_ul(p, 1e-8, p, 1e-10, dbm_to_watts(-116.4));
  EXPECT_NEAR(s, 99.990880723, 1e-6);
  EXPECT_NEAR(linear_to_db(s), 19.9996, 1e-4);
}

TEST(Sinr, UplinkDecreasesWithBeta) {
  const double a = sinr_ul(0.2, 1e-8, 0.2, 1e-10, 1e-15);
  const double b = sinr_ul(0.2, 1e-8, 0.2, 2e-10, 1e-15);
  EXPECT_LT(b, a);
}

TEST(Sinr, DownlinkCases) {
  EXPECT_DOUBLE_EQ(sinr_dl(0.3, 1e-9, 0.0, 1e-7, 1e-14), 0.3 * 1e-9 / 1e-14);
  EXPECT_DOUBLE_EQ(sinr_dl(0.3, 1e-9, 0.2, 0.0, 1e-14), sinr_dl(0.3, 1e-9, 0.0, 0.0, 1e-14));
  EXPECT_EQ(sinr_dl(0.0, 1e-9, 0.2, 1e-9, 1e-14), 0.0);
}

TEST(Sinr, MonotoneInOwnAndInterferingPower) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double p = u(rng), q = u(rng), g = 1e-9 * u(rng), gi = 1e-10 * u(rng);
    EXPECT_LT(sinr_ul(p, g, q, 1e-10, 1e-15), sinr_ul(1.5 * p, g, q, 1e-10, 1e-15));
    EXPECT_GT(sinr_ul(p, g, q, 1e-10, 1e-15), sinr_ul(p, g, 1.5 * q, 1e-10, 1e-15));
    EXPECT_LT(sinr_dl(p, g, q, gi, 1e-15), sinr_dl(1.5 * p, g, q, gi, 1e-15));
    EXPECT_GT(sinr_dl(p, g, q, gi, 1e-15), sinr_dl(p, g, 1.5 * q, gi, 1e-15));
  }
}

TEST(SpectralEfficiency, Shannon) {
  EXPECT_EQ(spectral_efficiency(0.0), 0.0);
  EXPECT_DOUBLE_EQ(spectral_efficiency(1.0), 1.0);
  EXPECT_NEAR(spectral_efficiency(99.1), 6.646, 1e-3);
}

TEST(Weights, SumRateAndPathLoss) {
  GainTable g;
  g.g_ul = {1e-8, 1e-10};
  g.g_dl = {1e-9};
  g.g_cross = Matrix<double>(2, 1, 1e-12);
  const auto sr = make_weights(WeightMode::SumRate, g);
  EXPECT_EQ(sr.alpha_ul, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(sr.alpha_dl, (std::vector<double>{1.0}));
  const auto pl = make_weights(WeightMode::PathLossCompensation, g);
  EXPECT_DOUBLE_EQ(pl.alpha_ul[0], 1e8);
  EXPECT_DOUBLE_EQ(pl.alpha_ul[1], 1e10);
  EXPECT_DOUBLE_EQ(pl.alpha_dl[0], 1e9);
  g.g_dl[0] = 0.0;
  EXPECT_THROW(make_weights(WeightMode::PathLossCompensation, g), InvalidArgument);
}

GainTable single_pair(double g_ib, double g_bj, double g_ij) {
  GainTable g;
  g.g_ul = {g_ib};
  g.g_dl = {g_bj};
  g.g_cross = Matrix<double>(1, 1, g_ij);
  return g;
}

TEST(EvaluatePair, InterferenceFreePrefersBothOn) {
  auto p = params_for(1, 1, 1, 0.0);
  p.si_cancellation = 1e-300;  // effectively zero, still passes validation
  const auto g = single_pair(1e-9, 1e-9, 0.0);
  for (double mu : {0.0, 1.0}) {
    p.mu = mu;
    const auto w = make_weights(WeightMode::SumRate, g);
    const auto e = evaluate_pair(0, 0, g, p, w);
    EXPECT_EQ(e.best_powers, (PowerPair{p.p_max_ul_w, p.p_max_dl_w}));
    EXPECT_GT(e.benefit, 0.0);
  }
}

TEST(EvaluatePair, HugeCrossGainWithMuOne) {
  auto p = params_for(1, 1, 1, 1.0);
  const auto g = single_pair(1e-9, 1e-11, 1.0);
  const auto w = make_weights(WeightMode::SumRate, g);
  // Each corner by hand: the off corners give min = 0; both-on gives a DL SE of ~1e-10.
  const auto [cu, cd] = pair_spectral_efficiencies(0, 0, {p.p_max_ul_w, p.p_max_dl_w}, g, p);
  EXPECT_LT(cd, 1e-9);
  EXPECT_GT(cu, 0.0);
  const auto e = evaluate_pair(0, 0, g, p, w);
  EXPECT_NEAR(e.benefit, 0.0, 1e-9);
  EXPECT_EQ(e.best_powers, (PowerPair{p.p_max_ul_w, p.p_max_dl_w}));
}

TEST(EvaluatePair, TieBreakPrefersUplinkOnlyOverDownlinkOnly) {
  // Symmetric gains make (Pu,0) and (0,Pd) tie exactly; both-on drowns in interference.
  auto p = params_for(1, 1, 1, 0.0);
  p.si_cancellation = 1.0;
  const auto g = single_pair(1e-9, 1e-9, 1.0);
  const auto w = make_weights(WeightMode::SumRate, g);
  const auto e = evaluate_pair(0, 0, g, p, w);
  EXPECT_EQ(e.best_powers, (PowerPair{p.p_max_ul_w, 0.0}));
}

TEST(EvaluatePair, BenefitIsMaxOverThreeCorners) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 300; ++k) {
    const auto g = random_gains(1, 1, rng);
    auto p = params_for(1, 1, 1, static_cast<double>(k % 11) / 10.0, k % 2 ? WeightMode::SumRate : WeightMode::PathLossCompensation);
    const auto w = make_weights(p.weight_mode, g);
    const auto e = evaluate_pair(0, 0, g, p, w);
    double best = -1.0;
    for (auto [pu, pd] : {std::pair{p.p_max_ul_w, p.p_max_dl_w}, std::pair{p.p_max_ul_w, 0.0}, std::pair{0.0, p.p_max_dl_w}}) {
      const auto d = testing::direct_se(g, p, {0}, {pu}, {pd});
      best = std::max(best, (1 - p.mu) * (w.alpha_ul[0] * d.cu[0] + w.alpha_dl[0] * d.cd[0]) + p.mu * std::min(d.cu[0], d.cd[0]));
    }
    EXPECT_NEAR(e.benefit, best, 1e-12 * std::max(1.0, std::abs(best)));
  }
}

TEST(Solo, FullPowerNoInterference) {
  auto p = params_for(1, 1, 2, 0.3);
  const auto g = single_pair(1e-10, 2e-10, 1e-3);
  const auto w = make_weights(WeightMode::SumRate, g);
  const auto u = evaluate_solo_ul(0, g, p, w);
  EXPECT_DOUBLE_EQ(u.se, std::log2(1 + p.p_max_ul_w * 1e-10 / p.noise_power_w));
  EXPECT_DOUBLE_EQ(u.contribution, 0.7 * u.se);
  const auto d = evaluate_solo_dl(0, g, p, w);
  EXPECT_DOUBLE_EQ(d.se, std::log2(1 + p.p_max_dl_w * 2e-10 / p.noise_power_w));
  p.mu = 1.0;
  EXPECT_EQ(evaluate_solo_ul(0, g, p, w).contribution, 0.0);
  const auto z = single_pair(0.0, 0.0, 0.0);
  EXPECT_EQ(evaluate_solo_dl(0, z, p, w).se, 0.0);
}

TEST(OutcomeMetrics, AllSoloIsDecoupled) {
  std::mt19937_64 rng(5);
  const auto g = random_gains(3, 2, rng);
  const auto p = params_for(3, 2, 5, 0.4);
  const auto w = make_weights(WeightMode::SumRate, g);
  const auto o = outcome_metrics(Pairing(3, 2), PowerAllocation::full(p), g, p, w);
  double sum = 0.0, lo = 1e300;
  for (std::size_t i = 0; i < 3; ++i) {
    const double se = evaluate_solo_ul(i, g, p, w).se;
    EXPECT_DOUBLE_EQ(o.se_ul[i], se);
    sum += se;
    lo = std::min(lo, se);
  }
  for (std::size_t j = 0; j < 2; ++j) {
    const double se = evaluate_solo_dl(j, g, p, w).se;
    EXPECT_DOUBLE_EQ(o.se_dl[j], se);
    sum += se;
    lo = std::min(lo, se);
  }
  EXPECT_NEAR(o.objective, 0.6 * sum + 0.4 * lo, 1e-12);
  EXPECT_NEAR(o.sum_se, sum, 1e-12);
  EXPECT_EQ(o.min_se, lo);
}

TEST(OutcomeMetrics, MuOneIsMinSe) {
  std::mt19937_64 rng(6);
  const auto g = random_gains(2, 2, rng);
  const auto p = params_for(2, 2, 2, 1.0);
  const auto w = make_weights(WeightMode::PathLossCompensation, g);
  Pairing pairing(2, 2);
  pairing.pair(0, 1);
  pairing.pair(1, 0);
  const auto o = outcome_metrics(pairing, PowerAllocation::full(p), g, p, w);
  EXPECT_DOUBLE_EQ(o.objective, o.min_se);
}

TEST(OutcomeMetrics, SinglePairMatchesEvaluatePair) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto g = random_gains(1, 1, rng);
    const auto p = params_for(1, 1, 1, static_cast<double>(k % 5) / 4.0);
    const auto w = make_weights(WeightMode::SumRate, g);
    const auto e = evaluate_pair(0, 0, g, p, w);
    Pairing pairing(1, 1);
    pairing.pair(0, 0);
    const auto o = outcome_metrics(pairing, {{e.best_powers.ul}, {e.best_powers.dl}}, g, p, w);
    EXPECT_NEAR(o.objective, e.benefit, 1e-12 * std::max(1.0, e.benefit));
    EXPECT_DOUBLE_EQ(o.se_ul[0], e.se_ul);
    EXPECT_DOUBLE_EQ(o.se_dl[0], e.se_dl);
  }
}

TEST(OutcomeMetrics, WeightedSumIsAdditiveAtMuZero) {
  std::mt19937_64 rng(9);
  const auto g = random_gains(3, 3, rng);
  const auto p = params_for(3, 3, 4, 0.0);
  const auto w = make_weights(WeightMode::SumRate, g);
  Pairing pairing(3, 3);
  pairing.pair(0, 2);
  pairing.pair(2, 1);
  auto powers = PowerAllocation::full(p);
  double expected = evaluate_solo_ul(1, g, p, w).contribution + evaluate_solo_dl(0, g, p, w).contribution;
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 2}, {2, 1}}) {
    const auto e = evaluate_pair(i, j, g, p, w);
    powers.p_ul[i] = e.best_powers.ul;
    powers.p_dl[j] = e.best_powers.dl;
    expected += e.benefit;
  }
  EXPECT_NEAR(outcome_metrics(pairing, powers, g, p, w).objective, expected, 1e-12 * expected);
}

TEST(OutcomeMetrics, StoredObjectiveIsRecomputable) {
  std::mt19937_64 rng(10);
  const auto g = random_gains(2, 3, rng);
  const auto p = params_for(2, 3, 3, 0.7, WeightMode::PathLossCompensation);
  const auto w = make_weights(p.weight_mode, g);
  Pairing pairing(2, 3);
  pairing.pair(1, 1);
  const auto o = outcome_metrics(pairing, PowerAllocation::full(p), g, p, w);
  const double again = scalarized_objective(o.se_ul, o.se_dl, w, p.mu);
  EXPECT_NEAR(o.objective, again, 1e-9 * std::abs(again));
  double lo = 1e300;
  for (double c : o.all_se()) lo = std::min(lo, c);
  EXPECT_EQ(o.min_se, lo);
}

TEST(OutcomeMetrics, RejectsInconsistentShapes) {
  std::mt19937_64 rng(11);
  const auto g = random_gains(2, 2, rng);
  const auto p = params_for(2, 2, 2, 0.5);
  const auto w = make_weights(WeightMode::SumRate, g);
  EXPECT_THROW(outcome_metrics(Pairing(2, 3), PowerAllocation::full(p), g, p, w), InvalidArgument);
  EXPECT_THROW(outcome_metrics(Pairing(2, 2), PowerAllocation{{0.1}, {0.1, 0.1}}, g, p, w), InvalidArgument);
}

// Corner points against a dense power grid. For the weighted sum (mu = 0)
// the binary power result says a corner is optimal.
TEST(EvaluatePair, CornersDominateGridAtMuZero) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    const auto g = random_gains(1, 1, rng);
    const auto p = params_for(1, 1, 1, 0.0);
    const auto w = make_weights(WeightMode::SumRate, g);
    const auto e = evaluate_pair(0, 0, g, p, w);
    for (int a = 0; a <= 49; ++a)
      for (int b = 0; b <= 49; ++b) {
        const double pu = p.p_max_ul_w * a / 49.0, pd = p.p_max_dl_w * b / 49.0;
        const auto [cu, cd] = pair_spectral_efficiencies(0, 0, {pu, pd}, g, p);
        ASSERT_GE(e.benefit, pair_benefit(cu, cd, 1.0, 1.0, 0.0) - 1e-9) << "instance " << k;
      }
  }
}

}  // namespace
}  // namespace fdsched
