#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fdsched/scenario.hpp"

namespace fdsched {
namespace {

TEST(LinkGain, LosAndNlosFormulas) {
  PropagationModel m;
  EXPECT_NEAR(m.path_loss_db(100.0, true), 80.36, 1e-12);
  EXPECT_NEAR(link_gain(m, 100.0, true, 0.0), std::pow(10.0, -8.036), 1e-20);
  EXPECT_NEAR(m.path_loss_db(10.0, false), 71.71, 1e-12);
}

TEST(LinkGain, ShadowingIsAdditiveInDb) {
  PropagationModel m;
  for (double d : {1.0, 7.5, 42.0, 180.0})
    for (bool los : {true, false})
      EXPECT_NEAR(link_gain(m, d, los, -3.0) / link_gain(m, d, los, 0.0), std::pow(10.0, 0.3), 1e-12);
}

TEST(LinkGain, ClampsBelowOneMetre) {
  PropagationModel m;
  EXPECT_EQ(link_gain(m, 0.0, true, 0.0), link_gain(m, 1.0, true, 0.0));
  EXPECT_EQ(link_gain(m, 0.3, false, 0.0), link_gain(m, 1.0, false, 0.0));
}

TEST(LinkGain, StrictlyDecreasingInDistance) {
  PropagationModel m;
  for (bool los : {true, false}) {
    double prev = link_gain(m, 1.0, los, 0.0);
    for (double d = 1.5; d < 300.0; d *= 1.1) {
      const double g = link_gain(m, d, los, 0.0);
      EXPECT_LT(g, prev);
      prev = g;
    }
  }
}

TEST(LosProbability, UrbanMicroShape) {
  EXPECT_DOUBLE_EQ(los_probability(10.0), 1.0);
  EXPECT_DOUBLE_EQ(los_probability(18.0), 1.0);
  const double d = 100.0;
  EXPECT_NEAR(los_probability(d), 0.18 * (1 - std::exp(-d / 36)) + std::exp(-d / 36), 1e-15);
  EXPECT_LT(los_probability(200.0), los_probability(50.0));
}

TEST(DropUsers, InsideCellAndOutsideExclusionZone) {
  ScenarioParams p;
  p.num_ul = p.num_dl = p.num_channels = 25;
  RandomStream rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const auto pos = drop_users(p, rng);
    ASSERT_EQ(pos.ul.size(), 25u);
    ASSERT_EQ(pos.dl.size(), 25u);
    for (const auto* v : {&pos.ul, &pos.dl})
      for (const auto& u : *v) {
        EXPECT_LE(std::hypot(u.x, u.y), 100.0 + 1e-9);
        EXPECT_GE(std::hypot(u.x, u.y), 3.0);
        EXPECT_TRUE(inside_hexagon(u.x, u.y, 100.0));
      }
  }
}

TEST(DropUsers, DeterministicForSeed) {
  ScenarioParams p;
  RandomStream a(5, {1, 2}), b(5, {1, 2}), c(5, {1, 3});
  const auto pa = drop_users(p, a), pb = drop_users(p, b), pc = drop_users(p, c);
  for (std::size_t k = 0; k < pa.ul.size(); ++k) {
    EXPECT_EQ(pa.ul[k].x, pb.ul[k].x);
    EXPECT_EQ(pa.ul[k].y, pb.ul[k].y);
  }
  EXPECT_NE(pa.ul[0].x, pc.ul[0].x);
}

TEST(DropUsers, FailsOnImpossibleGeometry) {
  ScenarioParams p;
  p.min_bs_ue_distance_m = 150.0;  // larger than the circumradius
  RandomStream rng(1);
  EXPECT_THROW(drop_users(p, rng), ScenarioError);
}

TEST(BuildGainTable, ShapesAndPositivity) {
  ScenarioParams p;
  p.num_ul = p.num_dl = p.num_channels = 1;
  RandomStream rng(3);
  const auto g = build_gain_table(p, rng);
  EXPECT_EQ(g.g_ul.size(), 1u);
  EXPECT_EQ(g.g_dl.size(), 1u);
  EXPECT_EQ(g.g_cross.rows(), 1u);
  EXPECT_EQ(g.g_cross.cols(), 1u);
  EXPECT_NO_THROW(check_gains(g, true));
}

TEST(BuildGainTable, BitIdenticalForSameStream) {
  ScenarioParams p;
  p.num_ul = p.num_dl = p.num_channels = 6;
  RandomStream a(99, {4}), b(99, {4});
  EXPECT_TRUE(build_gain_table(p, a) == build_gain_table(p, b));
}

TEST(BuildGainTable, ColocatedUsersClampToOneMetre) {
  ScenarioParams p;
  p.num_ul = p.num_dl = p.num_channels = 1;
  p.propagation.shadowing = false;
  p.propagation.los_rule = LosRule::ForceLos;
  UserPositions pos{{{30.0, 0.0}}, {{30.0, 0.0}}};
  RandomStream rng(1);
  const auto g = gain_table_for(p, pos, rng);
  EXPECT_DOUBLE_EQ(g.g_cross(0, 0), link_gain(PropagationModel{}, 1.0, true, 0.0));
  EXPECT_DOUBLE_EQ(g.g_ul[0], link_gain(PropagationModel{}, 30.0, true, 0.0));
}

TEST(BuildGainTable, CrossLinkRuleOverride) {
  ScenarioParams p;
  p.num_ul = p.num_dl = p.num_channels = 1;
  p.propagation.shadowing = false;
  p.propagation.los_rule = LosRule::ForceLos;
  p.propagation.cross_link_rule = CrossLinkRule::ForceNlos;
  UserPositions pos{{{30.0, 0.0}}, {{-30.0, 0.0}}};
  RandomStream rng(1);
  const auto g = gain_table_for(p, pos, rng);
  EXPECT_DOUBLE_EQ(g.g_cross(0, 0), link_gain(PropagationModel{}, 60.0, false, 0.0));
  EXPECT_DOUBLE_EQ(g.g_dl[0], link_gain(PropagationModel{}, 30.0, true, 0.0));
}

// Shadowing statistics: recover the dB offset from the generated gain and the
// deterministic path loss with the LOS state pinned.
TEST(BuildGainTable, ShadowingStatistics) {
  for (auto [rule, sigma] : {std::pair{LosRule::ForceLos, 3.0}, std::pair{LosRule::ForceNlos, 4.0}}) {
    ScenarioParams p;
    p.num_ul = 1;
    p.num_dl = 0;
    p.num_channels = 1;
    p.propagation.los_rule = rule;
    PropagationModel m;
    RandomStream rng(2024, {static_cast<std::uint64_t>(rule)});
    std::vector<double> shadow;
    for (int k = 0; k < 20000; ++k) {
      const auto g = build_gain_table(p, rng);
      const double d = distance(g.ul_positions[0], g.bs);
      shadow.push_back(-10.0 * std::log10(g.g_ul[0]) - m.path_loss_db(d, rule == LosRule::ForceLos));
    }
    const double mean = std::accumulate(shadow.begin(), shadow.end(), 0.0) / shadow.size();
    double var = 0.0;
    for (double s : shadow) var += (s - mean) * (s - mean);
    const double sd = std::sqrt(var / (shadow.size() - 1));
    EXPECT_NEAR(mean, 0.0, 0.1);
    EXPECT_NEAR(sd, sigma, 0.05 * sigma);
  }
}

TEST(BuildGainTable, LosFractionFollowsUrbanMicroRule) {
  // At a fixed 60 m link the empirical LOS share should match p_LOS(60).
  ScenarioParams p;
  p.propagation.shadowing = false;
  UserPositions pos{{{60.0, 0.0}}, {}};
  p.num_ul = 1;
  p.num_dl = 0;
  RandomStream rng(8);
  PropagationModel m;
  const double los_gain = link_gain(m, 60.0, true, 0.0);
  int los = 0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) los += gain_table_for(p, pos, rng).g_ul[0] == los_gain;
  const double expect = los_probability(60.0);
  EXPECT_NEAR(static_cast<double>(los) / n, expect, 4.0 * std::sqrt(expect * (1 - expect) / n));
}

}  // namespace
}  // namespace fdsched
