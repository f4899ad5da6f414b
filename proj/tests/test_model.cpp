#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fdsched/model.hpp"

namespace fdsched {
namespace {

TEST(Units, DbmToWatts) {
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
  EXPECT_NEAR(dbm_to_watts(24.0), 0.2512, 1e-4);
  EXPECT_NEAR(dbm_to_watts(-116.4), 2.291e-15, 1e-18);
}

TEST(Units, RoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> x(-150.0, 50.0);
  for (int k = 0; k < 1000; ++k) {
    const double v = x(rng);
    EXPECT_NEAR(watts_to_dbm(dbm_to_watts(v)), v, 1e-9);
  }
}

TEST(ValidateParams, AcceptsDefaultsAndFig2Sizes) {
  ScenarioParams p;
  p.num_ul = p.num_dl = p.num_channels = 4;
  p.mu = 0.5;
  EXPECT_TRUE(validate_params(p).ok());
}

TEST(ValidateParams, ReportsEachViolation) {
  ScenarioParams p;
  p.num_ul = 5;
  p.num_channels = 4;
  auto r = validate_params(p);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations, std::vector<std::string>{"I <= F"});

  p = ScenarioParams{};
  p.mu = 1.2;
  r = validate_params(p);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0], "mu in [0,1]");

  p = ScenarioParams{};
  p.si_cancellation = 2.0;
  p.p_max_dl_w = 0.0;
  EXPECT_EQ(validate_params(p).violations.size(), 2u);
}

TEST(Pairing, MatrixHasUnitRowAndColumnSums) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ni = 1 + rng() % 6, nj = 1 + rng() % 6;
    std::vector<std::size_t> dl(nj);
    std::iota(dl.begin(), dl.end(), std::size_t{0});
    std::shuffle(dl.begin(), dl.end(), rng);
    std::vector<std::optional<std::size_t>> partners(ni);
    for (std::size_t i = 0; i < ni && i < nj; ++i)
      if (rng() % 2) partners[i] = dl[i];
    const auto pairing = Pairing::from_ul_partners(partners, nj);
    const auto x = pairing.to_matrix();
    for (std::size_t i = 0; i < ni; ++i) {
      int s = 0;
      for (std::size_t j = 0; j < nj; ++j) s += x(i, j);
      EXPECT_LE(s, 1);
    }
    for (std::size_t j = 0; j < nj; ++j) {
      int s = 0;
      for (std::size_t i = 0; i < ni; ++i) s += x(i, j);
      EXPECT_LE(s, 1);
      if (pairing.partner_of_dl(j)) {
        EXPECT_EQ(pairing.partner_of_ul(*pairing.partner_of_dl(j)), j);
      }
    }
  }
}

TEST(Pairing, RejectsDoubleUse) {
  Pairing p(2, 2);
  p.pair(0, 1);
  EXPECT_THROW(p.pair(1, 1), InvalidArgument);
  EXPECT_THROW(p.pair(0, 0), InvalidArgument);
  EXPECT_THROW(p.pair(2, 0), InvalidArgument);
  std::vector<std::optional<std::size_t>> dup{0, 0};
  EXPECT_THROW(Pairing::from_ul_partners(dup, 2), InvalidArgument);
}

TEST(Pairing, ChannelsUsed) {
  Pairing p(3, 2);
  EXPECT_EQ(p.channels_used(), 5u);
  p.pair(2, 0);
  EXPECT_EQ(p.channels_used(), 4u);
  EXPECT_EQ(p.num_pairs(), 1u);
}

TEST(Objective, ScalarizationOfWeightedSumAndMin) {
  WeightVector w{{1.0, 2.0}, {0.5}};
  const std::vector<double> cu{3.0, 1.0}, cd{4.0};
  // weighted = 3 + 2 + 2 = 7, min = 1
  EXPECT_DOUBLE_EQ(scalarized_objective(cu, cd, w, 0.0), 7.0);
  EXPECT_DOUBLE_EQ(scalarized_objective(cu, cd, w, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(scalarized_objective(cu, cd, w, 0.25), 0.75 * 7.0 + 0.25);
}

}  // namespace
}  // namespace fdsched
