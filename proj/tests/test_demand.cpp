#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace plcmarket;
using plcmarket::testing::Rng;

namespace {

TraderSpec trader(RationalVector w, std::vector<PLCFunction> r) {
  return TraderSpec{std::move(w), std::move(r), {}};
}

bool on_grid(const Bundle& x, long den) {
  for (const auto& q : x)
    if (denominator_of(q * den) != 1) return false;
  return true;
}

TraderSpec random_trader(Rng& rng, std::size_t goods) {
  TraderSpec t;
  for (std::size_t k = 0; k < goods; ++k) {
    t.endowment.push_back(rng.rational(0, 1, 4));
    t.utilities.push_back(plcmarket::testing::random_plc(rng, 3, 4, 0.15));
  }
  if (sum(t.endowment) == 0) t.endowment[0] = rat(1, 2);
  return t;
}

}  // namespace

TEST(Demand, SingleLinearGood) {
  auto t = trader({1, 0}, {PLCFunction::linear(1), PLCFunction::linear(3)});
  PriceVector p(RationalVector{1, 2});
  auto d = optimal_demand(t, p);
  EXPECT_EQ(d.budget, 1);
  EXPECT_EQ(d.cutoff_rate, rat(3, 2));
  EXPECT_EQ(canonical_bundle(d), (Bundle{0, rat(1, 2)}));
  EXPECT_TRUE(d.spends_all());
}

TEST(Demand, TieIsExposed) {
  // Bang-per-buck 1 on both goods: every split of the budget is optimal.
  auto t = trader({2, 0}, {PLCFunction::linear(1), PLCFunction::linear(1)});
  PriceVector p(RationalVector{1, 1});
  auto d = optimal_demand(t, p);
  EXPECT_EQ(d.cutoff_rate, 1);
  EXPECT_EQ(d.tie_offers.size(), 2u);
  EXPECT_EQ(d.tie_spend, 2);
  EXPECT_TRUE(in_opt(t, p, {0, 2}));
  EXPECT_TRUE(in_opt(t, p, {2, 0}));
  EXPECT_TRUE(in_opt(t, p, {rat(1, 2), rat(3, 2)}));
  EXPECT_FALSE(in_opt(t, p, {1, 0}));
  EXPECT_FALSE(in_opt(t, p, {2, 1}));
}

TEST(Demand, SegmentsFilledInRateOrder) {
  auto f = PLCFunction::two_segment(4, 1, 1);
  auto t = trader({0, 3}, {f, PLCFunction::linear(2)});
  PriceVector p(RationalVector{1, 1});
  auto d = optimal_demand(t, p);
  // rates: 4 (good 0 seg 0, cap 1), 2 (good 1), 1 (good 0 seg 1)
  EXPECT_EQ(d.forced, (Bundle{1, 0}));
  EXPECT_EQ(d.cutoff_rate, 2);
  EXPECT_EQ(d.tie_spend, 2);
  EXPECT_EQ(canonical_bundle(d), (Bundle{1, 2}));
}

TEST(Demand, SatiatedTraderKeepsResidual) {
  auto t = trader({5, 0}, {validate_plc({1, 0}, {1}), PLCFunction::zero()});
  PriceVector p(RationalVector{1, 1});
  auto d = optimal_demand(t, p);
  EXPECT_EQ(d.cutoff_rate, 0);
  EXPECT_EQ(d.residual, 4);
  EXPECT_FALSE(d.spends_all());
  EXPECT_TRUE(in_opt(t, p, {1, 0}));
  EXPECT_TRUE(in_opt(t, p, {1, 3}));
  EXPECT_FALSE(in_opt(t, p, {1, 5}));
}

TEST(Demand, ZeroPriceGoods) {
  auto bounded = trader({1, 0}, {PLCFunction::linear(1), validate_plc({2, 0}, {3})});
  PriceVector p(RationalVector{1, 0});
  auto d = optimal_demand(bounded, p);
  EXPECT_EQ(d.forced[1], 3);
  EXPECT_EQ(canonical_bundle(d), (Bundle{1, 3}));

  auto greedy = trader({1, 0}, {PLCFunction::linear(1), PLCFunction::linear(1)});
  try {
    optimal_demand(greedy, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnboundedDemand);
  }
  EXPECT_FALSE(in_opt(greedy, p, {1, 0}));
}

TEST(DemandProperty, OptimalAgainstGridOracle) {
  Rng rng(3);
  int exact_matches = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto t = random_trader(rng, 2);
    RationalVector raw{rat(rng.integer(4, 16), 8), rat(rng.integer(4, 16), 8)};
    PriceVector p = normalize_prices(raw);
    auto d = optimal_demand(t, p);
    auto x = canonical_bundle(d);
    Rational money = budget(t, p);
    ASSERT_LE(bundle_cost(x, p), money);
    Rational best = plcmarket::testing::grid_best_utility(t, p, money, 8);
    ASSERT_GE(t.utility(x), best);
    if (on_grid(x, 8)) {
      ASSERT_EQ(t.utility(x), best);
      ++exact_matches;
    }
  }
  EXPECT_GT(exact_matches, 5);
}

TEST(DemandProperty, StructureHolds) {
  Rng rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    auto t = random_trader(rng, 3);
    RationalVector raw;
    for (int k = 0; k < 3; ++k) raw.push_back(rng.rational(1, 3, 5));
    PriceVector p = normalize_prices(raw);
    auto d = optimal_demand(t, p);
    auto x = canonical_bundle(d);
    ASSERT_TRUE(in_opt(t, p, x));

    bool monotone = false;
    for (const auto& r : t.utilities) monotone = monotone || r.strictly_monotone();
    if (monotone) { ASSERT_EQ(bundle_cost(x, p), d.budget); }

    for (const auto& o : d.above_cutoff) ASSERT_GT(o.rate, d.cutoff_rate);
    for (const auto& o : d.below_cutoff) ASSERT_LT(o.rate, d.cutoff_rate);
    for (const auto& o : d.tie_offers) ASSERT_EQ(o.rate, d.cutoff_rate);

    // Demand depends on relative prices only.
    Rational c = rng.rational(1, 4, 3);
    RationalVector scaled;
    for (const auto& v : p.values()) scaled.push_back(v * c);
    auto d2 = optimal_demand(t, PriceVector(scaled));
    ASSERT_EQ(canonical_bundle(d2), x);
  }
}
