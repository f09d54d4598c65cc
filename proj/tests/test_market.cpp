#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace plcmarket;
using plcmarket::testing::Rng;

namespace {

TraderSpec trader(RationalVector w, std::vector<PLCFunction> r, std::string label = {}) {
  return TraderSpec{std::move(w), std::move(r), std::move(label)};
}

Market random_market(Rng& rng, std::size_t goods, std::size_t traders) {
  std::vector<TraderSpec> list;
  for (std::size_t i = 0; i < traders; ++i) {
    TraderSpec t;
    for (std::size_t k = 0; k < goods; ++k) {
      t.endowment.push_back(rng.coin(0.5) ? rng.rational(0, 2, 3) : Rational(0));
      t.utilities.push_back(plcmarket::testing::random_plc(rng, 2, 3, 0.5));
    }
    list.push_back(std::move(t));
  }
  list[0].endowment[0] = 1;
  return Market(goods, std::move(list));
}

// Reachability closure by repeated relaxation.
bool reaches_all(const Market& m) {
  const std::size_t n = m.n_traders();
  auto edge = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m.n_goods(); ++k)
      if (m.trader(i).endowment[k] > 0 && m.trader(j).utilities[k].strictly_monotone()) return true;
    return false;
  };
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    seen[s] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (seen[i] && !seen[j] && edge(i, j)) seen[j] = changed = true;
    }
    for (bool b : seen)
      if (!b) return false;
  }
  return true;
}

}  // namespace

TEST(Market, RejectsBadShapes) {
  auto lin = PLCFunction::linear(1);
  EXPECT_THROW(Market(0, {}), Error);
  EXPECT_THROW(Market(2, {trader({1}, {lin, lin})}), Error);
  EXPECT_THROW(Market(2, {trader({1, -1}, {lin, lin})}), Error);
  EXPECT_THROW(Market(1, {trader({0}, {lin})}), Error);
  Market ok(2, {trader({1, 0}, {lin, lin})});
  EXPECT_EQ(ok.total_supply(), (RationalVector{1, 0}));
}

TEST(Prices, NormalizeExamples) {
  EXPECT_EQ(normalize_prices(RationalVector{2, 4, 0}).values(), (RationalVector{1, 2, 0}));
  EXPECT_EQ(normalize_prices(RationalVector{rat(1, 3), rat(1, 2)}).values(),
            (RationalVector{1, rat(3, 2)}));
  try {
    PriceVector(RationalVector{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AllZeroPrices);
  }
  EXPECT_THROW(PriceVector(RationalVector{1, -1}), Error);
}

TEST(PricesProperty, IdempotentAndScaleInvariant) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    RationalVector p;
    for (int k = 0; k < 4; ++k) p.push_back(rng.coin(0.2) ? Rational(0) : rng.rational(0, 5, 7));
    if (sum(p) == 0) p[0] = 1;
    auto once = normalize_prices(p);
    EXPECT_TRUE(once.normalized());
    EXPECT_EQ(once.min_nonzero(), 1);
    EXPECT_EQ(normalize_prices(once).values(), once.values());
    Rational c = rng.rational(1, 9, 4);
    RationalVector scaled;
    for (const auto& v : p) scaled.push_back(v * c);
    EXPECT_EQ(normalize_prices(scaled).values(), once.values());
  }
}

TEST(EconomyGraph, MnEdgesMatchDefinition) {
  Market m = build_mn(2);
  auto g = economy_graph(m);
  // (1,2) owns good 1, (2,1) owns good 2; both want both goods.
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 0));  // no self-loops
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(is_strongly_connected(g));
  EXPECT_TRUE(is_strongly_connected(economy_graph(build_mn(3))));
}

TEST(EconomyGraph, DisconnectedPair) {
  auto lin = PLCFunction::linear(1), zero = PLCFunction::zero();
  Market m(2, {trader({1, 0}, {lin, zero}), trader({0, 1}, {zero, lin})});
  auto g = economy_graph(m);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_FALSE(is_strongly_connected(g));
  auto comp = strongly_connected_components(g);
  EXPECT_NE(comp[0], comp[1]);
}

TEST(EconomyGraphProperty, AgreesWithReachabilityOracle) {
  Rng rng(17);
  int connected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Market m = random_market(rng, 3, static_cast<std::size_t>(rng.integer(1, 5)));
    auto g = economy_graph(m);
    for (std::size_t i = 0; i < m.n_traders(); ++i)
      for (std::size_t j = 0; j < m.n_traders(); ++j) {
        bool expected = false;
        if (i == j) {
          ASSERT_FALSE(g.has_edge(i, j));
          continue;
        }
        for (std::size_t k = 0; k < 3; ++k)
          expected = expected ||
                     (m.trader(i).endowment[k] > 0 && m.trader(j).utilities[k].strictly_monotone());
        ASSERT_EQ(g.has_edge(i, j), expected);
      }
    bool oracle = reaches_all(m);
    ASSERT_EQ(is_strongly_connected(g), oracle);
    connected += oracle;
  }
  EXPECT_GT(connected, 0);
}

TEST(Classify, MnIsInEveryClass) {
  for (std::size_t n = 2; n <= 5; ++n) {
    auto r = classify_market(build_mn(n), 27, 23);
    EXPECT_TRUE(r.is_2_linear);
    EXPECT_TRUE(r.all());
    EXPECT_EQ(r.sparsity_t, 2u);
    ASSERT_TRUE(r.alpha_bound.has_value());
    EXPECT_EQ(*r.alpha_bound, 2);
  }
}

TEST(Classify, DetectsViolations) {
  auto three = validate_plc({3, 2, 1}, {1, 2});
  auto lin = PLCFunction::linear(1);
  Market m(2, {trader({1, 1}, {three, lin})});
  auto r = classify_market(m, 2, 1);
  EXPECT_FALSE(r.is_2_linear);
  EXPECT_FALSE(r.is_alpha_bounded);
  EXPECT_FALSE(r.is_t_sparse);
  EXPECT_EQ(r.sparsity_t, 2u);
  EXPECT_EQ(*r.alpha_bound, 3);
  EXPECT_TRUE(r.strongly_connected);
}
