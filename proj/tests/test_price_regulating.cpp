#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace plcmarket;
using plcmarket::testing::Rng;

TEST(PriceRegulating, MnShape) {
  Market m = build_mn(3);
  EXPECT_EQ(m.n_goods(), 3u);
  EXPECT_EQ(m.n_traders(), 6u);
  const auto& t = m.trader(0);  // (1,2)
  EXPECT_EQ(t.label, "S(1,2)");
  EXPECT_EQ(t.endowment, (RationalVector{rat(1, 3), 0, 0}));
  EXPECT_EQ(t.utilities[0], PLCFunction::linear(2));
  EXPECT_EQ(t.utilities[1], PLCFunction::linear(1));
  EXPECT_TRUE(t.utilities[2].is_zero());
  // each good has total supply (n - 1)/n
  for (const auto& s : m.total_supply()) EXPECT_EQ(s, rat(2, 3));
  EXPECT_THROW(build_mn(1), Error);
}

TEST(PriceRegulating, BoxCheck) {
  EXPECT_EQ(check_regulation_box(2, PriceVector(RationalVector{1, 2})), RegulationBox::InBox);
  EXPECT_EQ(check_regulation_box(2, PriceVector(RationalVector{1, rat(9, 4)})),
            RegulationBox::OutOfBox);
  EXPECT_THROW(check_regulation_box(3, PriceVector(RationalVector{1, 2})), Error);
}

TEST(PriceRegulating, ForwardWitnessAtCorners) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      RationalVector p(n, Rational(1));
      for (std::size_t k = 0; k < n; ++k)
        if (mask & (1u << k)) p[k] = 2;
      PriceVector prices(p);
      auto cert = regulation_forward_witness(n, prices);
      ASSERT_TRUE(cert.accepted);
      EXPECT_EQ(cert.epsilon, rat(1, static_cast<long>(n)));
      EXPECT_TRUE(revalidate(build_mn(n), prices, cert));
    }
  }
}

TEST(PriceRegulatingProperty, ForwardAndConverse) {
  Rng rng(7);
  for (std::size_t n = 2; n <= 5; ++n) {
    Market m = build_mn(n);
    Rational eps = rat(1, static_cast<long>(n));
    for (int trial = 0; trial < 20; ++trial) {
      RationalVector p(n);
      for (auto& v : p) v = 1 + rng.rational(0, 1, 12);
      p[static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1))] = 1;
      PriceVector prices(p);
      ASSERT_TRUE(regulation_forward_witness(n, prices).accepted);
      ASSERT_TRUE(verify(m, prices, Mode::Approximate, eps).accepted);

      // push one coordinate out of the box
      RationalVector q = p;
      q[static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1))] =
          2 + rat(1, static_cast<long>(n * n)) + rng.rational(0, 2, 5);
      q[0] = 1;
      PriceVector out = normalize_prices(q);
      if (check_regulation_box(n, out) == RegulationBox::InBox) continue;
      ASSERT_FALSE(verify(m, out, Mode::Approximate, eps).accepted);
    }
  }
}
