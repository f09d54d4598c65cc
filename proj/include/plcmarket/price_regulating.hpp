#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "plcmarket/demand.hpp"
#include "plcmarket/market.hpp"
#include "plcmarket/verifier.hpp"

namespace plcmarket {

/// Ordered pair of distinct goods (0-based) naming a trader of M_n.
struct PairIndex {
  std::size_t i = 0;
  std::size_t j = 0;
};

inline std::string pair_label(char family, std::size_t i, std::size_t j) {
  return std::string(1, family) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

/// Traders (i, j) over `goods` goods in row-major order of (i, j), i ≠ j.
inline std::vector<PairIndex> regulating_pairs(std::size_t goods) {
  std::vector<PairIndex> pairs;
  for (std::size_t i = 0; i < goods; ++i)
    for (std::size_t j = 0; j < goods; ++j)
      if (i != j) pairs.push_back({i, j});
  return pairs;
}

/// Trader (i, j): owns `mass` of good i, linear utility 2 on good i and 1 on
/// good j, nothing else.
inline TraderSpec regulating_trader(std::size_t goods, PairIndex s, const Rational& mass) {
  TraderSpec t;
  t.endowment.assign(goods, Rational(0));
  t.endowment[s.i] = mass;
  t.utilities.assign(goods, PLCFunction::zero());
  t.utilities[s.i] = PLCFunction::linear(2);
  t.utilities[s.j] = PLCFunction::linear(1);
  t.label = pair_label('S', s.i, s.j);
  return t;
}

/// The price-regulating market M_n: its 1/n-approximate equilibria are
/// exactly the normalized prices in [1, 2]^n.
inline Market build_mn(std::size_t n) {
  if (n < 2) throw Error(Errc::NTooSmall, "M_n needs n >= 2, got " + std::to_string(n));
  std::vector<TraderSpec> traders;
  for (auto s : regulating_pairs(n)) traders.push_back(regulating_trader(n, s, rat(1, static_cast<long>(n))));
  return Market(n, std::move(traders));
}

enum class RegulationBox { InBox, OutOfBox };

inline RegulationBox check_regulation_box(std::size_t n, const PriceVector& p) {
  if (p.size() != n)
    throw Error(Errc::DimensionMismatch, std::to_string(p.size()) + " prices for n = " + std::to_string(n));
  for (const auto& v : p.values())
    if (v < 1 || v > 2) return RegulationBox::OutOfBox;
  return RegulationBox::InBox;
}

/// Certificate for the identity allocation x_s = w_s at ε = 1/n. Throws
/// InvariantViolation if some trader's endowment is not optimal, since that
/// would contradict the forward direction of price regulation.
inline Certificate regulation_forward_witness(std::size_t n, const PriceVector& prices) {
  PriceVector p = normalize_prices(prices);
  if (check_regulation_box(n, p) != RegulationBox::InBox)
    throw Error(Errc::Schema, "forward witness needs normalized prices in [1,2]^n");
  Market m = build_mn(n);
  Certificate cert;
  cert.mode = Mode::Approximate;
  cert.epsilon = rat(1, static_cast<long>(n));
  std::vector<Bundle> allocation;
  for (const auto& t : m.traders()) {
    if (!in_opt(t, p, t.endowment))
      throw Error(Errc::InvariantViolation, "endowment not optimal for " + t.label);
    allocation.push_back(t.endowment);
  }
  cert.report = clearing_report(m, allocation, cert.epsilon);
  for (const auto& g : cert.report.goods)
    if (g.imbalance != 0) throw Error(Errc::InvariantViolation, "identity allocation does not clear");
  cert.allocation = std::move(allocation);
  cert.accepted = true;
  return cert;
}

}  // namespace plcmarket
