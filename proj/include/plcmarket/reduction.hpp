#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "plcmarket/game.hpp"
#include "plcmarket/market.hpp"
#include "plcmarket/price_regulating.hpp"

namespace plcmarket {

/// Nonnegative split C - D of a payoff difference, with balancing scalars
/// E, F such that E + ΣC = F + ΣD and E·F = 0.
struct GadgetVectors {
  RationalVector C;
  RationalVector D;
  Rational E = 0;
  Rational F = 0;
};

namespace detail {

inline GadgetVectors split_difference(const RationalVector& difference) {
  GadgetVectors g;
  Rational sum_c = 0, sum_d = 0;
  for (const auto& delta : difference) {
    if (delta >= 0) {
      g.C.push_back(delta);
      g.D.push_back(0);
      sum_c += delta;
    } else {
      g.C.push_back(0);
      g.D.push_back(-delta);
      sum_d -= delta;
    }
  }
  if (sum_d >= sum_c)
    g.E = sum_d - sum_c;
  else
    g.F = sum_c - sum_d;
  return g;
}

}  // namespace detail

/// Gadget for rows i, j of A: C - D = A_i - A_j.
inline GadgetVectors gadget_vectors_row(const RationalMatrix& A, std::size_t i, std::size_t j) {
  RationalVector difference;
  for (std::size_t k = 0; k < A[i].size(); ++k) difference.push_back(A[i][k] - A[j][k]);
  return detail::split_difference(difference);
}

/// Gadget for columns i, j of B: C - D = B_i - B_j (columns).
inline GadgetVectors gadget_vectors_col(const RationalMatrix& B, std::size_t i, std::size_t j) {
  RationalVector difference;
  for (std::size_t k = 0; k < B.size(); ++k) difference.push_back(B[k][i] - B[k][j]);
  return detail::split_difference(difference);
}

enum class TraderFamily { S, U, V, I };

inline char family_letter(TraderFamily f) {
  switch (f) {
    case TraderFamily::S: return 'S';
    case TraderFamily::U: return 'U';
    case TraderFamily::V: return 'V';
    case TraderFamily::I: return 'I';
  }
  return '?';
}

/// Where each trader of a reduced market came from. `i`, `j` are 0-based;
/// I-traders use only `i`.
struct ReducedTrader {
  TraderFamily family;
  std::size_t i = 0;
  std::size_t j = 0;
};

struct ReducedMarketMeta {
  std::size_t n = 0;        // game size
  std::size_t n_goods = 0;  // 2n + 2
  std::vector<ReducedTrader> traders;

  std::vector<std::size_t> indices(TraderFamily family) const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < traders.size(); ++t)
      if (traders[t].family == family) out.push_back(t);
    return out;
  }
};

/// Compiles a sparse normalized n x n game (n >= 2) into a 2-linear,
/// 27-bounded, 23-sparse market on 2n + 2 goods whose approximate equilibria
/// encode well-supported Nash equilibria of the game.
///
/// Goods 0..n-1 carry the row player's strategy, n..2n-1 the column player's,
/// 2n and 2n+1 are auxiliary.
inline std::pair<Market, ReducedMarketMeta> build_reduced_market(const BimatrixGame& g) {
  const std::size_t n = g.n;
  if (n < 2) throw Error(Errc::NTooSmall, "reduction needs n >= 2");
  const std::size_t goods = 2 * n + 2;
  const std::size_t aux = 2 * n, top = 2 * n + 1;
  const Rational inv_n = rat(1, static_cast<long>(n));
  const Rational n4 = pow(inv_n, 4), n5 = pow(inv_n, 5), n12 = pow(inv_n, 12);

  std::vector<TraderSpec> traders;
  ReducedMarketMeta meta{n, goods, {}};

  // The price-regulating core over 2n + 2 goods, with mass 1/n per trader.
  for (auto s : regulating_pairs(goods)) {
    traders.push_back(regulating_trader(goods, s, inv_n));
    meta.traders.push_back({TraderFamily::S, s.i, s.j});
  }

  // own: the good the gadget sells 1/n^4 of; paid: offset of the goods that
  // C and D refer to.
  auto gadget = [&](const GadgetVectors& v, std::size_t own, std::size_t paid, char family,
                    std::size_t i, std::size_t j) {
    TraderSpec t;
    t.endowment.assign(goods, Rational(0));
    t.utilities.assign(goods, PLCFunction::zero());
    t.endowment[own] = n4;
    for (std::size_t k = 0; k < n; ++k) t.endowment[paid + k] = v.C[k] * n5;
    t.endowment[aux] = v.E * n5;
    t.utilities[own] = PLCFunction::two_segment(9, 1, n4);
    t.utilities[top] = PLCFunction::linear(3);
    for (std::size_t k = 0; k < n; ++k)
      if (v.D[k] > 0) t.utilities[paid + k] = PLCFunction::two_segment(27, 1, v.D[k] * n5);
    if (v.F > 0) t.utilities[aux] = PLCFunction::two_segment(27, 1, v.F * n5);
    t.label = pair_label(family, i, j);
    return t;
  };

  for (auto s : regulating_pairs(n)) {
    traders.push_back(gadget(gadget_vectors_row(g.A, s.i, s.j), s.i, n, 'U', s.i, s.j));
    meta.traders.push_back({TraderFamily::U, s.i, s.j});
  }
  for (auto s : regulating_pairs(n)) {
    traders.push_back(gadget(gadget_vectors_col(g.B, s.i, s.j), n + s.i, 0, 'V', s.i, s.j));
    meta.traders.push_back({TraderFamily::V, s.i, s.j});
  }

  for (std::size_t i = 0; i < 2 * n; ++i) {
    TraderSpec t;
    t.endowment.assign(goods, Rational(0));
    t.endowment[aux] = n12;
    t.utilities.assign(goods, PLCFunction::zero());
    t.utilities[i] = PLCFunction::linear(1);
    t.label = "I(" + std::to_string(i + 1) + ")";
    traders.push_back(std::move(t));
    meta.traders.push_back({TraderFamily::I, i, 0});
  }
  return {Market(goods, std::move(traders)), std::move(meta)};
}

struct ExtractedProfile {
  MixedStrategy x;
  MixedStrategy y;
  /// p_k - 1 before clamping and normalization.
  RationalVector x_raw;
  RationalVector y_raw;
  /// Number of negative entries clamped to zero (only possible when the
  /// prices are outside [1, 2]).
  std::size_t clamped = 0;
};

/// x'_k = p_k - 1, y'_k = p_{n+k} - 1, each normalized to a distribution.
/// Throws DegenerateExtraction when either block sums to zero.
inline ExtractedProfile extract_strategies(const PriceVector& prices, const ReducedMarketMeta& meta) {
  if (prices.size() != meta.n_goods)
    throw Error(Errc::DimensionMismatch, std::to_string(prices.size()) + " prices for " +
                                             std::to_string(meta.n_goods) + " goods");
  PriceVector p = normalize_prices(prices);
  const std::size_t n = meta.n;
  ExtractedProfile out;
  auto block = [&](std::size_t offset, RationalVector& raw, MixedStrategy& s, const char* who) {
    RationalVector clipped;
    for (std::size_t k = 0; k < n; ++k) {
      raw.push_back(p[offset + k] - 1);
      if (raw.back() < 0) {
        ++out.clamped;
        clipped.push_back(0);
      } else {
        clipped.push_back(raw.back());
      }
    }
    Rational total = sum(clipped);
    if (total == 0)
      throw Error(Errc::DegenerateExtraction, std::string(who) + " block of prices is all 1");
    for (auto& v : clipped) v /= total;
    s.weights = std::move(clipped);
  };
  block(0, out.x_raw, out.x, "row");
  block(n, out.y_raw, out.y, "column");
  return out;
}

}  // namespace plcmarket
