#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plcmarket/market.hpp"

namespace plcmarket {

/// A trader's allocation vector x_i.
using Bundle = RationalVector;

/// One PLC segment of one good, priced: buying it yields `rate` utility per
/// unit of money.
struct SegmentOffer {
  std::size_t good = 0;
  std::size_t segment = 0;
  Rational rate;
  std::optional<Rational> quantity_cap;  // empty for the final ray
  Rational unit_cost;

  /// Money needed to buy the whole segment; empty when unbounded.
  std::optional<Rational> money_cap() const {
    if (!quantity_cap) return std::nullopt;
    return *quantity_cap * unit_cost;
  }

  friend bool operator==(const SegmentOffer&, const SegmentOffer&) = default;
};

/// OPT(i, p) in closed form.
///
/// Every optimal bundle is `forced` plus a fill of the tie offers (each within
/// its cap) costing exactly `tie_spend`, plus, when `cutoff_rate` is 0, any
/// extra purchases costing at most `residual`. Goods priced at zero can be
/// added in any amount by any trader without changing cost or utility.
struct DemandSet {
  RationalVector forced;
  Rational cutoff_rate = 0;
  std::vector<SegmentOffer> tie_offers;
  Rational tie_spend = 0;
  Rational residual = 0;
  Rational budget = 0;

  /// Offers bought completely (rate > cutoff) and left out (rate < cutoff).
  /// Segments with positive slope on a zero-price good are always bought and
  /// appear only in `forced`.
  std::vector<SegmentOffer> above_cutoff;
  std::vector<SegmentOffer> below_cutoff;

  bool spends_all() const { return cutoff_rate > 0; }
};

/// w_i · p.
inline Rational budget(const TraderSpec& trader, const PriceVector& p) {
  return dot(trader.endowment, p.values());
}

inline Rational bundle_cost(const Bundle& x, const PriceVector& p) { return dot(x, p.values()); }

/// Greedy bang-per-buck demand. Throws UnboundedDemand when a strictly
/// monotone utility meets a zero price.
inline DemandSet optimal_demand(const TraderSpec& trader, const PriceVector& p) {
  const std::size_t n = trader.utilities.size();
  if (p.size() != n)
    throw Error(Errc::DimensionMismatch, std::to_string(p.size()) + " prices for " +
                                             std::to_string(n) + " goods");
  DemandSet d;
  d.forced.assign(n, Rational(0));
  d.budget = budget(trader, p);

  std::vector<SegmentOffer> offers;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& r = trader.utilities[j];
    for (std::size_t k = 0; k < r.segment_count(); ++k) {
      const Rational& slope = r.slopes()[k];
      if (slope == 0) continue;
      auto cap = r.segment_length(k);
      if (p[j] == 0) {
        if (!cap)
          throw Error(Errc::UnboundedDemand,
                      "good " + std::to_string(j) + " has price 0 and is strictly wanted" +
                          (trader.label.empty() ? std::string() : " by " + trader.label));
        d.forced[j] += *cap;
        continue;
      }
      offers.push_back({j, k, slope / p[j], cap, p[j]});
    }
  }
  std::stable_sort(offers.begin(), offers.end(), [](const SegmentOffer& a, const SegmentOffer& b) {
    if (a.rate != b.rate) return a.rate > b.rate;
    if (a.good != b.good) return a.good < b.good;
    return a.segment < b.segment;
  });

  Rational remaining = d.budget;
  std::size_t pos = 0;
  bool cut = false;
  while (pos < offers.size()) {
    std::size_t end = pos;
    while (end < offers.size() && offers[end].rate == offers[pos].rate) ++end;

    if (remaining == 0) {
      d.cutoff_rate = offers[pos].rate;
      d.tie_offers.assign(offers.begin() + pos, offers.begin() + end);
      d.tie_spend = 0;
      cut = true;
    } else {
      std::optional<Rational> group_cost = Rational(0);
      for (std::size_t o = pos; o < end; ++o) {
        auto money = offers[o].money_cap();
        if (!money) {
          group_cost.reset();
          break;
        }
        *group_cost += *money;
      }
      if (group_cost && *group_cost <= remaining) {
        for (std::size_t o = pos; o < end; ++o) {
          d.forced[offers[o].good] += *offers[o].quantity_cap;
          d.above_cutoff.push_back(offers[o]);
        }
        remaining -= *group_cost;
        pos = end;
        continue;
      }
      d.cutoff_rate = offers[pos].rate;
      d.tie_offers.assign(offers.begin() + pos, offers.begin() + end);
      d.tie_spend = remaining;
      remaining = 0;
      cut = true;
    }
    d.below_cutoff.assign(offers.begin() + end, offers.end());
    break;
  }
  if (!cut) {
    d.cutoff_rate = 0;
    d.residual = remaining;
  }
  return d;
}

/// The deterministic member of the demand set: ties filled in (good, segment)
/// order, no money spent at zero marginal utility.
inline Bundle canonical_bundle(const DemandSet& d) {
  Bundle x = d.forced;
  Rational money = d.tie_spend;
  for (const auto& offer : d.tie_offers) {
    if (money == 0) break;
    auto cap = offer.money_cap();
    Rational spend = (cap && *cap < money) ? *cap : money;
    x[offer.good] += spend / offer.unit_cost;
    money -= spend;
  }
  return x;
}

/// x ∈ OPT(i, p): affordable and as good as the canonical optimum.
inline bool in_opt(const TraderSpec& trader, const PriceVector& p, const Bundle& x) {
  if (x.size() != trader.utilities.size()) return false;
  for (const auto& q : x)
    if (q < 0) return false;
  DemandSet d;
  try {
    d = optimal_demand(trader, p);
  } catch (const Error& e) {
    if (e.code() == Errc::UnboundedDemand) return false;
    throw;
  }
  if (bundle_cost(x, p) > d.budget) return false;
  return trader.utility(x) == trader.utility(canonical_bundle(d));
}

}  // namespace plcmarket
