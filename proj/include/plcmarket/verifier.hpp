#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plcmarket/demand.hpp"
#include "plcmarket/market.hpp"
#include "plcmarket/max_flow.hpp"

namespace plcmarket {

enum class Mode { Exact, Approximate, Quasi };

inline std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Exact: return "exact";
    case Mode::Approximate: return "approximate";
    case Mode::Quasi: return "quasi";
  }
  return "unknown";
}

inline Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::Exact;
  if (text == "approximate" || text == "approx") return Mode::Approximate;
  if (text == "quasi") return Mode::Quasi;
  throw Error(Errc::Schema, "unknown mode '" + text + "'");
}

/// Per-good aggregates w_k[T] (supply) and a_k[T] (allocated).
struct GoodBalance {
  std::size_t good = 0;
  Rational supply;
  Rational allocated;
  Rational imbalance;  // allocated - supply
  Rational bound;      // ε · supply
};

struct ClearingReport {
  std::vector<GoodBalance> goods;

  /// max_k |imbalance_k| / supply_k over goods with positive supply; a
  /// zero-supply good that is allocated anyway contributes |imbalance_k|.
  Rational max_relative_imbalance() const {
    Rational worst = 0;
    for (const auto& g : goods) {
      Rational r = g.supply > 0 ? Rational(abs(g.imbalance) / g.supply) : abs(g.imbalance);
      if (r > worst) worst = r;
    }
    return worst;
  }
};

inline ClearingReport clearing_report(const Market& m, const std::vector<Bundle>& allocation,
                                      const Rational& epsilon) {
  ClearingReport report;
  auto supply = m.total_supply();
  for (std::size_t k = 0; k < m.n_goods(); ++k) {
    GoodBalance g;
    g.good = k;
    g.supply = supply[k];
    g.allocated = 0;
    for (const auto& x : allocation) g.allocated += x[k];
    g.imbalance = g.allocated - g.supply;
    g.bound = epsilon * g.supply;
    report.goods.push_back(std::move(g));
  }
  return report;
}

struct Certificate {
  bool accepted = false;
  std::string reason;
  Mode mode = Mode::Exact;
  Rational epsilon = 0;
  std::optional<std::vector<Bundle>> allocation;
  ClearingReport report;
};

/// Allowed total allocation [lower, upper] of one good.
struct ClearingWindow {
  Rational lower, upper;
};

inline ClearingWindow clearing_window(Mode mode, const Rational& epsilon, const Rational& price,
                                      const Rational& supply) {
  if (mode == Mode::Approximate) {
    Rational lower = supply * (1 - epsilon);
    if (lower < 0) lower = 0;
    return {lower, supply * (1 + epsilon)};
  }
  if (price > 0) return {supply, supply};
  return {Rational(0), supply};
}

/// Demand sets for every trader. In Quasi mode a zero-income trader gets no
/// demand set: any zero-cost bundle is acceptable for it.
inline std::vector<std::optional<DemandSet>> demand_sets(const Market& m, const PriceVector& p,
                                                         Mode mode) {
  std::vector<std::optional<DemandSet>> sets;
  sets.reserve(m.n_traders());
  for (const auto& t : m.traders()) {
    if (mode == Mode::Quasi && budget(t, p) == 0)
      sets.emplace_back();
    else
      sets.emplace_back(optimal_demand(t, p));
  }
  return sets;
}

struct FeasibilityResult {
  std::optional<std::vector<Bundle>> allocation;
  std::string reason;
};

/// Searches the product of all traders' demand sets for an allocation that
/// meets every good's clearing window, as a bounded circulation in money
/// units: source -> trader (mandatory tie spend or residual budget) ->
/// good (tie and residual arcs) -> sink (clearing window net of forced demand).
/// Zero-price goods carry no money and are settled separately. Throws
/// UnboundedDemand.
inline FeasibilityResult clearing_feasibility(const Market& m, const PriceVector& p, Mode mode,
                                              const Rational& epsilon) {
  require_dimension(m, p);
  const std::size_t n = m.n_goods();
  auto sets = demand_sets(m, p, mode);
  auto supply = m.total_supply();

  RationalVector forced_total(n, Rational(0));
  for (const auto& d : sets)
    if (d)
      for (std::size_t k = 0; k < n; ++k) forced_total[k] += d->forced[k];

  std::vector<ClearingWindow> windows;
  for (std::size_t k = 0; k < n; ++k) {
    windows.push_back(clearing_window(mode, epsilon, p[k], supply[k]));
    if (forced_total[k] > windows[k].upper)
      return {std::nullopt, "clearing: forced demand " + to_string(forced_total[k]) + " for good " +
                                std::to_string(k) + " exceeds its upper bound " +
                                to_string(windows[k].upper)};
  }

  BoundedCirculation flow;
  const std::size_t source = flow.add_node(), sink = flow.add_node();
  std::vector<std::size_t> good_node(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (p[k] == 0) continue;
    good_node[k] = flow.add_node();
    Rational lower = p[k] * (windows[k].lower - forced_total[k]);
    if (lower < 0) lower = 0;
    flow.add_edge(good_node[k], sink, lower, p[k] * (windows[k].upper - forced_total[k]));
  }
  flow.add_edge(sink, source, 0, std::nullopt);

  struct Purchase {
    std::size_t trader, good, arc;
  };
  std::vector<Purchase> purchases;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& d = sets[i];
    if (!d) continue;
    if (d->spends_all()) {
      if (d->tie_spend == 0) continue;
      std::size_t node = flow.add_node();
      flow.add_edge(source, node, d->tie_spend, d->tie_spend);
      for (const auto& offer : d->tie_offers)
        purchases.push_back(
            {i, offer.good, flow.add_edge(node, good_node[offer.good], 0, offer.money_cap())});
    } else if (d->residual > 0) {
      std::size_t node = flow.add_node();
      flow.add_edge(source, node, 0, d->residual);
      for (std::size_t k = 0; k < n; ++k)
        if (p[k] > 0) purchases.push_back({i, k, flow.add_edge(node, good_node[k], 0, std::nullopt)});
    }
  }

  if (!flow.solve())
    return {std::nullopt, "clearing: no optimal allocation meets every clearing bound (unmet " +
                              to_string(flow.shortfall()) + " in money units)"};

  std::vector<Bundle> allocation;
  for (std::size_t i = 0; i < sets.size(); ++i)
    allocation.push_back(sets[i] ? sets[i]->forced : Bundle(n, Rational(0)));
  for (const auto& buy : purchases) allocation[buy.trader][buy.good] += flow.flow(buy.arc) / p[buy.good];

  // Zero-price goods: anyone may take more for free; the first trader does.
  for (std::size_t k = 0; k < n; ++k) {
    if (p[k] != 0 || allocation.empty()) continue;
    if (forced_total[k] < windows[k].lower) allocation[0][k] += windows[k].lower - forced_total[k];
  }
  if (allocation.empty()) {
    for (std::size_t k = 0; k < n; ++k)
      if (windows[k].lower > 0) return {std::nullopt, "clearing: market has no traders"};
  }
  return {std::move(allocation), {}};
}

/// Whether a certificate's allocation satisfies its mode's conditions,
/// recomputed from the market and prices alone.
inline bool revalidate(const Market& m, const PriceVector& prices, const Certificate& cert) {
  if (!cert.allocation || cert.allocation->size() != m.n_traders()) return false;
  PriceVector p = normalize_prices(prices);
  const auto& allocation = *cert.allocation;
  for (std::size_t i = 0; i < m.n_traders(); ++i) {
    const auto& x = allocation[i];
    if (x.size() != m.n_goods()) return false;
    bool optimal = in_opt(m.trader(i), p, x);
    if (!optimal && cert.mode == Mode::Quasi) {
      bool nonneg = std::all_of(x.begin(), x.end(), [](const Rational& q) { return q >= 0; });
      optimal = nonneg && budget(m.trader(i), p) == 0 && bundle_cost(x, p) == 0;
    }
    if (!optimal) return false;
  }
  auto supply = m.total_supply();
  for (std::size_t k = 0; k < m.n_goods(); ++k) {
    Rational allocated = 0;
    for (const auto& x : allocation) allocated += x[k];
    auto window = clearing_window(cert.mode, cert.epsilon, p[k], supply[k]);
    if (allocated < window.lower || allocated > window.upper) return false;
  }
  return true;
}

/// Clearing report of the canonical bundles; no feasibility search.
/// Throws UnboundedDemand.
inline ClearingReport imbalance_profile(const Market& m, const PriceVector& p,
                                        const Rational& epsilon = 0) {
  require_dimension(m, p);
  std::vector<Bundle> allocation;
  for (const auto& t : m.traders()) allocation.push_back(canonical_bundle(optimal_demand(t, p)));
  return clearing_report(m, allocation, epsilon);
}

/// Decides whether `prices` (normalized first) is an equilibrium of the given
/// kind and returns an auditable certificate. Quasi mode uses exact clearing.
inline Certificate verify(const Market& m, const PriceVector& prices, Mode mode,
                          const Rational& epsilon = 0) {
  require_dimension(m, prices);
  if (epsilon < 0) throw Error(Errc::Schema, "negative epsilon");
  PriceVector p = normalize_prices(prices);
  Certificate cert;
  cert.mode = mode;
  cert.epsilon = mode == Mode::Approximate ? epsilon : Rational(0);
  const Rational& eps = cert.epsilon;

  FeasibilityResult result;
  try {
    result = clearing_feasibility(m, p, mode, eps);
  } catch (const Error& e) {
    if (e.code() != Errc::UnboundedDemand) throw;
    cert.reason = std::string("unbounded demand: ") + e.what();
    // Report what the bounded traders would buy.
    std::vector<Bundle> partial;
    for (const auto& t : m.traders()) {
      try {
        partial.push_back(canonical_bundle(optimal_demand(t, p)));
      } catch (const Error&) {
        partial.push_back(Bundle(m.n_goods(), Rational(0)));
      }
    }
    cert.report = clearing_report(m, partial, eps);
    return cert;
  }

  if (!result.allocation) {
    cert.reason = result.reason;
    std::vector<Bundle> canonical;
    auto sets = demand_sets(m, p, mode);
    for (const auto& d : sets)
      canonical.push_back(d ? canonical_bundle(*d) : Bundle(m.n_goods(), Rational(0)));
    cert.report = clearing_report(m, canonical, eps);
    return cert;
  }

  cert.accepted = true;
  cert.report = clearing_report(m, *result.allocation, eps);
  cert.allocation = std::move(result.allocation);
  if (!revalidate(m, p, cert))
    throw Error(Errc::InvariantViolation, "accepted allocation failed re-validation");
  return cert;
}

}  // namespace plcmarket
