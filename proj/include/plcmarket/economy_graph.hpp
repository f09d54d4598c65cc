#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "plcmarket/market.hpp"

namespace plcmarket {

/// Adjacency-list digraph over trader indices.
struct Digraph {
  std::vector<std::vector<std::size_t>> out;

  std::size_t size() const noexcept { return out.size(); }
  bool has_edge(std::size_t from, std::size_t to) const {
    return std::binary_search(out[from].begin(), out[from].end(), to);
  }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& a : out) e += a.size();
    return e;
  }
};

/// Edge i -> j (i ≠ j) iff trader i owns some good k that trader j's r_{j,k}
/// is strictly monotone on.
inline Digraph economy_graph(const Market& m) {
  const auto& traders = m.traders();
  std::vector<std::vector<std::size_t>> wanted_by(m.n_goods());
  for (std::size_t j = 0; j < traders.size(); ++j)
    for (std::size_t k = 0; k < m.n_goods(); ++k)
      if (traders[j].utilities[k].strictly_monotone()) wanted_by[k].push_back(j);

  Digraph g;
  g.out.resize(traders.size());
  std::vector<std::size_t> mark(traders.size(), traders.size());
  for (std::size_t i = 0; i < traders.size(); ++i) {
    for (std::size_t k = 0; k < m.n_goods(); ++k) {
      if (!(traders[i].endowment[k] > 0)) continue;
      for (std::size_t j : wanted_by[k]) {
        if (j == i || mark[j] == i) continue;
        mark[j] = i;
        g.out[i].push_back(j);
      }
    }
    std::sort(g.out[i].begin(), g.out[i].end());
  }
  return g;
}

/// Tarjan's algorithm, iterative. Returns the component id of every vertex.
inline std::vector<std::size_t> strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), component(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, next_component = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& frame = call.back();
      std::size_t v = frame.vertex;
      if (frame.edge < g.out[v].size()) {
        std::size_t w = g.out[v][frame.edge++];
        if (index[w] == unvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = next_component;
        } while (w != v);
        ++next_component;
      }
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().vertex;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return component;
}

/// Vacuously true for graphs with at most one vertex.
inline bool is_strongly_connected(const Digraph& g) {
  if (g.size() <= 1) return true;
  auto component = strongly_connected_components(g);
  return std::all_of(component.begin(), component.end(),
                     [&](std::size_t c) { return c == component.front(); });
}

struct MarketClassReport {
  bool is_2_linear = false;
  /// Smallest α ≥ 1 the market is α-bounded for; empty when no α works
  /// (some nonzero piece ends with a slope below 1).
  std::optional<Rational> alpha_bound;
  /// Smallest t the market is t-sparse for.
  std::size_t sparsity_t = 0;
  bool strongly_connected = false;

  // Predicates against the requested (α, t).
  Rational alpha_requested = 1;
  std::size_t t_requested = 0;
  bool is_alpha_bounded = false;
  bool is_t_sparse = false;

  bool all() const { return is_2_linear && is_alpha_bounded && is_t_sparse && strongly_connected; }
};

inline MarketClassReport classify_market(const Market& m, const Rational& alpha, std::size_t t) {
  MarketClassReport report;
  report.alpha_requested = alpha;
  report.t_requested = t;
  report.is_2_linear = true;
  Rational max_first_slope = 1;
  bool bounded_exists = true;
  report.is_alpha_bounded = true;
  for (const auto& trader : m.traders()) {
    std::size_t owned = 0, wanted = 0;
    for (std::size_t k = 0; k < m.n_goods(); ++k) {
      if (trader.endowment[k] > 0) ++owned;
      const auto& r = trader.utilities[k];
      if (r.is_zero()) continue;
      ++wanted;
      if (r.segment_count() > 2) report.is_2_linear = false;
      if (r.slopes().back() < 1) bounded_exists = false;
      max_first_slope = std::max(max_first_slope, r.slopes().front());
      if (!r.alpha_bounded(alpha)) report.is_alpha_bounded = false;
    }
    report.sparsity_t = std::max({report.sparsity_t, owned, wanted});
  }
  if (bounded_exists) report.alpha_bound = max_first_slope;
  report.is_t_sparse = report.sparsity_t <= t;
  report.strongly_connected = is_strongly_connected(economy_graph(m));
  return report;
}

}  // namespace plcmarket
