#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "plcmarket/rational.hpp"

namespace plcmarket {

/// Edmonds-Karp max flow over exact rationals. BFS augmentation terminates
/// with arbitrary real capacities, so no scaling is needed.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes = 0) : adjacency_(nodes) {}

  std::size_t add_node() {
    adjacency_.emplace_back();
    return adjacency_.size() - 1;
  }

  /// Returns a handle for flow() queries.
  std::size_t add_edge(std::size_t from, std::size_t to, const Rational& capacity) {
    adjacency_[from].push_back(edges_.size());
    edges_.push_back({to, capacity, capacity});
    adjacency_[to].push_back(edges_.size());
    edges_.push_back({from, Rational(0), Rational(0)});
    return edges_.size() - 2;
  }

  Rational run(std::size_t source, std::size_t sink) {
    Rational total = 0;
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> via(adjacency_.size());
    while (true) {
      std::fill(via.begin(), via.end(), none);
      std::deque<std::size_t> queue{source};
      via[source] = edges_.size();
      while (!queue.empty() && via[sink] == none) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t e : adjacency_[u]) {
          const auto& edge = edges_[e];
          if (via[edge.to] == none && edge.residual > 0) {
            via[edge.to] = e;
            queue.push_back(edge.to);
          }
        }
      }
      if (via[sink] == none) break;
      Rational push = -1;
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        const auto& r = edges_[via[v]].residual;
        if (push < 0 || r < push) push = r;
      }
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].residual -= push;
        edges_[via[v] ^ 1].residual += push;
      }
      total += push;
    }
    return total;
  }

  Rational flow(std::size_t edge) const { return edges_[edge].capacity - edges_[edge].residual; }

 private:
  struct Edge {
    std::size_t to;
    Rational capacity;
    Rational residual;
  };
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
};

/// Feasibility of a circulation with lower and upper arc bounds, via the
/// standard reduction to one max-flow from a super source to a super sink.
class BoundedCirculation {
 public:
  std::size_t add_node() { return node_count_++; }

  /// `upper` empty means unbounded.
  std::size_t add_edge(std::size_t from, std::size_t to, const Rational& lower,
                       std::optional<Rational> upper) {
    arcs_.push_back({from, to, lower, std::move(upper)});
    return arcs_.size() - 1;
  }

  /// True when a feasible circulation exists; flows are then readable.
  bool solve() {
    // Any feasible circulation can be cancelled down so that no arc carries
    // more than the finite bounds put together.
    Rational unbounded = 1;
    for (const auto& a : arcs_) {
      unbounded += a.lower;
      if (a.upper) unbounded += *a.upper;
    }
    MaxFlow net(node_count_ + 2);
    const std::size_t super_source = node_count_, super_sink = node_count_ + 1;
    std::vector<Rational> excess(node_count_, Rational(0));
    handles_.clear();
    for (const auto& a : arcs_) {
      Rational upper = a.upper ? *a.upper : unbounded;
      if (upper < a.lower) return false;
      handles_.push_back(net.add_edge(a.from, a.to, upper - a.lower));
      excess[a.to] += a.lower;
      excess[a.from] -= a.lower;
    }
    Rational required = 0;
    for (std::size_t v = 0; v < node_count_; ++v) {
      if (excess[v] > 0) {
        net.add_edge(super_source, v, excess[v]);
        required += excess[v];
      } else if (excess[v] < 0) {
        net.add_edge(v, super_sink, -excess[v]);
      }
    }
    Rational achieved = net.run(super_source, super_sink);
    flows_.clear();
    shortfall_ = required - achieved;
    if (achieved != required) return false;
    for (std::size_t i = 0; i < arcs_.size(); ++i)
      flows_.push_back(arcs_[i].lower + net.flow(handles_[i]));
    return true;
  }

  const Rational& flow(std::size_t arc) const { return flows_.at(arc); }
  /// Unmet lower-bound demand after the last solve (0 when feasible).
  const Rational& shortfall() const { return shortfall_; }

 private:
  struct Arc {
    std::size_t from, to;
    Rational lower;
    std::optional<Rational> upper;
  };
  std::size_t node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> handles_;
  std::vector<Rational> flows_;
  Rational shortfall_ = 0;
};

}  // namespace plcmarket
