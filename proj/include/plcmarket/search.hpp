#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "plcmarket/market.hpp"
#include "plcmarket/verifier.hpp"

namespace plcmarket {

struct Interval {
  Rational lower;
  Rational upper;
};

struct SearchConfig {
  std::vector<Interval> box;  // one interval per good
  std::size_t grid_k = 4;     // subdivisions per coordinate
  std::size_t refine_rounds = 2;
  std::uint64_t seed = 0;
  std::size_t random_samples = 8;  // extra seeded samples per round
  Rational epsilon = 0;
  std::size_t max_points = 10'000'000;

  /// [lower, upper]^goods.
  static SearchConfig uniform_box(std::size_t goods, const Rational& lower, const Rational& upper) {
    SearchConfig cfg;
    cfg.box.assign(goods, Interval{lower, upper});
    return cfg;
  }
};

struct SearchReport {
  std::optional<PriceVector> best_price;
  Rational best_max_relative_imbalance = 0;
  bool accepted = false;
  std::vector<std::pair<std::size_t, Rational>> trace;  // (round, best score so far)
  std::optional<Certificate> certificate;
  std::size_t evaluated = 0;
};

namespace detail {

inline std::size_t grid_size(std::size_t dims, std::size_t k, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    if (total > cap / (k + 1)) return cap + 1;
    total *= k + 1;
  }
  return total;
}

}  // namespace detail

/// Exploratory equilibrium search: scores grid points of the box by the
/// canonical-bundle imbalance, shrinks the box around the incumbent for a
/// number of rounds, then asks the verifier about the incumbent. Finding
/// approximate equilibria of reduced markets is PPAD-hard, so a failed search
/// proves nothing.
inline SearchReport search_equilibrium(const Market& m, const SearchConfig& cfg) {
  const std::size_t dims = m.n_goods();
  if (cfg.box.size() != dims)
    throw Error(Errc::BoxDimensionMismatch, std::to_string(cfg.box.size()) + " intervals for " +
                                                std::to_string(dims) + " goods");
  if (cfg.grid_k < 1) throw Error(Errc::Schema, "grid_k must be at least 1");
  for (const auto& iv : cfg.box)
    if (iv.lower < 0 || iv.upper < iv.lower)
      throw Error(Errc::Schema, "box intervals need 0 <= lower <= upper");
  std::size_t per_round = detail::grid_size(dims, cfg.grid_k, cfg.max_points);
  if (per_round > cfg.max_points)
    throw Error(Errc::GridBudgetExceeded, "(grid_k + 1)^goods exceeds " + std::to_string(cfg.max_points));

  SearchReport report;
  std::optional<RationalVector> incumbent_raw;
  std::mt19937_64 rng(cfg.seed);

  auto evaluate = [&](const RationalVector& raw) {
    bool any_positive = false;
    for (const auto& v : raw) any_positive = any_positive || v > 0;
    if (!any_positive) return;
    PriceVector p = normalize_prices(raw);
    ++report.evaluated;
    Rational score;
    try {
      score = imbalance_profile(m, p).max_relative_imbalance();
    } catch (const Error& e) {
      if (e.code() == Errc::UnboundedDemand) return;
      throw;
    }
    if (!report.best_price || score < report.best_max_relative_imbalance) {
      report.best_price = std::move(p);
      report.best_max_relative_imbalance = std::move(score);
      incumbent_raw = raw;
    }
  };

  std::vector<Interval> box = cfg.box;
  const Rational k = static_cast<long>(cfg.grid_k);
  constexpr std::uint64_t sample_denominator = 64;
  for (std::size_t round = 0; round <= cfg.refine_rounds; ++round) {
    std::vector<std::size_t> digit(dims, 0);
    RationalVector point(dims);
    while (true) {
      for (std::size_t d = 0; d < dims; ++d)
        point[d] = box[d].lower + (box[d].upper - box[d].lower) * static_cast<long>(digit[d]) / k;
      evaluate(point);
      std::size_t d = 0;
      while (d < dims && ++digit[d] > cfg.grid_k) digit[d++] = 0;
      if (d == dims) break;
    }
    for (std::size_t s = 0; s < cfg.random_samples; ++s) {
      for (std::size_t d = 0; d < dims; ++d) {
        auto u = static_cast<long>(rng() % (sample_denominator + 1));
        point[d] = box[d].lower + (box[d].upper - box[d].lower) * u /
                                      static_cast<long>(sample_denominator);
      }
      evaluate(point);
    }
    if (report.best_price) report.trace.emplace_back(round, report.best_max_relative_imbalance);
    if (!incumbent_raw) break;

    for (std::size_t d = 0; d < dims; ++d) {
      Rational radius = (box[d].upper - box[d].lower) / k;
      Rational lo = (*incumbent_raw)[d] - radius, hi = (*incumbent_raw)[d] + radius;
      box[d].lower = lo < cfg.box[d].lower ? cfg.box[d].lower : lo;
      box[d].upper = hi > cfg.box[d].upper ? cfg.box[d].upper : hi;
    }
  }

  if (report.best_price) {
    report.certificate = verify(m, *report.best_price, Mode::Approximate, cfg.epsilon);
    report.accepted = report.certificate->accepted;
  }
  return report;
}

}  // namespace plcmarket
