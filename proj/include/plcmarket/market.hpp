#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "plcmarket/error.hpp"
#include "plcmarket/plc.hpp"
#include "plcmarket/rational.hpp"

namespace plcmarket {

struct TraderSpec {
  RationalVector endowment;
  std::vector<PLCFunction> utilities;
  std::string label;

  /// u(x) = Σ_j r_j(x_j).
  Rational utility(const RationalVector& bundle) const {
    Rational total = 0;
    for (std::size_t j = 0; j < utilities.size(); ++j) total += utilities[j](bundle[j]);
    return total;
  }

  friend bool operator==(const TraderSpec&, const TraderSpec&) = default;
};

/// An exchange market with additively separable PLC utilities.
class Market {
 public:
  Market(std::size_t n_goods, std::vector<TraderSpec> traders)
      : n_goods_(n_goods), traders_(std::move(traders)) {
    validate();
  }

  std::size_t n_goods() const noexcept { return n_goods_; }
  std::size_t n_traders() const noexcept { return traders_.size(); }
  const std::vector<TraderSpec>& traders() const noexcept { return traders_; }
  const TraderSpec& trader(std::size_t i) const { return traders_.at(i); }

  /// Σ_i w_{i,j} for every good.
  RationalVector total_supply() const {
    RationalVector supply(n_goods_, Rational(0));
    for (const auto& t : traders_)
      for (std::size_t j = 0; j < n_goods_; ++j) supply[j] += t.endowment[j];
    return supply;
  }

  friend bool operator==(const Market&, const Market&) = default;

 private:
  void validate() const {
    if (n_goods_ == 0) throw Error(Errc::InvalidMarket, "market has no goods");
    for (std::size_t i = 0; i < traders_.size(); ++i) {
      const auto& t = traders_[i];
      if (t.endowment.size() != n_goods_ || t.utilities.size() != n_goods_)
        throw Error(Errc::InvalidMarket, "trader " + std::to_string(i) + " has " +
                                             std::to_string(t.endowment.size()) +
                                             " endowments and " +
                                             std::to_string(t.utilities.size()) +
                                             " utilities for " + std::to_string(n_goods_) +
                                             " goods");
      for (std::size_t j = 0; j < n_goods_; ++j) {
        if (t.endowment[j] < 0)
          throw Error(Errc::InvalidMarket, "trader " + std::to_string(i) +
                                               " has negative endowment of good " +
                                               std::to_string(j));
      }
    }
    auto supply = total_supply();
    if (std::none_of(supply.begin(), supply.end(), [](const Rational& s) { return s > 0; }))
      throw Error(Errc::InvalidMarket, "no good has positive total endowment");
  }

  std::size_t n_goods_;
  std::vector<TraderSpec> traders_;
};

/// Non-negative, not-all-zero price vector. `normalized` means the smallest
/// nonzero entry is exactly 1.
class PriceVector {
 public:
  explicit PriceVector(RationalVector prices) : prices_(std::move(prices)) {
    bool any_positive = false;
    for (const auto& p : prices_) {
      if (p < 0) throw Error(Errc::InvalidMarket, "negative price " + to_string(p));
      if (p > 0) any_positive = true;
    }
    if (!any_positive) throw Error(Errc::AllZeroPrices, "price vector is all zero");
    normalized_ = min_nonzero() == 1;
  }

  const RationalVector& values() const noexcept { return prices_; }
  std::size_t size() const noexcept { return prices_.size(); }
  const Rational& operator[](std::size_t j) const { return prices_[j]; }
  bool normalized() const noexcept { return normalized_; }

  Rational min_nonzero() const {
    Rational smallest = 0;
    for (const auto& p : prices_)
      if (p > 0 && (smallest == 0 || p < smallest)) smallest = p;
    return smallest;
  }

  friend bool operator==(const PriceVector&, const PriceVector&) = default;

 private:
  RationalVector prices_;
  bool normalized_ = false;
};

/// Divides by the smallest nonzero entry; zero entries stay zero.
inline PriceVector normalize_prices(const PriceVector& p) {
  Rational scale = p.min_nonzero();
  RationalVector scaled = p.values();
  for (auto& v : scaled) v /= scale;
  return PriceVector(std::move(scaled));
}

inline PriceVector normalize_prices(const RationalVector& p) {
  return normalize_prices(PriceVector(p));
}

inline void require_dimension(const Market& m, const PriceVector& p) {
  if (p.size() != m.n_goods())
    throw Error(Errc::DimensionMismatch, std::to_string(p.size()) + " prices for " +
                                             std::to_string(m.n_goods()) + " goods");
}

}  // namespace plcmarket
