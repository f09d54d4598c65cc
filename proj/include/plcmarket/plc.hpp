#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plcmarket/error.hpp"
#include "plcmarket/rational.hpp"

namespace plcmarket {

/// Concave piecewise-linear function r: R+ -> R+ with r(0) = 0, described by
/// slopes θ0 > θ1 > ... > θt ≥ 0 and breakpoints 0 < a1 < ... < at.
/// Segment k covers [a_k, a_{k+1}] with a_0 = 0; the last one is a ray.
///
/// The zero function is its own kind rather than a single slope-0 ray.
class PLCFunction {
 public:
  enum class Kind { Zero, Segments };

  /// The zero function.
  PLCFunction() = default;

  static PLCFunction zero() { return PLCFunction(); }

  /// Validating constructor; see validate_plc.
  static PLCFunction from_representation(RationalVector slopes, RationalVector breaks);

  /// Shorthands for [θ] and [θ0, θ1; a1]. A [0] ray becomes the zero function.
  static PLCFunction linear(const Rational& slope) {
    return from_representation({slope}, {});
  }
  static PLCFunction two_segment(const Rational& first, const Rational& second,
                                 const Rational& breakpoint) {
    return from_representation({first, second}, {breakpoint});
  }

  Kind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  const RationalVector& slopes() const noexcept { return slopes_; }
  const RationalVector& breakpoints() const noexcept { return breaks_; }

  /// Number of linear pieces (0 for the zero function).
  std::size_t segment_count() const noexcept { return slopes_.size(); }

  /// Length of segment k, or nullopt for the final ray.
  std::optional<Rational> segment_length(std::size_t k) const {
    if (k + 1 >= slopes_.size()) return std::nullopt;
    Rational start = k == 0 ? Rational(0) : breaks_[k - 1];
    return breaks_[k] - start;
  }

  /// θt > 0.
  bool strictly_monotone() const { return !is_zero() && slopes_.back() > 0; }

  /// α ≥ θ0 and θt ≥ 1. The zero function is not α-bounded by itself; market
  /// level predicates treat it separately.
  bool alpha_bounded(const Rational& alpha) const {
    return !is_zero() && alpha >= slopes_.front() && slopes_.back() >= 1;
  }

  Rational operator()(const Rational& x) const;

  friend bool operator==(const PLCFunction&, const PLCFunction&) = default;

 private:
  Kind kind_ = Kind::Zero;
  RationalVector slopes_;
  RationalVector breaks_;
};

inline PLCFunction PLCFunction::from_representation(RationalVector slopes, RationalVector breaks) {
  if (slopes.empty() || slopes.size() != breaks.size() + 1)
    throw Error(Errc::LengthMismatch, std::to_string(slopes.size()) + " slopes, " +
                                          std::to_string(breaks.size()) + " breakpoints");
  for (const auto& s : slopes) {
    if (s < 0) throw Error(Errc::NegativeSlope, "slope " + to_string(s));
  }
  for (std::size_t k = 1; k < slopes.size(); ++k) {
    if (!(slopes[k] < slopes[k - 1]))
      throw Error(Errc::NonDecreasingSlopes,
                  "slope " + std::to_string(k) + " = " + to_string(slopes[k]) +
                      " is not below " + to_string(slopes[k - 1]));
  }
  Rational previous = 0;
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    if (!(breaks[k] > previous))
      throw Error(Errc::NonIncreasingBreakpoints,
                  "breakpoint " + std::to_string(k + 1) + " = " + to_string(breaks[k]) +
                      " is not above " + to_string(previous));
    previous = breaks[k];
  }

  PLCFunction f;
  // Strict decrease leaves [0] as the only all-zero representation.
  if (slopes.size() == 1 && slopes.front() == 0) return f;
  f.kind_ = Kind::Segments;
  f.slopes_ = std::move(slopes);
  f.breaks_ = std::move(breaks);
  return f;
}

/// Checks a raw representation and builds the function. All slopes zero with
/// at most one slope gives the zero function.
inline PLCFunction validate_plc(RationalVector slopes, RationalVector breaks) {
  return PLCFunction::from_representation(std::move(slopes), std::move(breaks));
}

/// Evaluates the function; x must be non-negative.
inline Rational PLCFunction::operator()(const Rational& x) const {
  if (x < 0) throw Error(Errc::NegativeArgument, "PLC argument " + to_string(x));
  if (is_zero()) return 0;
  Rational value = 0;
  Rational start = 0;
  for (std::size_t k = 0; k < slopes_.size(); ++k) {
    bool last = k + 1 == slopes_.size();
    if (last || x <= breaks_[k]) {
      value += slopes_[k] * (x - start);
      return value;
    }
    value += slopes_[k] * (breaks_[k] - start);
    start = breaks_[k];
  }
  return value;
}

inline Rational utility_eval(const PLCFunction& f, const Rational& x) { return f(x); }

}  // namespace plcmarket
