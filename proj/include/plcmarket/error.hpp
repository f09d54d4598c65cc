#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plcmarket {

enum class Errc {
  // rationals and input
  BadRational,
  ZeroDenominator,
  Schema,
  // PLC functions
  NonDecreasingSlopes,
  NonIncreasingBreakpoints,
  NegativeSlope,
  LengthMismatch,
  NegativeArgument,
  // markets and prices
  InvalidMarket,
  AllZeroPrices,
  DimensionMismatch,
  // demand / verification
  UnboundedDemand,
  // price-regulating family and reduction
  NTooSmall,
  NTooLarge,
  NotNormalized,
  NotSparse,
  ShapeMismatch,
  DegenerateExtraction,
  // search
  BoxDimensionMismatch,
  GridBudgetExceeded,
  // an internal consistency check failed (a bug, not bad input)
  InvariantViolation,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::BadRational: return "BadRational";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::Schema: return "Schema";
    case Errc::NonDecreasingSlopes: return "NonDecreasingSlopes";
    case Errc::NonIncreasingBreakpoints: return "NonIncreasingBreakpoints";
    case Errc::NegativeSlope: return "NegativeSlope";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NegativeArgument: return "NegativeArgument";
    case Errc::InvalidMarket: return "InvalidMarket";
    case Errc::AllZeroPrices: return "AllZeroPrices";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnboundedDemand: return "UnboundedDemand";
    case Errc::NTooSmall: return "NTooSmall";
    case Errc::NTooLarge: return "NTooLarge";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotSparse: return "NotSparse";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DegenerateExtraction: return "DegenerateExtraction";
    case Errc::BoxDimensionMismatch: return "BoxDimensionMismatch";
    case Errc::GridBudgetExceeded: return "GridBudgetExceeded";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure class;
/// the message carries the detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// Input errors map to CLI exit code 2, invariant violations to 3.
  bool is_input_error() const noexcept {
    return code_ != Errc::InvariantViolation && code_ != Errc::UnboundedDemand &&
           code_ != Errc::DegenerateExtraction;
  }

 private:
  Errc code_;
};

}  // namespace plcmarket
