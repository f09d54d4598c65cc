#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plcmarket/error.hpp"
#include "plcmarket/rational.hpp"

namespace plcmarket {

using RationalMatrix = std::vector<RationalVector>;

/// Square two-player game with payoffs in [-1, 1] and at most
/// `kMaxNonzeros` nonzero entries in every row and column of A and B.
struct BimatrixGame {
  static constexpr std::size_t kMaxNonzeros = 10;

  std::size_t n = 0;
  RationalMatrix A;
  RationalMatrix B;

  /// A_i y^T.
  Rational row_payoff(std::size_t i, const RationalVector& y) const { return dot(A[i], y); }
  /// x B_j: the column player's payoff for column j.
  Rational column_payoff(std::size_t j, const RationalVector& x) const {
    Rational total = 0;
    for (std::size_t k = 0; k < n; ++k) total += x[k] * B[k][j];
    return total;
  }
};

/// A distribution over n actions.
struct MixedStrategy {
  RationalVector weights;

  static MixedStrategy pure(std::size_t n, std::size_t action) {
    MixedStrategy s{RationalVector(n, Rational(0))};
    s.weights[action] = 1;
    return s;
  }
  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy{RationalVector(n, rat(1, static_cast<long>(n)))};
  }

  bool valid() const {
    Rational total = 0;
    for (const auto& w : weights) {
      if (w < 0) return false;
      total += w;
    }
    return total == 1;
  }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;
};

inline BimatrixGame validate_game(RationalMatrix A, RationalMatrix B) {
  const std::size_t n = A.size();
  if (n == 0 || B.size() != n)
    throw Error(Errc::ShapeMismatch, "payoff matrices must be square, nonempty and equal size");
  for (const auto* M : {&A, &B})
    for (const auto& row : *M)
      if (row.size() != n) throw Error(Errc::ShapeMismatch, "payoff matrix is not square");

  for (const auto* M : {&A, &B}) {
    const char name = M == &A ? 'A' : 'B';
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t row_count = 0, col_count = 0;
      for (std::size_t c = 0; c < n; ++c) {
        const auto& v = (*M)[r][c];
        if (v < -1 || v > 1)
          throw Error(Errc::NotNormalized, std::string(1, name) + "[" + std::to_string(r) + "][" +
                                               std::to_string(c) + "] = " + to_string(v));
        if (v != 0) ++row_count;
        if ((*M)[c][r] != 0) ++col_count;
      }
      if (row_count > BimatrixGame::kMaxNonzeros)
        throw Error(Errc::NotSparse, std::string(1, name) + " row " + std::to_string(r) + " has " +
                                         std::to_string(row_count) + " nonzeros");
      if (col_count > BimatrixGame::kMaxNonzeros)
        throw Error(Errc::NotSparse, std::string(1, name) + " column " + std::to_string(r) +
                                         " has " + std::to_string(col_count) + " nonzeros");
    }
  }
  return BimatrixGame{n, std::move(A), std::move(B)};
}

/// A violated implication of the well-supported condition: action `i` is
/// played although it trails action `j` by more than ε.
struct WsneViolation {
  enum class Side { Row, Column };
  Side side;
  std::size_t i;
  std::size_t j;
};

/// ε-well-supported Nash check. Returns the first violation in
/// (side, i, j) lexicographic order, or nothing when the profile passes.
inline std::optional<WsneViolation> check_wsne(const BimatrixGame& g, const MixedStrategy& x,
                                               const MixedStrategy& y, const Rational& epsilon) {
  if (x.weights.size() != g.n || y.weights.size() != g.n || !x.valid() || !y.valid())
    throw Error(Errc::Schema, "strategies must be distributions over " + std::to_string(g.n) +
                                  " actions");
  RationalVector row(g.n), col(g.n);
  for (std::size_t k = 0; k < g.n; ++k) {
    row[k] = g.row_payoff(k, y.weights);
    col[k] = g.column_payoff(k, x.weights);
  }
  for (std::size_t i = 0; i < g.n; ++i) {
    if (x.weights[i] == 0) continue;
    for (std::size_t j = 0; j < g.n; ++j)
      if (row[i] + epsilon < row[j]) return WsneViolation{WsneViolation::Side::Row, i, j};
  }
  for (std::size_t i = 0; i < g.n; ++i) {
    if (y.weights[i] == 0) continue;
    for (std::size_t j = 0; j < g.n; ++j)
      if (col[i] + epsilon < col[j]) return WsneViolation{WsneViolation::Side::Column, i, j};
  }
  return std::nullopt;
}

}  // namespace plcmarket
