#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plcmarket/game.hpp"

namespace plcmarket {

enum class LinearSolveStatus { Unique, Underdetermined, Inconsistent };

struct LinearSolution {
  LinearSolveStatus status = LinearSolveStatus::Inconsistent;
  RationalVector values;  // set when Unique
};

/// Gauss-Jordan elimination over the rationals on [M | b].
inline LinearSolution solve_linear(RationalMatrix M, RationalVector b) {
  const std::size_t rows = M.size();
  const std::size_t cols = rows == 0 ? 0 : M[0].size();
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && M[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(M[pivot], M[rank]);
    std::swap(b[pivot], b[rank]);
    Rational scale = M[rank][c];
    for (std::size_t k = c; k < cols; ++k) M[rank][k] /= scale;
    b[rank] /= scale;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || M[r][c] == 0) continue;
      Rational factor = M[r][c];
      for (std::size_t k = c; k < cols; ++k) M[r][k] -= factor * M[rank][k];
      b[r] -= factor * b[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (b[r] != 0) return {LinearSolveStatus::Inconsistent, {}};
  if (rank < cols) return {LinearSolveStatus::Underdetermined, {}};
  LinearSolution solution{LinearSolveStatus::Unique, RationalVector(cols, Rational(0))};
  for (std::size_t r = 0; r < rank; ++r) solution.values[pivot_col[r]] = b[r];
  return solution;
}

struct NashEquilibrium {
  MixedStrategy x;
  MixedStrategy y;
  Rational row_value;
  Rational column_value;
};

namespace detail {

inline std::vector<std::size_t> members(unsigned mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k)
    if (mask & (1u << k)) out.push_back(k);
  return out;
}

/// Strategy of the opponent supported on `support` that makes every action in
/// `indifferent` earn the same value; payoff(a, k) is the payoff of own action
/// a against opponent action k. Only uniquely determined solutions count.
template <typename Payoff>
std::optional<std::pair<RationalVector, Rational>> indifference_solution(
    std::size_t n, const std::vector<std::size_t>& indifferent,
    const std::vector<std::size_t>& support, Payoff payoff) {
  const std::size_t unknowns = support.size() + 1;  // weights, then value
  RationalMatrix M;
  RationalVector b;
  for (std::size_t a : indifferent) {
    RationalVector row(unknowns, Rational(0));
    for (std::size_t s = 0; s < support.size(); ++s) row[s] = payoff(a, support[s]);
    row.back() = -1;
    M.push_back(std::move(row));
    b.push_back(0);
  }
  RationalVector total(unknowns, Rational(1));
  total.back() = 0;
  M.push_back(std::move(total));
  b.push_back(1);

  auto solution = solve_linear(std::move(M), std::move(b));
  if (solution.status != LinearSolveStatus::Unique) return std::nullopt;
  RationalVector weights(n, Rational(0));
  for (std::size_t s = 0; s < support.size(); ++s) {
    if (solution.values[s] < 0) return std::nullopt;
    weights[support[s]] = solution.values[s];
  }
  Rational value = solution.values.back();
  for (std::size_t a = 0; a < n; ++a) {
    Rational earned = 0;
    for (std::size_t k = 0; k < n; ++k) earned += payoff(a, k) * weights[k];
    if (earned > value) return std::nullopt;
  }
  return std::make_pair(std::move(weights), std::move(value));
}

}  // namespace detail

/// All basic Nash equilibria by enumerating support pairs and solving the
/// indifference systems exactly. Pairs whose system is not uniquely solvable
/// are skipped; their extreme points show up under smaller supports.
inline std::vector<NashEquilibrium> solve_game_support_enum(const BimatrixGame& g,
                                                            std::size_t max_n = 4) {
  if (g.n > max_n)
    throw Error(Errc::NTooLarge, "support enumeration limited to n <= " + std::to_string(max_n));
  const std::size_t n = g.n;
  auto row_payoff = [&](std::size_t i, std::size_t k) -> const Rational& { return g.A[i][k]; };
  auto col_payoff = [&](std::size_t j, std::size_t k) -> const Rational& { return g.B[k][j]; };

  std::vector<NashEquilibrium> found;
  const unsigned full = 1u << n;
  for (unsigned row_mask = 1; row_mask < full; ++row_mask) {
    auto rows = detail::members(row_mask, n);
    for (unsigned col_mask = 1; col_mask < full; ++col_mask) {
      auto cols = detail::members(col_mask, n);
      auto y = detail::indifference_solution(n, rows, cols, row_payoff);
      if (!y) continue;
      auto x = detail::indifference_solution(n, cols, rows, col_payoff);
      if (!x) continue;
      NashEquilibrium eq{MixedStrategy{std::move(x->first)}, MixedStrategy{std::move(y->first)},
                         std::move(y->second), std::move(x->second)};
      bool duplicate = false;
      for (const auto& seen : found)
        if (seen.x == eq.x && seen.y == eq.y) duplicate = true;
      if (!duplicate) found.push_back(std::move(eq));
    }
  }
  return found;
}

}  // namespace plcmarket
