#pragma once

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spcd/assembly.hpp"

namespace spcd {

/// Elimination breakdown: some pivot fell below the safety floor.
class singular_pivot_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SolveStats {
  std::size_t n = 0;
  std::chrono::duration<double> elapsed{0.0};
  double pivot_min_abs = 0.0;
};

struct SolveResult {
  std::vector<double> solution;
  SolveStats stats;
};

/**
 * @brief Direct tridiagonal solve (Thomas elimination): exactly one forward
 *        sweep and one back substitution, O(n) time and workspace.
 *
 * No pivoting. The assembled systems are M-matrices (upwind) or close enough
 * to diagonally dominant (central with the convection bound), where plain
 * elimination is backward stable. A pivot of magnitude below 1e-300 aborts
 * with singular_pivot_error instead of silently dividing toward inf.
 */
inline SolveResult thomas_solve(const TridiagonalSystem& system) {
  const std::size_t n = system.size();
  if (n == 0) throw std::invalid_argument("thomas_solve: empty system");
  if (system.sub.size() != n - 1 || system.sup.size() != n - 1 ||
      system.rhs.size() != n)
    throw std::invalid_argument("thomas_solve: inconsistent band lengths");

  constexpr double pivot_floor = 1e-300;
  const auto start = std::chrono::steady_clock::now();

  std::vector<double> upper(n > 1 ? n - 1 : 0);  // scaled superdiagonal
  std::vector<double> x(n);                      // scaled rhs, then solution

  double pivot = system.diag[0];
  double pivot_min = std::abs(pivot);
  if (!(pivot_min >= pivot_floor))
    throw singular_pivot_error("thomas_solve: near-zero pivot in row 0");
  if (n > 1) upper[0] = system.sup[0] / pivot;
  x[0] = system.rhs[0] / pivot;

  for (std::size_t i = 1; i < n; ++i) {
    pivot = system.diag[i] - system.sub[i - 1] * upper[i - 1];
    const double magnitude = std::abs(pivot);
    if (magnitude < pivot_min) pivot_min = magnitude;
    if (!(magnitude >= pivot_floor))  // also trips on NaN
      throw singular_pivot_error("thomas_solve: near-zero pivot in row " +
                                 std::to_string(i));
    if (i + 1 < n) upper[i] = system.sup[i] / pivot;
    x[i] = (system.rhs[i] - system.sub[i - 1] * x[i - 1]) / pivot;
  }

  for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper[i] * x[i + 1];

  const auto stop = std::chrono::steady_clock::now();
  return {std::move(x), SolveStats{n, stop - start, pivot_min}};
}

}  // namespace spcd
