#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace csmaa {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { GreaterEqual, LessEqual, Equal };

struct LpRow {
  std::vector<double> coeffs;
  RowSense sense = RowSense::GreaterEqual;
  double rhs = 0.0;
};

/// maximize objective . x  subject to rows and lower <= x <= upper.
/// Infinite bounds are allowed on either side.
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LpRow> rows;

  explicit LpProblem(std::size_t n = 0)
      : num_vars(n), objective(n, 0.0), lower(n, -kInf), upper(n, kInf) {}
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex. Entering columns follow Dantzig's rule;
/// ties in the ratio test are broken lexicographically, which rules out
/// cycling. Deterministic for a fixed problem.
LpResult solve_lp(const LpProblem& problem);

}  // namespace csmaa
