#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "csmaa/capacity.hpp"
#include "csmaa/simplex.hpp"

namespace csmaa {

/// eps* at or above this value means a compatible model exists.
inline constexpr double kCompatibilityThreshold = 1e-6;
/// Slack allowed when validating LP witnesses.
inline constexpr double kWitnessSlack = 1e-9;

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double epsilon_star = 0.0;
  MobiusVector witness;
  std::size_t pivots = 0;

  bool compatible() const {
    return status == LpStatus::Optimal && epsilon_star >= kCompatibilityThreshold;
  }
};

/// max eps subject to the constraint set, with eps <= 1. When the set carries
/// the monotonicity family, every pair coefficient is written as p - q with
/// p, q >= 0 and the family becomes one row per leaf,
///   m({t}) - sum_{t1} q({t,t1}) >= 0,
/// whose projection onto m is exactly the family.
LpSolution solve_epsilon_max(const ConstraintSet& c);

/// Deletion filter over preference-tagged rows: returns one irreducible
/// subset of statement ids that is incompatible on its own (together with
/// the untagged base rows). Throws if the full set is compatible.
std::vector<std::string> diagnose(const ConstraintSet& c);

struct ChebyshevCenter {
  std::vector<double> center;
  double radius = 0.0;
};

/// Center of the largest ball inside {m : rows hold with eps fixed} measured
/// within the affine hull of the equality rows. Members of the monotonicity
/// family are held at distance r * sqrt(n), a bound on their row norms, so
/// the returned radius is a lower bound on the true inscribed radius.
ChebyshevCenter chebyshev_center(const ConstraintSet& c, double eps);

/// Writes the program solved by solve_epsilon_max (max eps as minimization of
/// -eps) in fixed-column MPS.
void write_mps(std::ostream& out, const ConstraintSet& c, const std::vector<std::string>& labels,
               const std::string& name);

}  // namespace csmaa
