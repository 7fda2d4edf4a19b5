#include <algorithm>
#include <cmath>
#include <sstream>

#include "csmaa/error.hpp"
#include "csmaa/lp.hpp"
#include "csmaa/preferences.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csmaa;

namespace {

ConstraintSet with_profile(const Hierarchy& h, const std::string& text) {
  std::istringstream in(text);
  ConstraintSet c = base_constraints(h);
  c.append(compile(parse_profile(in, h), h, nullptr));
  return c;
}

// Checks a witness directly: each row at eps, plus the monotonicity family
// by its negative-partner minimum.
double witness_violation(const ConstraintSet& c, const MobiusVector& m, double eps) {
  double worst = 0.0;
  for (const auto& r : c.rows) {
    double s = r.epsilon_coeff * eps;
    for (std::size_t k = 0; k < r.coeffs.size(); ++k) s += r.coeffs[k] * m.coefficients()[k];
    const double v = r.cmp == Comparator::Equal ? std::abs(s - r.rhs) : r.rhs - s;
    worst = std::max(worst, v);
  }
  for (std::size_t t = 0; t < m.leaves(); ++t) {
    double s = m.singleton(t);
    for (std::size_t u = 0; u < m.leaves(); ++u)
      if (u != t) s += std::min(0.0, m.pair(std::min(t, u), std::max(t, u)));
    worst = std::max(worst, -s);
  }
  return worst;
}

}  // namespace

TEST_CASE("base constraints alone are compatible") {
  const Hierarchy h = fixtures::eis();
  const ConstraintSet c = base_constraints(h);
  const LpSolution s = solve_epsilon_max(c);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.compatible());
  CHECK(s.epsilon_star > 0.0);
  CHECK(s.epsilon_star <= 1.0);
  CHECK(witness_violation(c, s.witness, s.epsilon_star) <= kWitnessSlack);
}

TEST_CASE("DMU profile is compatible and its witness is valid") {
  const Hierarchy h = fixtures::eis();
  ConstraintSet c = base_constraints(h);
  c.append(compile(load_profile(fixtures::data("dmu.prefs"), h), h, nullptr));
  const LpSolution s = solve_epsilon_max(c);
  REQUIRE(s.compatible());
  CHECK(witness_violation(c, s.witness, s.epsilon_star) <= kWitnessSlack);
  CHECK(max_violation(c, s.witness.coefficients(), s.epsilon_star) <= kWitnessSlack);

  const LpSolution again = solve_epsilon_max(c);
  CHECK(again.epsilon_star == s.epsilon_star);
  CHECK(std::equal(again.witness.coefficients().begin(), again.witness.coefficients().end(),
                   s.witness.coefficients().begin()));
}

TEST_CASE("contradictory importance pair") {
  const Hierarchy h = fixtures::flat(2);
  const ConstraintSet c =
      with_profile(h, "A: importance > node=root : a | b\nB: importance > node=root : b | a\n");
  const LpSolution s = solve_epsilon_max(c);
  CHECK_FALSE(s.compatible());
  CHECK(s.epsilon_star == doctest::Approx(0.0).epsilon(1e-9));
  auto ids = diagnose(c);
  std::sort(ids.begin(), ids.end());
  CHECK(ids == std::vector<std::string>{"A", "B"});
}

TEST_CASE("equality against strict preference") {
  const Hierarchy h = fixtures::eis();
  const ConstraintSet c = with_profile(
      h, "E: importance = node=root : FC | IN\nG: importance > node=root : FC | IN\n"
         "X: interaction + node=root : IA IMP\n");
  CHECK_FALSE(solve_epsilon_max(c).compatible());
  auto ids = diagnose(c);
  std::sort(ids.begin(), ids.end());
  CHECK(ids == std::vector<std::string>{"E", "G"});
}

TEST_CASE("diagnose flags an injected contradiction") {
  const Hierarchy h = fixtures::eis();
  std::ifstream in(fixtures::data("dmu.prefs"));
  std::string text((std::istreambuf_iterator<char>(in)), {});
  text += "BAD: importance > node=root : IMP | FC\n";
  const ConstraintSet c = with_profile(h, text);
  CHECK_FALSE(solve_epsilon_max(c).compatible());
  const auto ids = diagnose(c);
  CHECK(std::find(ids.begin(), ids.end(), "BAD") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "U1") != ids.end());
  CHECK(solve_epsilon_max(c.without_tag("BAD")).compatible());
}

TEST_CASE("diagnose rejects compatible sets") {
  CHECK_THROWS_AS(diagnose(base_constraints(3)), Error);
}

TEST_CASE("chebyshev center lies inside the region") {
  const Hierarchy h = fixtures::eis();
  ConstraintSet c = base_constraints(h);
  c.append(compile(load_profile(fixtures::data("dmu.prefs"), h), h, nullptr));
  const LpSolution s = solve_epsilon_max(c);
  const double eps = s.epsilon_star / 2;
  const ChebyshevCenter cc = chebyshev_center(c, eps);
  CHECK(cc.radius > 0.0);
  const MobiusVector m(27, cc.center);
  CHECK(witness_violation(c, m, eps) <= kWitnessSlack);
  for (std::size_t t = 0; t < 27; ++t) CHECK(m.singleton(t) >= cc.radius - 1e-9);
}

TEST_CASE("MPS output") {
  const Hierarchy h = fixtures::flat(2);
  const ConstraintSet c = with_profile(h, "A: importance > node=root : a | b\n");
  std::ostringstream out;
  write_mps(out, c, coordinate_labels(h), "tiny");
  const std::string mps = out.str();
  for (const char* section : {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"})
    CHECK(mps.find(section) != std::string::npos);
  CHECK(mps.find("EPS") != std::string::npos);
  CHECK(mps.rfind("ENDATA") > mps.find("BOUNDS"));
}
