#include <random>
#include <sstream>

#include "csmaa/error.hpp"
#include "csmaa/preferences.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csmaa;

namespace {

PreferenceProfile parse(const std::string& text, const Hierarchy& h,
                        std::span<const std::string> alts = {}) {
  std::istringstream in(text);
  return parse_profile(in, h, alts);
}

double dot(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

TEST_CASE("bundled DMU profile") {
  const Hierarchy h = fixtures::eis();
  const PreferenceProfile p = load_profile(fixtures::data("dmu.prefs"), h);
  CHECK(p.name == "DMU");
  REQUIRE(p.statements.size() == 13);
  const PreferenceStatement& first = p.statements[0];
  CHECK(first.id == "U1");
  std::size_t greater = 0, equal = 0;
  for (const auto& pref : first.preferences) {
    if (pref.kind == PreferenceKind::ImportanceGreater) ++greater;
    if (pref.kind == PreferenceKind::ImportanceEqual) ++equal;
  }
  CHECK(greater == 5);
  CHECK(equal == 1);
  const NodeIndex fc = h.index_of_label("FC"), in = h.index_of_label("IN");
  const NodeIndex ia = h.index_of_label("IA"), imp = h.index_of_label("IMP");
  const std::vector<std::vector<NodeIndex>> pairs = {{fc, ia}, {fc, imp}, {in, ia}, {in, imp}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(first.preferences[i].kind == PreferenceKind::ImportanceGreater);
    CHECK(first.preferences[i].criteria == pairs[i]);
    CHECK(first.preferences[i].node == h.root_index());
  }
  for (const char* f : {"dmi.prefs", "dmg.prefs"})
    CHECK_FALSE(load_profile(fixtures::data(f), h).statements.empty());
}

TEST_CASE("empty profile") {
  const Hierarchy h = fixtures::eis();
  const PreferenceProfile p = parse("# nothing\n\n", h);
  CHECK(p.statements.empty());
  CHECK(compile(p, h, nullptr).rows.empty());
}

TEST_CASE("statement errors") {
  const Hierarchy h = fixtures::eis();
  CHECK_THROWS_AS(parse("importance > node=FC : HR | FS\n", h), Error);
  CHECK_THROWS_AS(parse("importance > node=root : HR | IN\n", h), Error);
  CHECK_THROWS_AS(parse("importance > node=root : FC | XX\n", h), Error);
  CHECK_THROWS_AS(parse("importance > node=root : FC | FC\n", h), Error);
  CHECK_THROWS_AS(parse("importance < node=root : FC | IN\n", h), Error);
  CHECK_THROWS_AS(parse("interaction + node=root : FC\n", h), Error);
  CHECK_THROWS_AS(parse("intensity > node=root : FC IN | IA\n", h), Error);
  CHECK_THROWS_AS(parse("bogus > node=root : FC | IN\n", h), Error);
  CHECK_THROWS_AS(parse("A: interaction + node=root : FC IN\nA: interaction + node=root : IN IA\n", h),
                  Error);
  CHECK_THROWS_AS(parse("prefer > node=root : BE | XX\n", h, fixtures::kCountries), Error);
  CHECK_THROWS_AS(load_profile("/nonexistent/x.prefs", h), Error);
}

TEST_CASE("importance of two leaves compiles to a singleton difference") {
  const Hierarchy h = fixtures::flat(2);
  const ConstraintSet c = compile(parse("importance > node=root : a | b\n", h), h, nullptr);
  REQUIRE(c.rows.size() == 1);
  CHECK(c.rows[0].coeffs[0] == doctest::Approx(1.0));
  CHECK(c.rows[0].coeffs[1] == doctest::Approx(-1.0));
  CHECK(c.rows[0].coeffs[2] == doctest::Approx(0.0));
  CHECK(c.rows[0].epsilon_coeff == -1.0);
  CHECK(c.rows[0].cmp == Comparator::GreaterEqual);
  CHECK(c.rows[0].rhs == 0.0);
  CHECK(c.rows[0].tag == "S1");

  const ConstraintSet e = compile(parse("importance = node=root : a | b\n", h), h, nullptr);
  REQUIRE(e.rows.size() == 1);
  CHECK(e.rows[0].cmp == Comparator::Equal);
  CHECK(e.rows[0].epsilon_coeff == 0.0);
}

TEST_CASE("negative interaction sums the cross pairs") {
  const Hierarchy h = fixtures::eis();
  const ConstraintSet c =
      compile(parse("U13: interaction - node=IA : IAS IT\n", h), h, nullptr);
  REQUIRE(c.rows.size() == 1);
  const MobiusLayout l(27);
  const auto ias = h.elementary_descendants(h.index_of_label("IAS"));
  const auto it = h.elementary_descendants(h.index_of_label("IT"));
  std::vector<double> expected(l.dimension(), 0.0);
  for (auto a : ias)
    for (auto b : it) expected[l.pair(std::min(a, b), std::max(a, b))] = -1.0;
  CHECK(c.rows[0].coeffs == expected);
  CHECK(c.rows[0].epsilon_coeff == -1.0);
  CHECK(c.rows[0].tag == "U13");
}

TEST_CASE("interaction intensity compiles to a difference of numerators") {
  const Hierarchy h = fixtures::eis();
  const ConstraintSet c =
      compile(parse("intensity > node=root : IN IA | FC IN\n", h), h, nullptr);
  REQUIRE(c.rows.size() == 1);
  const NodeIndex r = h.root_index();
  const auto lhs = interaction_numerator_form(h, r, h.index_of_label("IN"), h.index_of_label("IA"));
  const auto rhs = interaction_numerator_form(h, r, h.index_of_label("FC"), h.index_of_label("IN"));
  for (std::size_t k = 0; k < lhs.size(); ++k) CHECK(c.rows[0].coeffs[k] == lhs[k] - rhs[k]);
}

TEST_CASE("alternative comparisons need a table") {
  const Hierarchy h = fixtures::eis();
  const NormalizedTable n = normalize(load_table_file(fixtures::data("eis_raw.csv"), h), h);
  const PreferenceProfile p = parse("prefer > node=IA : SE | BG\n", h, fixtures::kCountries);
  CHECK_THROWS_AS(compile(p, h, nullptr), Error);
  const ConstraintSet c = compile(p, h, &n);
  REQUIRE(c.rows.size() == 1);
  const MobiusVector u = MobiusVector::uniform_additive(27);
  const NodeIndex ia = h.index_of_label("IA");
  const double expected = choquet(u, h, ia, n.row(*n.find_alternative("SE"))) -
                          choquet(u, h, ia, n.row(*n.find_alternative("BG")));
  CHECK(dot(c.rows[0].coeffs, u.coefficients()) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("compiled rows agree in sign with the indices") {
  const Hierarchy h = fixtures::eis();
  const PreferenceProfile p = load_profile(fixtures::data("dmu.prefs"), h);
  const ConstraintSet c = compile(p, h, nullptr);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0), q(-0.002, 0.002);
  for (int trial = 0; trial < 50; ++trial) {
    MobiusVector m(27);
    for (std::size_t t = 0; t < 27; ++t) m.singleton(t) = 0.5 + u(rng);
    for (std::size_t k = 27; k < m.dimension(); ++k) m.coefficients()[k] = q(rng);
    double total = 0.0;
    for (double v : m.coefficients()) total += v;
    for (double& v : m.coefficients()) v /= total;
    std::size_t row = 0;
    for (const auto& st : p.statements) {
      for (const auto& pref : st.preferences) {
        const double value = dot(c.rows[row++].coeffs, m.coefficients());
        const NodeIndex r = pref.node;
        const auto& g = pref.criteria;
        double index = 0.0;
        switch (pref.kind) {
          case PreferenceKind::ImportanceGreater:
          case PreferenceKind::ImportanceEqual:
            index = shapley(m, h, r, g[0]) - shapley(m, h, r, g[1]);
            break;
          case PreferenceKind::PositiveInteraction:
            index = interaction(m, h, r, g[0], g[1]);
            break;
          case PreferenceKind::NegativeInteraction:
            index = -interaction(m, h, r, g[0], g[1]);
            break;
          case PreferenceKind::InteractionIntensity:
            index = interaction(m, h, r, g[0], g[1]) - interaction(m, h, r, g[2], g[3]);
            break;
          case PreferenceKind::AlternativeComparison:
            break;
        }
        const double mu = capacity_of(m, h.elementary_descendants(r));
        CHECK(value == doctest::Approx(index * mu).epsilon(1e-9));
      }
    }
    CHECK(row == c.rows.size());
  }
}
