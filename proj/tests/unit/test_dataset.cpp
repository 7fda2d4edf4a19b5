#include <cmath>
#include <random>
#include <sstream>

#include "csmaa/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csmaa;

namespace {

// Independent oracle: three-step normalization written straight from the
// definition, one column at a time.
double reference_normalized(const std::vector<double>& col, std::size_t a, bool decreasing) {
  double sum = 0.0;
  for (double v : col) sum += v;
  const double mean = sum / static_cast<double>(col.size());
  double ss = 0.0;
  for (double v : col) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(col.size()));
  const double x = col[a];
  if (!decreasing) {
    if (x <= mean - 3 * sd) return 0.0;
    if (x >= mean + 3 * sd) return 1.0;
    return 0.5 + (x - mean) / sd / 6.0;
  }
  if (x <= mean - 3 * sd) return 1.0;
  if (x >= mean + 3 * sd) return 0.0;
  return 0.5 - (x - mean) / sd / 6.0;
}

std::vector<double> column(const PerformanceTable& t, std::size_t c) {
  std::vector<double> out;
  for (std::size_t r = 0; r < t.rows(); ++r) out.push_back(t.at(r, c));
  return out;
}

}  // namespace

TEST_CASE("bundled EIS table loads") {
  const Hierarchy h = fixtures::eis();
  const PerformanceTable t = load_table_file(fixtures::data("eis_raw.csv"), h);
  CHECK(t.rows() == 28);
  CHECK(t.columns() == 27);
  const auto be = t.find_alternative("BE");
  REQUIRE(be.has_value());
  CHECK(t.at(*be, 0) == doctest::Approx(1.79));
  CHECK(t.alternatives() == fixtures::kCountries);
}

TEST_CASE("one by one table") {
  const Hierarchy h = fixtures::flat(1);
  const PerformanceTable t = fixtures::table_from_csv("alternative,a\nx,3.5\n", h);
  CHECK(t.rows() == 1);
  CHECK(t.columns() == 1);
  CHECK(t.at(0, 0) == 3.5);
}

TEST_CASE("columns are matched by header") {
  const Hierarchy h = fixtures::flat(2);
  const PerformanceTable t = fixtures::table_from_csv("alternative,b,a\nx,1,2\ny,3,4\n", h);
  CHECK(t.at(0, 0) == 2);
  CHECK(t.at(0, 1) == 1);
  CHECK(t.at(1, 0) == 4);
}

TEST_CASE("schema violations") {
  const Hierarchy h = fixtures::eis();
  std::ifstream in(fixtures::data("eis_raw.csv"));
  std::string header;
  std::getline(in, header);
  std::string rest((std::istreambuf_iterator<char>(in)), {});
  const std::string dropped = header.substr(0, header.rfind(','));
  std::string body;
  std::istringstream rows(rest);
  for (std::string line; std::getline(rows, line);) body += line.substr(0, line.rfind(',')) + "\n";
  CHECK_THROWS_AS(fixtures::table_from_csv(dropped + "\n" + body, h), Error);

  const Hierarchy f = fixtures::flat(2);
  CHECK_THROWS_AS(fixtures::table_from_csv("", f), Error);
  CHECK_THROWS_AS(fixtures::table_from_csv("alternative,a,b\nx,1,oops\n", f), Error);
  CHECK_THROWS_AS(fixtures::table_from_csv("alternative,a,b\nx,1,2\nx,3,4\n", f), Error);
  CHECK_THROWS_AS(fixtures::table_from_csv("alternative,a,b\nx,1\n", f), Error);
  CHECK_THROWS_AS(fixtures::table_from_csv("alternative,a,c\nx,1,2\n", f), Error);
  CHECK_THROWS_AS(fixtures::table_from_csv("alternative,a,b\n", f), Error);
  CHECK_THROWS_AS(fixtures::table_from_csv("name,a,b\nx,1,2\n", f), Error);
  CHECK_THROWS_AS(load_table_file("/nonexistent/data.csv", f), Error);
}

TEST_CASE("column statistics") {
  const Hierarchy h = fixtures::eis();
  const PerformanceTable t = load_table_file(fixtures::data("eis_raw.csv"), h);
  double sum = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) sum += t.at(r, 0);
  const ColumnStats s = column_stats(t);
  CHECK(s.mean[0] == doctest::Approx(sum / 28.0).epsilon(1e-12));
  CHECK(s.mean[0] == doctest::Approx(1.795).epsilon(1e-9));

  const Hierarchy one = fixtures::flat(1);
  const ColumnStats c = column_stats(fixtures::table_from_csv("alternative,a\nx,5\ny,5\nz,5\n", one));
  CHECK(c.mean[0] == 5.0);
  CHECK(c.sd[0] == 0.0);
  const ColumnStats d = column_stats(fixtures::table_from_csv("alternative,a\nx,0\ny,2\n", one));
  CHECK(d.mean[0] == 1.0);
  CHECK(d.sd[0] == 1.0);
}

TEST_CASE("normalization of the EIS table matches an independent oracle") {
  const Hierarchy h = fixtures::eis();
  const PerformanceTable t = load_table_file(fixtures::data("eis_raw.csv"), h);
  const NormalizedTable n = normalize(t, h);
  CHECK(n.at(0, 0) == doctest::Approx(0.50).epsilon(0.01));
  for (std::size_t c = 0; c < t.columns(); ++c) {
    const auto col = column(t, c);
    for (std::size_t r = 0; r < t.rows(); ++r)
      CHECK(n.at(r, c) == doctest::Approx(reference_normalized(col, r, false)).epsilon(1e-12));
  }
}

TEST_CASE("value at the mean maps to one half") {
  const Hierarchy h = fixtures::flat(1);
  const NormalizedTable n = normalize(fixtures::table_from_csv("alternative,a\nx,1\ny,2\nz,3\n", h), h);
  CHECK(n.at(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("constant column is rejected") {
  const Hierarchy h = fixtures::flat(1);
  CHECK_THROWS_AS(normalize(fixtures::table_from_csv("alternative,a\nx,5\ny,5\n", h), h), Error);
}

TEST_CASE("decreasing criteria are mirrored") {
  const Hierarchy h = fixtures::hierarchy_from_json(
      R"({"label":"r","children":[{"label":"up","direction":"max"},{"label":"down","direction":"min"}]})");
  const PerformanceTable t =
      fixtures::table_from_csv("alternative,up,down\nx,1,1\ny,2,2\nz,4,4\nw,9,9\n", h);
  const NormalizedTable n = normalize(t, h);
  const auto col = column(t, 1);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    CHECK(n.at(r, 0) + n.at(r, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.at(r, 1) == doctest::Approx(reference_normalized(col, r, true)).epsilon(1e-12));
  }
  CHECK(n.at(0, 1) > n.at(3, 1));
}

TEST_CASE("normalization is monotone and affine invariant") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  const Hierarchy h = fixtures::flat(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 5 + static_cast<std::size_t>(trial % 20);
    std::vector<std::string> names;
    std::vector<double> a, b;
    const double alpha = 0.1 + std::abs(g(rng)) * 10.0;
    const double beta = g(rng) * 100.0;
    std::vector<double> values;
    for (std::size_t r = 0; r < rows; ++r) {
      names.push_back("r" + std::to_string(r));
      const double x = g(rng);
      values.push_back(x);
      values.push_back(alpha * x + beta);
    }
    const NormalizedTable n = normalize(PerformanceTable(names, 2, values), h);
    for (std::size_t r = 0; r < rows; ++r) {
      CHECK(n.at(r, 0) == doctest::Approx(n.at(r, 1)).epsilon(1e-12));
      CHECK(n.at(r, 0) >= 0.0);
      CHECK(n.at(r, 0) <= 1.0);
      for (std::size_t s = 0; s < rows; ++s)
        if (values[2 * r] >= values[2 * s]) CHECK(n.at(r, 0) >= n.at(s, 0));
    }
  }
}

TEST_CASE("far outliers clamp to one") {
  const Hierarchy h = fixtures::eis();
  PerformanceTable t = load_table_file(fixtures::data("eis_raw.csv"), h);
  const ColumnStats s = column_stats(t);
  t.at(3, 4) = s.mean[4] + 10.0 * s.sd[4];
  const NormalizedTable n = normalize(t, s, h);
  CHECK(n.at(3, 4) == 1.0);
  t.at(3, 4) = s.mean[4] - 10.0 * s.sd[4];
  CHECK(normalize(t, s, h).at(3, 4) == 0.0);
}
