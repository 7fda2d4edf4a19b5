#include "csmaa/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>

#include "csmaa/error.hpp"
#include "text_util.hpp"

namespace csmaa {

PerformanceTable::PerformanceTable(std::vector<std::string> alternatives, std::size_t columns,
                                   std::vector<double> values)
    : alternatives_(std::move(alternatives)), columns_(columns), values_(std::move(values)) {
  if (values_.size() != alternatives_.size() * columns_)
    throw Error(ErrorCode::InvalidArgument, "table shape does not match its value count");
}

std::optional<std::size_t> PerformanceTable::find_alternative(const std::string& label) const {
  for (std::size_t i = 0; i < alternatives_.size(); ++i)
    if (alternatives_[i] == label) return i;
  return std::nullopt;
}

PerformanceTable load_table(std::istream& in, const Hierarchy& h, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> Error {
    return Error(ErrorCode::Parse, source_name + ":" + std::to_string(line_no) + ": " + msg);
  };

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty()) {
      header = detail::split(line, ',');
      break;
    }
  }
  if (header.empty()) throw fail("empty data file");
  if (detail::trim(header[0]) != "alternative") throw fail("first column must be 'alternative'");

  // column position in the file -> leaf index
  std::vector<std::size_t> leaf_of_col(header.size());
  std::set<std::size_t> covered;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string label{detail::trim(header[c])};
    auto leaf = h.leaf_index_of_label(label);
    if (!leaf) throw fail("column '" + label + "' is not an elementary criterion");
    if (!covered.insert(*leaf).second) throw fail("duplicate column '" + label + "'");
    leaf_of_col[c] = *leaf;
  }
  for (std::size_t t = 0; t < h.leaf_count(); ++t) {
    if (!covered.count(t)) throw fail("missing column '" + h.leaf(t).label + "'");
  }

  std::vector<std::string> alternatives;
  std::set<std::string> seen;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split(line, ',');
    if (cells.size() != header.size())
      throw fail("expected " + std::to_string(header.size()) + " cells, found " +
                 std::to_string(cells.size()));
    std::string alt{detail::trim(cells[0])};
    if (alt.empty()) throw fail("empty alternative label");
    if (!seen.insert(alt).second) throw fail("duplicate alternative '" + alt + "'");
    alternatives.push_back(alt);
    const std::size_t base = values.size();
    values.resize(base + h.leaf_count());
    for (std::size_t c = 1; c < cells.size(); ++c) {
      auto v = detail::parse_double(cells[c]);
      if (!v) throw fail("non-numeric cell '" + std::string(detail::trim(cells[c])) + "'");
      values[base + leaf_of_col[c]] = *v;
    }
  }
  if (alternatives.empty()) throw fail("no alternatives");
  return PerformanceTable(std::move(alternatives), h.leaf_count(), std::move(values));
}

PerformanceTable load_table_file(const std::string& path, const Hierarchy& h) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open data file " + path);
  return load_table(in, h, path);
}

ColumnStats column_stats(const PerformanceTable& t) {
  ColumnStats s;
  s.mean.assign(t.columns(), 0.0);
  s.sd.assign(t.columns(), 0.0);
  const double n = static_cast<double>(t.rows());
  for (std::size_t c = 0; c < t.columns(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) sum += t.at(r, c);
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) ss += (t.at(r, c) - mean) * (t.at(r, c) - mean);
    s.mean[c] = mean;
    s.sd[c] = std::sqrt(ss / n);
  }
  return s;
}

NormalizedTable normalize(const PerformanceTable& t, const ColumnStats& stats, const Hierarchy& h) {
  if (t.columns() != h.leaf_count() || stats.mean.size() != t.columns())
    throw Error(ErrorCode::InvalidArgument, "table, statistics and hierarchy disagree on columns");
  PerformanceTable out = t;
  for (std::size_t c = 0; c < t.columns(); ++c) {
    const double m = stats.mean[c];
    const double s = stats.sd[c];
    if (!(s > 0.0))
      throw Error(ErrorCode::Numeric,
                  "degenerate column '" + h.leaf(c).label + "': standard deviation is zero");
    const bool increasing = h.leaf(c).direction == Direction::Increasing;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double x = t.at(r, c);
      double v;
      if (x <= m - 3.0 * s) {
        v = increasing ? 0.0 : 1.0;
      } else if (x >= m + 3.0 * s) {
        v = increasing ? 1.0 : 0.0;
      } else {
        const double z = (x - m) / s;
        v = increasing ? 0.5 + z / 6.0 : 0.5 - z / 6.0;
      }
      out.at(r, c) = v;
    }
  }
  return NormalizedTable(std::move(out));
}

NormalizedTable normalize(const PerformanceTable& t, const Hierarchy& h) {
  return normalize(t, column_stats(t), h);
}

void write_table(std::ostream& out, const PerformanceTable& t, const Hierarchy& h, int decimals) {
  out << "alternative";
  for (std::size_t c = 0; c < t.columns(); ++c) out << ',' << h.leaf(c).label;
  out << '\n' << std::fixed << std::setprecision(decimals);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    out << t.alternatives()[r];
    for (std::size_t c = 0; c < t.columns(); ++c) out << ',' << t.at(r, c);
    out << '\n';
  }
}

}  // namespace csmaa
