#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csmaa/hierarchy.hpp"

namespace csmaa {

/// Alternatives x elementary criteria matrix. Columns follow the leaf order
/// of the companion hierarchy.
class PerformanceTable {
 public:
  PerformanceTable() = default;
  PerformanceTable(std::vector<std::string> alternatives, std::size_t columns,
                   std::vector<double> values);

  std::size_t rows() const { return alternatives_.size(); }
  std::size_t columns() const { return columns_; }
  const std::vector<std::string>& alternatives() const { return alternatives_; }
  std::optional<std::size_t> find_alternative(const std::string& label) const;

  double at(std::size_t row, std::size_t col) const { return values_[row * columns_ + col]; }
  double& at(std::size_t row, std::size_t col) { return values_[row * columns_ + col]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * columns_, columns_};
  }

 private:
  std::vector<std::string> alternatives_;
  std::size_t columns_ = 0;
  std::vector<double> values_;
};

/// Same shape as PerformanceTable; every cell lies in [0, 1].
class NormalizedTable : public PerformanceTable {
 public:
  NormalizedTable() = default;
  explicit NormalizedTable(PerformanceTable t) : PerformanceTable(std::move(t)) {}
};

struct ColumnStats {
  std::vector<double> mean;
  std::vector<double> sd;  // population standard deviation (divisor |A|)
};

/// Reads the CSV layout: header `alternative,<leaf label>...`, one row per
/// alternative. Columns may appear in any order but must cover every leaf.
PerformanceTable load_table(std::istream& in, const Hierarchy& h,
                            const std::string& source_name = "<table>");
PerformanceTable load_table_file(const std::string& path, const Hierarchy& h);

ColumnStats column_stats(const PerformanceTable& t);

/// Clamped z-score map: 0.5 + z/6 inside (M - 3s, M + 3s), clamped to 0 or 1
/// outside; mirrored for decreasing criteria. Throws on a constant column.
NormalizedTable normalize(const PerformanceTable& t, const ColumnStats& stats, const Hierarchy& h);
NormalizedTable normalize(const PerformanceTable& t, const Hierarchy& h);

void write_table(std::ostream& out, const PerformanceTable& t, const Hierarchy& h, int decimals);

}  // namespace csmaa
