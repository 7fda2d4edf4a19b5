#include "csmaa/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>

#include "csmaa/error.hpp"
#include "text_util.hpp"

namespace csmaa {

MobiusLayout::MobiusLayout(std::size_t leaves) : n_(leaves) {
  pairs_.reserve(n_ * (n_ > 0 ? n_ - 1 : 0) / 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) pairs_.emplace_back(i, j);
}

std::size_t MobiusLayout::pair(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_)
    throw Error(ErrorCode::InvalidArgument, "invalid leaf pair");
  if (i > j) std::swap(i, j);
  // offset of row i in the upper triangle, then column j
  return n_ + i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

MobiusVector::MobiusVector(std::size_t leaves)
    : layout_(leaves), coeffs_(layout_.dimension(), 0.0) {}

MobiusVector::MobiusVector(std::size_t leaves, std::vector<double> coefficients)
    : layout_(leaves), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != layout_.dimension())
    throw Error(ErrorCode::InvalidArgument,
                "Möbius vector needs " + std::to_string(layout_.dimension()) + " coefficients, got " +
                    std::to_string(coeffs_.size()));
}

MobiusVector MobiusVector::uniform_additive(std::size_t leaves) {
  MobiusVector m(leaves);
  for (std::size_t i = 0; i < leaves; ++i) m.singleton(i) = 1.0 / static_cast<double>(leaves);
  return m;
}

void ConstraintSet::add(ConstraintRow row) {
  if (row.coeffs.size() != dimension())
    throw Error(ErrorCode::InvalidArgument, "constraint row references undeclared variables");
  rows.push_back(std::move(row));
}

void ConstraintSet::append(const ConstraintSet& other) {
  if (other.leaves != leaves)
    throw Error(ErrorCode::InvalidArgument, "constraint sets over different leaf counts");
  monotonicity = monotonicity || other.monotonicity;
  for (const auto& r : other.rows) add(r);
}

std::vector<std::string> ConstraintSet::statement_tags() const {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    if (r.tag == kBaseTag) continue;
    if (std::find(out.begin(), out.end(), r.tag) == out.end()) out.push_back(r.tag);
  }
  return out;
}

ConstraintSet ConstraintSet::without_tag(const std::string& tag) const {
  ConstraintSet out{leaves, monotonicity, {}};
  for (const auto& r : rows)
    if (r.tag != tag) out.rows.push_back(r);
  return out;
}

ConstraintSet base_constraints(std::size_t leaves) {
  const MobiusLayout layout(leaves);
  const std::size_t dim = layout.dimension();
  ConstraintSet c{leaves, true, {}};
  for (std::size_t t = 0; t < leaves; ++t) {
    ConstraintRow r{std::vector<double>(dim, 0.0), 0.0, Comparator::GreaterEqual, 0.0, kBaseTag};
    r.coeffs[t] = 1.0;
    c.add(std::move(r));
  }
  if (leaves > 1) {
    for (std::size_t t = 0; t < leaves; ++t) {
      ConstraintRow r{std::vector<double>(dim, 0.0), 0.0, Comparator::GreaterEqual, 0.0, kBaseTag};
      r.coeffs[t] = 1.0;
      for (std::size_t u = 0; u < leaves; ++u)
        if (u != t) r.coeffs[layout.pair(t, u)] = 1.0;
      c.add(std::move(r));
    }
  }
  ConstraintRow norm{std::vector<double>(dim, 1.0), 0.0, Comparator::Equal, 1.0, kBaseTag};
  c.add(std::move(norm));
  return c;
}

ConstraintSet base_constraints(const Hierarchy& h) { return base_constraints(h.leaf_count()); }

ConstraintRow monotonicity_row(const MobiusLayout& layout, std::size_t t,
                               std::span<const double> m) {
  ConstraintRow r{std::vector<double>(layout.dimension(), 0.0), 0.0, Comparator::GreaterEqual,
                  0.0, kBaseTag};
  r.coeffs[t] = 1.0;
  for (std::size_t u = 0; u < layout.leaves(); ++u) {
    if (u == t) continue;
    const std::size_t k = layout.pair(t, u);
    if (m[k] < 0.0) r.coeffs[k] = 1.0;
  }
  return r;
}

double monotonicity_margin(const MobiusLayout& layout, std::size_t t, std::span<const double> m) {
  double v = m[t];
  for (std::size_t u = 0; u < layout.leaves(); ++u) {
    if (u == t) continue;
    v += std::min(0.0, m[layout.pair(t, u)]);
  }
  return v;
}

double max_violation(const ConstraintSet& c, std::span<const double> m, double eps) {
  double worst = 0.0;
  for (const auto& r : c.rows) {
    double lhs = r.epsilon_coeff * eps;
    for (std::size_t k = 0; k < r.coeffs.size(); ++k) lhs += r.coeffs[k] * m[k];
    const double v = r.cmp == Comparator::Equal ? std::abs(lhs - r.rhs) : r.rhs - lhs;
    worst = std::max(worst, v);
  }
  if (c.monotonicity) {
    const MobiusLayout layout(c.leaves);
    for (std::size_t t = 0; t < c.leaves; ++t)
      worst = std::max(worst, -monotonicity_margin(layout, t, m));
  }
  return worst;
}

double capacity_of(const MobiusVector& m, std::span<const std::size_t> leaves) {
  for (std::size_t t : leaves)
    if (t >= m.leaves())
      throw Error(ErrorCode::InvalidArgument, "leaf " + std::to_string(t) + " is outside EL");
  double mu = 0.0;
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    mu += m.singleton(leaves[a]);
    for (std::size_t b = a + 1; b < leaves.size(); ++b)
      if (leaves[a] != leaves[b]) mu += m.pair(leaves[a], leaves[b]);
  }
  return mu;
}

namespace {

void check_row(const MobiusVector& m, const CriterionNode& n, std::span<const double> row) {
  if (row.size() < n.leaf_end || m.leaves() < n.leaf_end)
    throw Error(ErrorCode::InvalidArgument,
                "missing leaf value for node " + n.id.to_string());
}

// Validates that `child` sits strictly below r and returns its level.
std::size_t child_level(const Hierarchy& h, NodeIndex r, NodeIndex child) {
  if (!h.is_ancestor(r, child))
    throw Error(ErrorCode::InvalidArgument, h.node(child).label + " is not a sub-criterion of " +
                                                h.node(r).label);
  return h.node(child).level();
}

double node_capacity(const MobiusVector& m, const Hierarchy& h, NodeIndex r) {
  const double mu = capacity_of(m, h.elementary_descendants(r));
  if (!(mu > 0.0))
    throw Error(ErrorCode::Numeric,
                "capacity of " + h.node(r).label + " is not positive; index undefined");
  return mu;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

double choquet(const MobiusVector& m, const Hierarchy& h, NodeIndex r, std::span<const double> row) {
  const CriterionNode& n = h.node(r);
  check_row(m, n, row);
  double v = 0.0;
  for (std::size_t i = n.leaf_begin; i < n.leaf_end; ++i) {
    v += m.singleton(i) * row[i];
    for (std::size_t j = i + 1; j < n.leaf_end; ++j) v += m.pair(i, j) * std::min(row[i], row[j]);
  }
  return v;
}

double choquet(const MobiusVector& m, const Hierarchy& h, const CriterionId& r,
               std::span<const double> row) {
  return choquet(m, h, h.index_of(r), row);
}

std::vector<double> choquet_form(const Hierarchy& h, NodeIndex r, std::span<const double> row) {
  const MobiusLayout layout(h.leaf_count());
  const CriterionNode& n = h.node(r);
  if (row.size() < n.leaf_end)
    throw Error(ErrorCode::InvalidArgument, "missing leaf value for node " + n.id.to_string());
  std::vector<double> f(layout.dimension(), 0.0);
  for (std::size_t i = n.leaf_begin; i < n.leaf_end; ++i) {
    f[i] = row[i];
    for (std::size_t j = i + 1; j < n.leaf_end; ++j)
      f[layout.pair(i, j)] = std::min(row[i], row[j]);
  }
  return f;
}

std::vector<double> shapley_numerator_form(const Hierarchy& h, NodeIndex r, NodeIndex child) {
  const std::size_t level = child_level(h, r, child);
  const MobiusLayout layout(h.leaf_count());
  std::vector<double> f(layout.dimension(), 0.0);
  const CriterionNode& c = h.node(child);
  for (std::size_t i = c.leaf_begin; i < c.leaf_end; ++i) {
    f[i] = 1.0;
    for (std::size_t j = i + 1; j < c.leaf_end; ++j) f[layout.pair(i, j)] = 1.0;
  }
  for (NodeIndex s : h.children_at(r, level)) {
    if (s == child) continue;
    const CriterionNode& sib = h.node(s);
    for (std::size_t i = c.leaf_begin; i < c.leaf_end; ++i)
      for (std::size_t j = sib.leaf_begin; j < sib.leaf_end; ++j) f[layout.pair(i, j)] = 0.5;
  }
  return f;
}

std::vector<double> interaction_numerator_form(const Hierarchy& h, NodeIndex r, NodeIndex child1,
                                               NodeIndex child2) {
  if (child1 == child2)
    throw Error(ErrorCode::InvalidArgument, "interaction of a criterion with itself");
  const std::size_t l1 = child_level(h, r, child1);
  const std::size_t l2 = child_level(h, r, child2);
  if (l1 != l2)
    throw Error(ErrorCode::InvalidArgument, h.node(child1).label + " and " + h.node(child2).label +
                                                " are not at the same level");
  const MobiusLayout layout(h.leaf_count());
  std::vector<double> f(layout.dimension(), 0.0);
  const CriterionNode& a = h.node(child1);
  const CriterionNode& b = h.node(child2);
  for (std::size_t i = a.leaf_begin; i < a.leaf_end; ++i)
    for (std::size_t j = b.leaf_begin; j < b.leaf_end; ++j) f[layout.pair(i, j)] = 1.0;
  return f;
}

double shapley(const MobiusVector& m, const Hierarchy& h, NodeIndex r, NodeIndex child) {
  const double num = dot(shapley_numerator_form(h, r, child), m.coefficients());
  return num / node_capacity(m, h, r);
}

double shapley(const MobiusVector& m, const Hierarchy& h, const CriterionId& r,
               const CriterionId& child) {
  return shapley(m, h, h.index_of(r), h.index_of(child));
}

double interaction(const MobiusVector& m, const Hierarchy& h, NodeIndex r, NodeIndex child1,
                   NodeIndex child2) {
  const double num = dot(interaction_numerator_form(h, r, child1, child2), m.coefficients());
  return num / node_capacity(m, h, r);
}

double interaction(const MobiusVector& m, const Hierarchy& h, const CriterionId& r,
                   const CriterionId& child1, const CriterionId& child2) {
  return interaction(m, h, h.index_of(r), h.index_of(child1), h.index_of(child2));
}

std::vector<std::string> coordinate_labels(const Hierarchy& h) {
  const MobiusLayout layout(h.leaf_count());
  std::vector<std::string> out;
  out.reserve(layout.dimension());
  for (std::size_t k = 0; k < layout.dimension(); ++k) {
    if (!layout.is_pair(k)) {
      out.push_back(h.leaf(k).label);
    } else {
      auto [i, j] = layout.pair_of(k);
      out.push_back(h.leaf(i).label + "|" + h.leaf(j).label);
    }
  }
  return out;
}

void write_mobius(std::ostream& out, const MobiusVector& m, const Hierarchy& h) {
  const auto labels = coordinate_labels(h);
  out << "subset,coefficient\n" << std::setprecision(17);
  for (std::size_t k = 0; k < m.dimension(); ++k)
    out << labels[k] << ',' << m.coefficients()[k] << '\n';
}

MobiusVector read_mobius(std::istream& in, const Hierarchy& h) {
  MobiusVector m(h.leaf_count());
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split(line, ',');
    if (!header) {
      if (cells.size() != 2 || detail::trim(cells[0]) != "subset")
        throw Error(ErrorCode::Parse, "Möbius CSV: expected header 'subset,coefficient'");
      header = true;
      continue;
    }
    auto where = "Möbius CSV line " + std::to_string(line_no) + ": ";
    if (cells.size() != 2) throw Error(ErrorCode::Parse, where + "expected two cells");
    auto value = detail::parse_double(cells[1]);
    if (!value) throw Error(ErrorCode::Parse, where + "non-numeric coefficient");
    auto parts = detail::split(detail::trim(cells[0]), '|');
    std::vector<std::size_t> idx;
    for (const auto& p : parts) {
      auto leaf = h.leaf_index_of_label(std::string(detail::trim(p)));
      if (!leaf) throw Error(ErrorCode::Parse, where + "unknown leaf '" + p + "'");
      idx.push_back(*leaf);
    }
    if (idx.size() == 1) m.singleton(idx[0]) = *value;
    else if (idx.size() == 2 && idx[0] != idx[1]) m.pair(idx[0], idx[1]) = *value;
    else throw Error(ErrorCode::Parse, where + "subset must hold one or two leaves");
  }
  return m;
}

}  // namespace csmaa
