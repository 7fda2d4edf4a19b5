#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csmaa/hierarchy.hpp"

namespace csmaa {

/// Coordinate layout of a 2-additive Möbius vector over n leaves: the n
/// singletons first, then the n(n-1)/2 pairs {i, j}, i < j, in
/// lexicographic order.
class MobiusLayout {
 public:
  explicit MobiusLayout(std::size_t leaves = 0);

  std::size_t leaves() const { return n_; }
  std::size_t dimension() const { return n_ + n_ * (n_ - 1) / 2; }
  std::size_t singleton(std::size_t i) const { return i; }
  std::size_t pair(std::size_t i, std::size_t j) const;
  /// Leaf pair behind coordinate k >= leaves().
  std::pair<std::size_t, std::size_t> pair_of(std::size_t k) const { return pairs_[k - n_]; }
  bool is_pair(std::size_t k) const { return k >= n_; }

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// A candidate 2-additive capacity in Möbius form.
class MobiusVector {
 public:
  MobiusVector() = default;
  explicit MobiusVector(std::size_t leaves);
  MobiusVector(std::size_t leaves, std::vector<double> coefficients);

  /// Additive capacity with all weight spread evenly over the singletons.
  static MobiusVector uniform_additive(std::size_t leaves);

  const MobiusLayout& layout() const { return layout_; }
  std::size_t leaves() const { return layout_.leaves(); }
  std::size_t dimension() const { return coeffs_.size(); }

  double singleton(std::size_t i) const { return coeffs_[i]; }
  double& singleton(std::size_t i) { return coeffs_[i]; }
  double pair(std::size_t i, std::size_t j) const { return coeffs_[layout_.pair(i, j)]; }
  double& pair(std::size_t i, std::size_t j) { return coeffs_[layout_.pair(i, j)]; }

  std::span<const double> coefficients() const { return coeffs_; }
  std::span<double> coefficients() { return coeffs_; }

 private:
  MobiusLayout layout_;
  std::vector<double> coeffs_;
};

enum class Comparator { GreaterEqual, Equal };

/// One linear relation  coeffs . m + epsilon_coeff * eps  (>= | =)  rhs.
struct ConstraintRow {
  std::vector<double> coeffs;
  double epsilon_coeff = 0.0;
  Comparator cmp = Comparator::GreaterEqual;
  double rhs = 0.0;
  std::string tag;  // kBaseTag or the originating preference statement id
};

inline constexpr const char* kBaseTag = "base";

/// Linear constraints over the Möbius coordinates plus the auxiliary eps.
/// When `monotonicity` is set, the set additionally carries the full
/// 2-additive monotonicity family
///   m({t}) + sum_{t1 in T} m({t, t1}) >= 0   for every leaf t and every T,
/// of which only the T = all partners member appears among `rows`. The LP
/// enforces the whole family through an exact lift, the sampler by exact
/// chord clipping.
struct ConstraintSet {
  std::size_t leaves = 0;
  bool monotonicity = false;
  std::vector<ConstraintRow> rows;

  std::size_t dimension() const { return MobiusLayout(leaves).dimension(); }
  void add(ConstraintRow row);
  /// Appends the rows of another set over the same leaves.
  void append(const ConstraintSet& other);
  /// Distinct non-base tags in first-appearance order.
  std::vector<std::string> statement_tags() const;
  ConstraintSet without_tag(const std::string& tag) const;
};

/// E^Base: singleton non-negativity, one monotonicity row per leaf with T =
/// all partners, and the normalization equality. The full monotonicity family
/// is flagged on the returned set.
ConstraintSet base_constraints(const Hierarchy& h);
ConstraintSet base_constraints(std::size_t leaves);

/// Row for leaf t with T* = {t1 : m({t,t1}) < 0}, the tightest member of the
/// monotonicity family at m.
ConstraintRow monotonicity_row(const MobiusLayout& layout, std::size_t t,
                               std::span<const double> m);
/// min over T of  m({t}) + sum_{t1 in T} m({t,t1}).
double monotonicity_margin(const MobiusLayout& layout, std::size_t t, std::span<const double> m);

/// Largest violation of any row (and of the monotonicity family when
/// flagged) at m with eps fixed; 0 means feasible.
double max_violation(const ConstraintSet& c, std::span<const double> m, double eps);

/// mu(B) = sum of Möbius coefficients of subsets of B (leaf indices).
double capacity_of(const MobiusVector& m, std::span<const std::size_t> leaves);

/// 2-additive Choquet integral of one alternative on node r; `row` holds the
/// normalized values of all leaves.
double choquet(const MobiusVector& m, const Hierarchy& h, NodeIndex r, std::span<const double> row);
double choquet(const MobiusVector& m, const Hierarchy& h, const CriterionId& r,
               std::span<const double> row);

/// Linear form f with choquet(m, h, r, row) == f . m.
std::vector<double> choquet_form(const Hierarchy& h, NodeIndex r, std::span<const double> row);

/// Numerator of the hierarchical Shapley index of `child` (a descendant of
/// r) as a linear form in m. The index itself divides by mu(E(g_r)).
std::vector<double> shapley_numerator_form(const Hierarchy& h, NodeIndex r, NodeIndex child);
/// Numerator of the Murofushi–Soneda interaction index of two descendants of
/// r at the same level, as a linear form in m.
std::vector<double> interaction_numerator_form(const Hierarchy& h, NodeIndex r, NodeIndex child1,
                                               NodeIndex child2);

double shapley(const MobiusVector& m, const Hierarchy& h, NodeIndex r, NodeIndex child);
double shapley(const MobiusVector& m, const Hierarchy& h, const CriterionId& r,
               const CriterionId& child);
double interaction(const MobiusVector& m, const Hierarchy& h, NodeIndex r, NodeIndex child1,
                   NodeIndex child2);
double interaction(const MobiusVector& m, const Hierarchy& h, const CriterionId& r,
                   const CriterionId& child1, const CriterionId& child2);

/// Canonical coordinate labels: leaf label for singletons, "a|b" for pairs.
std::vector<std::string> coordinate_labels(const Hierarchy& h);

/// `subset,coefficient` CSV.
void write_mobius(std::ostream& out, const MobiusVector& m, const Hierarchy& h);
MobiusVector read_mobius(std::istream& in, const Hierarchy& h);

}  // namespace csmaa
