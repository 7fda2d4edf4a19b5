#include "csmaa/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "csmaa/error.hpp"

namespace csmaa {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr double kTieTol = 1e-12;
constexpr std::size_t kRefactorEvery = 500;
constexpr double kZeroTol = 1e-12;
constexpr std::size_t kMaxPivots = 200000;

// Maps an original variable onto standard-form columns: x = offset + sign * y.
struct VarMap {
  double offset = 0.0;
  std::size_t col = 0;
  double sign = 1.0;
  bool split = false;  // free variable: x = y(col) - y(col + 1)
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_((rows) * (cols + 1), 0.0), basis_(rows, 0), cost_(cols + 1, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  // Freezes the current rows as the original system used for refactoring
  // and records the starting identity basis for the lexicographic rule.
  void snapshot() {
    original_ = t_;
    identity_ = basis_;
  }

  // Sets the minimization cost and prices out the current basis.
  void set_cost(const std::vector<double>& c) {
    price_ = c;
    reprice();
  }

  double objective() const { return -cost_[n_]; }

  void pivot(std::size_t r, std::size_t c) {
    eliminate(t_, r, c);
    const double* row = &t_[r * (n_ + 1)];
    const double f = cost_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= f * row[j];
      cost_[c] = 0.0;
    }
    basis_[r] = c;
  }

  void remove_row(std::size_t r) {
    erase_row(t_, r);
    erase_row(original_, r);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  // Rebuilds B^-1 A from the original rows for the current basis, clearing
  // accumulated round-off. Returns false if the basis is numerically singular.
  bool refactor() {
    std::vector<double> t = original_;
    std::vector<char> done(m_, 0);
    std::vector<std::size_t> basis(m_, 0);
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t col = basis_[k];
      std::size_t best = m_;
      double mag = 1e-11;
      for (std::size_t i = 0; i < m_; ++i) {
        if (done[i]) continue;
        const double v = std::abs(t[i * (n_ + 1) + col]);
        if (v > mag) {
          mag = v;
          best = i;
        }
      }
      if (best == m_) return false;
      eliminate(t, best, col);
      done[best] = 1;
      basis[best] = col;
    }
    t_ = std::move(t);
    basis_ = std::move(basis);
    for (std::size_t i = 0; i < m_; ++i)
      if (t_[i * (n_ + 1) + n_] < 0.0 && t_[i * (n_ + 1) + n_] > -1e-9) t_[i * (n_ + 1) + n_] = 0.0;
    reprice();
    return true;
  }

  enum class Outcome { Optimal, Unbounded };

  // Minimizes the current cost over columns with allowed[j] set. Every
  // verdict is confirmed on a freshly refactored tableau.
  Outcome run(const std::vector<char>& allowed, std::size_t& pivots) {
    std::size_t since_refactor = 0;
    bool fresh = false;
    while (true) {
      if (since_refactor >= kRefactorEvery) {
        refactor();
        since_refactor = 0;
      }
      std::size_t enter = n_;
      double best = -kCostTol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!allowed[j] || cost_[j] >= -kCostTol) continue;
        if (cost_[j] < best) {
          best = cost_[j];
          enter = j;
        }
      }
      if (enter == n_) {
        if (fresh || since_refactor == 0) return Outcome::Optimal;
        refactor();
        since_refactor = 0;
        fresh = true;
        continue;
      }

      std::size_t leave = m_;
      double ratio = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double q = std::max(0.0, at(i, n_)) / a;
        if (leave == m_ || q < ratio - kTieTol) {
          ratio = q;
          leave = i;
        } else if (q <= ratio + kTieTol && lex_less(i, leave, enter)) {
          ratio = std::min(ratio, q);
          leave = i;
        }
      }
      if (leave == m_) {
        if (fresh || since_refactor == 0) return Outcome::Unbounded;
        refactor();
        since_refactor = 0;
        fresh = true;
        continue;
      }
      fresh = false;
      pivot(leave, enter);
      ++since_refactor;
      ++pivots;
      if (pivots > kMaxPivots) throw Error(ErrorCode::Numeric, "simplex iteration limit reached");
    }
  }

 private:
  void eliminate(std::vector<double>& t, std::size_t r, std::size_t c) const {
    double* row = &t[r * (n_ + 1)];
    const double p = row[c];
    for (std::size_t j = 0; j <= n_; ++j) row[j] /= p;
    row[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* other = &t[i * (n_ + 1)];
      const double f = other[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) {
        other[j] -= f * row[j];
        if (std::abs(other[j]) < kZeroTol) other[j] = 0.0;
      }
      other[c] = 0.0;
    }
  }

  // Lexicographic ratio test tie-break: compares the rows of B^-1 (read off
  // the starting identity columns) scaled by the pivot column entry.
  bool lex_less(std::size_t i, std::size_t k, std::size_t c) const {
    const double ai = at(i, c);
    const double ak = at(k, c);
    for (std::size_t col : identity_) {
      const double x = at(i, col) / ai;
      const double y = at(k, col) / ak;
      if (x < y - kTieTol) return true;
      if (x > y + kTieTol) return false;
    }
    return basis_[i] < basis_[k];
  }

  void erase_row(std::vector<double>& t, std::size_t r) {
    if (t.empty()) return;
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(r * (n_ + 1)),
            t.begin() + static_cast<std::ptrdiff_t>((r + 1) * (n_ + 1)));
  }

  void reprice() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    std::copy(price_.begin(), price_.end(), cost_.begin());
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= cb * at(i, j);
    }
    for (std::size_t i = 0; i < m_; ++i) cost_[basis_[i]] = 0.0;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<double> original_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> identity_;
  std::vector<double> cost_;
  std::vector<double> price_;
};

}  // namespace

LpResult solve_lp(const LpProblem& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n || lp.lower.size() != n || lp.upper.size() != n)
    throw Error(ErrorCode::InvalidArgument, "LP vectors disagree with the variable count");

  // Standard-form columns for the structural variables.
  std::vector<VarMap> vars(n);
  std::size_t ncols = 0;
  std::vector<LpRow> rows = lp.rows;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (lo > hi) return LpResult{LpStatus::Infeasible, 0.0, {}, 0};
    VarMap& v = vars[j];
    if (std::isfinite(lo)) {
      v = VarMap{lo, ncols++, 1.0, false};
      if (std::isfinite(hi)) {
        LpRow r{std::vector<double>(n, 0.0), RowSense::LessEqual, hi};
        r.coeffs[j] = 1.0;
        rows.push_back(std::move(r));
      }
    } else if (std::isfinite(hi)) {
      v = VarMap{hi, ncols++, -1.0, false};
    } else {
      v = VarMap{0.0, ncols, 1.0, true};
      ncols += 2;
    }
  }
  const std::size_t structural = ncols;
  const std::size_t m = rows.size();
  std::vector<double> rhs(m);
  std::vector<char> needs_art(m, 0);
  std::size_t slacks = 0;
  std::size_t arts = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& r = rows[i];
    if (r.coeffs.size() != n) throw Error(ErrorCode::InvalidArgument, "LP row has wrong width");
    double b = r.rhs;
    for (std::size_t j = 0; j < n; ++j)
      if (r.coeffs[j] != 0.0) b -= r.coeffs[j] * vars[j].offset;
    rhs[i] = b;
    if (r.sense != RowSense::Equal) ++slacks;
    // A slack can start basic when the row holds at the origin.
    const bool slack_basic = (r.sense == RowSense::GreaterEqual && b <= 0.0) ||
                             (r.sense == RowSense::LessEqual && b >= 0.0);
    if (!slack_basic) {
      needs_art[i] = 1;
      ++arts;
    }
  }
  const std::size_t art0 = structural + slacks;
  Tableau tab(m, art0 + arts);

  std::size_t slack = structural;
  std::size_t art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double a = r.coeffs[j];
      if (a == 0.0) continue;
      const VarMap& v = vars[j];
      tab.at(i, v.col) += a * v.sign;
      if (v.split) tab.at(i, v.col + 1) -= a;
    }
    std::size_t own_slack = art0;
    if (r.sense == RowSense::GreaterEqual) {
      own_slack = slack++;
      tab.at(i, own_slack) = -1.0;
    } else if (r.sense == RowSense::LessEqual) {
      own_slack = slack++;
      tab.at(i, own_slack) = 1.0;
    }
    double b = rhs[i];
    if (b < 0.0 || (b == 0.0 && !needs_art[i] && tab.at(i, own_slack) < 0.0)) {
      for (std::size_t j = 0; j < art0; ++j) tab.at(i, j) = -tab.at(i, j);
      b = -b;
    }
    tab.rhs(i) = b;
    if (needs_art[i]) {
      tab.at(i, art) = 1.0;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = own_slack;
    }
  }

  tab.snapshot();
  LpResult result;
  std::vector<char> allowed(art0 + arts, 1);

  // Phase 1: minimize the sum of artificials.
  std::vector<double> c1(art0 + arts, 0.0);
  for (std::size_t k = art0; k < art0 + arts; ++k) c1[k] = 1.0;
  tab.set_cost(c1);
  tab.run(allowed, result.pivots);
  double bnorm = 1.0;
  for (const auto& r : rows) bnorm = std::max(bnorm, std::abs(r.rhs));
  if (tab.objective() > 1e-8 * bnorm) {
    result.status = LpStatus::Infeasible;
    return result;
  }

  // Drive artificials out of the basis; rows where that is impossible are
  // redundant and dropped.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < art0) {
      ++i;
      continue;
    }
    std::size_t enter = art0;
    for (std::size_t j = 0; j < art0; ++j) {
      if (std::abs(tab.at(i, j)) > kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter == art0) {
      tab.remove_row(i);
    } else {
      tab.pivot(i, enter);
      ++i;
    }
  }
  for (std::size_t k = art0; k < art0 + arts; ++k) allowed[k] = 0;

  // Phase 2: minimize -objective.
  std::vector<double> c2(art0 + arts, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    c2[v.col] -= lp.objective[j] * v.sign;
    if (v.split) c2[v.col + 1] += lp.objective[j];
  }
  tab.set_cost(c2);
  if (tab.run(allowed, result.pivots) == Tableau::Outcome::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  std::vector<double> y(art0 + arts, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i) y[tab.basis()[i]] = tab.rhs(i);
  result.x.assign(n, 0.0);
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    double x = v.offset + v.sign * y[v.col];
    if (v.split) x -= y[v.col + 1];
    result.x[j] = x;
    obj += lp.objective[j] * x;
  }
  result.objective = obj;
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace csmaa
