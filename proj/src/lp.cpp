#include "csmaa/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "csmaa/error.hpp"
#include "linalg.hpp"

namespace csmaa {

namespace {

// Column layout of the lifted program: the Möbius coordinates (pairs hold
// their positive part when the family is present), one negative-part column
// per pair, then one trailing auxiliary column (eps or the radius).
struct Lifted {
  LpProblem lp;
  std::vector<std::string> row_tags;
  std::size_t dim = 0;
  std::size_t aux = 0;
  bool split = false;

  explicit Lifted(const ConstraintSet& c)
      : lp(0), dim(c.dimension()), split(c.monotonicity) {
    const std::size_t pairs = dim - c.leaves;
    const std::size_t vars = dim + (split ? pairs : 0) + 1;
    aux = vars - 1;
    lp = LpProblem(vars);
    for (std::size_t k = 0; k < vars; ++k) lp.lower[k] = split ? 0.0 : -kInf;
    lp.objective[aux] = 1.0;
    lp.upper[aux] = 1.0;
    lp.lower[aux] = -kInf;
  }

  std::size_t negative(std::size_t k, std::size_t leaves) const { return dim + (k - leaves); }

  // Row over m rewritten on the lifted columns.
  LpRow lift(const ConstraintSet& c, std::span<const double> coeffs, RowSense sense,
             double rhs) const {
    LpRow out{std::vector<double>(lp.num_vars, 0.0), sense, rhs};
    for (std::size_t k = 0; k < dim; ++k) {
      const double a = coeffs[k];
      if (a == 0.0) continue;
      out.coeffs[k] = a;
      if (split && k >= c.leaves) out.coeffs[negative(k, c.leaves)] = -a;
    }
    return out;
  }

  // m({t}) - sum of negative parts of the pairs containing t.
  LpRow family_row(const ConstraintSet& c, std::size_t t) const {
    const MobiusLayout layout(c.leaves);
    LpRow out{std::vector<double>(lp.num_vars, 0.0), RowSense::GreaterEqual, 0.0};
    out.coeffs[t] = 1.0;
    for (std::size_t u = 0; u < c.leaves; ++u)
      if (u != t) out.coeffs[negative(layout.pair(t, u), c.leaves)] = -1.0;
    return out;
  }

  std::vector<double> mobius(const std::vector<double>& x, std::size_t leaves) const {
    std::vector<double> m(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(dim));
    if (split)
      for (std::size_t k = leaves; k < dim; ++k) m[k] -= x[negative(k, leaves)];
    return m;
  }
};

Lifted epsilon_program(const ConstraintSet& c) {
  Lifted p(c);
  for (const auto& r : c.rows) {
    if (r.coeffs.size() != p.dim)
      throw Error(ErrorCode::InvalidArgument, "constraint row has wrong width");
    LpRow row = p.lift(c, r.coeffs,
                       r.cmp == Comparator::Equal ? RowSense::Equal : RowSense::GreaterEqual, r.rhs);
    row.coeffs[p.aux] = r.epsilon_coeff;
    p.lp.rows.push_back(std::move(row));
    p.row_tags.push_back(r.tag);
  }
  if (c.monotonicity) {
    for (std::size_t t = 0; t < c.leaves; ++t) {
      p.lp.rows.push_back(p.family_row(c, t));
      p.row_tags.push_back(std::string(kBaseTag) + " (monotonicity family)");
    }
  }
  return p;
}

}  // namespace

LpSolution solve_epsilon_max(const ConstraintSet& c) {
  LpSolution sol;
  const Lifted p = epsilon_program(c);
  const LpResult res = solve_lp(p.lp);
  sol.status = res.status;
  sol.pivots = res.pivots;
  if (res.status != LpStatus::Optimal) return sol;
  sol.epsilon_star = res.x[p.aux];
  sol.witness = MobiusVector(c.leaves, p.mobius(res.x, c.leaves));
  return sol;
}

std::vector<std::string> diagnose(const ConstraintSet& c) {
  if (solve_epsilon_max(c).compatible())
    throw Error(ErrorCode::InvalidArgument, "diagnose called on a compatible constraint set");
  ConstraintSet current = c;
  std::vector<std::string> kept;
  for (const std::string& tag : c.statement_tags()) {
    ConstraintSet trial = current.without_tag(tag);
    if (!solve_epsilon_max(trial).compatible()) {
      current = std::move(trial);
    } else {
      kept.push_back(tag);
    }
  }
  return kept;
}

ChebyshevCenter chebyshev_center(const ConstraintSet& c, double eps) {
  std::vector<std::vector<double>> equalities;
  for (const auto& r : c.rows)
    if (r.cmp == Comparator::Equal) equalities.push_back(r.coeffs);
  const detail::Projector proj(c.dimension(), equalities);

  Lifted p(c);
  p.lp.lower[p.aux] = 0.0;
  for (const auto& r : c.rows) {
    const bool eq = r.cmp == Comparator::Equal;
    LpRow row = p.lift(c, r.coeffs, eq ? RowSense::Equal : RowSense::GreaterEqual,
                       r.rhs - r.epsilon_coeff * eps);
    if (!eq) row.coeffs[p.aux] = -proj.projected_norm(r.coeffs);
    p.lp.rows.push_back(std::move(row));
  }
  if (c.monotonicity) {
    const double bound = std::sqrt(static_cast<double>(c.leaves));
    for (std::size_t t = 0; t < c.leaves; ++t) {
      LpRow row = p.family_row(c, t);
      row.coeffs[p.aux] = -bound;
      p.lp.rows.push_back(std::move(row));
    }
  }
  const LpResult res = solve_lp(p.lp);
  if (res.status != LpStatus::Optimal || res.x[p.aux] <= 0.0)
    throw Error(ErrorCode::Infeasible, "constraint set has no interior at the sampling margin");
  return ChebyshevCenter{p.mobius(res.x, c.leaves), res.x[p.aux]};
}

namespace {

std::string mps_number(double v) {
  char buf[64];
  for (int p = 15; p > 0; --p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    if (std::string(buf).size() <= 12) return buf;
  }
  return buf;
}

std::string field(const std::string& s, std::size_t width) {
  std::string out = s.substr(0, width);
  out.resize(width, ' ');
  return out;
}

std::string var_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "X%07zu", k + 1);
  return buf;
}

std::string row_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "R%07zu", i + 1);
  return buf;
}

// Fixed MPS columns: field 1 at 2-3, field 2 at 5-12, field 3 at 15-22,
// field 4 at 25-36.
std::string mps_line(const std::string& f1, const std::string& f2, const std::string& f3,
                     const std::string& f4) {
  std::string line = " " + field(f1, 2) + " " + field(f2, 8) + "  " + field(f3, 8) + "  " + f4;
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line;
}

}  // namespace

void write_mps(std::ostream& out, const ConstraintSet& c, const std::vector<std::string>& labels,
               const std::string& name) {
  const Lifted p = epsilon_program(c);
  const LpProblem& lp = p.lp;
  std::vector<std::string> names(lp.num_vars);
  for (std::size_t k = 0; k < p.dim; ++k) names[k] = var_name(k);
  for (std::size_t k = p.dim; k < p.aux; ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "Q%07zu", k - p.dim + c.leaves + 1);
    names[k] = buf;
  }
  names[p.aux] = "EPS";

  out << "* maximize EPS, written as: minimize -EPS\n";
  for (std::size_t k = 0; k < p.dim; ++k) {
    const std::string label = k < labels.size() ? labels[k] : "?";
    if (p.split && k >= c.leaves)
      out << "* m(" << label << ") = " << names[k] << " - " << names[p.negative(k, c.leaves)]
          << "\n";
    else
      out << "* m(" << label << ") = " << names[k] << "\n";
  }
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    out << "* " << row_name(i) << " from " << p.row_tags[i] << "\n";
  out << field("NAME", 14) << field(name, 8) << "\n";
  out << "ROWS\n" << mps_line("N", "OBJ", "", "") << "\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    out << mps_line(lp.rows[i].sense == RowSense::Equal ? "E" : "G", row_name(i), "", "") << "\n";
  out << "COLUMNS\n";
  for (std::size_t k = 0; k < lp.num_vars; ++k) {
    if (k == p.aux) out << mps_line("", names[k], "OBJ", "-1") << "\n";
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      const double a = lp.rows[i].coeffs[k];
      if (a != 0.0) out << mps_line("", names[k], row_name(i), mps_number(a)) << "\n";
    }
  }
  out << "RHS\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    if (lp.rows[i].rhs != 0.0)
      out << mps_line("", "RHS", row_name(i), mps_number(lp.rows[i].rhs)) << "\n";
  out << "BOUNDS\n";
  for (std::size_t k = 0; k < p.aux; ++k)
    if (!std::isfinite(lp.lower[k])) out << mps_line("FR", "BND", names[k], "") << "\n";
  out << mps_line("MI", "BND", "EPS", "") << "\n";
  out << mps_line("UP", "BND", "EPS", "1") << "\n";
  out << "ENDATA\n";
}

}  // namespace csmaa
