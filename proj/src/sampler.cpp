#include "csmaa/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <thread>

#include "csmaa/error.hpp"
#include "csmaa/lp.hpp"

namespace csmaa {

namespace {

constexpr std::size_t kRefreshEvery = 10000;

struct Term {
  double value;  // current coordinate value
  double rate;   // its change per unit step
};

// Largest step  lambda >= 0, capped at `cap`, keeping
//   f(lambda) = base + lambda * rate + sum_i min(0, value_i + lambda * rate_i)  >= 0.
// f is concave and piecewise linear, so the feasible steps form an interval.
double family_reach(double base, double rate, std::span<const Term> terms, double cap,
                    std::vector<std::pair<double, double>>& breaks) {
  double f = base;
  double slope = rate;
  breaks.clear();
  for (const Term& t : terms) {
    if (t.value < 0.0 || (t.value == 0.0 && t.rate < 0.0)) {
      f += t.value;
      slope += t.rate;
    }
    if (t.rate == 0.0) continue;
    const double at = -t.value / t.rate;
    if (at > 0.0 && at < cap) breaks.emplace_back(at, t.rate);
  }
  f = std::max(f, 0.0);
  std::sort(breaks.begin(), breaks.end());
  double lambda = 0.0;
  for (const auto& [at, e] : breaks) {
    const double next = f + slope * (at - lambda);
    if (next < 0.0) return lambda + f / -slope;
    f = next;
    lambda = at;
    // crossing zero: a term with e > 0 leaves the min, one with e < 0 enters
    slope += e > 0.0 ? -e : e;
  }
  if (slope < 0.0) return std::min(cap, lambda + f / -slope);
  return cap;
}

struct Entry {
  std::size_t index;
  double value;
};

// Walk geometry. The equality rows are solved for a set of pivot coordinates,
// so each free coordinate j defines the direction e_j - sum_p r_pj e_p inside
// their null space. Inequality rows are stored by column for sparse updates.
struct Polytope {
  std::size_t dim = 0;
  MobiusLayout layout;
  bool monotonicity = false;
  std::vector<std::vector<Entry>> rows;  // a_i . x >= b_i
  std::vector<double> b;
  std::vector<std::string> tags;
  std::vector<std::vector<Entry>> columns;  // column k: (row, coefficient)
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Entry>> pivot_rows;  // x_p = rhs_p - sum r_pj x_j
  std::vector<double> pivot_rhs;
  std::vector<std::size_t> free;
  // pivot_weight[q * free.size() + f]: coefficient of pivot q in the
  // direction of free coordinate f.
  std::vector<double> pivot_weight;
};

Polytope make_polytope(const ConstraintSet& c, double eps) {
  Polytope p;
  p.dim = c.dimension();
  p.layout = MobiusLayout(c.leaves);
  p.monotonicity = c.monotonicity;
  p.columns.resize(p.dim);
  std::vector<std::vector<double>> eq;
  std::vector<double> eq_rhs;
  for (const auto& r : c.rows) {
    if (r.cmp == Comparator::Equal) {
      eq.push_back(r.coeffs);
      eq_rhs.push_back(r.rhs);
      continue;
    }
    const std::size_t i = p.rows.size();
    std::vector<Entry> row;
    for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
      if (r.coeffs[k] == 0.0) continue;
      row.push_back({k, r.coeffs[k]});
      p.columns[k].push_back({i, r.coeffs[k]});
    }
    p.rows.push_back(std::move(row));
    p.b.push_back(r.rhs - r.epsilon_coeff * eps);
    p.tags.push_back(r.tag);
  }

  // Reduced row echelon form of the equalities with largest-magnitude pivots.
  std::vector<char> is_pivot(p.dim, 0);
  std::vector<std::size_t> pivot_source;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < eq.size(); ++i) {
    double scale = 0.0;
    for (double v : eq[i]) scale = std::max(scale, std::abs(v));
    std::size_t col = p.dim;
    double best = 1e-10 * std::max(scale, 1.0);
    for (std::size_t k = 0; k < p.dim; ++k) {
      if (!is_pivot[k] && std::abs(eq[i][k]) > best) {
        best = std::abs(eq[i][k]);
        col = k;
      }
    }
    if (col == p.dim) continue;
    const double piv = eq[i][col];
    for (double& v : eq[i]) v /= piv;
    eq_rhs[i] /= piv;
    for (std::size_t r = 0; r < eq.size(); ++r) {
      if (r == i || eq[r][col] == 0.0) continue;
      const double f = eq[r][col];
      for (std::size_t k = 0; k < p.dim; ++k) eq[r][k] -= f * eq[i][k];
      eq_rhs[r] -= f * eq_rhs[i];
      eq[r][col] = 0.0;
    }
    is_pivot[col] = 1;
    p.pivots.push_back(col);
    pivot_source.push_back(i);
    ++rank;
  }
  for (std::size_t q = 0; q < rank; ++q) {
    const std::vector<double>& e = eq[pivot_source[q]];
    std::vector<Entry> row;
    for (std::size_t k = 0; k < p.dim; ++k)
      if (k != p.pivots[q] && std::abs(e[k]) > 1e-15) row.push_back({k, e[k]});
    p.pivot_rows.push_back(std::move(row));
    p.pivot_rhs.push_back(eq_rhs[pivot_source[q]]);
  }
  std::vector<std::size_t> slot(p.dim, p.dim);
  for (std::size_t k = 0; k < p.dim; ++k) {
    if (is_pivot[k]) continue;
    slot[k] = p.free.size();
    p.free.push_back(k);
  }
  p.pivot_weight.assign(rank * p.free.size(), 0.0);
  for (std::size_t q = 0; q < rank; ++q)
    for (const Entry& e : p.pivot_rows[q]) p.pivot_weight[q * p.free.size() + slot[e.index]] = -e.value;
  return p;
}

std::vector<MobiusVector> run_chain(const Polytope& poly, const std::vector<double>& start,
                                    std::size_t count, std::uint64_t seed,
                                    const SamplerOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t leaves = poly.layout.leaves();
  std::vector<double> x = start;
  std::vector<double> slack(poly.rows.size());
  std::vector<double> rate(poly.rows.size(), 0.0);
  std::vector<char> touched_row(poly.rows.size(), 0);
  std::vector<std::size_t> rows_hit;
  std::vector<double> negative(leaves, 0.0);  // sum_u min(0, x_tu) per leaf
  std::vector<double> leaf_rate(leaves, 0.0);
  std::vector<std::vector<Term>> leaf_terms(leaves);
  std::vector<char> touched_leaf(leaves, 0);
  std::vector<std::size_t> leaves_hit;
  std::vector<std::pair<double, double>> breaks;

  auto refresh = [&] {
    for (std::size_t q = 0; q < poly.pivots.size(); ++q) {
      double v = poly.pivot_rhs[q];
      for (const Entry& e : poly.pivot_rows[q]) v -= e.value * x[e.index];
      x[poly.pivots[q]] = v;
    }
    for (std::size_t i = 0; i < poly.rows.size(); ++i) {
      double v = -poly.b[i];
      for (const Entry& e : poly.rows[i]) v += e.value * x[e.index];
      slack[i] = v;
    }
    std::fill(negative.begin(), negative.end(), 0.0);
    for (std::size_t k = leaves; k < poly.dim; ++k) {
      const auto [t, u] = poly.layout.pair_of(k);
      negative[t] += std::min(0.0, x[k]);
      negative[u] += std::min(0.0, x[k]);
    }
  };
  refresh();

  // Directions N_i - N_j for two distinct draws from the free coordinates
  // plus a null slot, where N_i = e_i + sum_q w_qi e_pivot(q) spans the null
  // space of the equalities. The set is symmetric and spans that space.
  const std::size_t nfree = poly.free.size();
  std::uniform_int_distribution<std::size_t> pick(0, nfree);
  std::vector<Entry> d;
  auto direction = [&] {
    std::size_t i = 0, j = 0;
    do {
      i = pick(rng);
      j = pick(rng);
    } while (i == j);
    d.clear();
    if (i < nfree) d.push_back({poly.free[i], 1.0});
    if (j < nfree) d.push_back({poly.free[j], -1.0});
    for (std::size_t q = 0; q < poly.pivots.size(); ++q) {
      const double* w = &poly.pivot_weight[q * nfree];
      const double v = (i < nfree ? w[i] : 0.0) - (j < nfree ? w[j] : 0.0);
      if (std::abs(v) > 1e-15) d.push_back({poly.pivots[q], v});
    }
  };

  auto step = [&](std::size_t iter) {
    if (nfree == 0) return;
    direction();

    rows_hit.clear();
    leaves_hit.clear();
    auto touch_leaf = [&](std::size_t t) {
      if (touched_leaf[t]) return;
      touched_leaf[t] = 1;
      leaves_hit.push_back(t);
    };
    for (const Entry& e : d) {
      for (const Entry& c : poly.columns[e.index]) {
        if (!touched_row[c.index]) {
          touched_row[c.index] = 1;
          rows_hit.push_back(c.index);
        }
        rate[c.index] += c.value * e.value;
      }
      if (!poly.monotonicity) continue;
      if (e.index < leaves) {
        touch_leaf(e.index);
        leaf_rate[e.index] += e.value;
      } else {
        const auto [t, u] = poly.layout.pair_of(e.index);
        touch_leaf(t);
        touch_leaf(u);
        leaf_terms[t].push_back({x[e.index], e.value});
        leaf_terms[u].push_back({x[e.index], e.value});
      }
    }

    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    std::size_t hi_row = 0;
    for (std::size_t i : rows_hit) {
      const double q = rate[i];
      const double s = std::max(slack[i], 0.0);
      if (q > 1e-14) {
        lo = std::max(lo, -s / q);
      } else if (q < -1e-14 && s / -q < hi) {
        hi = s / -q;
        hi_row = i;
      }
    }
    for (std::size_t t : leaves_hit) {
      auto& terms = leaf_terms[t];
      double base = x[t] + negative[t];
      for (const Term& term : terms) base -= std::min(0.0, term.value);
      hi = family_reach(base, leaf_rate[t], terms, hi, breaks);
      for (Term& term : terms) term.rate = -term.rate;
      lo = -family_reach(base, -leaf_rate[t], terms, -lo, breaks);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw Error(ErrorCode::Numeric, "sampling region is unbounded");
    if (hi < lo - 1e-12) {
      throw Error(ErrorCode::Numeric, "chord numerically empty at row " + std::to_string(hi_row) +
                                          " (" + poly.tags[hi_row] + ")");
    }
    const double lambda = hi < lo ? lo : lo + (hi - lo) * unit(rng);

    for (const Entry& e : d) {
      const double old = x[e.index];
      x[e.index] = old + lambda * e.value;
      if (poly.monotonicity && e.index >= leaves) {
        const auto [t, u] = poly.layout.pair_of(e.index);
        const double change = std::min(0.0, x[e.index]) - std::min(0.0, old);
        negative[t] += change;
        negative[u] += change;
      }
    }
    for (std::size_t i : rows_hit) {
      slack[i] += lambda * rate[i];
      rate[i] = 0.0;
      touched_row[i] = 0;
    }
    for (std::size_t t : leaves_hit) {
      leaf_terms[t].clear();
      leaf_rate[t] = 0.0;
      touched_leaf[t] = 0;
    }
    if ((iter + 1) % kRefreshEvery == 0) refresh();
  };

  const std::size_t sweep = std::max<std::size_t>(1, nfree);
  std::size_t iter = 0;
  for (std::size_t i = 0; i < opts.burn_in * sweep; ++i) step(iter++);
  std::vector<MobiusVector> out;
  out.reserve(count);
  const std::size_t thin = std::max<std::size_t>(1, opts.thinning) * sweep;
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t i = 0; i < thin; ++i) step(iter++);
    out.emplace_back(leaves, x);
  }
  return out;
}

}  // namespace

SampleSet sample(const ConstraintSet& c, std::size_t n, std::uint64_t seed,
                 const SamplerOptions& opts) {
  const LpSolution lp = solve_epsilon_max(c);
  if (!lp.compatible())
    throw Error(ErrorCode::Infeasible, "no compatible model: eps* below threshold");
  const double eps = opts.epsilon.value_or(std::min(lp.epsilon_star / 2.0, 1e-4));
  if (eps > lp.epsilon_star)
    throw Error(ErrorCode::InvalidArgument, "sampling margin exceeds eps*");

  const Polytope poly = make_polytope(c, eps);
  const ChebyshevCenter center = chebyshev_center(c, eps);

  const std::size_t chains = std::max<std::size_t>(1, opts.chains);
  std::vector<std::vector<MobiusVector>> parts(chains);
  std::vector<std::size_t> counts(chains, n / chains);
  for (std::size_t k = 0; k < n % chains; ++k) ++counts[k];

  const std::size_t workers =
      std::min(chains, opts.threads == 0 ? chains : std::max<std::size_t>(1, opts.threads));
  std::vector<std::exception_ptr> errors(chains);
  auto work = [&](std::size_t first) {
    for (std::size_t k = first; k < chains; k += workers) {
      try {
        parts[k] = run_chain(poly, center.center, counts[k], seed + k, opts);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SampleSet s;
  s.seed = seed;
  s.burn_in = opts.burn_in;
  s.thinning = opts.thinning;
  s.chains = chains;
  s.epsilon = eps;
  s.vectors.reserve(n);
  for (auto& part : parts)
    for (auto& v : part) s.vectors.push_back(std::move(v));
  return s;
}

void write_samples(std::ostream& out, const SampleSet& s, const std::vector<std::string>& labels) {
  for (std::size_t k = 0; k < labels.size(); ++k) out << (k ? "," : "") << labels[k];
  out << '\n' << std::setprecision(17);
  for (const auto& v : s.vectors) {
    const auto c = v.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? "," : "") << c[k];
    out << '\n';
  }
}

}  // namespace csmaa
