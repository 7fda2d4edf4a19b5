#include "csmaa/smaa.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <thread>

#include "csmaa/capacity.hpp"
#include "csmaa/error.hpp"
#include "text_util.hpp"

namespace csmaa {

std::size_t rank_of(std::span<const double> values, std::size_t a) {
  std::size_t rank = 1;
  for (double v : values)
    if (v > values[a]) ++rank;
  return rank;
}

namespace {

// Choquet values at node r are linear in m and only touch the coordinates of
// subsets inside E(r); keep those columns of each alternative's form.
struct NodeForms {
  std::vector<std::size_t> support;
  std::vector<double> coeffs;  // alternatives x support
};

NodeForms node_forms(const NormalizedTable& table, const Hierarchy& h, NodeIndex r) {
  NodeForms f;
  const MobiusLayout layout(h.leaf_count());
  const auto leaves = h.elementary_descendants(r);
  for (std::size_t i : leaves) f.support.push_back(layout.singleton(i));
  for (std::size_t x = 0; x < leaves.size(); ++x)
    for (std::size_t y = x + 1; y < leaves.size(); ++y)
      f.support.push_back(layout.pair(leaves[x], leaves[y]));
  std::sort(f.support.begin(), f.support.end());
  for (std::size_t a = 0; a < table.rows(); ++a) {
    const auto full = choquet_form(h, r, table.row(a));
    for (std::size_t k : f.support) f.coeffs.push_back(full[k]);
  }
  return f;
}

void accumulate(const NodeForms& f, const SampleSet& s, std::size_t alts, std::size_t begin,
                std::size_t end, NodeStatistics& out) {
  const std::size_t width = f.support.size();
  std::vector<double> m(width);
  std::vector<double> values(alts);
  for (std::size_t j = begin; j < end; ++j) {
    const auto c = s.vectors[j].coefficients();
    for (std::size_t k = 0; k < width; ++k) m[k] = c[f.support[k]];
    for (std::size_t a = 0; a < alts; ++a) {
      const double* row = f.coeffs.data() + a * width;
      double v = 0.0;
      for (std::size_t k = 0; k < width; ++k) v += row[k] * m[k];
      values[a] = v;
    }
    for (std::size_t a = 0; a < alts; ++a) {
      std::size_t rank = 1;
      for (std::size_t b = 0; b < alts; ++b) {
        if (b == a) continue;
        if (values[b] > values[a]) {
          ++rank;
        } else if (values[a] > values[b]) {
          ++out.wins.wins[a * alts + b];
        } else {
          ++out.wins.ties[a * alts + b];
          if (a < b) ++out.tie_events;
        }
      }
      ++out.ranks.counts[a * alts + rank - 1];
    }
  }
}

NodeStatistics empty_stats(NodeIndex r, std::size_t alts, std::size_t samples) {
  NodeStatistics st;
  st.ranks = {r, alts, samples, std::vector<std::uint64_t>(alts * alts, 0)};
  st.wins = {r, alts, samples, std::vector<std::uint64_t>(alts * alts, 0),
             std::vector<std::uint64_t>(alts * alts, 0)};
  return st;
}

}  // namespace

NodeStatistics analyze_node(const SampleSet& samples, const NormalizedTable& table,
                            const Hierarchy& h, NodeIndex r, std::size_t threads) {
  if (samples.vectors.empty()) throw Error(ErrorCode::InvalidArgument, "empty sample set");
  if (samples.vectors.front().leaves() != h.leaf_count())
    throw Error(ErrorCode::InvalidArgument, "samples do not match the hierarchy");
  const std::size_t alts = table.rows();
  const std::size_t n = samples.vectors.size();
  const NodeForms forms = node_forms(table, h, r);

  if (threads == 0) threads = default_threads();
  const std::size_t shards = std::max<std::size_t>(1, std::min(threads, n / 256 + 1));
  std::vector<NodeStatistics> parts;
  for (std::size_t k = 0; k < shards; ++k) parts.push_back(empty_stats(r, alts, n));
  auto run = [&](std::size_t k) {
    accumulate(forms, samples, alts, n * k / shards, n * (k + 1) / shards, parts[k]);
  };
  if (shards == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < shards; ++k) pool.emplace_back(run, k);
    for (auto& t : pool) t.join();
  }

  NodeStatistics total = empty_stats(r, alts, n);
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < alts * alts; ++i) {
      total.ranks.counts[i] += p.ranks.counts[i];
      total.wins.wins[i] += p.wins.wins[i];
      total.wins.ties[i] += p.wins.ties[i];
    }
    total.tie_events += p.tie_events;
  }
  return total;
}

RankMatrix rank_acceptability(const SampleSet& samples, const NormalizedTable& table,
                              const Hierarchy& h, NodeIndex r) {
  return analyze_node(samples, table, h, r).ranks;
}

WinMatrix pairwise_winning(const SampleSet& samples, const NormalizedTable& table,
                           const Hierarchy& h, NodeIndex r) {
  return analyze_node(samples, table, h, r).wins;
}

RankSummary summarize(const RankMatrix& rm) {
  const std::size_t n = rm.alternatives;
  RankSummary out{rm.node, std::vector<AlternativeSummary>(n)};
  for (std::size_t a = 0; a < n; ++a) {
    AlternativeSummary& row = out.rows[a];
    std::vector<PositionShare> shares;
    for (std::size_t s = 1; s <= n; ++s) {
      const double v = rm.rai(a, s);
      shares.push_back({s, v});
      row.expected_score -= static_cast<double>(s) * v;
      if (v > 0.0) {
        if (row.best.position == 0) row.best = {s, v};
        row.worst = {s, v};
      }
    }
    std::stable_sort(shares.begin(), shares.end(),
                     [](const PositionShare& x, const PositionShare& y) { return x.rai > y.rai; });
    for (const PositionShare& sh : shares) {
      if (sh.rai <= 0.0 || row.high.size() == 3) break;
      row.high.push_back(sh);
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t a = 0; a < n; ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return out.rows[x].expected_score > out.rows[y].expected_score;
  });
  for (std::size_t k = 0; k < n; ++k) out.rows[order[k]].ordinal = k + 1;
  return out;
}

std::size_t default_threads() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHOQUET_SMAA_THREADS")) {
    const auto v = detail::parse_double(env);
    if (v && *v >= 1.0) hw = static_cast<std::size_t>(*v);
  }
  return hw;
}

void write_rai(std::ostream& out, const RankMatrix& rm, std::span<const std::string> alternatives) {
  out << "alternative";
  for (std::size_t s = 1; s <= rm.alternatives; ++s) out << ',' << s;
  out << '\n' << std::fixed << std::setprecision(4);
  for (std::size_t a = 0; a < rm.alternatives; ++a) {
    out << alternatives[a];
    for (std::size_t s = 1; s <= rm.alternatives; ++s) out << ',' << rm.rai(a, s);
    out << '\n';
  }
}

void write_pwi(std::ostream& out, const WinMatrix& wm, std::span<const std::string> alternatives) {
  out << "alternative";
  for (const auto& b : alternatives) out << ',' << b;
  out << '\n' << std::fixed << std::setprecision(4);
  for (std::size_t a = 0; a < wm.alternatives; ++a) {
    out << alternatives[a];
    for (std::size_t b = 0; b < wm.alternatives; ++b) out << ',' << wm.pwi(a, b);
    out << '\n';
  }
}

void write_summary(std::ostream& out, const RankSummary& rs,
                   std::span<const std::string> alternatives) {
  out << "alternative,best,best_rai,worst,worst_rai,high1,high1_rai,high2,high2_rai,high3,"
         "high3_rai,expected_score,ordinal\n"
      << std::fixed << std::setprecision(4);
  for (std::size_t a = 0; a < rs.rows.size(); ++a) {
    const auto& r = rs.rows[a];
    out << alternatives[a] << ',' << r.best.position << ',' << r.best.rai << ','
        << r.worst.position << ',' << r.worst.rai;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k < r.high.size())
        out << ',' << r.high[k].position << ',' << r.high[k].rai;
      else
        out << ",,";
    }
    out << ',' << r.expected_score << ',' << r.ordinal << '\n';
  }
}

}  // namespace csmaa
