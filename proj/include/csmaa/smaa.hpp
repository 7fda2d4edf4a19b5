#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "csmaa/dataset.hpp"
#include "csmaa/hierarchy.hpp"
#include "csmaa/sampler.hpp"

namespace csmaa {

/// 1 + number of alternatives scoring strictly above `a`; tied alternatives
/// share the better rank.
std::size_t rank_of(std::span<const double> values, std::size_t a);

struct RankMatrix {
  NodeIndex node = 0;
  std::size_t alternatives = 0;
  std::size_t samples = 0;
  /// counts[a * alternatives + (s - 1)] = samples giving a the position s.
  std::vector<std::uint64_t> counts;

  double rai(std::size_t a, std::size_t s) const {
    return static_cast<double>(counts[a * alternatives + s - 1]) / static_cast<double>(samples);
  }
};

struct WinMatrix {
  NodeIndex node = 0;
  std::size_t alternatives = 0;
  std::size_t samples = 0;
  std::vector<std::uint64_t> wins;  // wins[a * alternatives + b]: Ch(a) > Ch(b)
  std::vector<std::uint64_t> ties;  // ties[a * alternatives + b]: Ch(a) == Ch(b), a != b

  double pwi(std::size_t a, std::size_t b) const {
    return static_cast<double>(wins[a * alternatives + b]) / static_cast<double>(samples);
  }
  double tie_frequency(std::size_t a, std::size_t b) const {
    return static_cast<double>(ties[a * alternatives + b]) / static_cast<double>(samples);
  }
};

struct NodeStatistics {
  RankMatrix ranks;
  WinMatrix wins;
  /// (sample, unordered pair) occurrences of exactly equal Choquet values.
  std::uint64_t tie_events = 0;
};

/// Ranks and pairwise wins of every alternative at node r over all samples.
/// Samples are sharded over `threads` workers (0 = hardware concurrency);
/// integer accumulation keeps the result independent of the shard count.
NodeStatistics analyze_node(const SampleSet& samples, const NormalizedTable& table,
                            const Hierarchy& h, NodeIndex r, std::size_t threads = 1);

RankMatrix rank_acceptability(const SampleSet& samples, const NormalizedTable& table,
                              const Hierarchy& h, NodeIndex r);
WinMatrix pairwise_winning(const SampleSet& samples, const NormalizedTable& table,
                           const Hierarchy& h, NodeIndex r);

struct PositionShare {
  std::size_t position = 0;
  double rai = 0.0;
};

struct AlternativeSummary {
  PositionShare best;
  PositionShare worst;
  std::vector<PositionShare> high;  // up to three occupied positions, larger rai first
  double expected_score = 0.0;      // -sum_s s * rai(s)
  std::size_t ordinal = 0;          // 1 = largest expected score
};

struct RankSummary {
  NodeIndex node = 0;
  std::vector<AlternativeSummary> rows;
};

RankSummary summarize(const RankMatrix& rm);

/// Shard count from CHOQUET_SMAA_THREADS, else hardware concurrency.
std::size_t default_threads();

void write_rai(std::ostream& out, const RankMatrix& rm, std::span<const std::string> alternatives);
void write_pwi(std::ostream& out, const WinMatrix& wm, std::span<const std::string> alternatives);
void write_summary(std::ostream& out, const RankSummary& rs,
                   std::span<const std::string> alternatives);

}  // namespace csmaa
