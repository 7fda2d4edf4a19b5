#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "csmaa/capacity.hpp"

namespace csmaa {

/// Burn-in and thinning count sweeps; one sweep is as many walk moves as the
/// region has free dimensions.
struct SamplerOptions {
  std::size_t burn_in = 1000;
  std::size_t thinning = 10;
  /// Independent chains with seeds seed, seed + 1, ...; their draws are
  /// concatenated in chain order.
  std::size_t chains = 4;
  /// Upper bound on concurrently running chains (0 = one per chain).
  std::size_t threads = 0;
  /// Margin for strict rows; defaults to min(eps*/2, 1e-4).
  std::optional<double> epsilon;
};

/// Slack used when re-validating sampled vectors.
inline constexpr double kSampleSlack = 1e-7;

struct SampleSet {
  std::vector<MobiusVector> vectors;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
  std::size_t thinning = 0;
  std::size_t chains = 0;
  double epsilon = 0.0;  // margin imposed on strict rows while sampling
};

/// Hit-and-run over {m : rows hold with eps fixed} with sparse directions:
/// the equality rows are solved for pivot coordinates, and each move follows
/// the difference of two random null-space coordinate directions. The chord
/// is clipped exactly against every inequality (including the whole
/// monotonicity family) and the walk moves to a uniform point on it. Chains
/// start from the Chebyshev center.
SampleSet sample(const ConstraintSet& c, std::size_t n, std::uint64_t seed,
                 const SamplerOptions& opts = {});

/// One CSV row per vector, coordinates in canonical order.
void write_samples(std::ostream& out, const SampleSet& s, const std::vector<std::string>& labels);

}  // namespace csmaa
