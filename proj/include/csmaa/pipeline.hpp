#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csmaa/smaa.hpp"

namespace csmaa {

struct RunConfig {
  std::string hierarchy_path;
  std::string data_path;
  std::vector<std::string> prefs_paths;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  std::size_t burn_in = 1000;
  std::size_t thinning = 10;
  std::size_t chains = 4;
  std::string out_dir = "out";
  /// Node labels ("root" for the root); empty selects root and its children.
  std::vector<std::string> nodes;
  bool emit_samples = false;
  bool emit_lp = false;
  /// Keep the sampled vectors in the returned report.
  bool keep_samples = false;
  /// Worker cap; 0 reads CHOQUET_SMAA_THREADS or uses hardware concurrency.
  std::size_t threads = 0;
};

struct NodeResult {
  NodeIndex node = 0;
  std::string name;
  NodeStatistics stats;
  RankSummary summary;
};

struct ProfileResult {
  std::string name;
  std::string source;
  bool compatible = false;
  double epsilon_star = 0.0;
  double sampling_epsilon = 0.0;
  std::vector<std::string> conflict;  // statement ids when incompatible
  std::size_t samples = 0;
  std::size_t invalid_samples = 0;    // vectors violating a row by more than kSampleSlack
  double max_violation = 0.0;
  std::vector<NodeResult> nodes;
  ConstraintSet constraints;  // E^Base plus the compiled profile
  SampleSet sample_set;       // filled when RunConfig::keep_samples is set
};

struct RunReport {
  std::vector<std::string> alternatives;
  std::vector<ProfileResult> profiles;
};

using LineSink = std::function<void(const std::string&)>;

/// Full pipeline: normalize, compile each profile, solve, sample, compute the
/// statistics of every selected node and write the report files under
/// cfg.out_dir. Incompatible profiles get an infeasibility report instead.
RunReport run(const RunConfig& cfg, const LineSink& log = {});

/// File-name form of a node: "root" or its label.
std::string node_file_name(const Hierarchy& h, NodeIndex r);

struct CellError {
  std::string alternative;
  std::string column;
  double expected = 0.0;
  double actual = 0.0;
  double error = 0.0;
};

struct ColumnCheck {
  std::string column;
  double max_error = 0.0;
  bool pass = true;
};

struct VerifyReport {
  bool pass = true;
  double tolerance = 0.0;
  double max_error = 0.0;
  std::size_t cells = 0;
  std::size_t failed_cells = 0;
  std::vector<ColumnCheck> columns;
  std::vector<CellError> worst;  // largest errors first, at most ten
};

/// Normalizes the raw table and compares every cell with the golden table.
VerifyReport verify(const std::string& hierarchy_path, const std::string& raw_path,
                    const std::string& golden_path, double tolerance = 0.01);

}  // namespace csmaa
