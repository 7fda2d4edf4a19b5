#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csmaa/csmaa.h"

namespace {

void print_line(const char* line, void* stream) {
  std::fprintf(static_cast<FILE*>(stream), "%s\n", line);
}

int fail(cs_status s) {
  std::fprintf(stderr, "error (%s): %s\n", cs_status_name(s), cs_last_error());
  switch (s) {
    case CS_ERR_INVALID_ARGUMENT:
      return 2;
    case CS_ERR_IO:
    case CS_ERR_PARSE:
      return 3;
    default:
      return 4;
  }
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical Choquet integral with stochastic multicriteria acceptability analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cs_version()));

  std::string hierarchy = "data/eis_hierarchy.json";
  std::string data = "data/eis_raw.csv";

  cs_run_options opts;
  cs_run_options_init(&opts);
  std::vector<std::string> prefs;
  std::vector<std::string> nodes;
  std::string out_dir = "out";
  bool emit_samples = false;
  bool emit_lp = false;

  auto* run = app.add_subcommand("run", "Sample compatible capacities and write SMAA reports");
  run->add_option("--hierarchy", hierarchy, "Hierarchy JSON")->check(CLI::ExistingFile)
      ->capture_default_str();
  run->add_option("--data", data, "Raw performance CSV")->check(CLI::ExistingFile)
      ->capture_default_str();
  run->add_option("--prefs", prefs, "Preference statement files")
      ->delimiter(',')
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--samples", opts.samples, "Sampled capacities per profile")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--seed", opts.seed, "Random seed")->capture_default_str();
  run->add_option("--burnin", opts.burn_in, "Discarded initial sweeps per chain")
      ->capture_default_str();
  run->add_option("--thin", opts.thinning, "Sweeps between kept states")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--chains", opts.chains, "Independent chains (seeds seed, seed+1, ...)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--nodes", nodes, "Nodes to report (root or labels)")->delimiter(',');
  run->add_flag("--emit-samples", emit_samples, "Write samples.csv per profile");
  run->add_flag("--emit-lp", emit_lp, "Write problem.mps per profile");

  std::string golden = "data/eis_normalized_expected.csv";
  double tolerance = 0.01;
  auto* ver = app.add_subcommand("verify", "Check normalization against a golden table");
  ver->add_option("--hierarchy", hierarchy, "Hierarchy JSON")->check(CLI::ExistingFile)
      ->capture_default_str();
  ver->add_option("--data", data, "Raw performance CSV")->check(CLI::ExistingFile)
      ->capture_default_str();
  ver->add_option("--golden", golden, "Expected normalized CSV")->check(CLI::ExistingFile)
      ->capture_default_str();
  ver->add_option("--tolerance", tolerance, "Absolute tolerance per cell")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    const auto prefs_c = c_strings(prefs);
    const auto nodes_c = c_strings(nodes);
    opts.hierarchy_path = hierarchy.c_str();
    opts.data_path = data.c_str();
    opts.prefs_paths = prefs_c.data();
    opts.prefs_count = prefs_c.size();
    opts.out_dir = out_dir.c_str();
    opts.nodes = nodes_c.data();
    opts.nodes_count = nodes_c.size();
    opts.emit_samples = emit_samples;
    opts.emit_lp = emit_lp;
    const cs_status s = cs_run(&opts, print_line, stderr);
    return s == CS_OK ? 0 : fail(s);
  }

  int passed = 0;
  const cs_status s = cs_verify(hierarchy.c_str(), data.c_str(), golden.c_str(), tolerance,
                                print_line, stdout, &passed);
  if (s != CS_OK) return fail(s);
  return passed ? 0 : 1;
}
