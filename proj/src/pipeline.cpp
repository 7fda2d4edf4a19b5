#include "csmaa/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "csmaa/error.hpp"
#include "csmaa/lp.hpp"
#include "csmaa/preferences.hpp"
#include "csmaa/version.hpp"

namespace csmaa {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  return out;
}

std::vector<NodeIndex> select_nodes(const Hierarchy& h, const std::vector<std::string>& names) {
  std::vector<NodeIndex> out;
  if (names.empty()) {
    out.push_back(h.root_index());
    if (!h.root().is_leaf())
      for (NodeIndex c : h.root().children) out.push_back(c);
    return out;
  }
  for (const auto& n : names) {
    const NodeIndex r = h.resolve(n);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

void write_infeasible(const fs::path& p, const ProfileResult& r,
                      const PreferenceProfile& profile) {
  auto out = open_out(p);
  out << "profile " << r.name << " is incompatible: eps* = " << std::setprecision(12)
      << r.epsilon_star << " < " << kCompatibilityThreshold << '\n';
  out << "conflicting statements:\n";
  for (const auto& id : r.conflict) {
    out << id;
    for (const auto& s : profile.statements)
      if (s.id == id) out << "  (line " << s.line << ") " << s.text;
    out << '\n';
  }
}

}  // namespace

std::string node_file_name(const Hierarchy& h, NodeIndex r) {
  return r == h.root_index() ? std::string("root") : h.node(r).label;
}

RunReport run(const RunConfig& cfg, const LineSink& log) {
  auto say = [&](const std::string& s) {
    if (log) log(s);
  };
  if (cfg.samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be at least 1");
  if (cfg.prefs_paths.empty())
    throw Error(ErrorCode::InvalidArgument, "at least one preference file is required");

  const Hierarchy h = load_hierarchy(cfg.hierarchy_path);
  const PerformanceTable raw = load_table_file(cfg.data_path, h);
  const NormalizedTable table = normalize(raw, h);
  const std::vector<NodeIndex> nodes = select_nodes(h, cfg.nodes);
  const std::size_t threads = cfg.threads == 0 ? default_threads() : cfg.threads;
  const auto labels = coordinate_labels(h);

  std::vector<PreferenceProfile> profiles;
  for (const auto& p : cfg.prefs_paths) profiles.push_back(load_profile(p, h, raw.alternatives()));
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (profiles[i].name == profiles[j].name)
        throw Error(ErrorCode::InvalidArgument, "duplicate profile name " + profiles[i].name);

  const fs::path out_dir(cfg.out_dir);
  fs::create_directories(out_dir);

  RunReport report;
  report.alternatives = raw.alternatives();
  const auto& alts = report.alternatives;

  for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
    const PreferenceProfile& profile = profiles[pi];
    ProfileResult res;
    res.name = profile.name;
    res.source = cfg.prefs_paths[pi];

    ConstraintSet c = base_constraints(h);
    c.append(compile(profile, h, &table));
    res.constraints = c;
    const LpSolution lp = solve_epsilon_max(c);
    res.epsilon_star = lp.epsilon_star;
    res.compatible = lp.compatible();
    say("profile " + res.name + ": eps* = " + std::to_string(res.epsilon_star));

    const fs::path dir = out_dir / res.name;
    if (cfg.emit_lp) {
      fs::create_directories(dir);
      auto out = open_out(dir / "problem.mps");
      write_mps(out, c, labels, res.name);
    }
    if (!res.compatible) {
      res.conflict = diagnose(c);
      write_infeasible(out_dir / ("infeasible_" + res.name + ".txt"), res, profile);
      std::string ids;
      for (const auto& id : res.conflict) ids += (ids.empty() ? "" : ",") + id;
      say("profile " + res.name + ": incompatible, conflicting statements " + ids);
      report.profiles.push_back(std::move(res));
      continue;
    }

    SamplerOptions opts;
    opts.burn_in = cfg.burn_in;
    opts.thinning = cfg.thinning;
    opts.chains = cfg.chains;
    opts.threads = threads;
    const SampleSet samples = sample(c, cfg.samples, cfg.seed, opts);
    res.sampling_epsilon = samples.epsilon;
    res.samples = samples.vectors.size();
    for (const auto& v : samples.vectors) {
      const double viol = max_violation(c, v.coefficients(), samples.epsilon);
      res.max_violation = std::max(res.max_violation, viol);
      if (viol > kSampleSlack) ++res.invalid_samples;
    }
    say("profile " + res.name + ": " + std::to_string(res.samples) + " samples, " +
        std::to_string(res.invalid_samples) + " invalid");

    fs::create_directories(dir);
    if (cfg.emit_samples) {
      auto out = open_out(dir / "samples.csv");
      write_samples(out, samples, labels);
    }
    for (NodeIndex r : nodes) {
      NodeResult nr;
      nr.node = r;
      nr.name = node_file_name(h, r);
      nr.stats = analyze_node(samples, table, h, r, threads);
      nr.summary = summarize(nr.stats.ranks);
      {
        auto out = open_out(dir / ("rai_" + nr.name + ".csv"));
        write_rai(out, nr.stats.ranks, alts);
      }
      {
        auto out = open_out(dir / ("pwi_" + nr.name + ".csv"));
        write_pwi(out, nr.stats.wins, alts);
      }
      {
        auto out = open_out(dir / ("summary_" + nr.name + ".csv"));
        write_summary(out, nr.summary, alts);
      }
      res.nodes.push_back(std::move(nr));
    }
    {
      auto out = open_out(dir / "expected_ranking_nodes.csv");
      out << "alternative";
      for (const auto& nr : res.nodes) out << ',' << nr.name;
      out << '\n';
      for (std::size_t a = 0; a < alts.size(); ++a) {
        out << alts[a];
        for (const auto& nr : res.nodes) out << ',' << nr.summary.rows[a].ordinal;
        out << '\n';
      }
    }
    if (cfg.keep_samples) res.sample_set = samples;
    report.profiles.push_back(std::move(res));
  }

  // Side-by-side expected ordinals of the first selected node.
  {
    auto out = open_out(out_dir / "expected_ranking.csv");
    out << "alternative";
    for (const auto& p : report.profiles)
      if (p.compatible) out << ',' << p.name;
    out << '\n';
    for (std::size_t a = 0; a < alts.size(); ++a) {
      out << alts[a];
      for (const auto& p : report.profiles)
        if (p.compatible) out << ',' << p.nodes.front().summary.rows[a].ordinal;
      out << '\n';
    }
  }

  nlohmann::ordered_json m;
  m["tool"] = "csmaa";
  m["version"] = kVersion;
  m["hierarchy"] = cfg.hierarchy_path;
  m["data"] = cfg.data_path;
  m["seed"] = cfg.seed;
  m["samples"] = cfg.samples;
  m["burn_in"] = cfg.burn_in;
  m["thinning"] = cfg.thinning;
  m["chains"] = cfg.chains;
  m["compatibility_threshold"] = kCompatibilityThreshold;
  m["profiles"] = nlohmann::ordered_json::array();
  for (const auto& p : report.profiles) {
    nlohmann::ordered_json j;
    j["name"] = p.name;
    j["source"] = p.source;
    j["compatible"] = p.compatible;
    j["epsilon_star"] = p.epsilon_star;
    if (p.compatible) {
      j["sampling_epsilon"] = p.sampling_epsilon;
      j["samples"] = p.samples;
      j["invalid_samples"] = p.invalid_samples;
      j["max_violation"] = p.max_violation;
      j["nodes"] = nlohmann::ordered_json::array();
      for (const auto& nr : p.nodes)
        j["nodes"].push_back({{"node", nr.name}, {"tie_events", nr.stats.tie_events}});
    } else {
      j["conflict"] = p.conflict;
    }
    m["profiles"].push_back(j);
  }
  auto out = open_out(out_dir / "run_manifest.json");
  out << m.dump(2) << '\n';
  return report;
}

VerifyReport verify(const std::string& hierarchy_path, const std::string& raw_path,
                    const std::string& golden_path, double tolerance) {
  const Hierarchy h = load_hierarchy(hierarchy_path);
  const PerformanceTable raw = load_table_file(raw_path, h);
  const PerformanceTable golden = load_table_file(golden_path, h);
  const NormalizedTable norm = normalize(raw, h);

  VerifyReport rep;
  rep.tolerance = tolerance;
  std::vector<CellError> cells;
  for (std::size_t col = 0; col < h.leaf_count(); ++col) {
    ColumnCheck cc{h.leaf(col).label, 0.0, true};
    for (std::size_t a = 0; a < raw.rows(); ++a) {
      const auto g = golden.find_alternative(raw.alternatives()[a]);
      if (!g)
        throw Error(ErrorCode::Parse,
                    golden_path + ": missing alternative " + raw.alternatives()[a]);
      const double expected = golden.at(*g, col);
      const double actual = norm.at(a, col);
      const double err = std::abs(actual - expected);
      ++rep.cells;
      cc.max_error = std::max(cc.max_error, err);
      if (err > tolerance) {
        cc.pass = false;
        ++rep.failed_cells;
      }
      cells.push_back({raw.alternatives()[a], cc.column, expected, actual, err});
    }
    rep.max_error = std::max(rep.max_error, cc.max_error);
    rep.pass = rep.pass && cc.pass;
    rep.columns.push_back(cc);
  }
  if (golden.rows() != raw.rows())
    throw Error(ErrorCode::Parse, golden_path + ": alternative count differs from " + raw_path);
  std::stable_sort(cells.begin(), cells.end(),
                   [](const CellError& x, const CellError& y) { return x.error > y.error; });
  cells.resize(std::min<std::size_t>(10, cells.size()));
  rep.worst = std::move(cells);
  return rep;
}

}  // namespace csmaa
