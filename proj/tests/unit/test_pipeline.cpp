#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "csmaa/error.hpp"
#include "csmaa/pipeline.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

using namespace csmaa;
namespace fs = std::filesystem;

namespace {

RunConfig quick(const fs::path& out) {
  RunConfig cfg;
  cfg.hierarchy_path = fixtures::data("eis_hierarchy.json");
  cfg.data_path = fixtures::data("eis_raw.csv");
  cfg.prefs_paths = {fixtures::data("dmg.prefs")};
  cfg.samples = 200;
  cfg.burn_in = 50;
  cfg.thinning = 2;
  cfg.out_dir = out.string();
  return cfg;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(CSMAA_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_files(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) ++n;
  return n;
}

}  // namespace

TEST_CASE("default nodes are the root and its children") {
  const fs::path out = fixtures::temp_dir("default_nodes");
  const RunReport r = run(quick(out));
  REQUIRE(r.profiles.size() == 1);
  const ProfileResult& p = r.profiles[0];
  CHECK(p.name == "DMG");
  CHECK(p.compatible);
  CHECK(p.invalid_samples == 0);
  REQUIRE(p.nodes.size() == 5);
  CHECK(p.nodes[0].name == "root");
  CHECK(p.nodes[4].name == "IMP");
  for (const char* f : {"rai_root.csv", "pwi_FC.csv", "summary_IMP.csv", "expected_ranking_nodes.csv"})
    CHECK(fs::exists(out / "DMG" / f));
  CHECK(fs::exists(out / "expected_ranking.csv"));
  CHECK(fs::exists(out / "run_manifest.json"));
  const auto manifest = nlohmann::json::parse(fixtures::read_file(out / "run_manifest.json"));
  CHECK(manifest["seed"] == 42);
  CHECK(manifest["profiles"][0]["name"] == "DMG");
  CHECK(manifest["profiles"][0]["epsilon_star"].get<double>() ==
        doctest::Approx(p.epsilon_star).epsilon(1e-12));
}

TEST_CASE("node filter") {
  const fs::path out = fixtures::temp_dir("root_only");
  RunConfig cfg = quick(out);
  cfg.nodes = {"root"};
  const RunReport r = run(cfg);
  REQUIRE(r.profiles[0].nodes.size() == 1);
  CHECK(fs::exists(out / "DMG" / "rai_root.csv"));
  CHECK_FALSE(fs::exists(out / "DMG" / "rai_FC.csv"));
  CHECK(count_files(out / "DMG") == 4);

  cfg.nodes = {"nowhere"};
  CHECK_THROWS_AS(run(cfg), Error);
}

TEST_CASE("identical configurations give byte-identical files") {
  const fs::path a = fixtures::temp_dir("repeat_a"), b = fixtures::temp_dir("repeat_b");
  RunConfig ca = quick(a), cb = quick(b);
  ca.emit_samples = cb.emit_samples = true;
  ca.emit_lp = cb.emit_lp = true;
  run(ca);
  run(cb);
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a);
    if (rel.filename() == "run_manifest.json") continue;
    CHECK(fixtures::read_file(e.path()) == fixtures::read_file(b / rel));
    ++compared;
  }
  CHECK(compared >= 17);
  std::string ma = fixtures::read_file(a / "run_manifest.json");
  std::string mb = fixtures::read_file(b / "run_manifest.json");
  auto ja = nlohmann::json::parse(ma), jb = nlohmann::json::parse(mb);
  CHECK(ja["profiles"] == jb["profiles"]);
}

TEST_CASE("incompatible profile gets an infeasibility report") {
  const fs::path out = fixtures::temp_dir("infeasible");
  std::string text = fixtures::read_file(fixtures::data("dmu.prefs"));
  text += "BAD: importance > node=root : IMP | FC\n";
  fixtures::write_file(out / "bad.prefs", "");
  std::string renamed = text;
  renamed.replace(renamed.find("@profile DMU"), 12, "@profile BAD");
  fixtures::write_file(out / "bad.prefs", renamed);

  const std::string args = "run --hierarchy " + fixtures::data("eis_hierarchy.json") + " --data " +
                           fixtures::data("eis_raw.csv") + " --prefs " + (out / "bad.prefs").string() +
                           "," + fixtures::data("dmg.prefs") +
                           " --samples 100 --burnin 20 --thin 1 --nodes root --out " +
                           (out / "result").string();
  CHECK(cli(args) == 0);
  const fs::path report = out / "result" / "infeasible_BAD.txt";
  REQUIRE(fs::exists(report));
  const std::string body = fixtures::read_file(report);
  CHECK(body.find("BAD") != std::string::npos);
  CHECK(body.find("U1") != std::string::npos);
  CHECK(fs::exists(out / "result" / "DMG" / "rai_root.csv"));
  CHECK_FALSE(fs::exists(out / "result" / "BAD"));
}

TEST_CASE("verify detects a perturbed cell") {
  const fs::path dir = fixtures::temp_dir("verify");
  const Hierarchy h = fixtures::eis();
  const PerformanceTable raw = load_table_file(fixtures::data("eis_raw.csv"), h);
  const ColumnStats s = column_stats(raw);
  PerformanceTable bad = raw;
  const std::size_t row = *raw.find_alternative("DK"), col = 10;
  bad.at(row, col) += 10.0 * s.sd[col];
  std::ofstream f(dir / "bad.csv");
  write_table(f, bad, h, 6);
  f.close();

  const VerifyReport r = verify(fixtures::data("eis_hierarchy.json"), (dir / "bad.csv").string(),
                                fixtures::data("eis_normalized_expected.csv"));
  CHECK_FALSE(r.pass);
  CHECK(r.cells == 756);
  REQUIRE_FALSE(r.worst.empty());
  CHECK(r.worst[0].alternative == "DK");
  CHECK(r.worst[0].column == h.leaf(col).label);

  CHECK(cli("verify --data " + (dir / "bad.csv").string() + " --hierarchy " +
            fixtures::data("eis_hierarchy.json") + " --golden " +
            fixtures::data("eis_normalized_expected.csv")) == 1);
}

TEST_CASE("empty data file is a schema error") {
  const fs::path dir = fixtures::temp_dir("empty");
  fixtures::write_file(dir / "empty.csv", "");
  CHECK_THROWS_AS(verify(fixtures::data("eis_hierarchy.json"), (dir / "empty.csv").string(),
                         fixtures::data("eis_normalized_expected.csv")),
                  Error);
  const int code = cli("verify --data " + (dir / "empty.csv").string() + " --hierarchy " +
                       fixtures::data("eis_hierarchy.json"));
  CHECK(code == 3);
}

TEST_CASE("command line contract") {
  CHECK(cli("--version") == 0);
  CHECK(cli("") != 0);
  CHECK(cli("run") != 0);
  CHECK(cli("run --prefs " + fixtures::data("dmu.prefs") + " --samples 0") != 0);
}
