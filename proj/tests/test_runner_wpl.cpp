#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "fplan/runner.hpp"
#include "fplan/wpl.hpp"
#include "test_util.hpp"

using namespace fplan;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("fplan_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

Scenario small_scenario() {
  Scenario s = testutil::make_tiny_scenario(3, 10, 6);
  Obstacle o;
  o.center = {30.0, 20.0, 0.0};
  o.radius = 4.0;
  s.obstacles = {o};
  return s;
}

std::string strip_wall_time(std::string text) {
  const auto pos = text.find("\"wall_time_ms\"");
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos);
  return text.erase(pos, end - pos);
}

}  // namespace

TEST_CASE("run_plan persists the result and its history") {
  const Scenario s = small_scenario();
  TempDir dir("run_plan");

  const RunResult r = run_plan(s, Algorithm::kGepso, 5, dir.path);
  const fs::path result_file = dir.path / "result_gepso_seed5.json";
  const fs::path history_file = dir.path / "history_gepso_seed5.csv";
  REQUIRE(fs::exists(result_file));
  REQUIRE(fs::exists(history_file));

  // The persisted numbers reproduce the in-memory run exactly.
  const LoadedResult loaded = load_result(result_file);
  CHECK(loaded.result.algorithm == Algorithm::kGepso);
  CHECK(loaded.result.seed == 5);
  CHECK(loaded.result.breakdown.total == r.breakdown.total);
  CHECK(loaded.result.breakdown.safe == r.breakdown.safe);
  REQUIRE(loaded.result.best_path.interior.size() == s.waypoints_n);
  REQUIRE(loaded.result.uav_paths.size() == 3);
  CHECK(loaded.result.uav_paths[0].uav_index == 1);
  CHECK(loaded.result.uav_paths[2].uav_index == 3);

  // The embedded scenario is complete enough to re-score the stored path.
  const CostBreakdown again = total_cost(loaded.result.best_path, loaded.scenario);
  CHECK(again.total == Approx(r.breakdown.total).epsilon(1e-12));

  // Header plus one row per recorded iteration (init + each step).
  const std::string csv = read_text_file(history_file);
  CHECK(csv.rfind("iteration,gbest_cost,safe_cost\n", 0) == 0);
  const std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == s.params.iterations + 2);
}

TEST_CASE("repeated runs write identical artifacts") {
  const Scenario s = small_scenario();
  TempDir a("repeat_a");
  TempDir b("repeat_b");
  run_plan(s, Algorithm::kPso, 3, a.path);
  run_plan(s, Algorithm::kPso, 3, b.path);

  CHECK(read_text_file(a.path / "history_pso_seed3.csv") ==
        read_text_file(b.path / "history_pso_seed3.csv"));
  CHECK(strip_wall_time(read_text_file(a.path / "result_pso_seed3.json")) ==
        strip_wall_time(read_text_file(b.path / "result_pso_seed3.json")));
}

TEST_CASE("run_compare aggregates a paired seed ladder") {
  const Scenario s = small_scenario();
  TempDir dir("compare");

  const CompareOutcome outcome =
      run_compare(s, {Algorithm::kGepso, Algorithm::kPso}, 3, dir.path);
  REQUIRE(outcome.report.failures.empty());
  REQUIRE(outcome.report.algos.size() == 2);
  REQUIRE(outcome.runs.size() == 6);

  for (std::size_t a = 0; a < 2; ++a) {
    const AlgoStats& stats = outcome.report.algos[a];
    REQUIRE(stats.runs == 3);
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t k = 0; k < 3; ++k) {
      const RunResult& r = outcome.runs[a * 3 + k];
      CHECK(r.seed == k);
      sum += r.breakdown.total;
      lo = std::min(lo, r.breakdown.total);
      hi = std::max(hi, r.breakdown.total);
    }
    CHECK(stats.mean_final == Approx(sum / 3.0).epsilon(1e-12));
    CHECK(stats.min_final == lo);
    CHECK(stats.max_final == hi);
    CHECK(stats.std_final >= 0.0);

    // Mean curve is the pointwise average of the three histories.
    REQUIRE(stats.mean_curve.size() == s.params.iterations + 1);
    for (std::size_t t : {std::size_t{0}, stats.mean_curve.size() - 1}) {
      double g = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        g += outcome.runs[a * 3 + k].history[t].gbest_cost;
      }
      CHECK(stats.mean_curve[t].gbest_cost == Approx(g / 3.0).epsilon(1e-12));
    }
  }

  // Each algorithm beats or ties each of its seeds' initial cost.
  for (const auto& stats : outcome.report.algos) {
    CHECK(stats.mean_curve.back().gbest_cost <= stats.mean_curve.front().gbest_cost);
  }

  for (const char* name : {"result_gepso_seed0.json", "result_pso_seed2.json",
                           "history_gepso_seed1.csv", "mean_curve_gepso.csv",
                           "mean_curve_pso.csv", "compare_report.json"}) {
    CHECK(fs::exists(dir.path / name));
  }

  const nlohmann::json report =
      nlohmann::json::parse(read_text_file(dir.path / "compare_report.json"));
  REQUIRE(report.at("algorithms").size() == 2);
  CHECK(report.at("algorithms")[0].at("runs").get<std::size_t>() == 3);
  CHECK(report.at("runs").size() == 6);
  CHECK(report.at("failures").empty());

  // A single-seed comparison degenerates to that run's numbers.
  TempDir single("compare_single");
  const CompareOutcome one = run_compare(s, {Algorithm::kGepso}, 1, single.path);
  CHECK(one.report.algos[0].runs == 1);
  CHECK(one.report.algos[0].mean_final == one.runs[0].breakdown.total);
  CHECK(one.report.algos[0].std_final == 0.0);

  // Parallel dispatch returns the same aggregate numbers.
  TempDir par("compare_par");
  const CompareOutcome par_outcome =
      run_compare(s, {Algorithm::kGepso, Algorithm::kPso}, 3, par.path, 4);
  for (std::size_t a = 0; a < 2; ++a) {
    CHECK(par_outcome.report.algos[a].mean_final == outcome.report.algos[a].mean_final);
    CHECK(par_outcome.report.algos[a].std_final == outcome.report.algos[a].std_final);
  }
}

TEST_CASE("eval_path scores stored waypoint lists") {
  Scenario s = small_scenario();
  s.obstacles.clear();
  TempDir dir("eval_path");

  // A straight, in-band path costs exactly its centroid length.
  nlohmann::json doc;
  doc["interior"] = nlohmann::json::array();
  std::vector<LocalPoint> interior;
  for (std::size_t j = 1; j <= s.waypoints_n; ++j) {
    const double f = static_cast<double>(j) / static_cast<double>(s.waypoints_n + 1);
    const LocalPoint p = {s.start.x + f * (s.end.x - s.start.x), 20.0, 4.5};
    interior.push_back(p);
    doc["interior"].push_back({p.x, p.y, p.z});
  }
  const fs::path file = dir.path / "path.json";
  write_text_atomic(file, doc.dump() + "\n");

  const CostBreakdown c = eval_path(s, file);
  CHECK(c.safe == 0.0);
  CHECK(c.alt == 0.0);
  CHECK(c.range == Approx(50.0));
  CHECK(c.total == Approx(50.0));

  // Bare-array form scores identically.
  const fs::path bare = dir.path / "bare.json";
  write_text_atomic(bare, doc["interior"].dump() + "\n");
  CHECK(eval_path(s, bare).total == c.total);

  // A persisted result's own best path reproduces its breakdown.
  const RunResult r = run_plan(s, Algorithm::kGepso, 1, dir.path);
  const CostBreakdown re = eval_path(s, dir.path / "result_gepso_seed1.json");
  CHECK(re.total == Approx(r.breakdown.total).epsilon(1e-12));

  // Waypoint-count mismatches are refused.
  nlohmann::json short_doc;
  short_doc["interior"] = {{1.0, 2.0, 3.0}};
  const fs::path bad = dir.path / "short.json";
  write_text_atomic(bad, short_doc.dump() + "\n");
  CHECK_THROWS_AS(eval_path(s, bad), std::runtime_error);
}

TEST_CASE("waypoint export writes one QGC WPL 110 file per vehicle") {
  const Scenario s = small_scenario();
  TempDir dir("wpl");
  const RunResult r = run(s, Algorithm::kGepso, 2);

  const auto files = export_wpl(r, s, dir.path);
  REQUIRE(files.size() == 3);
  CHECK(files[0].filename() == "uav1.waypoints");
  CHECK(files[2].filename() == "uav3.waypoints");

  for (std::size_t u = 0; u < files.size(); ++u) {
    const std::string content = read_text_file(files[u]);
    CHECK(content.rfind("QGC WPL 110\n", 0) == 0);

    const WplFile parsed = parse_wpl(content);
    REQUIRE(parsed.rows.size() == s.waypoints_n + 3);  // home + start/interior/end

    const WplRow& home = parsed.rows[0];
    CHECK(home.index == 0);
    CHECK(home.current == 1);
    CHECK(home.frame == kWplFrameGlobal);
    CHECK(home.alt == 0.0);
    const GeoPoint first =
        local_to_gps(r.uav_paths[u].waypoints.front(), s.workspace.origin);
    CHECK(home.lat == Approx(first.lat).margin(1e-7));
    CHECK(home.lon == Approx(first.lon).margin(1e-7));

    for (std::size_t i = 1; i < parsed.rows.size(); ++i) {
      const WplRow& row = parsed.rows[i];
      CHECK(row.index == static_cast<int>(i));
      CHECK(row.current == 0);
      CHECK(row.frame == kWplFrameRelativeAlt);
      CHECK(row.command == kWplCmdNavWaypoint);
      CHECK(row.autocontinue == 1);
    }

    // Round trip back to local coordinates within a centimetre.
    const std::vector<LocalPoint> back = wpl_waypoints_local(parsed, s.workspace.origin);
    REQUIRE(back.size() == r.uav_paths[u].waypoints.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      const LocalPoint& a = r.uav_paths[u].waypoints[i];
      const LocalPoint& b = back[i];
      const double err = std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                                   (a.z - b.z) * (a.z - b.z));
      CHECK(err < 0.01);
    }
  }
}

TEST_CASE("WPL parsing rejects foreign content") {
  CHECK_THROWS_AS(parse_wpl("QGC WPL 120\n0\t1\t0\t16\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_wpl(""), std::runtime_error);
  CHECK_THROWS_AS(parse_wpl("QGC WPL 110\n0\t1\tnot_a_number\n"), std::runtime_error);
}
