#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fplan/runner.hpp"
#include "fplan/scenario_json.hpp"
#include "fplan/wpl.hpp"

namespace {

std::string fmt_cost(double v) {
  if (fplan::is_infinite_cost(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void print_breakdown(const fplan::CostBreakdown& c) {
  std::printf("  range   %s\n", fmt_cost(c.range).c_str());
  std::printf("  safe    %s\n", fmt_cost(c.safe).c_str());
  std::printf("  alt     %s\n", fmt_cost(c.alt).c_str());
  std::printf("  mission %s\n", fmt_cost(c.mission).c_str());
  std::printf("  total   %s\n", fmt_cost(c.total).c_str());
}

std::vector<fplan::Algorithm> parse_algo_list(const std::string& list) {
  std::vector<fplan::Algorithm> algos;
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    const auto algo = fplan::parse_algorithm(token);
    if (!algo) throw CLI::ValidationError("--algos", "unknown algorithm: " + token);
    algos.push_back(*algo);
  }
  if (algos.empty()) throw CLI::ValidationError("--algos", "no algorithms given");
  return algos;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obstacle-avoiding path planner for a rigid multi-UAV formation"};
  app.require_subcommand(1);

  std::string scenario_file, algo_name = "gepso", algos_list = "gepso,pso";
  std::string out_dir = "out", path_file, result_file, eval_out;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t seeds = 30;
  unsigned threads = 1;
  unsigned parallel_runs = fplan::default_thread_count();

  CLI::App* plan = app.add_subcommand("plan", "Optimize one scenario and persist the result");
  plan->add_option("--scenario", scenario_file, "Scenario JSON file")->required();
  plan->add_option("--algo", algo_name, "Algorithm: gepso or pso")
      ->check(CLI::IsMember({"gepso", "pso"}));
  plan->add_option("--seed", seed, "RNG seed (default: scenario's seed)")
      ->each([&](const std::string&) { seed_given = true; });
  plan->add_option("--out", out_dir, "Output directory");
  plan->add_option("--threads", threads, "Worker threads for cost evaluation");

  CLI::App* compare =
      app.add_subcommand("compare", "Run several algorithms over a shared seed ladder");
  compare->add_option("--scenario", scenario_file, "Scenario JSON file")->required();
  compare->add_option("--algos", algos_list, "Comma-separated algorithm list");
  compare->add_option("--seeds", seeds, "Number of seeds (0..N-1)");
  compare->add_option("--out", out_dir, "Output directory");
  compare->add_option("--parallel", parallel_runs, "Concurrent runs");

  CLI::App* eval = app.add_subcommand("eval", "Score a stored path against a scenario");
  eval->add_option("--scenario", scenario_file, "Scenario JSON file")->required();
  eval->add_option("--path", path_file, "Path JSON (result file or interior waypoints)")
      ->required();
  eval->add_option("--out", eval_out, "Optional file for the breakdown JSON");

  CLI::App* exp = app.add_subcommand("export", "Write QGC WPL 110 waypoint files");
  exp->add_option("--result", result_file, "Persisted result JSON")->required();
  exp->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(plan)) {
      const fplan::Scenario s = fplan::load_scenario(scenario_file, &std::cerr);
      const fplan::Algorithm algo = *fplan::parse_algorithm(algo_name);
      if (!seed_given) seed = s.seed;
      const fplan::RunResult r = fplan::run_plan(s, algo, seed, out_dir, threads);
      std::printf("%s seed %llu: converged by iteration %zu, %.0f ms\n",
                  fplan::algorithm_name(algo), static_cast<unsigned long long>(seed),
                  fplan::convergence_iteration(r.history), r.wall_time_ms);
      print_breakdown(r.breakdown);
      std::printf("wrote %s/result_%s.json\n", out_dir.c_str(),
                  fplan::result_basename(algo, seed).c_str());
    } else if (app.got_subcommand(compare)) {
      const fplan::Scenario s = fplan::load_scenario(scenario_file, &std::cerr);
      const auto algos = parse_algo_list(algos_list);
      const fplan::CompareOutcome outcome =
          fplan::run_compare(s, algos, seeds, out_dir, parallel_runs);
      std::printf("%-8s %8s %8s %8s %8s %10s\n", "algo", "mean", "min", "max", "std",
                  "conv-iter");
      for (const auto& a : outcome.report.algos) {
        std::printf("%-8s %8s %8s %8s %8s %10.1f\n", fplan::algorithm_name(a.algorithm),
                    fmt_cost(a.mean_final).c_str(), fmt_cost(a.min_final).c_str(),
                    fmt_cost(a.max_final).c_str(), fmt_cost(a.std_final).c_str(),
                    a.mean_convergence_iter);
      }
      for (const auto& f : outcome.report.failures) {
        std::fprintf(stderr, "failed: %s\n", f.c_str());
      }
      std::printf("wrote %s/compare_report.json\n", out_dir.c_str());
      if (!outcome.report.failures.empty()) return 1;
    } else if (app.got_subcommand(eval)) {
      const fplan::Scenario s = fplan::load_scenario(scenario_file, &std::cerr);
      const fplan::CostBreakdown c = fplan::eval_path(s, path_file);
      print_breakdown(c);
      if (!eval_out.empty()) {
        fplan::write_text_atomic(eval_out, fplan::breakdown_to_json(c).dump(2) + "\n");
      }
      // Scriptable safety gate: nonzero exit whenever the path clips an obstacle.
      if (c.safe > 0.0) {
        std::fprintf(stderr, "path intersects obstacle hazard zones (safe > 0)\n");
        return 2;
      }
    } else if (app.got_subcommand(exp)) {
      const fplan::LoadedResult loaded = fplan::load_result(result_file);
      const auto files = fplan::export_wpl(loaded.result, loaded.scenario, out_dir);
      for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
