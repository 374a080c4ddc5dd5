#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fplan/io.hpp"
#include "fplan/optimizer.hpp"
#include "fplan/parallel.hpp"
#include "fplan/scenario.hpp"
#include "fplan/scenario_json.hpp"

namespace fplan {
namespace detail {

inline nlohmann::json point_to_json(const LocalPoint& p) {
  return nlohmann::json::array({p.x, p.y, p.z});
}

inline LocalPoint point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::runtime_error("waypoint must be a [x, y, z] array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline std::string format_csv_row(std::size_t iteration, double gbest, double safe) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", iteration, gbest, safe);
  return buf;
}

}  // namespace detail

inline std::string history_csv(const std::vector<HistoryEntry>& history) {
  std::string out = "iteration,gbest_cost,safe_cost\n";
  for (std::size_t t = 0; t < history.size(); ++t) {
    out += detail::format_csv_row(t, history[t].gbest_cost, history[t].safe_cost);
  }
  return out;
}

inline nlohmann::json breakdown_to_json(const CostBreakdown& c) {
  return {{"range", c.range},
          {"safe", c.safe},
          {"alt", c.alt},
          {"mission", c.mission},
          {"total", c.total}};
}

inline CostBreakdown breakdown_from_json(const nlohmann::json& j) {
  CostBreakdown c;
  c.range = j.at("range").get<double>();
  c.safe = j.at("safe").get<double>();
  c.alt = j.at("alt").get<double>();
  c.mission = j.at("mission").get<double>();
  c.total = j.at("total").get<double>();
  return c;
}

/// The result file embeds the scenario so downstream commands (export, eval)
/// are self-contained.
inline nlohmann::json result_to_json(const RunResult& r, const Scenario& s) {
  nlohmann::json j;
  j["algorithm"] = algorithm_name(r.algorithm);
  j["seed"] = r.seed;
  j["wall_time_ms"] = r.wall_time_ms;
  j["breakdown"] = breakdown_to_json(r.breakdown);
  j["best_path"]["start"] = detail::point_to_json(r.best_path.start);
  j["best_path"]["end"] = detail::point_to_json(r.best_path.end);
  j["best_path"]["interior"] = nlohmann::json::array();
  for (const auto& w : r.best_path.interior) {
    j["best_path"]["interior"].push_back(detail::point_to_json(w));
  }
  j["uav_paths"] = nlohmann::json::array();
  for (const auto& uav : r.uav_paths) {
    nlohmann::json uj;
    uj["uav_index"] = uav.uav_index;
    uj["waypoints"] = nlohmann::json::array();
    for (const auto& w : uav.waypoints) uj["waypoints"].push_back(detail::point_to_json(w));
    j["uav_paths"].push_back(uj);
  }
  j["scenario"] = scenario_to_json(s);
  return j;
}

struct LoadedResult {
  RunResult result;
  Scenario scenario;
};

inline LoadedResult load_result(const std::filesystem::path& path) {
  const nlohmann::json j = nlohmann::json::parse(read_text_file(path));
  LoadedResult out;
  const auto algo = parse_algorithm(j.at("algorithm").get<std::string>());
  if (!algo) throw std::runtime_error("unknown algorithm in " + path.string());
  out.result.algorithm = *algo;
  out.result.seed = j.at("seed").get<std::uint64_t>();
  out.result.wall_time_ms = j.value("wall_time_ms", 0.0);
  out.result.breakdown = breakdown_from_json(j.at("breakdown"));
  out.result.best_path.start = detail::point_from_json(j.at("best_path").at("start"));
  out.result.best_path.end = detail::point_from_json(j.at("best_path").at("end"));
  for (const auto& w : j.at("best_path").at("interior")) {
    out.result.best_path.interior.push_back(detail::point_from_json(w));
  }
  for (const auto& uj : j.at("uav_paths")) {
    UavPath uav;
    uav.uav_index = uj.at("uav_index").get<int>();
    for (const auto& w : uj.at("waypoints")) {
      uav.waypoints.push_back(detail::point_from_json(w));
    }
    out.result.uav_paths.push_back(uav);
  }
  out.scenario = scenario_from_json(j.at("scenario"), path.parent_path());
  return out;
}

inline std::string result_basename(Algorithm algo, std::uint64_t seed) {
  return std::string(algorithm_name(algo)) + "_seed" + std::to_string(seed);
}

/// Runs one optimization and persists `result_<algo>_seed<k>.json` plus
/// `history_<algo>_seed<k>.csv` into out_dir.
inline RunResult run_plan(const Scenario& s, Algorithm algo, std::uint64_t seed,
                          const std::filesystem::path& out_dir, unsigned threads = 1) {
  RunResult result = run(s, algo, seed, threads);
  std::filesystem::create_directories(out_dir);
  const std::string base = result_basename(algo, seed);
  write_text_atomic(out_dir / ("result_" + base + ".json"),
                    result_to_json(result, s).dump(2) + "\n");
  write_text_atomic(out_dir / ("history_" + base + ".csv"), history_csv(result.history));
  return result;
}

struct AlgoStats {
  Algorithm algorithm = Algorithm::kGepso;
  std::size_t runs = 0;
  double mean_final = 0.0;
  double min_final = 0.0;
  double max_final = 0.0;
  double std_final = 0.0;  // population standard deviation
  double mean_convergence_iter = 0.0;
  std::vector<HistoryEntry> mean_curve;
};

struct CompareReport {
  std::vector<AlgoStats> algos;
  std::vector<std::string> failures;
};

struct CompareOutcome {
  CompareReport report;
  // Row-major over (algo, seed); failed runs hold no history.
  std::vector<RunResult> runs;
};

inline nlohmann::json compare_report_to_json(const CompareReport& report,
                                             const CompareOutcome& outcome) {
  nlohmann::json j;
  j["algorithms"] = nlohmann::json::array();
  for (const auto& a : report.algos) {
    j["algorithms"].push_back({{"algorithm", algorithm_name(a.algorithm)},
                               {"runs", a.runs},
                               {"mean_final", a.mean_final},
                               {"min_final", a.min_final},
                               {"max_final", a.max_final},
                               {"std_final", a.std_final},
                               {"mean_convergence_iter", a.mean_convergence_iter}});
  }
  j["runs"] = nlohmann::json::array();
  for (const auto& r : outcome.runs) {
    if (r.history.empty()) continue;
    j["runs"].push_back({{"algorithm", algorithm_name(r.algorithm)},
                         {"seed", r.seed},
                         {"final_cost", r.breakdown.total},
                         {"safe_cost", r.breakdown.safe},
                         {"convergence_iter", convergence_iteration(r.history)},
                         {"wall_time_ms", r.wall_time_ms}});
  }
  j["failures"] = report.failures;
  return j;
}

/// Paired comparison: every algorithm runs the same seed ladder 0..seeds-1.
/// Runs may execute concurrently (each is internally deterministic); per-run
/// files, the report JSON, and one mean-curve CSV per algorithm land in
/// out_dir.
inline CompareOutcome run_compare(const Scenario& s, const std::vector<Algorithm>& algos,
                                  std::size_t seeds, const std::filesystem::path& out_dir,
                                  unsigned parallel_runs = 1) {
  if (algos.empty()) throw std::invalid_argument("run_compare: no algorithms");
  if (seeds == 0) throw std::invalid_argument("run_compare: need at least one seed");
  validate(s);
  std::filesystem::create_directories(out_dir);

  CompareOutcome outcome;
  outcome.runs.resize(algos.size() * seeds);
  std::vector<std::optional<std::string>> errors(outcome.runs.size());
  std::mutex io_mutex;
  parallel_for(outcome.runs.size(), parallel_runs, [&](std::size_t idx) {
    const Algorithm algo = algos[idx / seeds];
    const std::uint64_t seed = idx % seeds;
    try {
      RunResult r = run(s, algo, seed, 1);
      {
        const std::lock_guard<std::mutex> lock(io_mutex);
        const std::string base = result_basename(algo, seed);
        write_text_atomic(out_dir / ("result_" + base + ".json"),
                          result_to_json(r, s).dump(2) + "\n");
        write_text_atomic(out_dir / ("history_" + base + ".csv"), history_csv(r.history));
      }
      outcome.runs[idx] = std::move(r);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  });

  for (std::size_t a = 0; a < algos.size(); ++a) {
    AlgoStats stats;
    stats.algorithm = algos[a];
    double sum = 0.0, sum_conv = 0.0;
    stats.min_final = std::numeric_limits<double>::infinity();
    stats.max_final = -std::numeric_limits<double>::infinity();
    std::vector<const RunResult*> ok;
    for (std::size_t k = 0; k < seeds; ++k) {
      const std::size_t idx = a * seeds + k;
      if (errors[idx]) {
        outcome.report.failures.push_back(std::string(algorithm_name(algos[a])) + " seed " +
                                          std::to_string(k) + ": " + *errors[idx]);
        continue;
      }
      ok.push_back(&outcome.runs[idx]);
    }
    stats.runs = ok.size();
    for (const RunResult* r : ok) {
      sum += r->breakdown.total;
      sum_conv += static_cast<double>(convergence_iteration(r->history));
      stats.min_final = std::min(stats.min_final, r->breakdown.total);
      stats.max_final = std::max(stats.max_final, r->breakdown.total);
    }
    if (!ok.empty()) {
      stats.mean_final = sum / static_cast<double>(ok.size());
      stats.mean_convergence_iter = sum_conv / static_cast<double>(ok.size());
      double ss = 0.0;
      for (const RunResult* r : ok) {
        const double d = r->breakdown.total - stats.mean_final;
        ss += d * d;
      }
      stats.std_final = std::sqrt(ss / static_cast<double>(ok.size()));
      stats.mean_curve.resize(ok.front()->history.size());
      for (std::size_t t = 0; t < stats.mean_curve.size(); ++t) {
        double g = 0.0, sf = 0.0;
        for (const RunResult* r : ok) {
          g += r->history[t].gbest_cost;
          sf += r->history[t].safe_cost;
        }
        stats.mean_curve[t] = {g / static_cast<double>(ok.size()),
                               sf / static_cast<double>(ok.size())};
      }
      write_text_atomic(out_dir / ("mean_curve_" + std::string(algorithm_name(algos[a])) +
                                   ".csv"),
                        history_csv(stats.mean_curve));
    } else {
      stats.min_final = stats.max_final = 0.0;
    }
    outcome.report.algos.push_back(std::move(stats));
  }

  write_text_atomic(out_dir / "compare_report.json",
                    compare_report_to_json(outcome.report, outcome).dump(2) + "\n");
  return outcome;
}

/// Reads the interior waypoints of a path file: either a persisted result
/// (its best_path is used), an {"interior": [...]} object, or a bare array.
inline std::vector<LocalPoint> load_path_interior(const std::filesystem::path& path) {
  const nlohmann::json j = nlohmann::json::parse(read_text_file(path));
  const nlohmann::json* arr = nullptr;
  if (j.is_array()) {
    arr = &j;
  } else if (j.contains("best_path")) {
    arr = &j.at("best_path").at("interior");
  } else if (j.contains("interior")) {
    arr = &j.at("interior");
  } else {
    throw std::runtime_error("path file needs `interior` (or a result's best_path)");
  }
  std::vector<LocalPoint> out;
  for (const auto& w : *arr) out.push_back(detail::point_from_json(w));
  return out;
}

/// Evaluates a stored path against a scenario.
inline CostBreakdown eval_path(const Scenario& s, const std::filesystem::path& path_file) {
  validate(s);
  const std::vector<LocalPoint> interior = load_path_interior(path_file);
  if (interior.size() != s.waypoints_n) {
    throw std::runtime_error("path has " + std::to_string(interior.size()) +
                             " interior waypoints, scenario expects " +
                             std::to_string(s.waypoints_n));
  }
  CentroidPath path;
  path.start = s.start;
  path.end = s.end;
  path.interior = interior;
  return total_cost(path, s);
}

}  // namespace fplan
