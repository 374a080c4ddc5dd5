#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fplan/cost.hpp"
#include "fplan/formation.hpp"
#include "fplan/geo.hpp"
#include "fplan/obstacles.hpp"
#include "fplan/path.hpp"
#include "fplan/swarm_params.hpp"
#include "fplan/terrain.hpp"

namespace fplan {

/// Configuration error carrying the offending field's path (e.g.
/// "optimizer.waypoints_n").
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// How the terrain was declared, kept so a scenario can be saved back out in
/// the same form it was loaded in.
struct TerrainSource {
  std::optional<double> constant;
  std::optional<std::string> grid_file;
};

/// Complete problem description. All geometry is in the local ENU frame
/// anchored at workspace.origin; loaders convert GPS inputs on the way in.
struct Scenario {
  Workspace workspace;
  TerrainGrid terrain = TerrainGrid::constant(0.0);
  TerrainSource terrain_source;
  std::vector<Obstacle> obstacles;
  TargetSet targets;
  LocalPoint start;
  LocalPoint end;
  FormationSpec formation;
  AltitudeBand altitude_band;
  std::optional<MissionBand> mission_band;
  Penalties penalties;
  GepsoParams params;
  std::size_t waypoints_n = 10;  // interior waypoints per path
  std::uint64_t seed = 0;
  // When true, safety/altitude/mission terms are charged against the expanded
  // per-UAV paths; when false, against the centroid path alone.
  bool evaluate_expansion = true;
};

inline void validate(const Scenario& s) {
  const auto& ws = s.workspace;
  if (!(ws.extent_x > 0.0) || !(ws.extent_y > 0.0)) {
    throw ValidationError("workspace", "corner_ne must lie north-east of corner_sw");
  }
  if (!(ws.h_max > 0.0)) throw ValidationError("workspace.h_max", "must be positive");
  if (!ws.contains(s.start)) throw ValidationError("start", "outside workspace");
  if (!ws.contains(s.end)) throw ValidationError("end", "outside workspace");
  if (s.waypoints_n < 1) throw ValidationError("optimizer.waypoints_n", "must be >= 1");
  if (!(s.altitude_band.z_min >= 0.0)) {
    throw ValidationError("altitude_band", "z_min must be >= 0");
  }
  if (!(s.altitude_band.z_min < s.altitude_band.z_max)) {
    throw ValidationError("altitude_band", "z_min must be < z_max");
  }
  if (s.mission_band) {
    if (!(s.mission_band->d_min >= 0.0) || !(s.mission_band->d_min < s.mission_band->d_max)) {
      throw ValidationError("mission_band", "requires 0 <= d_min < d_max");
    }
    if (s.targets.points.empty()) {
      throw ValidationError("targets", "mission band set but no targets given");
    }
  }
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const auto& o = s.obstacles[i];
    const std::string prefix = "obstacles[" + std::to_string(i) + "]";
    if (!(o.radius > 0.0)) throw ValidationError(prefix + ".radius", "must be positive");
    if (!(o.height > 0.0)) throw ValidationError(prefix + ".height", "must be positive");
    if (!(o.danger >= 0.0)) throw ValidationError(prefix + ".danger", "must be >= 0");
  }
  if (s.formation.offsets.empty()) {
    throw ValidationError("formation.offsets", "at least one UAV offset required");
  }
  if (!(s.penalties.range >= 0.0) || !(s.penalties.safe >= 0.0) ||
      !(s.penalties.alt >= 0.0) || !(s.penalties.mission >= 0.0)) {
    throw ValidationError("penalties", "must be >= 0");
  }
  if (s.params.swarm_size < 1) throw ValidationError("optimizer.swarm_size", "must be >= 1");
  if (!(s.params.psi > 0.0)) throw ValidationError("optimizer.psi", "must be positive");
  if (!(s.params.omega_min <= s.params.omega_max)) {
    throw ValidationError("optimizer", "omega_min must be <= omega_max");
  }
}

/// The waypoint lists the hazard/altitude/mission terms are charged against:
/// each UAV's expanded path, or just the centroid when expansion is disabled.
inline std::vector<std::vector<LocalPoint>> evaluation_paths(const CentroidPath& path,
                                                             const Scenario& s) {
  std::vector<std::vector<LocalPoint>> out;
  if (s.evaluate_expansion) {
    auto expanded = expand_path(path, s.formation);
    out.reserve(expanded.size());
    for (auto& p : expanded) out.push_back(std::move(p.waypoints));
  } else {
    out.push_back(path.all_waypoints());
  }
  return out;
}

inline CostBreakdown total_cost(const CentroidPath& path, const Scenario& s) {
  CostBreakdown c;
  c.range = range_cost(path, s.penalties.range);
  const auto paths = evaluation_paths(path, s);
  c.safe = safe_cost(paths, s.obstacles, s.penalties.safe);
  for (const auto& waypoints : paths) {
    c.alt += alt_cost(waypoints, s.terrain, s.altitude_band, s.penalties.alt);
  }
  if (s.mission_band) {
    c.mission = mission_cost(paths, s.targets, *s.mission_band, s.penalties.mission);
  }
  c.total = c.range + c.safe + c.alt + c.mission;
  return c;
}

}  // namespace fplan
