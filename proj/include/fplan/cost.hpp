#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "fplan/geo.hpp"
#include "fplan/obstacles.hpp"
#include "fplan/path.hpp"
#include "fplan/terrain.hpp"

namespace fplan {

/// Terrain-relative altitude corridor [z_min, z_max].
struct AltitudeBand {
  double z_min = 0.0;
  double z_max = 1.0;
};

/// Stand-off distance range [d_min, d_max] to the monitored targets.
struct MissionBand {
  double d_min = 0.0;
  double d_max = 1.0;
};

struct Penalties {
  double range = 1.0;
  double safe = 1.0;
  double alt = 1.0;
  double mission = 1.0;
};

struct TargetSet {
  std::vector<LocalPoint> points;
};

/// Per-waypoint altitude penalty charged when a waypoint sits at or below the
/// terrain. Kept finite so swarm bookkeeping (comparisons, means) stays
/// well-defined; anything at or above kInfiniteCostThreshold is treated and
/// reported as infinite.
inline constexpr double kAltitudeInfinity = 1e18;
inline constexpr double kInfiniteCostThreshold = 1e15;

inline bool is_infinite_cost(double cost) { return cost >= kInfiniteCostThreshold; }

/// The four cost components and their sum.
struct CostBreakdown {
  double range = 0.0;
  double safe = 0.0;
  double alt = 0.0;
  double mission = 0.0;
  double total = 0.0;
};

/// Total 3D path length, scaled by the range penalty.
inline double range_cost(const CentroidPath& path, double p_range) {
  double sum = 0.0;
  LocalPoint prev = path.start;
  for (const auto& w : path.interior) {
    sum += distance(prev, w);
    prev = w;
  }
  sum += distance(prev, path.end);
  return p_range * sum;
}

/// Hazard value of one segment against one obstacle: 0 outside the disk
/// (d >= R), otherwise R*l when d <= l and R*l/d when d > l.
inline double segment_safe_cost(const LocalPoint& a, const LocalPoint& b, const Obstacle& obs) {
  const SegmentObstacleMetrics m = segment_obstacle_metrics(a, b, obs);
  if (m.midpoint_distance >= obs.radius) return 0.0;
  if (m.midpoint_distance <= m.covered_length) return obs.radius * m.covered_length;
  return obs.radius * m.covered_length / m.midpoint_distance;
}

/// Danger-weighted hazard sum over every segment of every supplied path.
inline double safe_cost(const std::vector<std::vector<LocalPoint>>& paths,
                        std::span<const Obstacle> obstacles, double p_safe) {
  double sum = 0.0;
  for (const auto& waypoints : paths) {
    for (const auto& obs : obstacles) {
      for (std::size_t j = 0; j + 1 < waypoints.size(); ++j) {
        sum += obs.danger * segment_safe_cost(waypoints[j], waypoints[j + 1], obs);
      }
    }
  }
  return p_safe * sum;
}

/// Out-of-band altitude penalty summed over all waypoints of one path.
/// h is the waypoint's height above the terrain directly beneath it; at or
/// below the terrain the waypoint contributes kAltitudeInfinity.
inline double alt_cost(std::span<const LocalPoint> waypoints, const TerrainGrid& terrain,
                       const AltitudeBand& band, double p_alt) {
  double sum = 0.0;
  for (const auto& w : waypoints) {
    const double h = w.z - terrain_elevation(terrain, w.x, w.y);
    if (h <= 0.0) {
      sum += kAltitudeInfinity;
    } else if (h < band.z_min) {
      sum += band.z_min - h;
    } else if (h > band.z_max) {
      sum += h - band.z_max;
    }
  }
  return p_alt * sum;
}

/// Stand-off deficit of one waypoint: distance to the nearest target, clipped
/// against the mission band.
inline double waypoint_mission_deficit(const LocalPoint& w, const TargetSet& targets,
                                       const MissionBand& band) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& t : targets.points) d = std::min(d, distance(w, t));
  if (d < band.d_min) return band.d_min - d;
  if (d > band.d_max) return d - band.d_max;
  return 0.0;
}

/// Mission deficit summed over every waypoint of every supplied path.
inline double mission_cost(const std::vector<std::vector<LocalPoint>>& paths,
                           const TargetSet& targets, const MissionBand& band,
                           double p_mission) {
  double sum = 0.0;
  for (const auto& waypoints : paths) {
    for (const auto& w : waypoints) sum += waypoint_mission_deficit(w, targets, band);
  }
  return p_mission * sum;
}

}  // namespace fplan
