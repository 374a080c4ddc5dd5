#pragma once

#include <algorithm>
#include <cmath>

#include "fplan/geo.hpp"

namespace fplan {

/// Vertical cylinder hazard. center.z is ignored; height is descriptive
/// scenario data — the safety cost works on the ground projection alone.
struct Obstacle {
  LocalPoint center;
  double radius = 1.0;
  double height = 1.0;
  double danger = 1.0;
};

/// Ground-plane metrics of one path segment against one obstacle:
/// midpoint_distance is measured from the midpoint of the segment's xy
/// projection to the cylinder axis, covered_length is how much of the
/// projected segment lies inside the open disk.
struct SegmentObstacleMetrics {
  double midpoint_distance = 0.0;
  double covered_length = 0.0;
};

inline SegmentObstacleMetrics segment_obstacle_metrics(const LocalPoint& a,
                                                       const LocalPoint& b,
                                                       const Obstacle& obs) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  const double d = std::hypot(0.5 * (a.x + b.x) - obs.center.x,
                              0.5 * (a.y + b.y) - obs.center.y);
  if (len2 == 0.0) return {d, 0.0};

  // |a + t(b-a) - c|^2 = R^2, clipped to t in [0, 1].
  const double rx = a.x - obs.center.x;
  const double ry = a.y - obs.center.y;
  const double bq = 2.0 * (rx * dx + ry * dy);
  const double cq = rx * rx + ry * ry - obs.radius * obs.radius;
  const double disc = bq * bq - 4.0 * len2 * cq;
  if (disc <= 0.0) return {d, 0.0};  // miss or tangent

  const double sq = std::sqrt(disc);
  const double t_lo = std::max(0.0, (-bq - sq) / (2.0 * len2));
  const double t_hi = std::min(1.0, (-bq + sq) / (2.0 * len2));
  const double l = t_hi > t_lo ? (t_hi - t_lo) * std::sqrt(len2) : 0.0;
  return {d, l};
}

}  // namespace fplan
