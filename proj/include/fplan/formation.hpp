#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "fplan/geo.hpp"
#include "fplan/path.hpp"

namespace fplan {

/// Rigid formation described by per-UAV offsets from the centroid, meters.
/// Offsets are inertial-frame constants; with heading_aligned they are
/// instead interpreted in a path-aligned frame and rotated about z by the
/// local segment heading at each waypoint.
struct FormationSpec {
  std::vector<LocalPoint> offsets;
  bool heading_aligned = false;
};

inline LocalPoint centroid(std::span<const LocalPoint> positions) {
  if (positions.empty()) throw std::invalid_argument("centroid: empty position set");
  LocalPoint sum;
  for (const auto& p : positions) sum = sum + p;
  const double inv = 1.0 / static_cast<double>(positions.size());
  return {sum.x * inv, sum.y * inv, sum.z * inv};
}

/// Shifts the offsets so they average to zero, which makes the centroid of the
/// expanded positions coincide with the centroid path at every waypoint.
/// Returns the mean that was removed.
inline LocalPoint recenter_offsets(std::vector<LocalPoint>& offsets) {
  const LocalPoint mean = centroid(offsets);
  for (auto& o : offsets) o = o - mean;
  return mean;
}

/// One UAV's expanded trajectory; uav_index is 1-based.
struct UavPath {
  int uav_index = 1;
  std::vector<LocalPoint> waypoints;
};

namespace detail {

inline LocalPoint rotate_z(const LocalPoint& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

/// Heading of the segment leaving waypoint j (the last waypoint reuses the
/// final segment's heading); zero-length xy segments carry the previous one.
inline std::vector<double> segment_headings(const std::vector<LocalPoint>& waypoints) {
  std::vector<double> headings(waypoints.size(), 0.0);
  double current = 0.0;
  for (std::size_t j = 0; j + 1 < waypoints.size(); ++j) {
    const double dx = waypoints[j + 1].x - waypoints[j].x;
    const double dy = waypoints[j + 1].y - waypoints[j].y;
    if (dx != 0.0 || dy != 0.0) current = std::atan2(dy, dx);
    headings[j] = current;
  }
  if (!waypoints.empty()) headings.back() = current;
  return headings;
}

}  // namespace detail

/// T_n = T_F + dT_n at every waypoint.
inline std::vector<UavPath> expand_path(const CentroidPath& path, const FormationSpec& spec) {
  const std::vector<LocalPoint> centroid_waypoints = path.all_waypoints();
  std::vector<double> headings;
  if (spec.heading_aligned) headings = detail::segment_headings(centroid_waypoints);

  std::vector<UavPath> out;
  out.reserve(spec.offsets.size());
  for (std::size_t n = 0; n < spec.offsets.size(); ++n) {
    UavPath uav;
    uav.uav_index = static_cast<int>(n) + 1;
    uav.waypoints.reserve(centroid_waypoints.size());
    for (std::size_t j = 0; j < centroid_waypoints.size(); ++j) {
      LocalPoint offset = spec.offsets[n];
      if (spec.heading_aligned) offset = detail::rotate_z(offset, headings[j]);
      uav.waypoints.push_back(centroid_waypoints[j] + offset);
    }
    out.push_back(std::move(uav));
  }
  return out;
}

/// Worst deviation, over all waypoints and UAV pairs, of the inter-UAV
/// distance from its nominal value implied by the formation offsets.
inline double shape_error(std::span<const UavPath> paths, const FormationSpec& spec) {
  if (paths.size() < 2) throw std::invalid_argument("shape_error: need at least two paths");
  if (paths.size() != spec.offsets.size()) {
    throw std::invalid_argument("shape_error: path count does not match formation offsets");
  }
  const std::size_t count = paths.front().waypoints.size();
  for (const auto& p : paths) {
    if (p.waypoints.size() != count) {
      throw std::invalid_argument("shape_error: paths differ in waypoint count");
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (std::size_t b = a + 1; b < paths.size(); ++b) {
      const double nominal = distance(spec.offsets[a], spec.offsets[b]);
      for (std::size_t j = 0; j < count; ++j) {
        const double actual = distance(paths[a].waypoints[j], paths[b].waypoints[j]);
        worst = std::max(worst, std::abs(actual - nominal));
      }
    }
  }
  return worst;
}

}  // namespace fplan
