#pragma once

#include <cstddef>
#include <vector>

#include "fplan/geo.hpp"

namespace fplan {

/// Waypoint sequence of the formation centroid. start (W_0) and end (W_{n+1})
/// are shared by every candidate and never moved by the optimizer; only the n
/// interior waypoints are free.
struct CentroidPath {
  LocalPoint start;
  LocalPoint end;
  std::vector<LocalPoint> interior;

  [[nodiscard]] std::size_t waypoint_count() const { return interior.size() + 2; }

  [[nodiscard]] std::vector<LocalPoint> all_waypoints() const {
    std::vector<LocalPoint> w;
    w.reserve(waypoint_count());
    w.push_back(start);
    w.insert(w.end(), interior.begin(), interior.end());
    w.push_back(end);
    return w;
  }
};

}  // namespace fplan
