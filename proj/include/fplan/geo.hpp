#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fplan {

/// WGS-84 equatorial radius, meters.
inline constexpr double kEarthRadius = 6378137.0;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Geodetic position, degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

inline bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

/// Position in the local east/north frame, meters. z is height above the
/// terrain datum (the plane elevations are measured from), not above ground.
struct LocalPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const LocalPoint&, const LocalPoint&) = default;
};

inline LocalPoint operator+(const LocalPoint& a, const LocalPoint& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

inline LocalPoint operator-(const LocalPoint& a, const LocalPoint& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

inline double norm(const LocalPoint& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

inline double distance(const LocalPoint& a, const LocalPoint& b) { return norm(b - a); }

inline double distance_xy(const LocalPoint& a, const LocalPoint& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

/// Equirectangular projection anchored at `origin`: good to centimeters for
/// sub-kilometer workspaces, which is all this planner targets. Inputs more
/// than one degree from the origin are rejected rather than silently
/// distorted.
inline LocalPoint gps_to_local(const GeoPoint& p, const GeoPoint& origin) {
  if (!is_valid(p) || !is_valid(origin)) {
    throw std::invalid_argument("gps_to_local: coordinates outside valid lat/lon ranges");
  }
  if (std::abs(p.lat - origin.lat) >= 1.0 || std::abs(p.lon - origin.lon) >= 1.0) {
    throw std::invalid_argument("gps_to_local: point more than 1 degree from the frame origin");
  }
  const double scale = kEarthRadius * std::numbers::pi / 180.0;
  return {(p.lon - origin.lon) * std::cos(deg_to_rad(origin.lat)) * scale,
          (p.lat - origin.lat) * scale, 0.0};
}

/// Exact algebraic inverse of gps_to_local (z is dropped).
inline GeoPoint local_to_gps(const LocalPoint& p, const GeoPoint& origin) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw std::invalid_argument("local_to_gps: non-finite input");
  }
  const double scale = kEarthRadius * std::numbers::pi / 180.0;
  return {origin.lat + p.y / scale,
          origin.lon + p.x / (scale * std::cos(deg_to_rad(origin.lat)))};
}

/// Rectangular operating box. The local frame is anchored at the southwest
/// corner, x east, y north.
struct Workspace {
  GeoPoint origin;
  double extent_x = 0.0;
  double extent_y = 0.0;
  double h_max = 0.0;

  [[nodiscard]] bool contains(const LocalPoint& p) const {
    return p.x >= 0.0 && p.x <= extent_x && p.y >= 0.0 && p.y <= extent_y &&
           p.z >= 0.0 && p.z <= h_max;
  }
};

}  // namespace fplan
