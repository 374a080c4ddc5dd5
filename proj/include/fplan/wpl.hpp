#pragma once

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fplan/formation.hpp"
#include "fplan/geo.hpp"
#include "fplan/io.hpp"
#include "fplan/optimizer.hpp"
#include "fplan/scenario.hpp"

namespace fplan {

// MAVLink frame / command ids used in the emitted rows.
inline constexpr int kWplFrameGlobal = 0;       // home row, absolute frame
inline constexpr int kWplFrameRelativeAlt = 3;  // mission rows, relative-to-home
inline constexpr int kWplCmdNavWaypoint = 16;

struct WplRow {
  int index = 0;
  int current = 0;
  int frame = kWplFrameRelativeAlt;
  int command = kWplCmdNavWaypoint;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0;
  double lat = 0.0;
  double lon = 0.0;
  double alt = 0.0;
  int autocontinue = 1;
};

struct WplFile {
  std::vector<WplRow> rows;
};

namespace detail {

inline std::string wpl_row_line(const WplRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%d\t%d\t%d\t%d\t%.6f\t%.6f\t%.6f\t%.6f\t%.7f\t%.7f\t%.2f\t%d\n", r.index,
                r.current, r.frame, r.command, r.p1, r.p2, r.p3, r.p4, r.lat, r.lon, r.alt,
                r.autocontinue);
  return buf;
}

}  // namespace detail

/// Serializes one UAV trajectory as QGC WPL 110. Row 0 is the home position
/// at the trajectory's first waypoint; mission rows carry every waypoint with
/// altitude relative to the home datum (the local frame's z = 0 plane, which
/// is also what the waypoints' z values are measured against).
inline std::string wpl_content(const std::vector<LocalPoint>& waypoints,
                               const GeoPoint& origin) {
  if (waypoints.empty()) throw std::invalid_argument("wpl_content: empty trajectory");
  std::string out = "QGC WPL 110\n";
  WplRow home;
  home.index = 0;
  home.current = 1;
  home.frame = kWplFrameGlobal;
  const GeoPoint home_gps = local_to_gps(waypoints.front(), origin);
  home.lat = home_gps.lat;
  home.lon = home_gps.lon;
  home.alt = 0.0;
  out += detail::wpl_row_line(home);
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    WplRow row;
    row.index = static_cast<int>(i + 1);
    const GeoPoint g = local_to_gps(waypoints[i], origin);
    row.lat = g.lat;
    row.lon = g.lon;
    row.alt = waypoints[i].z;
    out += detail::wpl_row_line(row);
  }
  return out;
}

/// Writes one `uav<k>.waypoints` file per UAV; returns the written paths.
inline std::vector<std::filesystem::path> export_wpl(const RunResult& result,
                                                     const Scenario& s,
                                                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> files;
  for (const auto& uav : result.uav_paths) {
    const auto path = out_dir / ("uav" + std::to_string(uav.uav_index) + ".waypoints");
    write_text_atomic(path, wpl_content(uav.waypoints, s.workspace.origin));
    files.push_back(path);
  }
  return files;
}

inline WplFile parse_wpl(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "QGC WPL 110") {
    throw std::runtime_error("not a QGC WPL 110 file");
  }
  WplFile file;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row_in(line);
    WplRow r;
    if (!(row_in >> r.index >> r.current >> r.frame >> r.command >> r.p1 >> r.p2 >> r.p3 >>
          r.p4 >> r.lat >> r.lon >> r.alt >> r.autocontinue)) {
      throw std::runtime_error("malformed WPL row: " + line);
    }
    file.rows.push_back(r);
  }
  return file;
}

/// Recovers the mission waypoints (frame-3 rows) in local coordinates.
inline std::vector<LocalPoint> wpl_waypoints_local(const WplFile& file,
                                                   const GeoPoint& origin) {
  std::vector<LocalPoint> out;
  for (const auto& r : file.rows) {
    if (r.frame != kWplFrameRelativeAlt) continue;
    LocalPoint p = gps_to_local({r.lat, r.lon}, origin);
    p.z = r.alt;
    out.push_back(p);
  }
  return out;
}

}  // namespace fplan
