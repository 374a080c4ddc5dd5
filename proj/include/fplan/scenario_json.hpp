#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "fplan/geo.hpp"
#include "fplan/io.hpp"
#include "fplan/scenario.hpp"
#include "fplan/terrain.hpp"

namespace fplan {
namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& j, const std::string& key,
                                         const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) throw ValidationError(path, "missing");
  return *it;
}

inline double require_num(const nlohmann::json& j, const std::string& key,
                          const std::string& path) {
  const auto& v = require_key(j, key, path);
  if (!v.is_number()) throw ValidationError(path, "must be a number");
  return v.get<double>();
}

inline double num_or(const nlohmann::json& j, const std::string& key, double fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw ValidationError(key, "must be a number");
  return it->get<double>();
}

inline GeoPoint read_geo(const nlohmann::json& j, const std::string& path) {
  return {require_num(j, "lat", path + ".lat"), require_num(j, "lon", path + ".lon")};
}

/// Reads either local {x, y} or GPS {lat, lon} coordinates.
inline LocalPoint read_xy(const nlohmann::json& j, const GeoPoint& origin,
                          const std::string& path) {
  if (j.contains("x") || j.contains("y")) {
    return {require_num(j, "x", path + ".x"), require_num(j, "y", path + ".y"), 0.0};
  }
  try {
    return gps_to_local(read_geo(j, path), origin);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(path, e.what());
  }
}

template <std::size_t N>
std::array<double, N> read_array(const nlohmann::json& j, const std::string& key,
                                 const std::array<double, N>& fallback,
                                 const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_array() || it->size() != N) {
    throw ValidationError(path, "expects " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = (*it)[i].get<double>();
  return out;
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j,
                                   const std::filesystem::path& base_dir,
                                   std::ostream* warnings = nullptr) {
  using detail::num_or;
  using detail::require_key;
  using detail::require_num;
  Scenario s;

  const auto& ws = require_key(j, "workspace", "workspace");
  s.workspace.origin = detail::read_geo(require_key(ws, "corner_sw", "workspace.corner_sw"),
                                        "workspace.corner_sw");
  const GeoPoint ne = detail::read_geo(require_key(ws, "corner_ne", "workspace.corner_ne"),
                                       "workspace.corner_ne");
  try {
    const LocalPoint extent = gps_to_local(ne, s.workspace.origin);
    s.workspace.extent_x = extent.x;
    s.workspace.extent_y = extent.y;
  } catch (const std::invalid_argument& e) {
    throw ValidationError("workspace.corner_ne", e.what());
  }
  s.workspace.h_max = require_num(ws, "h_max", "workspace.h_max");

  const auto& tj = require_key(j, "terrain", "terrain");
  if (tj.contains("constant")) {
    const double h = require_num(tj, "constant", "terrain.constant");
    s.terrain = TerrainGrid::constant(h);
    s.terrain_source.constant = h;
  } else if (tj.contains("grid_file")) {
    const std::string rel = require_key(tj, "grid_file", "terrain.grid_file").get<std::string>();
    // Resolved to an absolute path so scenarios embedded in result files can
    // be reloaded from anywhere.
    const auto resolved = std::filesystem::weakly_canonical(base_dir / rel);
    try {
      s.terrain = load_terrain_grid_file(resolved.string());
    } catch (const std::exception& e) {
      throw ValidationError("terrain.grid_file", e.what());
    }
    s.terrain_source.grid_file = resolved.string();
  } else {
    throw ValidationError("terrain", "needs either `constant` or `grid_file`");
  }

  if (const auto it = j.find("obstacles"); it != j.end()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& oj = (*it)[i];
      const std::string path = "obstacles[" + std::to_string(i) + "]";
      Obstacle o;
      o.center = detail::read_xy(oj, s.workspace.origin, path);
      o.radius = require_num(oj, "radius", path + ".radius");
      o.height = num_or(oj, "height", 1.0);
      o.danger = num_or(oj, "danger", 1.0);
      s.obstacles.push_back(o);
    }
  }

  if (const auto it = j.find("targets"); it != j.end()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& tj2 = (*it)[i];
      const std::string path = "targets[" + std::to_string(i) + "]";
      LocalPoint p = detail::read_xy(tj2, s.workspace.origin, path);
      p.z = tj2.contains("z") ? require_num(tj2, "z", path + ".z")
                              : require_num(tj2, "alt", path + ".alt");
      s.targets.points.push_back(p);
    }
  }

  for (const char* key : {"start", "end"}) {
    const auto& pj = require_key(j, key, key);
    LocalPoint p;
    try {
      p = gps_to_local(detail::read_geo(pj, key), s.workspace.origin);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(key, e.what());
    }
    p.z = require_num(pj, "alt", std::string(key) + ".alt");
    (key == std::string("start") ? s.start : s.end) = p;
  }

  const auto& fj = require_key(j, "formation", "formation");
  const auto& offsets = require_key(fj, "offsets", "formation.offsets");
  if (!offsets.is_array()) throw ValidationError("formation.offsets", "must be an array");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const auto& oj = offsets[i];
    if (!oj.is_array() || oj.size() != 3) {
      throw ValidationError("formation.offsets[" + std::to_string(i) + "]",
                            "expects [x, y, z]");
    }
    s.formation.offsets.push_back(
        {oj[0].get<double>(), oj[1].get<double>(), oj[2].get<double>()});
  }
  s.formation.heading_aligned = fj.value("heading_aligned", false);
  const LocalPoint shift = recenter_offsets(s.formation.offsets);
  if (norm(shift) > 1e-9 && warnings) {
    *warnings << "formation.offsets: mean offset (" << shift.x << ", " << shift.y << ", "
              << shift.z << ") removed so offsets stay centroid-relative\n";
  }

  const auto& ab = require_key(j, "altitude_band", "altitude_band");
  s.altitude_band.z_min = require_num(ab, "z_min", "altitude_band.z_min");
  s.altitude_band.z_max = require_num(ab, "z_max", "altitude_band.z_max");

  if (const auto it = j.find("mission_band"); it != j.end() && !it->is_null()) {
    MissionBand band;
    band.d_min = require_num(*it, "d_min", "mission_band.d_min");
    band.d_max = require_num(*it, "d_max", "mission_band.d_max");
    s.mission_band = band;
  }

  if (const auto it = j.find("penalties"); it != j.end()) {
    s.penalties.range = num_or(*it, "range", 1.0);
    s.penalties.safe = num_or(*it, "safe", 1.0);
    s.penalties.alt = num_or(*it, "alt", 1.0);
    s.penalties.mission = num_or(*it, "mission", 1.0);
  }

  if (const auto it = j.find("optimizer"); it != j.end()) {
    const auto& oj = *it;
    GepsoParams& p = s.params;
    p.swarm_size = static_cast<std::size_t>(num_or(oj, "swarm_size", double(p.swarm_size)));
    p.iterations = static_cast<std::size_t>(num_or(oj, "iterations", double(p.iterations)));
    s.waypoints_n = static_cast<std::size_t>(num_or(oj, "waypoints_n", double(s.waypoints_n)));
    p.omega = detail::read_array<5>(oj, "omega", p.omega, "optimizer.omega");
    p.alpha = detail::read_array<3>(oj, "alpha", p.alpha, "optimizer.alpha");
    p.phi = detail::read_array<4>(oj, "phi", p.phi, "optimizer.phi");
    p.r_max = detail::read_array<4>(oj, "r_max", p.r_max, "optimizer.r_max");
    p.psi = num_or(oj, "psi", p.psi);
    p.omega_min = num_or(oj, "omega_min", p.omega_min);
    p.omega_max = num_or(oj, "omega_max", p.omega_max);
  }

  s.seed = static_cast<std::uint64_t>(num_or(j, "seed", 0.0));
  s.evaluate_expansion = j.value("evaluate_expansion", true);

  validate(s);
  return s;
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  const GeoPoint ne =
      local_to_gps({s.workspace.extent_x, s.workspace.extent_y, 0.0}, s.workspace.origin);
  j["workspace"] = {
      {"corner_sw", {{"lat", s.workspace.origin.lat}, {"lon", s.workspace.origin.lon}}},
      {"corner_ne", {{"lat", ne.lat}, {"lon", ne.lon}}},
      {"h_max", s.workspace.h_max}};

  if (s.terrain_source.constant) {
    j["terrain"] = {{"constant", *s.terrain_source.constant}};
  } else if (s.terrain_source.grid_file) {
    j["terrain"] = {{"grid_file", *s.terrain_source.grid_file}};
  } else {
    throw std::logic_error("scenario_to_json: terrain_source unset");
  }

  j["obstacles"] = nlohmann::json::array();
  for (const auto& o : s.obstacles) {
    j["obstacles"].push_back({{"x", o.center.x},
                              {"y", o.center.y},
                              {"radius", o.radius},
                              {"height", o.height},
                              {"danger", o.danger}});
  }
  j["targets"] = nlohmann::json::array();
  for (const auto& t : s.targets.points) {
    j["targets"].push_back({{"x", t.x}, {"y", t.y}, {"z", t.z}});
  }

  for (const auto& [key, p] : {std::pair{"start", s.start}, std::pair{"end", s.end}}) {
    const GeoPoint g = local_to_gps(p, s.workspace.origin);
    j[key] = {{"lat", g.lat}, {"lon", g.lon}, {"alt", p.z}};
  }

  j["formation"]["offsets"] = nlohmann::json::array();
  for (const auto& o : s.formation.offsets) {
    j["formation"]["offsets"].push_back({o.x, o.y, o.z});
  }
  j["formation"]["heading_aligned"] = s.formation.heading_aligned;

  j["altitude_band"] = {{"z_min", s.altitude_band.z_min}, {"z_max", s.altitude_band.z_max}};
  if (s.mission_band) {
    j["mission_band"] = {{"d_min", s.mission_band->d_min}, {"d_max", s.mission_band->d_max}};
  }
  j["penalties"] = {{"range", s.penalties.range},
                    {"safe", s.penalties.safe},
                    {"alt", s.penalties.alt},
                    {"mission", s.penalties.mission}};
  j["optimizer"] = {{"swarm_size", s.params.swarm_size},
                    {"iterations", s.params.iterations},
                    {"waypoints_n", s.waypoints_n},
                    {"omega", s.params.omega},
                    {"alpha", s.params.alpha},
                    {"phi", s.params.phi},
                    {"r_max", s.params.r_max},
                    {"psi", s.params.psi},
                    {"omega_min", s.params.omega_min},
                    {"omega_max", s.params.omega_max}};
  j["seed"] = s.seed;
  j["evaluate_expansion"] = s.evaluate_expansion;
  return j;
}

inline Scenario load_scenario(const std::filesystem::path& path,
                              std::ostream* warnings = nullptr) {
  const nlohmann::json j = nlohmann::json::parse(read_text_file(path));
  return scenario_from_json(j, path.parent_path(), warnings);
}

inline void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  write_text_atomic(path, scenario_to_json(s).dump(2) + "\n");
}

}  // namespace fplan
