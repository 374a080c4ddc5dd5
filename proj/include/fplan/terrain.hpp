#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fplan {

/// Regular elevation grid in the local frame. Node (i, j) sits at
/// (x0 + i*cell, y0 + j*cell) with j increasing northward; heights are stored
/// row by row, southernmost row first (heights[j*nx + i]).
class TerrainGrid {
 public:
  TerrainGrid(int nx, int ny, double x0, double y0, double cell, std::vector<double> heights)
      : nx_(nx), ny_(ny), x0_(x0), y0_(y0), cell_(cell), heights_(std::move(heights)) {
    if (nx_ < 2 || ny_ < 2) throw std::invalid_argument("TerrainGrid: nx and ny must be >= 2");
    if (!(cell_ > 0.0)) throw std::invalid_argument("TerrainGrid: cell size must be > 0");
    if (heights_.size() != static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_)) {
      throw std::invalid_argument("TerrainGrid: heights must hold exactly nx*ny entries");
    }
    for (double h : heights_) {
      if (!std::isfinite(h)) throw std::invalid_argument("TerrainGrid: non-finite elevation");
    }
  }

  /// A flat grid; boundary clamping makes it constant over the whole plane.
  static TerrainGrid constant(double height) {
    return TerrainGrid(2, 2, 0.0, 0.0, 1.0, std::vector<double>(4, height));
  }

  [[nodiscard]] int nx() const { return nx_; }
  [[nodiscard]] int ny() const { return ny_; }
  [[nodiscard]] double x0() const { return x0_; }
  [[nodiscard]] double y0() const { return y0_; }
  [[nodiscard]] double cell() const { return cell_; }

  [[nodiscard]] double node(int i, int j) const {
    return heights_[static_cast<std::size_t>(j) * nx_ + i];
  }

 private:
  int nx_;
  int ny_;
  double x0_;
  double y0_;
  double cell_;
  std::vector<double> heights_;
};

/// Bilinear elevation at (x, y). Queries outside the grid clamp to the
/// boundary cell, so the function is defined on the whole plane.
inline double terrain_elevation(const TerrainGrid& g, double x, double y) {
  double fx = (x - g.x0()) / g.cell();
  double fy = (y - g.y0()) / g.cell();
  fx = std::clamp(fx, 0.0, static_cast<double>(g.nx() - 1));
  fy = std::clamp(fy, 0.0, static_cast<double>(g.ny() - 1));
  const int i = std::min(static_cast<int>(fx), g.nx() - 2);
  const int j = std::min(static_cast<int>(fy), g.ny() - 2);
  const double u = fx - i;
  const double v = fy - j;
  const double south = (1.0 - u) * g.node(i, j) + u * g.node(i + 1, j);
  const double north = (1.0 - u) * g.node(i, j + 1) + u * g.node(i + 1, j + 1);
  return (1.0 - v) * south + v * north;
}

/// Parses the plain-text grid format: first line `nx ny x0 y0 cell`, then ny
/// rows of nx whitespace-separated elevations, northernmost row first.
inline TerrainGrid load_terrain_grid(std::istream& in) {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double cell = 0.0;
  if (!(in >> nx >> ny >> x0 >> y0 >> cell)) {
    throw std::invalid_argument("terrain grid: malformed header line");
  }
  if (nx < 2 || ny < 2) throw std::invalid_argument("terrain grid: nx and ny must be >= 2");
  std::vector<double> heights(static_cast<std::size_t>(nx) * ny, 0.0);
  for (int row = 0; row < ny; ++row) {
    const int j = ny - 1 - row;  // file stores the northernmost row first
    for (int i = 0; i < nx; ++i) {
      double h = 0.0;
      if (!(in >> h)) throw std::invalid_argument("terrain grid: not enough elevation values");
      heights[static_cast<std::size_t>(j) * nx + i] = h;
    }
  }
  return TerrainGrid(nx, ny, x0, y0, cell, std::move(heights));
}

inline TerrainGrid load_terrain_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("terrain grid: cannot open file: " + path);
  return load_terrain_grid(in);
}

}  // namespace fplan
