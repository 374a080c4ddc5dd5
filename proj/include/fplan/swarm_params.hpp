#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace fplan {

enum class Algorithm { kGepso, kPso };

inline const char* algorithm_name(Algorithm a) {
  return a == Algorithm::kGepso ? "gepso" : "pso";
}

inline std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "gepso") return Algorithm::kGepso;
  if (name == "pso") return Algorithm::kPso;
  return std::nullopt;
}

/// Optimizer coefficients. Defaults are the tuned values used throughout the
/// bundled scenarios. The canonical PSO reads only omega[0], phi[0] and
/// phi[1]; everything else is GEPSO-specific.
struct GepsoParams {
  // Term weights: inertia, personal, global, random-particle, random-velocity.
  std::array<double, 5> omega = {0.5, 0.5, 0.8, 0.8, 0.9};
  // Amplifiers on the global / random-particle / random-velocity terms.
  std::array<double, 3> alpha = {4.5, 2.0, 2.0};
  // Acceleration coefficients.
  std::array<double, 4> phi = {2.0, 3.0, 2.0, 2.0};
  // Upper bounds of the uniform draws multiplying each phi term.
  std::array<double, 4> r_max = {2.0, 2.0, 1.5, 1.5};
  // Constriction factor applied to the whole velocity update.
  double psi = 0.9;
  // Clamp range of the dynamic inertia weight.
  double omega_max = 0.9;
  double omega_min = 0.4;

  std::size_t swarm_size = 100;
  std::size_t iterations = 100;
};

}  // namespace fplan
