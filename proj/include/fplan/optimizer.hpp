#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fplan/cost.hpp"
#include "fplan/formation.hpp"
#include "fplan/parallel.hpp"
#include "fplan/path.hpp"
#include "fplan/rng.hpp"
#include "fplan/scenario.hpp"
#include "fplan/swarm_params.hpp"

namespace fplan {

// Search-space fractions: velocities are clamped to +/-20% of each axis
// range, initial velocities and the random-velocity term are scaled to 10%.
inline constexpr double kVelocityClampFraction = 0.2;
inline constexpr double kInitVelocityFraction = 0.1;
inline constexpr double kRandVelocityFraction = 0.1;

/// Axis-aligned search box. Particle vectors are laid out [x_1..x_n,
/// y_1..y_n, z_1..z_n], so coordinate index k belongs to axis k / n.
struct BoxBounds {
  std::array<double, 3> lo = {0.0, 0.0, 0.0};
  std::array<double, 3> hi = {1.0, 1.0, 1.0};

  double range(std::size_t axis) const { return hi[axis] - lo[axis]; }
};

inline BoxBounds box_bounds(const Scenario& s) {
  BoxBounds b;
  b.hi = {s.workspace.extent_x, s.workspace.extent_y, s.workspace.h_max};
  return b;
}

inline CentroidPath decode(const std::vector<double>& position, const Scenario& s) {
  const std::size_t n = s.waypoints_n;
  assert(position.size() == 3 * n);
  CentroidPath path;
  path.start = s.start;
  path.end = s.end;
  path.interior.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    path.interior[j] = {position[j], position[n + j], position[2 * n + j]};
  }
  return path;
}

inline std::vector<double> encode(const CentroidPath& path) {
  const std::size_t n = path.interior.size();
  std::vector<double> position(3 * n);
  for (std::size_t j = 0; j < n; ++j) {
    position[j] = path.interior[j].x;
    position[n + j] = path.interior[j].y;
    position[2 * n + j] = path.interior[j].z;
  }
  return position;
}

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> pbest_position;
  double pbest_cost = std::numeric_limits<double>::infinity();
  double pbest_safe = 0.0;
  // Cost of the current position, refreshed after every move so the next
  // iteration never re-evaluates an unchanged particle.
  double current_cost = std::numeric_limits<double>::infinity();
  double current_safe = 0.0;
};

struct HistoryEntry {
  double gbest_cost = 0.0;
  double safe_cost = 0.0;
};

struct SwarmState {
  std::vector<Particle> particles;
  std::vector<double> gbest_position;
  double gbest_cost = std::numeric_limits<double>::infinity();
  double gbest_safe = 0.0;
  // Previous-iteration gbest cost, the f(p_g^{t-2}) term of the dynamic
  // inertia update; starts at +inf so the first delta is ignored.
  double gbest_cost_prev = std::numeric_limits<double>::infinity();
  double omega1_current = 0.5;
  std::size_t iteration = 0;
  std::vector<HistoryEntry> history;
};

/// Canonical PSO velocity: v' = w*v + phi1*r1*(pbest - x) + phi2*r2*(gbest - x)
/// with scalar r1, r2 ~ U[0,1] drawn once per call.
template <class Rng>
std::vector<double> pso_velocity(const Particle& p, const std::vector<double>& gbest,
                                 double omega, double phi1, double phi2, Rng& rng) {
  const double r1 = rng.uniform(0.0, 1.0);
  const double r2 = rng.uniform(0.0, 1.0);
  std::vector<double> v(p.velocity.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = omega * p.velocity[k] + phi1 * r1 * (p.pbest_position[k] - p.position[k]) +
           phi2 * r2 * (gbest[k] - p.position[k]);
  }
  return v;
}

/// GEPSO velocity: v' = psi*(a1*v + a2*(pbest-x) + a3*(gbest-x) +
/// a4*(p_rand-x) + a5*v_rand) with a1 = omega1, a2 = w2*phi1*r1,
/// a3 = w3*alpha1*phi2*r2, a4 = w4*alpha2*phi3*r3, a5 = w5*alpha3*phi4*r4 and
/// r_j ~ U[0, r_j_max] drawn per dimension in the order r1, r2, r3, r4.
template <class Rng>
std::vector<double> gepso_velocity(const Particle& p, const std::vector<double>& gbest,
                                   const std::vector<double>& p_rand,
                                   const std::vector<double>& v_rand, double omega1,
                                   const GepsoParams& params, Rng& rng) {
  std::vector<double> v(p.velocity.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double r1 = rng.uniform(0.0, params.r_max[0]);
    const double r2 = rng.uniform(0.0, params.r_max[1]);
    const double r3 = rng.uniform(0.0, params.r_max[2]);
    const double r4 = rng.uniform(0.0, params.r_max[3]);
    const double a2 = params.omega[1] * params.phi[0] * r1;
    const double a3 = params.omega[2] * params.alpha[0] * params.phi[1] * r2;
    const double a4 = params.omega[3] * params.alpha[1] * params.phi[2] * r3;
    const double a5 = params.omega[4] * params.alpha[2] * params.phi[3] * r4;
    v[k] = params.psi * (omega1 * p.velocity[k] +
                         a2 * (p.pbest_position[k] - p.position[k]) +
                         a3 * (gbest[k] - p.position[k]) +
                         a4 * (p_rand[k] - p.position[k]) + a5 * v_rand[k]);
  }
  return v;
}

/// Dynamic inertia: w_k = w_prev - (w_max - w_min)/N * i * (f_curr - f_prev),
/// clamped to [w_min, w_max]. Deltas involving non-finite or sentinel costs
/// are treated as zero so the blow-up values cannot poison the weight.
inline double update_inertia(double omega_prev, double f_curr, double f_prev,
                             std::size_t iteration, const GepsoParams& params) {
  double delta = f_curr - f_prev;
  if (!std::isfinite(delta) || is_infinite_cost(f_curr) || is_infinite_cost(f_prev)) {
    delta = 0.0;
  }
  const double n = static_cast<double>(std::max<std::size_t>(params.iterations, 1));
  const double omega_k = omega_prev - (params.omega_max - params.omega_min) / n *
                                          static_cast<double>(iteration) * delta;
  return std::clamp(omega_k, params.omega_min, params.omega_max);
}

namespace detail {

inline void evaluate_particles(SwarmState& state, const Scenario& s, unsigned threads) {
  parallel_for(state.particles.size(), threads, [&](std::size_t i) {
    Particle& p = state.particles[i];
    const CostBreakdown c = total_cost(decode(p.position, s), s);
    p.current_cost = c.total;
    p.current_safe = c.safe;
  });
}

inline void update_pbests(SwarmState& state) {
  for (auto& p : state.particles) {
    if (p.current_cost < p.pbest_cost) {
      p.pbest_cost = p.current_cost;
      p.pbest_safe = p.current_safe;
      p.pbest_position = p.position;
    }
  }
}

/// Adopts the best pbest as gbest; ties keep the incumbent.
inline void refresh_gbest(SwarmState& state) {
  std::size_t best = state.particles.size();
  double best_cost = state.gbest_cost;
  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    if (state.particles[i].pbest_cost < best_cost) {
      best_cost = state.particles[i].pbest_cost;
      best = i;
    }
  }
  if (best < state.particles.size()) {
    state.gbest_cost = state.particles[best].pbest_cost;
    state.gbest_safe = state.particles[best].pbest_safe;
    state.gbest_position = state.particles[best].pbest_position;
  }
}

}  // namespace detail

/// Builds iteration 0: positions uniform in the box, velocities
/// gamma*(range) with gamma ~ U[-0.1, 0.1], pbests at the evaluated initial
/// positions. Draw order per particle: 3n position coordinates, then 3n
/// gammas, from the particle's iteration-0 stream.
inline SwarmState init_swarm(const Scenario& s, const BoxBounds& bounds, std::uint64_t seed,
                             unsigned threads = 1) {
  const std::size_t n = s.waypoints_n;
  const std::size_t dims = 3 * n;
  SwarmState state;
  state.omega1_current = s.params.omega[0];
  state.particles.resize(s.params.swarm_size);
  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    SplitMix64 rng = stream_for(seed, 0, i);
    Particle& p = state.particles[i];
    p.position.resize(dims);
    p.velocity.resize(dims);
    for (std::size_t k = 0; k < dims; ++k) {
      const std::size_t axis = k / n;
      p.position[k] = rng.uniform(bounds.lo[axis], bounds.hi[axis]);
    }
    for (std::size_t k = 0; k < dims; ++k) {
      const double gamma = rng.uniform(-kInitVelocityFraction, kInitVelocityFraction);
      p.velocity[k] = gamma * bounds.range(k / n);
    }
  }
  detail::evaluate_particles(state, s, threads);
  for (auto& p : state.particles) {
    p.pbest_position = p.position;
    p.pbest_cost = p.current_cost;
    p.pbest_safe = p.current_safe;
  }
  detail::refresh_gbest(state);
  state.history.push_back({state.gbest_cost, state.gbest_safe});
  return state;
}

/// Advances the swarm one iteration. All random draws happen in a sequential
/// pass ordered by particle index, each particle reading its own
/// (seed, iteration, index) stream in a fixed order (GEPSO: 3n v_rand
/// coordinates, the p_rand index, then the per-dimension r draws; PSO: the
/// two scalar r draws) — cost evaluation is pure and may fan out over
/// threads, so results are identical at any thread count. Velocities use the
/// gbest standing at the end of the previous iteration.
inline void step(SwarmState& state, const Scenario& s, const BoxBounds& bounds,
                 Algorithm algo, std::uint64_t seed, unsigned threads = 1) {
  const GepsoParams& params = s.params;
  const std::size_t n = s.waypoints_n;
  const std::size_t dims = 3 * n;
  const std::size_t t = state.iteration + 1;
  const double f_curr = state.gbest_cost;       // f(p_g^{t-1})
  const double f_prev = state.gbest_cost_prev;  // f(p_g^{t-2})
  const std::vector<double> gbest = state.gbest_position;

  std::vector<double> v_rand(dims);
  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    SplitMix64 rng = stream_for(seed, t, i);
    Particle& p = state.particles[i];
    std::vector<double> v;
    if (algo == Algorithm::kGepso) {
      for (std::size_t k = 0; k < dims; ++k) {
        v_rand[k] = rng.uniform(-1.0, 1.0) * kRandVelocityFraction * bounds.range(k / n);
      }
      const std::size_t pick = rng.uniform_index(state.particles.size());
      state.omega1_current =
          update_inertia(state.omega1_current, f_curr, f_prev, t, params);
      v = gepso_velocity(p, gbest, state.particles[pick].pbest_position, v_rand,
                         state.omega1_current, params, rng);
    } else {
      v = pso_velocity(p, gbest, params.omega[0], params.phi[0], params.phi[1], rng);
    }
    for (std::size_t k = 0; k < dims; ++k) {
      const std::size_t axis = k / n;
      const double v_max = kVelocityClampFraction * bounds.range(axis);
      p.velocity[k] = std::clamp(v[k], -v_max, v_max);
      p.position[k] =
          std::clamp(p.position[k] + p.velocity[k], bounds.lo[axis], bounds.hi[axis]);
    }
  }

  detail::evaluate_particles(state, s, threads);
  detail::update_pbests(state);
  detail::refresh_gbest(state);
  state.gbest_cost_prev = f_curr;
  state.iteration = t;
  state.history.push_back({state.gbest_cost, state.gbest_safe});
}

struct RunResult {
  Algorithm algorithm = Algorithm::kGepso;
  std::uint64_t seed = 0;
  CentroidPath best_path;
  std::vector<UavPath> uav_paths;
  CostBreakdown breakdown;
  std::vector<HistoryEntry> history;
  double wall_time_ms = 0.0;
};

/// Full optimization: init, `iterations` steps, then decode and expand the
/// best path. History has iterations + 1 entries (iteration 0 included).
inline RunResult run(const Scenario& s, Algorithm algo, std::uint64_t seed,
                     unsigned threads = 1) {
  validate(s);
  const auto t0 = std::chrono::steady_clock::now();
  const BoxBounds bounds = box_bounds(s);
  SwarmState state = init_swarm(s, bounds, seed, threads);
  for (std::size_t t = 0; t < s.params.iterations; ++t) {
    step(state, s, bounds, algo, seed, threads);
  }
  RunResult result;
  result.algorithm = algo;
  result.seed = seed;
  result.best_path = decode(state.gbest_position, s);
  result.uav_paths = expand_path(result.best_path, s.formation);
  result.breakdown = total_cost(result.best_path, s);
  result.history = std::move(state.history);
  const auto t1 = std::chrono::steady_clock::now();
  result.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return result;
}

/// First iteration whose gbest is within 1% of the run's final value (the
/// history is monotone non-increasing, so this is the convergence point).
inline std::size_t convergence_iteration(std::span<const HistoryEntry> history) {
  assert(!history.empty());
  const double threshold = history.back().gbest_cost * 1.01;
  for (std::size_t t = 0; t < history.size(); ++t) {
    if (history[t].gbest_cost <= threshold) return t;
  }
  return history.size() - 1;
}

}  // namespace fplan
