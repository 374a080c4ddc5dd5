#include <catch2/catch_amalgamated.hpp>

#include "fplan/cost.hpp"
#include "fplan/obstacles.hpp"
#include "fplan/rng.hpp"
#include "oracles.hpp"

using namespace fplan;
using Catch::Approx;

namespace {
Obstacle disk(double cx, double cy, double r) {
  Obstacle o;
  o.center = {cx, cy, 0.0};
  o.radius = r;
  return o;
}
}  // namespace

TEST_CASE("diameter chord through the center") {
  const auto m = segment_obstacle_metrics({-5, 0, 0}, {5, 0, 0}, disk(0, 0, 2));
  CHECK(m.midpoint_distance == Approx(0.0).margin(1e-12));
  CHECK(m.covered_length == Approx(4.0));
}

TEST_CASE("segment missing the disk has zero chord") {
  const auto m = segment_obstacle_metrics({-5, 3, 0}, {5, 3, 1}, disk(0, 0, 2));
  CHECK(m.midpoint_distance == Approx(3.0));
  CHECK(m.covered_length == 0.0);
}

TEST_CASE("tangent line has zero chord") {
  const auto m = segment_obstacle_metrics({-5, 2, 0}, {5, 2, 0}, disk(0, 0, 2));
  CHECK(m.covered_length == Approx(0.0).margin(1e-9));
}

TEST_CASE("chord clips at the segment ends") {
  // From the center outward: only the in-disk half contributes.
  const auto m = segment_obstacle_metrics({0, 0, 0}, {5, 0, 0}, disk(0, 0, 2));
  CHECK(m.covered_length == Approx(2.0));
  CHECK(m.midpoint_distance == Approx(2.5));

  // Entirely inside: the chord is the whole segment.
  const auto inside = segment_obstacle_metrics({-1, 0, 0}, {1, 0, 0}, disk(0, 0, 2));
  CHECK(inside.covered_length == Approx(2.0));
}

TEST_CASE("z is ignored by the ground projection") {
  const auto flat = segment_obstacle_metrics({-5, 0, 0}, {5, 0, 0}, disk(0, 0, 2));
  const auto steep = segment_obstacle_metrics({-5, 0, -40}, {5, 0, 90}, disk(0, 0, 2));
  CHECK(steep.covered_length == Approx(flat.covered_length));
  CHECK(steep.midpoint_distance == Approx(flat.midpoint_distance));
}

TEST_CASE("vertical segment degenerates to a point") {
  const auto m = segment_obstacle_metrics({1, 1, 0}, {1, 1, 7}, disk(0, 0, 2));
  CHECK(m.covered_length == 0.0);
  CHECK(m.midpoint_distance == Approx(std::sqrt(2.0)));
}

TEST_CASE("hand-built hazard values") {
  // Circle R=2 at origin; segment y=1.2, x from 0.4 to 1.4 sits fully inside:
  // d = |(0.9, 1.2)| = 1.5, l = 1.0, and 1.0 < 1.5 < 2 picks the R*l/d branch.
  const Obstacle o = disk(0, 0, 2);
  CHECK(segment_safe_cost({0.4, 1.2, 0}, {1.4, 1.2, 5}, o) == Approx(4.0 / 3.0));

  // Full chord at y=1.2 runs x in [-1.6, 1.6]: d = 1.2 <= l = 3.2 -> R*l.
  CHECK(segment_safe_cost({-1.6, 1.2, 0}, {1.6, 1.2, 0}, o) == Approx(6.4));

  // Far segment: d = 3 >= R -> free.
  CHECK(segment_safe_cost({-5, 3, 0}, {5, 3, 0}, o) == 0.0);
}

TEST_CASE("chord agrees with the perpendicular-foot oracle") {
  SplitMix64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Obstacle o = disk(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0.5, 5.0));
    const LocalPoint a{o.center.x + rng.uniform(-4, 4) * o.radius,
                       o.center.y + rng.uniform(-4, 4) * o.radius, rng.uniform(0, 10)};
    const LocalPoint b{o.center.x + rng.uniform(-4, 4) * o.radius,
                       o.center.y + rng.uniform(-4, 4) * o.radius, rng.uniform(0, 10)};
    const auto m = segment_obstacle_metrics(a, b, o);
    CHECK(m.covered_length == Approx(oracle::chord_xy(a, b, o)).margin(1e-9));
    CHECK(m.midpoint_distance ==
          Approx(oracle::midpoint_distance_xy(a, b, o)).margin(1e-9));
  }
}

TEST_CASE("chord agrees with dense sampling") {
  SplitMix64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const Obstacle o = disk(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0.5, 5.0));
    // Keep segments short enough (<= 4R) that the sampling estimate's own
    // resolution stays below the comparison tolerance.
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double len = rng.uniform(0.1, 4.0) * o.radius;
    const LocalPoint a{o.center.x + rng.uniform(-1.5, 1.5) * o.radius,
                       o.center.y + rng.uniform(-1.5, 1.5) * o.radius, 0.0};
    const LocalPoint b{a.x + std::cos(angle) * len, a.y + std::sin(angle) * len, 3.0};
    const auto m = segment_obstacle_metrics(a, b, o);
    CHECK(m.covered_length ==
          Approx(oracle::chord_sampled(a, b, o)).margin(1e-3 * o.radius));
  }
}
