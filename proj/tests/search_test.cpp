#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "test_util.hpp"

using namespace fairfan;
using Catch::Approx;

TEST_CASE("fairness_objective dispatches on origin class and mode") {
  ConvexPolygon sq = fixtures::square();
  REQUIRE(fairness_objective(sq, {0.5, 0.5}, NMode::finite(1)) == 1.0);
  REQUIRE(fairness_objective(sq, {0.5, 0.5}, NMode::infinite()) ==
          Approx(std::sqrt(2.0)).epsilon(1e-9));
  double v2 = fairness_objective(sq, {0.5, 0.5}, NMode::finite(2, EvalMode::exact()));
  REQUIRE(v2 == Approx(1.0).margin(1e-9));
  double v4 = fairness_objective(sq, {0.3, 0.4}, NMode::finite(4, EvalMode::exact()));
  REQUIRE(v4 > 1.0);
  REQUIRE(std::isfinite(v4));
  REQUIRE(std::isinf(fairness_objective(sq, {30.0, 40.0}, NMode::infinite())));
}

TEST_CASE("scan_terrain fills a grid in row-major order") {
  ConvexPolygon sq = fixtures::square();
  Terrain t = scan_terrain(sq, NMode::finite(4, EvalMode::sampled(8)), -1.0, -1.0, 2.0, 2.0,
                           16, 12);
  REQUIRE(t.cols == 16);
  REQUIRE(t.rows == 12);
  REQUIRE(t.values.size() == 16 * 12);
  double best = kInfiniteFairness;
  for (FairnessValue v : t.values) best = std::min(best, v);
  REQUIRE(best <= 1.02);

  // Spot-check one cell against a direct evaluation.
  std::size_t col = 8, row = 6;
  Point c = t.cell_center(col, row);
  double direct = fairness_objective(sq, c, t.n_mode);
  REQUIRE(t.at(col, row) == Approx(direct).epsilon(1e-12));
}

TEST_CASE("scan_terrain validates its window and resolution") {
  ConvexPolygon sq = fixtures::square();
  REQUIRE_THROWS_AS(scan_terrain(sq, NMode::infinite(), 1.0, 0.0, 0.0, 1.0, 8, 8), Error);
  REQUIRE_THROWS_AS(scan_terrain(sq, NMode::infinite(), 0.0, 0.0, 1.0, 1.0, 1, 8), Error);
  REQUIRE_THROWS_AS(
      scan_terrain(sq, NMode::finite(3, EvalMode::sampled(2)), 0.0, 0.0, 1.0, 1.0, 8, 8),
      Error);
}

namespace {

Terrain synthetic(std::size_t cols, std::size_t rows, std::vector<double> vals) {
  Terrain t;
  t.x0 = 0.0;
  t.y0 = 0.0;
  t.x1 = static_cast<double>(cols);
  t.y1 = static_cast<double>(rows);
  t.cols = cols;
  t.rows = rows;
  t.values = std::move(vals);
  return t;
}

}  // namespace

TEST_CASE("local_minima on synthetic terrains") {
  SECTION("single dip") {
    Terrain t = synthetic(5, 5, std::vector<double>(25, 5.0));
    t.values[t.index(2, 2)] = 1.0;
    auto mins = local_minima(t);
    REQUIRE(mins.size() == 1);
    REQUIRE(mins[0].basin_seed == t.index(2, 2));
    REQUIRE(mins[0].value == 1.0);
    REQUIRE(mins[0].kind == Minimum::Kind::grid);
  }

  SECTION("plateau merges into one minimum with smallest index representative") {
    Terrain t = synthetic(6, 4, std::vector<double>(24, 9.0));
    t.values[t.index(2, 1)] = 2.0;
    t.values[t.index(3, 1)] = 2.0;
    t.values[t.index(2, 2)] = 2.0;
    auto mins = local_minima(t);
    REQUIRE(mins.size() == 1);
    REQUIRE(mins[0].basin_seed == t.index(2, 1));
  }

  SECTION("border-touching dips are rejected") {
    Terrain t = synthetic(5, 5, std::vector<double>(25, 5.0));
    t.values[t.index(0, 2)] = 1.0;
    t.values[t.index(2, 2)] = 2.0;
    auto mins = local_minima(t);
    REQUIRE(mins.size() == 1);
    REQUIRE(mins[0].basin_seed == t.index(2, 2));
  }

  SECTION("a perfectly flat grid counts as one minimum") {
    Terrain t = synthetic(4, 4, std::vector<double>(16, 3.0));
    auto mins = local_minima(t);
    REQUIRE(mins.size() == 1);
    REQUIRE(mins[0].basin_seed == 0);
  }

  SECTION("infinite cells are never minima and all-infinite throws") {
    Terrain t = synthetic(4, 4, std::vector<double>(16, kInfiniteFairness));
    REQUIRE_THROWS_AS(local_minima(t), Error);
    t.values[t.index(1, 1)] = 4.0;
    auto mins = local_minima(t);
    REQUIRE(mins.size() == 1);
    REQUIRE(mins[0].basin_seed == t.index(1, 1));
  }

  SECTION("two separate dips") {
    Terrain t = synthetic(7, 5, std::vector<double>(35, 8.0));
    t.values[t.index(1, 2)] = 2.0;
    t.values[t.index(5, 2)] = 3.0;
    auto mins = local_minima(t);
    REQUIRE(mins.size() == 2);
  }
}

TEST_CASE("far windows hold no minima") {
  ConvexPolygon hex = fixtures::hexagon();
  // Window far outside the 3x-inflated bounding box: the landscape decays
  // toward the polygon with no interior basin in view.
  Terrain t = scan_terrain(hex, NMode::finite(3, EvalMode::sampled(8)), 200.0, 200.0, 260.0,
                           250.0, 24, 20);
  bool any_finite = false;
  for (FairnessValue v : t.values) any_finite |= std::isfinite(v);
  REQUIRE(any_finite);
  auto mins = local_minima(t);
  REQUIRE(mins.empty());
}

TEST_CASE("refine_minimum walks to the square center") {
  ConvexPolygon sq = fixtures::square();
  Minimum m = refine_minimum(sq, NMode::finite(4, EvalMode::sampled(8)), {0.41, 0.56});
  REQUIRE(m.kind == Minimum::Kind::refined);
  REQUIRE(m.value == Approx(1.0).margin(1e-6));
  REQUIRE(m.location.x == Approx(0.5).margin(1e-3));
  REQUIRE(m.location.y == Approx(0.5).margin(1e-3));
}

TEST_CASE("refine_minimum never increases the objective") {
  ConvexPolygon hex = fixtures::hexagon();
  std::mt19937_64 rng(11001);
  for (int i = 0; i < 4; ++i) {
    Point seed = fixtures::random_interior(rng, hex);
    NMode nm = NMode::finite(3, EvalMode::exact());
    double at_seed = fairness_objective(hex, seed, nm);
    Minimum m = refine_minimum(hex, nm, seed);
    REQUIRE(m.value <= at_seed + 1e-12);
  }
}

TEST_CASE("interior_asymptotic_minimum matches a brute-force grid") {
  ConvexPolygon tri = fixtures::triangle();
  auto [p, v] = interior_asymptotic_minimum(tri);
  REQUIRE(classify_point(tri, p) == PointClass::interior);

  double best = kInfiniteFairness;
  Point arg{};
  auto bb = tri.bounding_box();
  for (int i = 0; i < 400; ++i)
    for (int j = 0; j < 400; ++j) {
      Point q{bb[0] + (bb[2] - bb[0]) * (i + 0.5) / 400,
              bb[1] + (bb[3] - bb[1]) * (j + 0.5) / 400};
      if (classify_point(tri, q) != PointClass::interior) continue;
      auto d = boundary_distance_extremes(tri, q);
      double val = d.d_max / d.d_min;
      if (val < best) {
        best = val;
        arg = q;
      }
    }
  // The search may undercut the grid by up to the grid quantization error,
  // and in a shallow valley its argmin can sit a few cells away from the
  // grid's. Value dominance is the meaningful check.
  REQUIRE(v <= best + 1e-9);
  REQUIRE(v == Approx(best).margin(0.02));
  auto at_search = boundary_distance_extremes(tri, p);
  REQUIRE(v == Approx(at_search.d_max / at_search.d_min).margin(1e-9));
}

TEST_CASE("asymptotic_candidates counts by polygon shape") {
  CandidateSet tri = asymptotic_candidates(fixtures::triangle());
  REQUIRE(tri.vertices.size() == 3);
  REQUIRE(tri.edge_midpoints.size() == 3);
  REQUIRE(tri.exterior_intersections.empty());
  REQUIRE(tri.all().size() == 7);

  CandidateSet sq = asymptotic_candidates(fixtures::square());
  REQUIRE(sq.all().size() == 9);
  REQUIRE(sq.interior_minimum.value == Approx(std::sqrt(2.0)).margin(1e-6));
  REQUIRE(sq.interior_minimum.location.x == Approx(0.5).margin(1e-4));
  REQUIRE(sq.interior_minimum.location.y == Approx(0.5).margin(1e-4));

  CandidateSet hex = asymptotic_candidates(fixtures::hexagon());
  REQUIRE(hex.vertices.size() == 6);
  REQUIRE(hex.edge_midpoints.size() == 6);
  REQUIRE(hex.exterior_intersections.size() == 9);
  for (const Candidate& c : hex.exterior_intersections) REQUIRE(std::isfinite(c.value));
  for (const Candidate& c : hex.vertices) REQUIRE(std::isfinite(c.value));
}

TEST_CASE("fairest_fan finds a perfect square 4-fan") {
  ConvexPolygon sq = fixtures::square();
  BestFan best = fairest_fan(sq, 4, Strategy::candidates);
  REQUIRE(best.minimum.value == Approx(1.0).margin(1e-6));
  // The center and all four edge midpoints are exactly fair; ties resolve to
  // the lexicographically smallest location, the left edge midpoint.
  REQUIRE(best.minimum.location.x == Approx(0.0).margin(1e-3));
  REQUIRE(best.minimum.location.y == Approx(0.5).margin(1e-3));
  REQUIRE(best.partition.pieces.size() == 4);
  REQUIRE(fairness_ratio(best.partition) == Approx(1.0).margin(1e-6));

  double center = fairness_objective(sq, {0.5, 0.5}, NMode::finite(4, EvalMode::exact()));
  REQUIRE(center == Approx(1.0).margin(1e-9));
}

TEST_CASE("fairest_fan handles n = 1 without scanning") {
  ConvexPolygon hex = fixtures::hexagon();
  BestFan best = fairest_fan(hex, 1);
  REQUIRE(best.minimum.value == 1.0);
  REQUIRE(best.partition.pieces.size() == 1);
  REQUIRE(best.partition.pieces[0].area == Approx(hex.area()).epsilon(1e-12));
}

TEST_CASE("find_perfect_fan confirms the square and rejects a skewed start") {
  ConvexPolygon sq = fixtures::square();
  PerfectFan pf = find_perfect_fan(sq, 4, {0.42, 0.44}, 1e-3);
  REQUIRE(pf.found);
  REQUIRE(pf.minimum.location.x == Approx(0.5).margin(5e-3));
  REQUIRE(pf.minimum.location.y == Approx(0.5).margin(5e-3));
  REQUIRE(pf.partition.pieces.size() == 4);

  // A 12-gon with unequal axes admits no perfect 5-fan near the center.
  ConvexPolygon gon = fixtures::ellipse12();
  PerfectFan none = find_perfect_fan(gon, 5, {0.3, 0.2}, 1e-3);
  REQUIRE_FALSE(none.found);
}
