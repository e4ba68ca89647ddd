// Walkthrough of the library surface: build a polygon, query fairness at a
// point, construct the witness partition, and run a small terrain scan.

#include <cstdio>

#include <fairfan/fairfan.hpp>

int main() {
  using namespace fairfan;

  ConvexPolygon square = validate_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::printf("square: area %.3f, perimeter %.3f\n", square.area(), square.perimeter());

  PointFairness center = fairness_at_point(square, {0.5, 0.5}, 4, EvalMode::exact());
  std::printf("fairness at center, n=4: %.12f (theta %.6f)\n", center.value, center.theta);

  auto part = interior_fan(square, {0.5, 0.5}, equal_fractions(4), center.theta);
  if (part) {
    for (std::size_t i = 0; i < part->pieces.size(); ++i)
      std::printf("  piece %zu: area %.6f, perimeter %.6f\n", i, part->pieces[i].area,
                  part->pieces[i].perimeter);
  }

  std::printf("asymptotic fairness at center: %.12f\n",
              asymptotic_fairness(square, {0.5, 0.5}));

  Terrain t = scan_terrain(square, NMode::finite(4, EvalMode::sampled(16)), -0.5, -0.5, 1.5,
                           1.5, 24, 24);
  std::vector<Minimum> minima = local_minima(t);
  std::printf("terrain %zux%zu has %zu local minima\n", t.cols, t.rows, minima.size());
  for (const Minimum& m : minima) {
    Minimum r = refine_minimum(square, t.n_mode, m.location, t.cell_width(), m.basin_seed);
    std::printf("  minimum near (%.3f, %.3f) refines to (%.6f, %.6f), value %.9f\n",
                m.location.x, m.location.y, r.location.x, r.location.y, r.value);
  }

  BestFan best = fairest_fan(square, 4, Strategy::scan);
  std::printf("fairest 4-fan: (%.6f, %.6f), value %.9f\n", best.minimum.location.x,
              best.minimum.location.y, best.minimum.value);
  return 0;
}
