#pragma once

// Spatial search over fan origins: terrain grids of the fairness function,
// local-minima detection with plateau merging, derivative-free refinement,
// the candidate origins that matter in the large-n limit, and the global
// fairest-fan search.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

#include "fairness.hpp"
#include "geometry.hpp"
#include "partition.hpp"
#include "sector_table.hpp"

namespace fairfan {

struct NMode {
  bool asymptotic = false;
  std::size_t n = 2;
  EvalMode mode = EvalMode::sampled();

  static NMode finite(std::size_t n, EvalMode mode = EvalMode::sampled()) {
    return {false, n, mode};
  }
  static NMode infinite() { return {true, 0, EvalMode::sampled(0)}; }
};

// Fairness value at a single origin under the given mode, without witness
// construction.  Total over the plane: +inf where no convex fan exists.
inline FairnessValue fairness_objective(const ConvexPolygon& poly, Point p, const NMode& nm) {
  if (nm.asymptotic) return asymptotic_fairness(poly, p);
  if (nm.n == 0) throw Error(ErrorCode::bad_input, "n must be at least 1");
  if (nm.n == 1) return 1.0;
  PointClass cls = classify_point(poly, p);
  SectorTable table = sector_table(poly, p);
  std::vector<double> fr = equal_fractions(nm.n);
  if (cls != PointClass::interior) {
    std::vector<double> perims;
    detail::exterior_perimeters(table, fr, perims);
    return detail::ratio_of(perims);
  }
  if (nm.n == 2) return detail::best_line_fan(table, fr[0]).first;
  return detail::best_interior_fan(table, fr, nm.mode).first;
}

struct Terrain {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  std::size_t cols = 0, rows = 0;
  NMode n_mode;
  std::vector<FairnessValue> values;  // row-major, y rows ascending

  double cell_width() const { return (x1 - x0) / static_cast<double>(cols); }
  double cell_height() const { return (y1 - y0) / static_cast<double>(rows); }
  std::size_t index(std::size_t col, std::size_t row) const { return row * cols + col; }
  Point cell_center(std::size_t col, std::size_t row) const {
    return {x0 + (static_cast<double>(col) + 0.5) * cell_width(),
            y0 + (static_cast<double>(row) + 0.5) * cell_height()};
  }
  FairnessValue at(std::size_t col, std::size_t row) const { return values[index(col, row)]; }
};

namespace detail {

template <class F>
inline void parallel_rows(std::size_t rows, F&& body) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = std::min<std::size_t>(hw ? hw : 1, rows);
  if (workers <= 1) {
    for (std::size_t r = 0; r < rows; ++r) body(r);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t r = next.fetch_add(1); r < rows; r = next.fetch_add(1)) body(r);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline Terrain scan_terrain(const ConvexPolygon& poly, const NMode& nm, double x0, double y0,
                            double x1, double y1, std::size_t cols, std::size_t rows) {
  if (!(x1 > x0) || !(y1 > y0))
    throw Error(ErrorCode::bad_window, "window must have positive extent");
  if (cols < 2 || rows < 2)
    throw Error(ErrorCode::bad_window, "resolution must be at least 2x2");
  if (!nm.asymptotic && nm.n >= 2 && nm.mode.kind == EvalMode::Kind::sampled &&
      nm.mode.samples < 4)
    throw Error(ErrorCode::bad_input, "at least 4 theta samples required");

  Terrain t;
  t.x0 = x0;
  t.y0 = y0;
  t.x1 = x1;
  t.y1 = y1;
  t.cols = cols;
  t.rows = rows;
  t.n_mode = nm;
  t.values.assign(cols * rows, kInfiniteFairness);
  detail::parallel_rows(rows, [&](std::size_t r) {
    for (std::size_t c = 0; c < cols; ++c)
      t.values[t.index(c, r)] = fairness_objective(poly, t.cell_center(c, r), nm);
  });
  return t;
}

struct Minimum {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Point location;
  FairnessValue value = kInfiniteFairness;
  enum class Kind { grid, refined } kind = Kind::grid;
  std::size_t basin_seed = npos;  // row-major grid index the refinement started from
};

// Grid cells (merged into plateaus of exactly equal value) that no 8-neighbor
// undercuts.  A plateau touching the window border is dropped: its basin is
// truncated by the window, unless it spans the whole grid.  Representative is
// the lexicographically smallest row-major index.
inline std::vector<Minimum> local_minima(const Terrain& t) {
  const std::size_t C = t.cols, R = t.rows, N = C * R;
  bool any_finite = false;
  for (FairnessValue v : t.values)
    if (v < kInfiniteFairness) any_finite = true;
  if (!any_finite) throw Error(ErrorCode::all_infinite, "terrain has no finite values");

  std::vector<std::size_t> region(N, Minimum::npos);
  std::vector<Minimum> out;
  std::vector<std::size_t> stack, members;
  std::size_t next_region = 0;

  for (std::size_t start = 0; start < N; ++start) {
    if (region[start] != Minimum::npos) continue;
    double v = t.values[start];
    if (!(v < kInfiniteFairness)) continue;

    std::size_t id = next_region++;
    stack.assign(1, start);
    members.clear();
    region[start] = id;
    bool is_min = true, touches_border = false, has_outside = false;
    while (!stack.empty()) {
      std::size_t cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      std::size_t
          col = cur % C,
          row = cur / C;
      if (col == 0 || col + 1 == C || row == 0 || row + 1 == R) touches_border = true;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          long nc = static_cast<long>(col) + dc, nr = static_cast<long>(row) + dr;
          if (nc < 0 || nr < 0 || nc >= static_cast<long>(C) || nr >= static_cast<long>(R))
            continue;
          std::size_t ni = t.index(static_cast<std::size_t>(nc), static_cast<std::size_t>(nr));
          if (t.values[ni] == v) {
            if (region[ni] == Minimum::npos) {
              region[ni] = id;
              stack.push_back(ni);
            }
          } else {
            has_outside = true;
            if (t.values[ni] < v) is_min = false;
          }
        }
      }
    }
    if (!is_min) continue;
    if (touches_border && has_outside) continue;
    std::size_t rep = *std::min_element(members.begin(), members.end());
    Minimum m;
    m.location = t.cell_center(rep % C, rep / C);
    m.value = v;
    m.kind = Minimum::Kind::grid;
    m.basin_seed = rep;
    out.push_back(m);
  }
  std::sort(out.begin(), out.end(),
            [](const Minimum& a, const Minimum& b) { return a.basin_seed < b.basin_seed; });
  return out;
}

// Compass pattern search from `seed`, step halving until 1e-7 * scale.  The
// theta optimization inside each evaluation runs in exact mode; the value
// never increases along the walk.
inline Minimum refine_minimum(const ConvexPolygon& poly, const NMode& nm, Point seed,
                              double initial_step = -1.0,
                              std::size_t basin_seed = Minimum::npos) {
  NMode inner = nm;
  if (!inner.asymptotic) inner.mode = EvalMode::exact();
  auto obj = [&](Point q) { return fairness_objective(poly, q, inner); };

  const double kd = 1.0 / std::sqrt(2.0);
  const Point dirs[8] = {{1, 0}, {kd, kd}, {0, 1}, {-kd, kd},
                         {-1, 0}, {-kd, -kd}, {0, -1}, {kd, -kd}};
  double step = initial_step > 0.0 ? initial_step : poly.scale() / 50.0;
  const double stop = 1e-7 * poly.scale();

  Point x = seed;
  FairnessValue fx = obj(x);
  std::size_t budget = 40000;
  while (step > stop && budget > 0) {
    int best = -1;
    FairnessValue fb = fx;
    for (int d = 0; d < 8 && budget > 0; ++d, --budget) {
      FairnessValue fd = obj(x + step * dirs[d]);
      if (fd < fb) {
        fb = fd;
        best = d;
      }
    }
    if (best >= 0) {
      x = x + step * dirs[best];
      fx = fb;
    } else {
      step *= 0.5;
    }
  }
  Minimum m;
  m.location = x;
  m.value = fx;
  m.kind = Minimum::Kind::refined;
  m.basin_seed = basin_seed;
  return m;
}

// Interior point minimizing max-boundary-distance over min-boundary-distance;
// multi-start pattern search (centroid plus four offset starts).
inline std::pair<Point, FairnessValue> interior_asymptotic_minimum(const ConvexPolygon& poly) {
  auto obj = [&](Point q) {
    if (classify_point(poly, q) != PointClass::interior) return kInfiniteFairness;
    BoundaryDistances d = boundary_distance_extremes(poly, q);
    return d.d_max / d.d_min;
  };

  const double kd = 1.0 / std::sqrt(2.0);
  const Point dirs[8] = {{1, 0}, {kd, kd}, {0, 1}, {-kd, kd},
                         {-1, 0}, {-kd, -kd}, {0, -1}, {kd, -kd}};
  const double stop = 1e-9 * poly.scale();

  Point c = poly.centroid();
  std::vector<Point> starts{c};
  for (int k = 0; k < 4; ++k) {
    double ang = kPi / 4.0 + k * kPi / 2.0;
    starts.push_back(c + (0.15 * poly.scale()) * unit(ang));
  }

  Point best_x = c;
  FairnessValue best_v = kInfiniteFairness;
  for (Point x : starts) {
    FairnessValue fx = obj(x);
    double step = poly.scale() / 4.0;
    std::size_t budget = 60000;
    while (step > stop && budget > 0) {
      int best = -1;
      FairnessValue fb = fx;
      for (int d = 0; d < 8 && budget > 0; ++d, --budget) {
        FairnessValue fd = obj(x + step * dirs[d]);
        if (fd < fb) {
          fb = fd;
          best = d;
        }
      }
      if (best >= 0) {
        x = x + step * dirs[best];
        fx = fb;
      } else {
        step *= 0.5;
      }
    }
    if (fx < best_v || (fx == best_v && (x.x < best_x.x || (x.x == best_x.x && x.y < best_x.y)))) {
      best_v = fx;
      best_x = x;
    }
  }
  return {best_x, best_v};
}

struct Candidate {
  Point location;
  FairnessValue value = kInfiniteFairness;
};

struct CandidateSet {
  std::vector<Candidate> vertices;
  std::vector<Candidate> edge_midpoints;
  std::vector<Candidate> exterior_intersections;
  Candidate interior_minimum;

  std::vector<Candidate> all() const {
    std::vector<Candidate> out = vertices;
    out.insert(out.end(), edge_midpoints.begin(), edge_midpoints.end());
    out.insert(out.end(), exterior_intersections.begin(), exterior_intersections.end());
    out.push_back(interior_minimum);
    return out;
  }
};

// The points that stay competitive in the large-n limit: polygon vertices,
// edge midpoints, pairwise intersections of outward edge extensions, and the
// single deep-interior optimum.
inline CandidateSet asymptotic_candidates(const ConvexPolygon& poly) {
  CandidateSet set;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    Point v = poly.vertex(i);
    set.vertices.push_back({v, asymptotic_fairness(poly, v)});
  }
  for (std::size_t i = 0; i < m; ++i) {
    Point mid = 0.5 * (poly.vertex(i) + poly.vertex(i + 1));
    set.edge_midpoints.push_back({mid, asymptotic_fairness(poly, mid)});
  }
  for (Point q : edge_extension_intersections(poly))
    set.exterior_intersections.push_back({q, asymptotic_fairness(poly, q)});
  auto [ip, iv] = interior_asymptotic_minimum(poly);
  set.interior_minimum = {ip, iv};
  return set;
}

enum class Strategy { scan, candidates, auto_mode };

struct BestFan {
  Minimum minimum;
  FanPartition partition;
  PointFairness fairness;
};

namespace detail {

inline FanPartition partition_at(const ConvexPolygon& poly, Point p, std::size_t n) {
  if (classify_point(poly, p) == PointClass::interior) {
    if (n == 1) return *interior_fan(poly, p, equal_fractions(1), 0.0);
    PointFairness pf = fairness_at_point(poly, p, n, EvalMode::exact());
    auto part = interior_fan(poly, p, equal_fractions(n), pf.theta);
    if (part) return *part;
    // Feasibility can be lost to roundoff right at a wedge-angle boundary;
    // nudge by the angle tolerance.
    part = interior_fan(poly, p, equal_fractions(n), pf.theta + 10 * kEpsAngle);
    if (part) return *part;
    throw Error(ErrorCode::all_infinite, "no convex fan at the chosen origin");
  }
  return exterior_fan(poly, p, equal_fractions(n));
}

inline bool better_minimum(const Minimum& a, const Minimum& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.location.x != b.location.x) return a.location.x < b.location.x;
  return a.location.y < b.location.y;
}

}  // namespace detail

inline BestFan fairest_fan(const ConvexPolygon& poly, std::size_t n,
                           Strategy strategy = Strategy::auto_mode,
                           std::size_t candidate_threshold = 30) {
  if (n == 0) throw Error(ErrorCode::bad_input, "n must be at least 1");
  if (n == 1) {
    BestFan out;
    out.minimum = {poly.centroid(), 1.0, Minimum::Kind::refined, Minimum::npos};
    out.partition = detail::partition_at(poly, poly.centroid(), 1);
    out.fairness = fairness_at_point(poly, poly.centroid(), 1);
    return out;
  }
  bool coarse_union = false;
  if (strategy == Strategy::auto_mode) {
    if (n < candidate_threshold) {
      strategy = Strategy::scan;
    } else {
      strategy = Strategy::candidates;
      coarse_union = true;
    }
  }

  struct Seed {
    Point p;
    double step;
    std::size_t index;
  };
  std::vector<Seed> seeds;

  if (strategy == Strategy::scan || coarse_union) {
    auto [bx0, by0, bx1, by1] = poly.bounding_box();
    double cx = 0.5 * (bx0 + bx1), cy = 0.5 * (by0 + by1);
    double hx = (bx1 - bx0), hy = (by1 - by0);  // doubled half-extents
    std::size_t cols = strategy == Strategy::scan ? 160 : 48;
    std::size_t rows = strategy == Strategy::scan ? 120 : 36;
    std::size_t K = strategy == Strategy::scan ? 32 : 8;
    Terrain t = scan_terrain(poly, NMode::finite(n, EvalMode::sampled(K)), cx - hx, cy - hy,
                             cx + hx, cy + hy, cols, rows);
    double step = std::max(t.cell_width(), t.cell_height());
    bool any = false;
    try {
      for (const Minimum& m : local_minima(t)) {
        seeds.push_back({m.location, step, m.basin_seed});
        any = true;
      }
    } catch (const Error&) {
    }
    if (!any) {
      std::size_t ib = 0;
      for (std::size_t i = 0; i < t.values.size(); ++i)
        if (t.values[i] < t.values[ib]) ib = i;
      if (t.values[ib] < kInfiniteFairness)
        seeds.push_back({t.cell_center(ib % t.cols, ib / t.cols), step, ib});
      seeds.push_back({poly.centroid(), poly.scale() / 50.0, Minimum::npos});
    }
  }
  if (strategy == Strategy::candidates) {
    for (const Candidate& c : asymptotic_candidates(poly).all())
      seeds.push_back({c.location, poly.scale() / 50.0, Minimum::npos});
  }

  Minimum best;
  bool have = false;
  for (const Seed& s : seeds) {
    Minimum m = refine_minimum(poly, NMode::finite(n, EvalMode::exact()), s.p, s.step, s.index);
    if (!(m.value < kInfiniteFairness)) continue;
    if (!have || detail::better_minimum(m, best)) {
      best = m;
      have = true;
    }
  }
  if (!have) throw Error(ErrorCode::all_infinite, "no finite fairness value found");

  BestFan out;
  out.minimum = best;
  out.partition = detail::partition_at(poly, best.location, n);
  out.fairness = fairness_at_point(poly, best.location, n, EvalMode::exact());
  return out;
}

struct PerfectFan {
  bool found = false;
  Minimum minimum;
  FanPartition partition;
};

inline PerfectFan find_perfect_fan(const ConvexPolygon& poly, std::size_t n, Point seed,
                                   double tol = 1e-3) {
  if (n == 0) throw Error(ErrorCode::bad_input, "n must be at least 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::bad_input, "tolerance must be positive");
  PerfectFan out;
  out.minimum = refine_minimum(poly, NMode::finite(n, EvalMode::exact()), seed);
  if (out.minimum.value <= 1.0 + tol) {
    out.found = true;
    out.partition = detail::partition_at(poly, out.minimum.location, n);
  }
  return out;
}

}  // namespace fairfan
