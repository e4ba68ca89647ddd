// Acceptance gate: eleven independently timed criteria, one summary line
// each, nonzero exit if any fails.  Expected values come from closed forms,
// from scratch-built oracles, or from documented landscape structure; no
// criterion compares the library against itself alone.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <fairfan/fairfan.hpp>

#include "test_util.hpp"

using namespace fairfan;

namespace {

struct Outcome {
  bool pass = true;
  std::string fail_detail;
  std::string summary;
};

void expect(Outcome& o, bool cond, const std::string& msg) {
  if (cond) return;
  o.pass = false;
  if (!o.fail_detail.empty()) o.fail_detail += "; ";
  o.fail_detail += msg;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char b[64];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

std::string pt(Point p) { return "(" + num(p.x) + "," + num(p.y) + ")"; }

std::vector<Minimum> refine_all(const ConvexPolygon& poly, const Terrain& t) {
  std::vector<Minimum> out;
  double step = std::max(t.cell_width(), t.cell_height());
  for (const Minimum& m : local_minima(t))
    out.push_back(refine_minimum(poly, t.n_mode, m.location, step, m.basin_seed));
  return out;
}

// Best value wins inside each cluster of the given radius.
std::vector<Minimum> dedupe(std::vector<Minimum> ms, double radius) {
  std::sort(ms.begin(), ms.end(), [](const Minimum& a, const Minimum& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.location.x != b.location.x) return a.location.x < b.location.x;
    return a.location.y < b.location.y;
  });
  std::vector<Minimum> out;
  for (const Minimum& m : ms) {
    bool dup = false;
    for (const Minimum& k : out)
      if (std::hypot(m.location.x - k.location.x, m.location.y - k.location.y) < radius)
        dup = true;
    if (!dup) out.push_back(m);
  }
  return out;
}

// Depth of a grid minimum below its shallowest neighbor.
double prominence(const Terrain& t, const Minimum& m) {
  if (m.basin_seed == Minimum::npos) return kInfiniteFairness;
  std::size_t col = m.basin_seed % t.cols, row = m.basin_seed / t.cols;
  double best = kInfiniteFairness;
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      std::size_t r = row + static_cast<std::size_t>(dr);
      std::size_t c = col + static_cast<std::size_t>(dc);
      if (r >= t.rows || c >= t.cols) continue;
      best = std::min(best, t.at(c, r));
    }
  return best - m.value;
}

double boundary_dist(const ConvexPolygon& poly, Point p) {
  double best = kInfiniteFairness;
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, oracle::segment_distance(p, poly.vertex(i), poly.vertex(i + 1)));
  return best;
}

std::size_t nearest_candidate(const std::vector<Candidate>& cs, Point p, double& dist) {
  std::size_t best = 0;
  dist = kInfiniteFairness;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    double d = std::hypot(p.x - cs[i].location.x, p.y - cs[i].location.y);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

bool convex_ccw(const std::vector<Point>& v, double scale) {
  if (v.size() < 3) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point a = v[i], b = v[(i + 1) % v.size()], c = v[(i + 2) % v.size()];
    double turn = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    if (turn < -1e-9 * scale * scale) return false;
  }
  return true;
}

// Every cyclic gap between successive ray angles stays within half a turn.
bool cyclic_gaps_ok(std::vector<double> angles) {
  std::sort(angles.begin(), angles.end());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    double next = angles[(i + 1) % angles.size()];
    double gap = next - angles[i];
    if (gap < 0.0) gap += 2.0 * oracle::kPi;
    if (gap > oracle::kPi + 1e-9) return false;
  }
  return true;
}

// Two perfectly fair basins on the long axis, mirror images.  At this low
// piece count the interior also carries a ring of shallow secondary dips
// (values 1.03 and up) and the outside a pair of faint troughs near 1.09;
// the near-1 value bound is what singles out the two fair basins.
Outcome criterion1() {
  Outcome o;
  ConvexPolygon poly = fixtures::ellipse12();
  NMode nm = NMode::finite(3, EvalMode::sampled(32));
  Terrain t = scan_terrain(poly, nm, -12, -9, 12, 9, 160, 120);
  std::vector<Minimum> minima = dedupe(refine_all(poly, t), 0.5);
  std::vector<Minimum> fair;
  double rest_floor = kInfiniteFairness;
  for (const Minimum& m : minima) {
    if (m.value <= 1.02)
      fair.push_back(m);
    else
      rest_floor = std::min(rest_floor, m.value);
  }
  expect(o, fair.size() == 2, "expected 2 near-fair minima, found " +
                                  std::to_string(fair.size()) + " of " +
                                  std::to_string(minima.size()) + " total");
  if (fair.size() == 2) {
    std::sort(fair.begin(), fair.end(),
              [](const Minimum& a, const Minimum& b) { return a.location.x < b.location.x; });
    const Minimum &a = fair[0], &b = fair[1];
    for (const Minimum* m : {&a, &b}) {
      expect(o, std::abs(m->location.y) <= 0.15, "minimum off axis at " + pt(m->location));
      double ax = std::abs(m->location.x);
      expect(o, ax >= 5.0 && ax <= 7.0, "|x| outside [5,7] at " + pt(m->location));
      expect(o, m->value <= 1.02, "value " + num(m->value) + " above 1.02");
      expect(o, m->value < rest_floor, "fair basin not the global minimum");
    }
    expect(o, std::abs(a.location.x + b.location.x) <= 0.1,
           "minima not x-symmetric: " + pt(a.location) + " vs " + pt(b.location));
    o.summary = pt(a.location) + " v=" + num(a.value) + " and " + pt(b.location) + " v=" +
                num(b.value) + "; " + std::to_string(minima.size() - 2) +
                " secondary dips above " + num(rest_floor);
  }
  return o;
}

// At n=10 the two global minima move to the short axis and fairness leaves 1.
Outcome criterion2() {
  Outcome o;
  ConvexPolygon poly = fixtures::ellipse12();
  NMode nm = NMode::finite(10, EvalMode::sampled(32));
  Terrain t = scan_terrain(poly, nm, -12, -9, 12, 9, 160, 120);
  std::vector<Minimum> minima = dedupe(refine_all(poly, t), 0.5);
  expect(o, !minima.empty(), "no refined minima at all");
  if (minima.empty()) return o;
  double best = minima.front().value;
  for (const Minimum& m : minima) best = std::min(best, m.value);
  std::vector<Minimum> global;
  for (const Minimum& m : minima)
    if (m.value <= best + 1e-4) global.push_back(m);
  expect(o, global.size() == 2,
         "expected 2 global minima, found " + std::to_string(global.size()) + " of " +
             std::to_string(minima.size()) + " total");
  if (global.size() == 2) {
    std::sort(global.begin(), global.end(),
              [](const Minimum& a, const Minimum& b) { return a.location.y < b.location.y; });
    const Minimum &a = global[0], &b = global[1];
    for (const Minimum* m : {&a, &b}) {
      expect(o, std::abs(m->location.x) <= 0.5, "minimum off short axis at " + pt(m->location));
      expect(o, std::abs(m->location.y) >= 0.5, "|y| below 0.5 at " + pt(m->location));
      expect(o, m->value > 1.0 && m->value <= 1.15,
             "value " + num(m->value) + " outside (1, 1.15]");
    }
    expect(o, std::abs(a.location.y + b.location.y) <= 0.1,
           "minima not y-symmetric: " + pt(a.location) + " vs " + pt(b.location));
    o.summary = pt(a.location) + " v=" + num(a.value) + " and " + pt(b.location) +
                " v=" + num(b.value);
  }
  return o;
}

// By n=100 the interior is one central basin.  Vertices and edge midpoints
// are already growing their own shallow dips at this piece count, each
// pinned to its boundary feature, so interior minima are attributed to the
// nearest stable origin: exactly one belongs to the center, and it is the
// best interior value by a wide margin.
Outcome criterion3() {
  Outcome o;
  ConvexPolygon poly = fixtures::ellipse12();
  NMode nm = NMode::finite(100, EvalMode::sampled(24));
  Terrain t = scan_terrain(poly, nm, -12, -9, 12, 9, 80, 60);
  CandidateSet cs = asymptotic_candidates(poly);
  std::vector<Candidate> all = cs.all();
  const std::size_t interior_idx = all.size() - 1;
  std::vector<Minimum> minima = dedupe(refine_all(poly, t), 0.5);

  std::vector<Minimum> central;
  double others_floor = kInfiniteFairness;
  std::size_t interior_count = 0;
  for (const Minimum& m : minima) {
    if (classify_point(poly, m.location) != PointClass::interior) continue;
    ++interior_count;
    double dist = 0.0;
    if (nearest_candidate(all, m.location, dist) == interior_idx)
      central.push_back(m);
    else
      others_floor = std::min(others_floor, m.value);
  }
  expect(o, central.size() == 1, "expected 1 central minimum, found " +
                                     std::to_string(central.size()) + " of " +
                                     std::to_string(interior_count) + " interior");
  if (central.size() == 1) {
    const Minimum& m = central.front();
    double r = std::hypot(m.location.x, m.location.y);
    expect(o, r <= 0.5, "minimum " + num(r) + " away from the center");
    double limit = asymptotic_fairness(poly, {0.0, 0.0});
    expect(o, m.value > 1.0 && m.value <= limit + 0.05,
           "value " + num(m.value) + " outside (1, " + num(limit + 0.05) + "]");
    expect(o, m.value < others_floor, "central basin not the best interior minimum");
    o.summary = pt(m.location) + " v=" + num(m.value) + ", limit " + num(limit) + ", " +
                std::to_string(interior_count - 1) + " boundary-feature dips above " +
                num(others_floor);
  }
  return o;
}

// A perfectly fair 6-fan for the near-critical triangle, seeded above the
// apex; equal areas must hold to full construction tolerance.
Outcome criterion4() {
  Outcome o;
  ConvexPolygon tri = fixtures::triangle();
  PerfectFan r = find_perfect_fan(tri, 6, {5.0, 9.3}, 1e-3);
  expect(o, r.found, "no perfect fan found from seed (5,9.3)");
  if (!r.found) return o;
  Point p = r.minimum.location;
  expect(o, std::abs(p.x - 5.0) <= 0.1, "origin x " + num(p.x) + " away from 5");
  expect(o, p.y > 9.01042 && p.y <= 9.95, "origin y " + num(p.y) + " outside (9.01042, 9.95]");
  double target = 45.0521 / 6.0;
  for (const Piece& piece : r.partition.pieces)
    expect(o, std::abs(piece.area - target) <= 1e-9 * target,
           "piece area " + num(piece.area) + " misses " + num(target));
  expect(o, r.partition.pieces.size() == 6, "piece count != 6");
  o.summary = "origin " + pt(p) + " v=" + num(r.minimum.value);
  return o;
}

// In the large-n limit the landscape keeps minima only at the stable origin
// set; the interior holds exactly one.
Outcome criterion5() {
  Outcome o;
  ConvexPolygon hex = fixtures::hexagon();
  Terrain t = scan_terrain(hex, NMode::infinite(), -20, -15, 25, 25, 120, 100);
  CandidateSet cs = asymptotic_candidates(hex);
  std::vector<Candidate> all = cs.all();
  const std::size_t interior_idx = all.size() - 1;
  double diag = std::hypot(t.cell_width(), t.cell_height());

  std::size_t finite_count = 0, interior_hits = 0;
  for (const Minimum& m : local_minima(t)) {
    if (!(m.value < kInfiniteFairness)) continue;
    ++finite_count;
    double dist = 0.0;
    std::size_t idx = nearest_candidate(all, m.location, dist);
    expect(o, dist <= diag,
           "minimum at " + pt(m.location) + " is " + num(dist) + " from every candidate");
    if (idx == interior_idx) ++interior_hits;
  }
  expect(o, finite_count >= 1, "no finite minima detected");
  expect(o, interior_hits == 1,
         "expected 1 interior minimum, found " + std::to_string(interior_hits));
  o.summary = std::to_string(finite_count) + " finite minima, interior at " +
              pt(cs.interior_minimum.location);
  return o;
}

// A large finite n behaves like the limit: every prominent basin sits at a
// candidate origin or in the thin trough hugging the boundary, and the
// interior keeps a single basin of its own.  The trough is a finite-n
// effect captured one grid row deep: an origin close to an edge turns the
// nearest piece into a wide flat sliver whose perimeter grows as the edge
// gets closer, so fairness dips just inside the boundary, displaced along
// the edge from the midpoint by the chord balance.  Dips shallower than
// 0.01 are sampling jitter: theta optimization at K=8 wobbles cell values
// by about 1e-3, while every real minimum here undercuts its neighbors by
// 0.037 or more.
Outcome criterion6() {
  Outcome o;
  ConvexPolygon hex = fixtures::hexagon();
  NMode nm = NMode::finite(700, EvalMode::sampled(8));
  Terrain t = scan_terrain(hex, nm, -20, -15, 25, 25, 60, 54);
  CandidateSet cs = asymptotic_candidates(hex);
  std::vector<Candidate> all = cs.all();
  const std::size_t interior_idx = all.size() - 1;

  std::size_t count = 0, interior_hits = 0, band = 0, noise = 0;
  for (const Minimum& m : local_minima(t)) {
    if (prominence(t, m) < 0.01) {
      ++noise;
      continue;
    }
    ++count;
    double dist = 0.0;
    std::size_t idx = nearest_candidate(all, m.location, dist);
    bool near_edge = boundary_dist(hex, m.location) <= 0.5;
    if (near_edge) ++band;
    expect(o, dist <= 1.5 || near_edge,
           "minimum at " + pt(m.location) + " is " + num(dist) +
               " from every candidate and off the boundary band");
    if (idx == interior_idx) ++interior_hits;
  }
  expect(o, count >= 1, "no minima detected");
  expect(o, interior_hits == 1,
         "expected 1 interior minimum, found " + std::to_string(interior_hits));
  o.summary = std::to_string(count) + " prominent minima (" + std::to_string(band) +
              " in the boundary band, " + std::to_string(noise) + " filtered as jitter), interior at " +
              pt(cs.interior_minimum.location);
  return o;
}

// The event-driven optimizer and a dense sampled sweep agree.
Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(411);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ConvexPolygon poly = fixtures::random_convex(rng, 5 + trial % 5);
    Point p = fixtures::random_interior(rng, poly);
    for (std::size_t n = 2; n <= 5; ++n) {
      double exact = fairness_at_point(poly, p, n, EvalMode::exact()).value;
      double sampled = fairness_at_point(poly, p, n, EvalMode::sampled(4096)).value;
      if (!(exact < kInfiniteFairness) && !(sampled < kInfiniteFairness)) continue;
      double rel = std::abs(exact - sampled) / std::max(exact, 1.0);
      worst = std::max(worst, rel);
      expect(o, rel <= 1e-4, "trial " + std::to_string(trial) + " n=" + std::to_string(n) +
                                 ": exact " + num(exact) + " vs sampled " + num(sampled));
    }
  }
  o.summary = "80 comparisons, worst relative gap " + num(worst);
  return o;
}

// Constructed partitions honor their target areas exactly, and both pieces
// and fans stay convex, for all three origin classes.
Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(1847);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t built = 0, by_class[3] = {0, 0, 0};
  std::size_t failures_reported = 0;
  auto report = [&](bool cond, const std::string& msg) {
    if (cond) return;
    if (failures_reported < 4) expect(o, false, msg);
    else o.pass = false;
    ++failures_reported;
  };

  for (std::size_t attempt = 0; attempt < 4000 && built < 500; ++attempt) {
    ConvexPolygon poly = fixtures::random_convex(rng, 5 + attempt % 5);
    std::size_t n = 2 + attempt % 6;
    int cls = static_cast<int>(attempt % 3);

    std::vector<double> fractions;
    if (unit(rng) < 0.5 || (cls == 0 && n == 2)) {
      fractions = equal_fractions(n);
    } else {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        fractions.push_back(0.3 + 1.4 * unit(rng));
        sum += fractions.back();
      }
      for (double& f : fractions) f /= sum;
    }

    FanPartition part;
    bool ok = false;
    if (cls == 0) {
      Point p = fixtures::random_interior(rng, poly);
      for (int tries = 0; tries < 40 && !ok; ++tries) {
        double theta = 2.0 * oracle::kPi * unit(rng);
        if (n == 2) theta = fairness_at_point(poly, p, 2, EvalMode::exact()).theta;
        auto maybe = interior_fan(poly, p, fractions, theta);
        if (maybe) {
          part = *maybe;
          ok = true;
        }
        if (n == 2) break;
      }
    } else if (cls == 1) {
      std::size_t e = static_cast<std::size_t>(unit(rng) * static_cast<double>(poly.size()));
      e %= poly.size();
      Point a = poly.vertex(e), b = poly.vertex(e + 1);
      double tseg = unit(rng) < 0.25 ? 0.0 : 0.1 + 0.8 * unit(rng);
      Point p = a + tseg * (b - a);
      part = exterior_fan(poly, p, fractions);
      ok = true;
    } else {
      Point c = poly.centroid();
      double radius = 0.0;
      for (const Point& v : poly.vertices())
        radius = std::max(radius, std::hypot(v.x - c.x, v.y - c.y));
      double ang = 2.0 * oracle::kPi * unit(rng);
      Point p = c + (2.5 * radius) * Point{std::cos(ang), std::sin(ang)};
      if (classify_point(poly, p) != PointClass::exterior) continue;
      part = exterior_fan(poly, p, fractions);
      ok = true;
    }
    if (!ok) continue;
    ++built;
    ++by_class[cls];

    double area = oracle::polygon_area(poly.vertices());
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Piece& piece = part.pieces[k];
      double target = fractions[k] * area;
      report(std::abs(piece.area - target) <= 1e-9 * target,
             "area " + num(piece.area) + " misses target " + num(target));
      double recomputed = oracle::polygon_area(piece.vertices);
      report(std::abs(recomputed - piece.area) <= 1e-9 * area,
             "reported area disagrees with its vertices");
      report(convex_ccw(piece.vertices, poly.scale()), "non-convex piece");
      sum += piece.area;
    }
    report(std::abs(sum - area) <= 1e-9 * area, "piece areas do not cover the polygon");
    if (cls == 0) {
      report(cyclic_gaps_ok(part.fan.ray_angles), "interior fan has a gap above half a turn");
    } else {
      report(fan_is_convex(part.fan), "fan not convex");
    }
  }
  expect(o, built == 500, "built only " + std::to_string(built) + " partitions");
  if (failures_reported > 4)
    expect(o, false, std::to_string(failures_reported) + " invariant failures in total");
  o.summary = "500 partitions (interior " + std::to_string(by_class[0]) + ", boundary " +
              std::to_string(by_class[1]) + ", exterior " + std::to_string(by_class[2]) + ")";
  return o;
}

// Fairness is scale, rotation, translation, and reflection invariant.
Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(90125);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    ConvexPolygon poly = fixtures::random_convex(rng, 5 + trial % 5);
    std::size_t n = 1 + trial % 8;
    Point p;
    if (trial % 5 == 4) {
      Point c = poly.centroid();
      double radius = 0.0;
      for (const Point& v : poly.vertices())
        radius = std::max(radius, std::hypot(v.x - c.x, v.y - c.y));
      double ang = 2.0 * oracle::kPi * unit(rng);
      p = c + (2.0 * radius) * Point{std::cos(ang), std::sin(ang)};
      if (classify_point(poly, p) != PointClass::exterior) p = c + (3.0 * radius) * Point{1, 0};
    } else {
      p = fixtures::random_interior(rng, poly);
    }

    double phi = 2.0 * oracle::kPi * unit(rng);
    double s = 0.3 + 2.7 * unit(rng);
    double tx = -20.0 + 40.0 * unit(rng), ty = -20.0 + 40.0 * unit(rng);
    bool reflect = trial % 2 == 1;
    auto map = [&](Point q) {
      if (reflect) q.y = -q.y;
      double c = std::cos(phi), sn = std::sin(phi);
      return Point{s * (c * q.x - sn * q.y) + tx, s * (sn * q.x + c * q.y) + ty};
    };
    std::vector<Point> mapped;
    for (const Point& v : poly.vertices()) mapped.push_back(map(v));
    ConvexPolygon poly2 = validate_polygon(mapped);

    double v1 = fairness_at_point(poly, p, n, EvalMode::exact()).value;
    double v2 = fairness_at_point(poly2, map(p), n, EvalMode::exact()).value;
    if (!(v1 < kInfiniteFairness) || !(v2 < kInfiniteFairness)) {
      expect(o, std::isinf(v1) == std::isinf(v2),
             "trial " + std::to_string(trial) + ": one side infinite");
      continue;
    }
    double rel = std::abs(v1 - v2) / std::max(v1, 1.0);
    worst = std::max(worst, rel);
    expect(o, rel <= 1e-6, "trial " + std::to_string(trial) + ": " + num(v1) + " vs " +
                               num(v2) + " after transform");
  }
  o.summary = "50 transforms, worst relative gap " + num(worst);
  return o;
}

// A long flat polygon shows fan fairness can stay far above 1: the limit at
// the center is the axis ratio, and a 256-piece fan already sits near it.
Outcome criterion10() {
  Outcome o;
  ConvexPolygon flat = fixtures::flat16();
  Point center{0.0, 0.0};
  double limit = asymptotic_fairness(flat, center);
  expect(o, limit >= 8.0, "limit " + num(limit) + " below 8");

  const int N = 400000;
  double rmin = 1e300, rmax = 0.0;
  auto pts = fixtures::flat16_pts();
  for (int i = 0; i < N; ++i) {
    double t = 2.0 * oracle::kPi * (i + 0.5) / N;
    double r = oracle::ray_distance(pts, center, t);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  double dense = rmax / rmin;
  expect(o, std::abs(limit - dense) <= 1e-3 * dense,
         "limit " + num(limit) + " vs dense sweep " + num(dense));

  double fv = fairness_at_point(flat, center, 256, EvalMode::sampled(16)).value;
  expect(o, std::abs(fv - limit) <= 0.25 * limit,
         "n=256 value " + num(fv) + " not within 25% of " + num(limit));
  o.summary = "limit " + num(limit) + ", dense " + num(dense) + ", n=256 value " + num(fv);
  return o;
}

// One piece is always perfectly fair, and strips parallel to a parallelogram
// side are perfectly fair for every piece count.
Outcome criterion11() {
  Outcome o;
  std::mt19937_64 rng(7077);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    ConvexPolygon poly = fixtures::random_convex(rng, 5 + trial % 5);
    Point p;
    int cls = trial % 3;
    if (cls == 0) {
      p = fixtures::random_interior(rng, poly);
    } else if (cls == 1) {
      Point a = poly.vertex(trial % poly.size()), b = poly.vertex(trial % poly.size() + 1);
      p = a + (0.2 + 0.6 * unit(rng)) * (b - a);
    } else {
      Point c = poly.centroid();
      p = c + Point{30.0, 17.0};
    }
    double v = fairness_at_point(poly, p, 1).value;
    expect(o, v == 1.0, "single piece fairness " + num(v) + " at " + pt(p));
  }

  double worst = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    Point base{-5.0 + 10.0 * unit(rng), -5.0 + 10.0 * unit(rng)};
    Point u{1.0 + 4.0 * unit(rng), -1.0 + 2.0 * unit(rng)};
    Point w{-1.0 + 2.0 * unit(rng), 1.0 + 4.0 * unit(rng)};
    if (u.x * w.y - u.y * w.x < 0.5) {
      --rep;
      continue;
    }
    ConvexPolygon para = validate_polygon({base, base + u, base + u + w, base + w});
    for (std::size_t n = 2; n <= 12; ++n) {
      for (Point side : {u, w}) {
        FanPartition part =
            parallel_fan(para, std::atan2(side.y, side.x), equal_fractions(n));
        double v = fairness_ratio(part);
        worst = std::max(worst, v - 1.0);
        expect(o, std::abs(v - 1.0) <= 1e-9,
               "parallel strips n=" + std::to_string(n) + " fairness " + num(v));
      }
    }
  }
  o.summary = "100 single-piece cases exact, strip fairness within " + num(worst) + " of 1";
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
      {9, criterion9}, {10, criterion10}, {11, criterion11},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.fn();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.fail_detail = std::string("threw: ") + ex.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string& detail = o.pass ? o.summary : o.fail_detail;
    std::printf("criterion %d: %s - %s (%.1fs)\n", e.id, o.pass ? "PASS" : "FAIL",
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("acceptance: %d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
