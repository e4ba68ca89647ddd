#pragma once

// Angular decomposition of a convex polygon about an apex point.
//
// The sweep ray from the apex is rotated counterclockwise across the polygon.
// Between two consecutive vertex directions the boundary hit points move along
// fixed edges, so the swept area is linear in the exit-edge parameter (interior
// apex) or linked to it by one bilinear collinearity constraint (exterior
// apex).  That makes cumulative-area queries and their inverse (placing a ray
// so that it sweeps a prescribed area) exact closed-form operations:
// O(log m) per query after an O(m log m) build.
//
// Apex classes:
//   interior  - full 2*pi sweep, entry point is the apex itself
//   boundary  - sweep across the inward cone (span <= pi), entry is the apex
//   exterior  - sweep across the visibility wedge (span < pi); the ray enters
//               through the near boundary chain and exits through the far one

#include <cassert>
#include <cstddef>
#include <vector>

#include "geometry.hpp"

namespace fairfan {

struct SectorTable {
  struct Sector {
    double off_lo = 0.0, off_hi = 0.0;      // sweep offsets from sweep_start
    Point exit_lo, exit_hi;                 // far-chain hit at the sector ends
    Point entry_lo, entry_hi;               // near-chain hit; == apex if none
    double area_lo = 0.0, area_hi = 0.0;    // cumulative swept area
    double exit_arc_lo = 0.0, exit_arc_hi = 0.0;    // cumulative far-chain length
    double entry_arc_lo = 0.0, entry_arc_hi = 0.0;  // cumulative near-chain length
  };

  // A ray of the sweep, located either by angle or by cumulative swept area.
  struct RaySolution {
    double theta = 0.0;       // absolute angle in [0, 2*pi)
    double offset = 0.0;      // sweep offset in [0, span]
    Point exit_point, entry_point;
    double r_exit = 0.0, r_entry = 0.0;  // distances from the apex
    double chord = 0.0;                  // r_exit - r_entry
    double exit_arc = 0.0, entry_arc = 0.0;
    double area = 0.0;                   // cumulative swept area at this ray
    std::size_t sector = 0;
  };

  Point apex;
  PointClass apex_class = PointClass::interior;
  bool apex_on_vertex = false;
  bool has_entry_chain = false;
  double sweep_start = 0.0;  // absolute angle of offset 0
  double sweep_span = 0.0;   // 2*pi for interior apex, wedge width otherwise
  double total_area = 0.0;   // swept area over the full span (== polygon area)
  double scale = 0.0;        // polygon scale, for tolerances
  std::vector<Sector> sectors;

  double abs_angle(double offset) const { return normalize_angle(sweep_start + offset); }

  // Maps an absolute angle into a sweep offset; angles outside the span by
  // more than tol are reported via the bool.
  std::pair<double, bool> to_offset(double theta, double tol = kEpsAngle) const {
    double o = ccw_delta(sweep_start, theta);
    if (o <= sweep_span) return {o, true};
    if (o - sweep_span <= tol) return {sweep_span, true};
    if (kTwoPi - o <= tol) return {0.0, true};
    return {o, false};
  }

  RaySolution at_offset(double offset) const;
  RaySolution at_area(double target) const;

 private:
  friend SectorTable sector_table(const ConvexPolygon&, Point);

  std::size_t sector_of_offset(double o) const {
    std::size_t lo = 0, hi = sectors.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (sectors[mid].off_hi < o)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  std::size_t sector_of_area(double a) const {
    std::size_t lo = 0, hi = sectors.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (sectors[mid].area_hi < a)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  RaySolution solve_in_sector(std::size_t idx, double s_f, double s_n) const;
};

namespace detail {

// Parameter of the hit point on the directed segment U->V for the ray from
// `apex` toward sweep offset angle, given signed cross products of the ray
// direction with (U - apex) and (V - apex).  Stable barycentric form.
inline double segment_ray_param(double cross_lo, double cross_hi) {
  double denom = cross_lo - cross_hi;
  if (denom == 0.0) return 0.5;
  double s = cross_lo / denom;
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace detail

inline SectorTable::RaySolution SectorTable::solve_in_sector(std::size_t idx, double s_f,
                                                             double s_n) const {
  const Sector& sec = sectors[idx];
  RaySolution r;
  r.sector = idx;
  r.exit_point = sec.exit_lo + s_f * (sec.exit_hi - sec.exit_lo);
  r.entry_point = has_entry_chain ? sec.entry_lo + s_n * (sec.entry_hi - sec.entry_lo) : apex;
  r.r_exit = dist(r.exit_point, apex);
  r.r_entry = has_entry_chain ? dist(r.entry_point, apex) : 0.0;
  r.chord = r.r_exit - r.r_entry;
  if (r.chord < 0.0) r.chord = 0.0;
  r.exit_arc = sec.exit_arc_lo + s_f * (sec.exit_arc_hi - sec.exit_arc_lo);
  r.entry_arc = sec.entry_arc_lo + s_n * (sec.entry_arc_hi - sec.entry_arc_lo);
  double p = 0.5 * cross(sec.exit_lo - apex, sec.exit_hi - sec.exit_lo);
  double q = has_entry_chain ? 0.5 * cross(sec.entry_lo - apex, sec.entry_hi - sec.entry_lo) : 0.0;
  r.area = sec.area_lo + s_f * p - s_n * q;
  if (r.r_exit > 0.0) {
    r.theta = angle_of(r.exit_point - apex);
    double o = ccw_delta(sweep_start, r.theta);
    if (o > sec.off_hi + kPi) o -= kTwoPi;  // wrap guard near offset 0
    if (o < sec.off_lo - kPi) o += kTwoPi;  // wrap guard near the span end
    r.offset = std::clamp(o, sec.off_lo, sec.off_hi);
    r.theta = abs_angle(r.offset);
  } else {
    r.offset = 0.5 * (sec.off_lo + sec.off_hi);
    r.theta = abs_angle(r.offset);
  }
  return r;
}

inline SectorTable::RaySolution SectorTable::at_offset(double offset) const {
  offset = std::clamp(offset, 0.0, sweep_span);
  std::size_t idx = sector_of_offset(offset);
  const Sector& sec = sectors[idx];
  const Point d = unit(abs_angle(offset));
  double cf_lo = cross(d, sec.exit_lo - apex);
  double cf_hi = cross(d, sec.exit_hi - apex);
  double s_f = detail::segment_ray_param(cf_lo, cf_hi);
  double s_n = 0.0;
  if (has_entry_chain) {
    double cn_lo = cross(d, sec.entry_lo - apex);
    double cn_hi = cross(d, sec.entry_hi - apex);
    s_n = detail::segment_ray_param(cn_lo, cn_hi);
  }
  RaySolution r = solve_in_sector(idx, s_f, s_n);
  r.offset = offset;
  r.theta = abs_angle(offset);
  return r;
}

inline SectorTable::RaySolution SectorTable::at_area(double target) const {
  target = std::clamp(target, 0.0, total_area);
  std::size_t idx = sector_of_area(target);
  const Sector& sec = sectors[idx];
  double p = 0.5 * cross(sec.exit_lo - apex, sec.exit_hi - sec.exit_lo);
  double q = has_entry_chain ? 0.5 * cross(sec.entry_lo - apex, sec.entry_hi - sec.entry_lo) : 0.0;
  double da = target - sec.area_lo;
  const double tiny = 1e-300;
  double s_f = 0.0, s_n = 0.0;
  if (!has_entry_chain || std::abs(q) <= 1e-16 * scale * scale) {
    s_f = (std::abs(p) > tiny) ? da / p : 0.5;
    s_f = std::clamp(s_f, 0.0, 1.0);
  } else {
    // Solve  s_f*p - s_n*q = da  together with the collinearity constraint
    // c0 + c1*s_f + c2*s_n + c3*s_f*s_n = 0 of the entry and exit points.
    Point dx = sec.exit_hi - sec.exit_lo;
    Point de = sec.entry_hi - sec.entry_lo;
    double c0 = cross(sec.exit_lo - apex, sec.entry_lo - apex);
    double c1 = cross(dx, sec.entry_lo - apex);
    double c2 = cross(sec.exit_lo - apex, de);
    double c3 = cross(dx, de);
    double a2 = c3 * p;
    double a1 = c1 * q + c2 * p - c3 * da;
    double a0 = c0 * q - c2 * da;
    // Both quadratic roots can land inside the unit box; the collinearity
    // residual decides which one is the sweep ray.
    auto residual = [&](double s) {
      double sn = (s * p - da) / q;
      if (s < -1e-6 || s > 1.0 + 1e-6 || sn < -1e-4 || sn > 1.0 + 1e-4)
        return std::numeric_limits<double>::infinity();
      double sc = std::clamp(s, 0.0, 1.0), uc = std::clamp(sn, 0.0, 1.0);
      return std::abs(c0 + c1 * sc + c2 * uc + c3 * sc * uc);
    };
    double root = 0.5;
    if (std::abs(a2) <= 1e-14 * (std::abs(a1) + std::abs(a0))) {
      if (std::abs(a1) > tiny) root = -a0 / a1;
    } else {
      double disc = a1 * a1 - 4.0 * a2 * a0;
      if (disc < 0.0) disc = 0.0;
      double sq = std::sqrt(disc);
      double qq = -0.5 * (a1 + (a1 >= 0.0 ? sq : -sq));
      double r1 = (std::abs(a2) > tiny) ? qq / a2 : 2.0;
      double r2 = (std::abs(qq) > tiny) ? a0 / qq : 2.0;
      double h1 = residual(r1), h2 = residual(r2);
      if (std::isinf(h1) && std::isinf(h2))
        root = std::abs(r1 - 0.5) < std::abs(r2 - 0.5) ? r1 : r2;
      else
        root = h1 <= h2 ? r1 : r2;
    }
    s_f = std::clamp(root, 0.0, 1.0);
    // Newton polish on the collinearity residual; s_n below keeps the swept
    // area exactly at `target`. Near a tangency the root is a double root and
    // h/dh is pure noise, so a step must shrink |h| to be kept.
    const double h_tol = 1e-12 * scale * scale;
    for (int it = 0; it < 2; ++it) {
      s_n = (s_f * p - da) / q;
      double h = c0 + c1 * s_f + c2 * s_n + c3 * s_f * s_n;
      if (std::abs(h) <= h_tol) break;
      double dh = c1 + (c2 + c3 * s_f) * (p / q) + c3 * s_n;
      if (std::abs(dh) <= tiny) break;
      double step = h / dh;
      if (!std::isfinite(step) || std::abs(step) > 0.25) break;
      double cand = std::clamp(s_f - step, 0.0, 1.0);
      double cn = (cand * p - da) / q;
      double h2 = c0 + c1 * cand + c2 * cn + c3 * cand * cn;
      if (std::abs(h2) >= std::abs(h)) break;
      s_f = cand;
    }
    s_n = std::clamp((s_f * p - da) / q, 0.0, 1.0);
  }
  return solve_in_sector(idx, s_f, s_n);
}

namespace detail {

struct ChainPoint {
  Point pt;
  double offset;  // sweep offset of the point's direction from the apex
};

// Hit of the sweep ray at offset `o` with the chain segment active there.
inline Point chain_point_at(const std::vector<ChainPoint>& chain, std::size_t& cursor, double o,
                            Point apex, double sweep_start) {
  while (cursor + 1 < chain.size() && chain[cursor + 1].offset <= o) ++cursor;
  if (cursor + 1 >= chain.size()) return chain.back().pt;
  const ChainPoint& a = chain[cursor];
  const ChainPoint& b = chain[cursor + 1];
  if (o <= a.offset) return a.pt;
  if (o >= b.offset) return b.pt;
  Point d = unit(normalize_angle(sweep_start + o));
  double ca = cross(d, a.pt - apex);
  double cb = cross(d, b.pt - apex);
  double s = segment_ray_param(ca, cb);
  return a.pt + s * (b.pt - a.pt);
}

}  // namespace detail

// Builds the angular decomposition of `poly` about `apex`.
inline SectorTable sector_table(const ConvexPolygon& poly, Point apex) {
  const std::vector<Point>& v = poly.vertices();
  const std::size_t m = v.size();
  SectorTable t;
  t.apex = apex;
  t.scale = poly.scale();
  t.apex_class = classify_point(poly, apex);

  const double band = kEpsClassify * poly.scale();

  if (t.apex_class == PointClass::interior) {
    // Sweep the whole boundary; vertex angular order equals boundary order.
    std::size_t k0 = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> ang(m);
    for (std::size_t i = 0; i < m; ++i) {
      ang[i] = angle_of(v[i] - apex);
      if (ang[i] < best) { best = ang[i]; k0 = i; }
    }
    t.sweep_start = ang[k0];
    t.sectors.resize(m);
    double off = 0.0, cum_area = 0.0, cum_arc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      Point a = v[(k0 + j) % m];
      Point b = v[(k0 + j + 1) % m];
      SectorTable::Sector& s = t.sectors[j];
      s.off_lo = off;
      off += ccw_delta(angle_of(a - apex), angle_of(b - apex));
      s.off_hi = off;
      s.exit_lo = a;
      s.exit_hi = b;
      s.entry_lo = s.entry_hi = apex;
      s.area_lo = cum_area;
      cum_area += 0.5 * cross(a - apex, b - apex);
      s.area_hi = cum_area;
      s.exit_arc_lo = cum_arc;
      cum_arc += dist(a, b);
      s.exit_arc_hi = cum_arc;
    }
    t.sweep_span = off;
    t.total_area = cum_area;
    return t;
  }

  if (t.apex_class == PointClass::boundary) {
    // Entry is the apex; the sweep covers the inward cone.
    std::size_t on_vertex = m;
    for (std::size_t i = 0; i < m; ++i)
      if (dist(apex, v[i]) <= band) { on_vertex = i; break; }
    std::vector<Point> chain;
    if (on_vertex < m) {
      t.apex_on_vertex = true;
      for (std::size_t j = 1; j < m; ++j) chain.push_back(v[(on_vertex + j) % m]);
    } else {
      std::size_t edge = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        double d = detail::point_segment_distance(apex, v[i], v[(i + 1) % m]);
        if (d < best) { best = d; edge = i; }
      }
      for (std::size_t j = 1; j <= m; ++j) chain.push_back(v[(edge + j) % m]);
    }
    t.sweep_start = angle_of(chain.front() - apex);
    t.sectors.resize(chain.size() - 1);
    double off = 0.0, cum_area = 0.0, cum_arc = 0.0;
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      Point a = chain[j];
      Point b = chain[j + 1];
      SectorTable::Sector& s = t.sectors[j];
      s.off_lo = off;
      off += ccw_delta(angle_of(a - apex), angle_of(b - apex));
      s.off_hi = off;
      s.exit_lo = a;
      s.exit_hi = b;
      s.entry_lo = s.entry_hi = apex;
      s.area_lo = cum_area;
      cum_area += 0.5 * cross(a - apex, b - apex);
      s.area_hi = cum_area;
      s.exit_arc_lo = cum_arc;
      cum_arc += dist(a, b);
      s.exit_arc_hi = cum_arc;
    }
    t.sweep_span = off;
    t.total_area = cum_area;
    return t;
  }

  // Exterior apex: find the visibility wedge as the complement of the largest
  // cyclic gap between vertex directions.
  std::vector<double> raw(m);
  for (std::size_t i = 0; i < m; ++i) raw[i] = angle_of(v[i] - apex);
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  double best_gap = -1.0;
  std::size_t gap_at = 0;  // gap between order[gap_at] and order[gap_at+1]
  for (std::size_t i = 0; i < m; ++i) {
    double a = raw[order[i]];
    double b = raw[order[(i + 1) % m]];
    double gap = ccw_delta(a, b);
    if (gap > best_gap) { best_gap = gap; gap_at = i; }
  }
  t.sweep_start = raw[order[(gap_at + 1) % m]];
  t.sweep_span = kTwoPi - best_gap;
  t.has_entry_chain = true;

  auto offset_of = [&](std::size_t i) { return ccw_delta(t.sweep_start, raw[i]); };
  const double group_tol = std::max(t.sweep_span * 1e-9, 1e-15);

  // Tangent groups at the wedge ends (1 vertex, or 2 when an edge lies on the
  // supporting line through the apex).
  std::vector<std::size_t> lo_group, hi_group;
  for (std::size_t i = 0; i < m; ++i) {
    double o = offset_of(i);
    if (o <= group_tol) lo_group.push_back(i);
    if (o >= t.sweep_span - group_tol) hi_group.push_back(i);
  }
  auto near_far = [&](const std::vector<std::size_t>& g) {
    std::size_t nearest = g[0], farthest = g[0];
    for (std::size_t i : g) {
      if (dist(apex, v[i]) < dist(apex, v[nearest])) nearest = i;
      if (dist(apex, v[i]) > dist(apex, v[farthest])) farthest = i;
    }
    return std::pair<std::size_t, std::size_t>{nearest, farthest};
  };
  auto [lo_near, lo_far] = near_far(lo_group);
  auto [hi_near, hi_far] = near_far(hi_group);

  // Far chain: CCW walk from the far tangent vertex of the wedge start to the
  // far tangent vertex of the wedge end.  Near chain: the reverse walk.
  std::vector<detail::ChainPoint> far_chain, near_chain;
  {
    std::size_t i = lo_far;
    far_chain.push_back({v[i], 0.0});
    while (i != hi_far) {
      std::size_t j = (i + 1) % m;
      double o = (j == hi_far) ? t.sweep_span : offset_of(j);
      far_chain.push_back({v[j], o});
      i = j;
    }
    far_chain.front().offset = 0.0;
    far_chain.back().offset = t.sweep_span;
  }
  {
    std::size_t i = lo_near;
    near_chain.push_back({v[i], 0.0});
    while (i != hi_near) {
      std::size_t j = (i + m - 1) % m;
      double o = (j == hi_near) ? t.sweep_span : offset_of(j);
      near_chain.push_back({v[j], o});
      i = j;
    }
    near_chain.front().offset = 0.0;
    near_chain.back().offset = t.sweep_span;
  }
  // Enforce monotone chain offsets against rounding jitter.
  for (std::size_t i = 1; i < far_chain.size(); ++i)
    far_chain[i].offset = std::max(far_chain[i].offset, far_chain[i - 1].offset);
  for (std::size_t i = 1; i < near_chain.size(); ++i)
    near_chain[i].offset = std::max(near_chain[i].offset, near_chain[i - 1].offset);

  // Merged sector boundaries.
  std::vector<double> cuts;
  cuts.push_back(0.0);
  for (const auto& c : far_chain) cuts.push_back(c.offset);
  for (const auto& c : near_chain) cuts.push_back(c.offset);
  cuts.push_back(t.sweep_span);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [&](double a, double b) { return b - a <= group_tol; }),
             cuts.end());
  if (cuts.back() < t.sweep_span) cuts.back() = t.sweep_span;

  std::size_t far_cur = 0, near_cur = 0;
  double cum_area = 0.0, far_arc = 0.0, near_arc = 0.0;
  t.sectors.reserve(cuts.size() - 1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    SectorTable::Sector s;
    s.off_lo = cuts[k];
    s.off_hi = cuts[k + 1];
    s.exit_lo = detail::chain_point_at(far_chain, far_cur, s.off_lo, apex, t.sweep_start);
    s.exit_hi = detail::chain_point_at(far_chain, far_cur, s.off_hi, apex, t.sweep_start);
    s.entry_lo = detail::chain_point_at(near_chain, near_cur, s.off_lo, apex, t.sweep_start);
    s.entry_hi = detail::chain_point_at(near_chain, near_cur, s.off_hi, apex, t.sweep_start);
    s.area_lo = cum_area;
    cum_area += 0.5 * cross(s.exit_lo - apex, s.exit_hi - apex) -
                0.5 * cross(s.entry_lo - apex, s.entry_hi - apex);
    s.area_hi = cum_area;
    s.exit_arc_lo = far_arc;
    far_arc += dist(s.exit_lo, s.exit_hi);
    s.exit_arc_hi = far_arc;
    s.entry_arc_lo = near_arc;
    near_arc += dist(s.entry_lo, s.entry_hi);
    s.entry_arc_hi = near_arc;
    t.sectors.push_back(s);
  }
  t.total_area = cum_area;
  return t;
}

}  // namespace fairfan
