#pragma once

// Equal-area (or prescribed-fraction) fan partitions of a convex polygon.
//
// A fan is a set of rays from one origin.  Origins fall into three classes:
//   interior  - n rays bound n wedges covering the polygon
//   exterior/boundary - (n-1) rays cut the polygon into n pieces
//   at infinity - (n-1) parallel lines of a fixed direction cut n slabs
// A fan is convex when successive ray gaps never exceed pi, which keeps every
// piece convex.

#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "geometry.hpp"
#include "sector_table.hpp"

namespace fairfan {

struct FanOrigin {
  bool at_infinity = false;
  Point point;             // finite origin
  double direction = 0.0;  // cut direction for an at-infinity origin

  static FanOrigin at(Point p) { return {false, p, 0.0}; }
  static FanOrigin infinite(double dir) { return {true, {}, normalize_angle(dir)}; }
};

struct Fan {
  FanOrigin origin;
  // Finite origin: ray angles in sweep order (n for interior, n-1 otherwise).
  std::vector<double> ray_angles;
  // At-infinity origin: signed cut-line offsets along the sweep normal, in
  // ascending order.  Every cut line shares the single direction angle.
  std::vector<double> line_offsets;
};

struct Piece {
  std::vector<Point> vertices;  // CCW
  double area = 0.0;
  double perimeter = 0.0;
};

struct FanPartition {
  Fan fan;
  std::vector<Piece> pieces;
  std::vector<double> fractions;  // area fractions the fan was built for
};

inline std::vector<double> equal_fractions(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

namespace detail {

inline void check_fractions(const std::vector<double>& f) {
  if (f.empty()) throw Error(ErrorCode::bad_fractions, "fraction list is empty");
  double sum = 0.0;
  for (double x : f) {
    if (!(x > 0.0)) throw Error(ErrorCode::bad_fractions, "fractions must be positive");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::bad_fractions, "fractions must sum to 1");
}

inline Piece make_piece(std::vector<Point> verts, double scale) {
  // Drop consecutive duplicates introduced by hits landing on vertices.
  std::vector<Point> clean;
  clean.reserve(verts.size());
  const double tol = kEpsClassify * scale;
  for (const Point& p : verts) {
    if (clean.empty() || dist(clean.back(), p) > tol) clean.push_back(p);
  }
  while (clean.size() > 1 && dist(clean.front(), clean.back()) <= tol) clean.pop_back();
  Piece piece;
  piece.vertices = std::move(clean);
  piece.area = shoelace_signed(piece.vertices);
  piece.perimeter = chain_length(piece.vertices, true);
  return piece;
}

// Cumulative fraction targets scaled to the table's total area; the last
// entry is clamped to the exact total.
inline std::vector<double> area_targets(const std::vector<double>& fractions, double total) {
  std::vector<double> t(fractions.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    acc += fractions[i];
    t[i] = acc * total;
  }
  t.back() = total;
  return t;
}

// Polygon vertices of the piece swept between two ray solutions, built from
// the sector chains.  `lo` and `hi` are sweep-ordered.
inline void append_far_chain(const SectorTable& table, const SectorTable::RaySolution& lo,
                             const SectorTable::RaySolution& hi, std::vector<Point>& out) {
  for (std::size_t s = lo.sector; s <= hi.sector && s < table.sectors.size(); ++s) {
    const auto& sec = table.sectors[s];
    if (s > lo.sector && sec.off_lo > lo.offset && sec.off_lo < hi.offset)
      out.push_back(sec.exit_lo);
  }
}

inline void append_near_chain_reversed(const SectorTable& table,
                                       const SectorTable::RaySolution& lo,
                                       const SectorTable::RaySolution& hi,
                                       std::vector<Point>& out) {
  for (std::size_t s = hi.sector + 1; s-- > lo.sector + 1;) {
    if (s >= table.sectors.size()) continue;
    const auto& sec = table.sectors[s];
    if (sec.off_lo > lo.offset && sec.off_lo < hi.offset) out.push_back(sec.entry_lo);
  }
}

// Pieces for a finite-origin fan from consecutive ray solutions covering the
// sweep [0, span].  `cuts` must be sweep-ordered and bracketed by the sweep
// ends for exterior/boundary fans; for interior fans it holds the n rays.
inline std::vector<Piece> assemble_exterior_pieces(const SectorTable& table,
                                                  const std::vector<SectorTable::RaySolution>& cuts,
                                                  double scale) {
  std::vector<Piece> pieces;
  pieces.reserve(cuts.size() - 1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto& lo = cuts[k];
    const auto& hi = cuts[k + 1];
    std::vector<Point> verts;
    verts.push_back(lo.entry_point);
    verts.push_back(lo.exit_point);
    append_far_chain(table, lo, hi, verts);
    verts.push_back(hi.exit_point);
    verts.push_back(hi.entry_point);
    append_near_chain_reversed(table, lo, hi, verts);
    pieces.push_back(make_piece(std::move(verts), scale));
  }
  return pieces;
}

inline std::vector<Piece> assemble_interior_pieces(const SectorTable& table,
                                                   const std::vector<SectorTable::RaySolution>& rays,
                                                   double scale) {
  const std::size_t n = rays.size();
  std::vector<Piece> pieces;
  pieces.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& lo = rays[k];
    const auto& hi = rays[(k + 1) % n];
    std::vector<Point> verts;
    verts.push_back(table.apex);
    verts.push_back(lo.exit_point);
    if (hi.offset >= lo.offset && !(n == 1)) {
      append_far_chain(table, lo, hi, verts);
    } else {
      // Wedge wrapping the sweep origin: boundary vertices past lo, then the
      // vertex at offset zero, then those before hi.
      for (std::size_t s = lo.sector + 1; s < table.sectors.size(); ++s) {
        const auto& sec = table.sectors[s];
        if (sec.off_lo > lo.offset) verts.push_back(sec.exit_lo);
      }
      verts.push_back(table.sectors.front().exit_lo);
      for (std::size_t s = 1; s <= hi.sector && s < table.sectors.size(); ++s) {
        const auto& sec = table.sectors[s];
        if (sec.off_lo < hi.offset) verts.push_back(sec.exit_lo);
      }
    }
    verts.push_back(hi.exit_point);
    pieces.push_back(make_piece(std::move(verts), scale));
  }
  return pieces;
}

}  // namespace detail

// Unique fan partition for an exterior or boundary origin: n-1 rays placed so
// the swept areas match the prescribed fractions.
inline FanPartition exterior_fan(const ConvexPolygon& poly, Point p,
                                 const std::vector<double>& fractions) {
  detail::check_fractions(fractions);
  if (classify_point(poly, p) == PointClass::interior)
    throw Error(ErrorCode::point_inside, "origin lies inside the polygon");
  SectorTable table = sector_table(poly, p);

  const std::size_t n = fractions.size();
  FanPartition part;
  part.fractions = fractions;
  part.fan.origin = FanOrigin::at(p);

  std::vector<SectorTable::RaySolution> cuts;
  cuts.reserve(n + 1);
  cuts.push_back(table.at_offset(0.0));
  if (n > 1) {
    std::vector<double> targets = detail::area_targets(fractions, table.total_area);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      cuts.push_back(table.at_area(targets[k]));
      part.fan.ray_angles.push_back(cuts.back().theta);
    }
  }
  cuts.push_back(table.at_offset(table.sweep_span));
  part.pieces = detail::assemble_exterior_pieces(table, cuts, poly.scale());
  return part;
}

// Fan partition for an interior origin with the first ray at `theta`.
// Returns nullopt when some wedge (including the closing one) would have to
// open beyond pi, which would make a piece non-convex.
inline std::optional<FanPartition> interior_fan(const ConvexPolygon& poly, Point p,
                                                const std::vector<double>& fractions,
                                                double theta) {
  detail::check_fractions(fractions);
  if (classify_point(poly, p) != PointClass::interior)
    throw Error(ErrorCode::point_not_interior, "origin must lie strictly inside the polygon");

  SectorTable table = sector_table(poly, p);
  const std::size_t n = fractions.size();

  FanPartition part;
  part.fractions = fractions;
  part.fan.origin = FanOrigin::at(p);

  if (n == 1) {
    part.fan.ray_angles.push_back(normalize_angle(theta));
    Piece whole;
    whole.vertices = poly.vertices();
    whole.area = poly.area();
    whole.perimeter = poly.perimeter();
    part.pieces.push_back(std::move(whole));
    return part;
  }

  auto [off0, ok] = table.to_offset(normalize_angle(theta));
  if (!ok) off0 = normalize_angle(theta) - table.sweep_start;  // unreachable for interior
  std::vector<SectorTable::RaySolution> rays;
  rays.reserve(n);
  SectorTable::RaySolution first = table.at_offset(off0);
  double base = first.area;
  rays.push_back(first);
  std::vector<double> targets = detail::area_targets(fractions, table.total_area);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double a = base + targets[k];
    if (a >= table.total_area) a -= table.total_area;
    rays.push_back(table.at_area(a));
  }
  for (std::size_t k = 0; k < n; ++k) {
    // Rays can wrap past the sweep origin anywhere in the list, so a negative
    // difference means this wedge crosses offset zero.
    double gap = rays[(k + 1) % n].offset - rays[k].offset;
    if (gap < 0.0) gap += table.sweep_span;
    if (gap > kPi + kEpsAngle) return std::nullopt;
    part.fan.ray_angles.push_back(rays[k].theta);
  }
  part.pieces = detail::assemble_interior_pieces(table, rays, poly.scale());
  return part;
}

// Fan at infinity: n-1 parallel cut lines of direction `direction`, placed by
// bisection on the monotone area-versus-offset function.
inline FanPartition parallel_fan(const ConvexPolygon& poly, double direction,
                                 const std::vector<double>& fractions) {
  detail::check_fractions(fractions);
  const Point d = unit(direction);
  const Point nrm{d.y, -d.x};  // sweep normal; offset grows across the cuts
  const std::vector<Point>& v = poly.vertices();

  double lo = dot(nrm, v[0]), hi = lo;
  for (const Point& q : v) {
    lo = std::min(lo, dot(nrm, q));
    hi = std::max(hi, dot(nrm, q));
  }

  // Area on the low-offset side of the line at offset t. The clip keeps the
  // left of the directed line, which is where dot(nrm, x) <= t.
  auto area_below = [&](double t) {
    Point anchor = Point{nrm.x * t, nrm.y * t};
    std::vector<Point> clipped = detail::clip_halfplane(v, anchor, d);
    return detail::shoelace_signed(clipped);
  };

  const std::size_t n = fractions.size();
  FanPartition part;
  part.fractions = fractions;
  part.fan.origin = FanOrigin::infinite(direction);

  std::vector<double> offsets;
  if (n > 1) {
    std::vector<double> targets = detail::area_targets(fractions, poly.area());
    const double tol = 1e-12 * poly.scale();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      double a = lo, b = hi;
      for (int it = 0; it < 200 && b - a > tol; ++it) {
        double mid = 0.5 * (a + b);
        if (area_below(mid) < targets[k])
          a = mid;
        else
          b = mid;
      }
      offsets.push_back(0.5 * (a + b));
    }
  }
  part.fan.line_offsets = offsets;

  std::vector<Point> rest = v;
  for (double t : offsets) {
    Point anchor{nrm.x * t, nrm.y * t};
    std::vector<Point> below = detail::clip_halfplane(rest, anchor, d);
    part.pieces.push_back(detail::make_piece(std::move(below), poly.scale()));
    rest = detail::clip_halfplane(rest, anchor, Point{-d.x, -d.y});
  }
  part.pieces.push_back(detail::make_piece(std::move(rest), poly.scale()));
  return part;
}

// True when successive ray gaps (including the wrap for interior fans) stay
// within pi.
inline bool fan_is_convex(const Fan& fan) {
  if (fan.origin.at_infinity) return true;
  const std::vector<double>& a = fan.ray_angles;
  if (a.size() < 2) return true;
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    if (ccw_delta(a[i], a[i + 1]) > kPi + kEpsAngle) return false;
  return true;
}

// Re-materializes the pieces of an arbitrary fan over the polygon.
inline std::vector<Piece> pieces_of(const ConvexPolygon& poly, const Fan& fan) {
  if (fan.origin.at_infinity) {
    const Point d = unit(fan.origin.direction);
    const Point nrm{d.y, -d.x};
    std::vector<Point> rest = poly.vertices();
    std::vector<Piece> pieces;
    for (double t : fan.line_offsets) {
      Point anchor{nrm.x * t, nrm.y * t};
      pieces.push_back(detail::make_piece(detail::clip_halfplane(rest, anchor, d), poly.scale()));
      rest = detail::clip_halfplane(rest, anchor, Point{-d.x, -d.y});
    }
    pieces.push_back(detail::make_piece(std::move(rest), poly.scale()));
    if (pieces.empty()) throw Error(ErrorCode::empty_partition, "fan produced no pieces");
    return pieces;
  }

  PointClass cls = classify_point(poly, fan.origin.point);
  SectorTable table = sector_table(poly, fan.origin.point);
  if (cls == PointClass::interior) {
    if (fan.ray_angles.empty())
      throw Error(ErrorCode::malformed_fan, "interior fan needs at least one ray");
    if (fan.ray_angles.size() == 1) {
      Piece whole;
      whole.vertices = poly.vertices();
      whole.area = poly.area();
      whole.perimeter = poly.perimeter();
      return {whole};
    }
    std::vector<SectorTable::RaySolution> rays;
    for (double ang : fan.ray_angles) {
      auto [off, ok] = table.to_offset(normalize_angle(ang));
      if (!ok) throw Error(ErrorCode::malformed_fan, "ray angle outside sweep");
      rays.push_back(table.at_offset(off));
    }
    for (std::size_t k = 0; k < rays.size(); ++k) {
      double gap = ccw_delta(rays[k].theta, rays[(k + 1) % rays.size()].theta);
      if (gap > kPi + kEpsAngle)
        throw Error(ErrorCode::malformed_fan, "fan wedge exceeds pi");
    }
    return detail::assemble_interior_pieces(table, rays, poly.scale());
  }

  std::vector<SectorTable::RaySolution> cuts;
  cuts.push_back(table.at_offset(0.0));
  for (double ang : fan.ray_angles) {
    auto [off, ok] = table.to_offset(normalize_angle(ang));
    if (!ok) throw Error(ErrorCode::malformed_fan, "ray angle outside the visibility wedge");
    cuts.push_back(table.at_offset(off));
  }
  cuts.push_back(table.at_offset(table.sweep_span));
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    if (cuts[k + 1].offset < cuts[k].offset)
      throw Error(ErrorCode::malformed_fan, "ray angles not in sweep order");
  std::vector<Piece> pieces = detail::assemble_exterior_pieces(table, cuts, poly.scale());
  if (pieces.empty()) throw Error(ErrorCode::empty_partition, "fan produced no pieces");
  return pieces;
}

namespace detail {

// Piece perimeters of the prescribed-fraction fan at an exterior or boundary
// apex, computed from the sector table without materializing pieces.
inline void exterior_perimeters(const SectorTable& table, const std::vector<double>& fractions,
                                std::vector<double>& out) {
  const std::size_t n = fractions.size();
  out.clear();
  out.reserve(n);
  SectorTable::RaySolution prev = table.at_offset(0.0);
  std::vector<double> targets = area_targets(fractions, table.total_area);
  for (std::size_t k = 0; k < n; ++k) {
    SectorTable::RaySolution cur =
        (k + 1 < n) ? table.at_area(targets[k]) : table.at_offset(table.sweep_span);
    double per = prev.chord + cur.chord + (cur.exit_arc - prev.exit_arc) +
                 (cur.entry_arc - prev.entry_arc);
    out.push_back(per);
    prev = cur;
  }
}

// Piece perimeters of the interior fan with first ray at sweep offset `off0`.
// Returns false when some wedge would exceed pi.
inline bool interior_perimeters(const SectorTable& table, const std::vector<double>& fractions,
                                double off0, std::vector<double>& out) {
  const std::size_t n = fractions.size();
  SectorTable::RaySolution first = table.at_offset(off0);
  double base = first.area;
  thread_local std::vector<SectorTable::RaySolution> rays;
  rays.clear();
  rays.reserve(n);
  rays.push_back(first);
  std::vector<double> targets = area_targets(fractions, table.total_area);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double a = base + targets[k];
    if (a >= table.total_area) a -= table.total_area;
    rays.push_back(table.at_area(a));
  }
  out.clear();
  out.reserve(n);
  const double full_arc = table.sectors.back().exit_arc_hi;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& lo = rays[k];
    const auto& hi = rays[(k + 1) % n];
    double gap = hi.offset - lo.offset;
    double arc = hi.exit_arc - lo.exit_arc;
    if (gap < 0.0) {  // this wedge crosses the sweep origin
      gap += table.sweep_span;
      arc += full_arc;
    }
    if (gap > kPi + kEpsAngle) return false;
    out.push_back(lo.r_exit + hi.r_exit + arc);
  }
  return true;
}

}  // namespace detail

}  // namespace fairfan
