#pragma once

// 2D convex geometry kernel: points, rays, validated convex polygons,
// point classification, chord lengths and boundary distance queries.
//
// All tolerances are relative to the polygon scale (its diameter) so that
// results are invariant under similarity transforms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fairfan {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Scale-relative tolerance defaults.
inline constexpr double kEpsConvex = 1e-9;    // convexity cross products, vs scale^2
inline constexpr double kEpsClassify = 1e-9;  // boundary band, vs scale
inline constexpr double kEpsParallel = 1e-12; // parallelism of directions
inline constexpr double kEpsAngle = 1e-9;     // angle comparisons, radians

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

// Unit vector for an angle measured counterclockwise from +x.
inline Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Normalize an angle into [0, 2*pi).
inline double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Counterclockwise angular distance from a to b, in [0, 2*pi).
inline double ccw_delta(double a, double b) { return normalize_angle(b - a); }

// Angle of a nonzero vector, in [0, 2*pi).
inline double angle_of(Point v) { return normalize_angle(std::atan2(v.y, v.x)); }

struct Ray {
  Point origin;
  double angle = 0.0;  // radians, CCW from +x, in [0, 2*pi)
};

enum class PointClass { interior, boundary, exterior };

enum class ErrorCode {
  too_few_vertices,
  not_convex,
  degenerate_edge,
  point_not_in_region,
  point_inside,
  point_not_interior,
  bad_fractions,
  malformed_fan,
  empty_partition,
  bad_window,
  all_infinite,
  bad_input,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline double shoelace_signed(const std::vector<Point>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

inline double chain_length(const std::vector<Point>& v, bool closed) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) s += dist(v[i], v[i + 1]);
  if (closed && v.size() > 1) s += dist(v.back(), v.front());
  return s;
}

inline double point_set_diameter(const std::vector<Point>& v) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, dist(v[i], v[j]));
  return d;
}

inline double point_segment_distance(Point p, Point a, Point b) {
  Point ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + t * ab);
}

// Clip a convex CCW polygon to the half-plane left of the line through `a`
// with direction `d` (keeps points with cross(d, p - a) >= 0).
inline std::vector<Point> clip_halfplane(const std::vector<Point>& poly, Point a, Point d) {
  std::vector<Point> out;
  if (poly.empty()) return out;
  out.reserve(poly.size() + 2);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Point cur = poly[i];
    Point nxt = poly[(i + 1) % poly.size()];
    double sc = cross(d, cur - a);
    double sn = cross(d, nxt - a);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
      double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

}  // namespace detail

class ConvexPolygon;
ConvexPolygon validate_polygon(const std::vector<Point>& raw);

// A validated convex polygon: at least 3 vertices, strictly convex, CCW.
// Construct through validate_polygon.
class ConvexPolygon {
 public:
  const std::vector<Point>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  Point vertex(std::size_t i) const { return verts_[i % verts_.size()]; }
  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  // Scale used for relative tolerances: the polygon diameter.
  double scale() const { return scale_; }
  bool reversed_from_cw() const { return reversed_; }

  Point centroid() const {
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      Point a = verts_[i];
      Point b = verts_[(i + 1) % verts_.size()];
      double w = cross(a, b);
      cx += (a.x + b.x) * w;
      cy += (a.y + b.y) * w;
    }
    double f = 1.0 / (6.0 * area_);
    return {cx * f, cy * f};
  }

  // Axis-aligned bounding box {x0, y0, x1, y1}.
  std::array<double, 4> bounding_box() const {
    std::array<double, 4> b{verts_[0].x, verts_[0].y, verts_[0].x, verts_[0].y};
    for (const Point& p : verts_) {
      b[0] = std::min(b[0], p.x);
      b[1] = std::min(b[1], p.y);
      b[2] = std::max(b[2], p.x);
      b[3] = std::max(b[3], p.y);
    }
    return b;
  }

 private:
  friend ConvexPolygon validate_polygon(const std::vector<Point>& raw);
  ConvexPolygon(std::vector<Point> v, double area, double per, double scale, bool reversed)
      : verts_(std::move(v)), area_(area), perimeter_(per), scale_(scale), reversed_(reversed) {}

  std::vector<Point> verts_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
  double scale_ = 0.0;
  bool reversed_ = false;
};

// Validates a vertex list as a strictly convex polygon. Clockwise input is
// reversed and flagged. Throws Error on degenerate or non-convex input.
inline ConvexPolygon validate_polygon(const std::vector<Point>& raw) {
  if (raw.size() < 3)
    throw Error(ErrorCode::too_few_vertices,
                "polygon needs at least 3 vertices, got " + std::to_string(raw.size()));
  for (const Point& p : raw) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(ErrorCode::bad_input, "polygon vertex is not finite");
  }

  double scale = detail::point_set_diameter(raw);
  if (scale <= 0.0) throw Error(ErrorCode::degenerate_edge, "all polygon vertices coincide");

  std::vector<Point> v = raw;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t j = (i + 1) % v.size();
    if (dist(v[i], v[j]) <= kEpsClassify * scale)
      throw Error(ErrorCode::degenerate_edge,
                  "repeated vertex at index " + std::to_string(i));
  }

  double signed_area = detail::shoelace_signed(v);
  bool reversed = false;
  if (signed_area < 0.0) {
    std::reverse(v.begin(), v.end());
    signed_area = -signed_area;
    reversed = true;
  }
  if (signed_area <= kEpsConvex * scale * scale)
    throw Error(ErrorCode::not_convex, "polygon has no interior (degenerate area)");

  const double tol = kEpsConvex * scale * scale;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point a = v[i];
    Point b = v[(i + 1) % v.size()];
    Point c = v[(i + 2) % v.size()];
    double cr = cross(b - a, c - b);
    if (cr <= tol)
      throw Error(ErrorCode::not_convex,
                  "vertices " + std::to_string(i) + "," + std::to_string((i + 1) % v.size()) +
                      "," + std::to_string((i + 2) % v.size()) +
                      (cr > -tol ? " are collinear" : " form a reflex turn"));
  }

  double per = detail::chain_length(v, true);
  return ConvexPolygon(std::move(v), signed_area, per, scale, reversed);
}

inline double area(const ConvexPolygon& poly) { return poly.area(); }
inline double perimeter(const ConvexPolygon& poly) { return poly.perimeter(); }

// Classifies a point against the polygon with a boundary band of
// kEpsClassify * scale around the edges.
inline PointClass classify_point(const ConvexPolygon& poly, Point p) {
  const std::vector<Point>& v = poly.vertices();
  const double band = kEpsClassify * poly.scale();
  double min_edge_dist = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point a = v[i];
    Point b = v[(i + 1) % v.size()];
    min_edge_dist = std::min(min_edge_dist, detail::point_segment_distance(p, a, b));
    if (cross(b - a, p - a) < 0.0) inside = false;
  }
  if (min_edge_dist <= band) return PointClass::boundary;
  return inside ? PointClass::interior : PointClass::exterior;
}

// Length of the intersection of a ray with the polygon. A ray that misses the
// polygon or grazes a single vertex returns 0.
inline double chord_length(const ConvexPolygon& poly, const Ray& ray) {
  const std::vector<Point>& v = poly.vertices();
  const Point d = unit(ray.angle);
  double t_lo = 0.0;
  double t_hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point a = v[i];
    Point b = v[(i + 1) % v.size()];
    Point e = b - a;
    Point n{-e.y, e.x};  // inward normal for a CCW polygon
    double nn = norm(n);
    double slope = dot(n, d);
    double off = dot(n, ray.origin - a);
    if (std::abs(slope) <= kEpsParallel * nn) {
      if (off < -kEpsClassify * poly.scale() * nn) return 0.0;
      continue;
    }
    double t = -off / slope;
    if (slope > 0.0)
      t_lo = std::max(t_lo, t);
    else
      t_hi = std::min(t_hi, t);
  }
  if (t_hi <= t_lo) return 0.0;
  double len = t_hi - t_lo;
  return len <= kEpsClassify * poly.scale() ? 0.0 : len;
}

// Minimum and maximum distance from an interior (or boundary) point to the
// polygon boundary. The maximum is attained at a vertex; the minimum at an
// edge foot or a vertex.
struct BoundaryDistances {
  double d_min = 0.0;
  double d_max = 0.0;
};

inline BoundaryDistances boundary_distance_extremes(const ConvexPolygon& poly, Point p) {
  if (classify_point(poly, p) == PointClass::exterior)
    throw Error(ErrorCode::point_not_in_region, "point lies outside the polygon");
  const std::vector<Point>& v = poly.vertices();
  BoundaryDistances r;
  r.d_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    r.d_max = std::max(r.d_max, dist(p, v[i]));
    r.d_min = std::min(r.d_min, detail::point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
  }
  return r;
}

// All pairwise intersection points of extended edge supporting lines that lie
// strictly outside the polygon. Near-parallel pairs are skipped; duplicates
// within the classification band are merged.
inline std::vector<Point> edge_extension_intersections(const ConvexPolygon& poly) {
  const std::vector<Point>& v = poly.vertices();
  const std::size_t m = v.size();
  std::vector<Point> out;
  for (std::size_t i = 0; i < m; ++i) {
    Point ai = v[i];
    Point di = v[(i + 1) % m] - ai;
    for (std::size_t j = i + 1; j < m; ++j) {
      Point aj = v[j];
      Point dj = v[(j + 1) % m] - aj;
      double denom = cross(di, dj);
      if (std::abs(denom) <= kEpsParallel * norm(di) * norm(dj)) continue;
      double t = cross(aj - ai, dj) / denom;
      Point q = ai + t * di;
      if (classify_point(poly, q) != PointClass::exterior) continue;
      bool dup = false;
      for (const Point& u : out)
        if (dist(u, q) <= kEpsClassify * poly.scale()) { dup = true; break; }
      if (!dup) out.push_back(q);
    }
  }
  return out;
}

}  // namespace fairfan
