#pragma once

// Fairness of a partition (max piece perimeter / min piece perimeter), the
// pointwise fairness function over fan origins, and its n -> infinity limit.
//
// Interior origins admit a one-parameter family of equal-area fans indexed by
// the first ray angle theta; the fairness there is the minimum over theta.
// Between consecutive ray-vertex incidence events every piece perimeter is a
// smooth function of theta, so the exact minimizer is an event sweep with a
// one-dimensional search inside each interval.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "partition.hpp"
#include "sector_table.hpp"

namespace fairfan {

using FairnessValue = double;
inline constexpr FairnessValue kInfiniteFairness = std::numeric_limits<double>::infinity();

struct EvalMode {
  enum class Kind { exact, sampled };
  Kind kind = Kind::sampled;
  std::size_t samples = 32;

  static EvalMode exact() { return {Kind::exact, 0}; }
  static EvalMode sampled(std::size_t k = 32) { return {Kind::sampled, k}; }
};

inline FairnessValue fairness_ratio(const std::vector<double>& perimeters) {
  if (perimeters.empty()) throw Error(ErrorCode::empty_partition, "no pieces");
  auto [mn, mx] = std::minmax_element(perimeters.begin(), perimeters.end());
  return *mx / *mn;
}

inline FairnessValue fairness_ratio(const FanPartition& part) {
  if (part.pieces.empty()) throw Error(ErrorCode::empty_partition, "no pieces");
  double mn = part.pieces.front().perimeter, mx = mn;
  for (const Piece& piece : part.pieces) {
    mn = std::min(mn, piece.perimeter);
    mx = std::max(mx, piece.perimeter);
  }
  return mx / mn;
}

namespace detail {

template <class F>
inline std::pair<double, double> golden_min(F&& f, double a, double b, double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double xm = 0.5 * (a + b), fm = f(xm);
  if (fc < fm) {
    fm = fc;
    xm = c;
  }
  if (fd < fm) {
    fm = fd;
    xm = d;
  }
  return {xm, fm};
}

inline FairnessValue ratio_of(const std::vector<double>& per) {
  auto [mn, mx] = std::minmax_element(per.begin(), per.end());
  return *mx / *mn;
}

struct InteriorEvaluator {
  const SectorTable& table;
  const std::vector<double>& fractions;
  mutable std::vector<double> perims;

  FairnessValue operator()(double off0) const {
    if (!interior_perimeters(table, fractions, off0, perims)) return kInfiniteFairness;
    return ratio_of(perims);
  }
};

// A two-piece fan at an interior origin is convex only when its rays are
// opposite, i.e. the fan is a full line through the origin.  The feasible
// thetas are the roots of the swept-area defect, found by bracketing between
// ray-vertex incidences.
struct LineFanEvaluator {
  const SectorTable& table;
  double fraction;  // area fraction of the piece swept CCW from the first ray

  double opposite(double off) const {
    double o2 = off + kPi;
    return o2 >= kTwoPi ? o2 - kTwoPi : o2;
  }

  double area_gap(double off) const {
    double o2 = opposite(off);
    double swept = table.at_offset(o2).area - table.at_offset(off).area;
    if (o2 < off) swept += table.total_area;
    return swept - fraction * table.total_area;
  }

  FairnessValue ratio(double off) const {
    double o2 = opposite(off);
    SectorTable::RaySolution s1 = table.at_offset(off);
    SectorTable::RaySolution s2 = table.at_offset(o2);
    double full = table.sectors.back().exit_arc_hi;
    double arc1 = s2.exit_arc - s1.exit_arc;
    if (o2 < off) arc1 += full;
    double per1 = s1.r_exit + s2.r_exit + arc1;
    double per2 = s1.r_exit + s2.r_exit + (full - arc1);
    return per1 > per2 ? per1 / per2 : per2 / per1;
  }
};

// Among (value, offset) candidates: the lowest value, and among candidates
// within 1e-10 of it, the smallest offset.
inline std::pair<FairnessValue, double> select_best(
    const std::vector<std::pair<double, double>>& cand) {
  double vmin = kInfiniteFairness;
  for (const auto& c : cand) vmin = std::min(vmin, c.first);
  if (!(vmin < kInfiniteFairness)) return {kInfiniteFairness, 0.0};
  const std::pair<double, double>* pick = nullptr;
  for (const auto& c : cand) {
    if (c.first <= vmin + 1e-10 && (!pick || c.second < pick->second)) pick = &c;
  }
  return {pick->first, pick->second};
}

inline std::pair<FairnessValue, double> best_line_fan(const SectorTable& table,
                                                      double fraction) {
  LineFanEvaluator ev{table, fraction};
  std::vector<double> brk{0.0, kTwoPi};
  for (const auto& sec : table.sectors) {
    brk.push_back(sec.off_lo);
    double c = sec.off_lo + kPi;
    brk.push_back(c >= kTwoPi ? c - kTwoPi : c);
  }
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            brk.end());
  if (brk.back() < kTwoPi - 1e-12) brk.push_back(kTwoPi);

  const double tol_area = 1e-9 * table.total_area;
  std::vector<std::pair<double, double>> cand;
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    double a = brk[i], b = brk[i + 1];
    if (b - a < 1e-13) continue;
    double m = 0.5 * (a + b);
    double ga = ev.area_gap(a), gm = ev.area_gap(m), gb = ev.area_gap(b);
    if (std::abs(ga) <= tol_area && std::abs(gm) <= tol_area && std::abs(gb) <= tol_area) {
      // The whole interval bisects: every theta is feasible here.
      auto [x, v] = golden_min([&](double o) { return ev.ratio(o); }, a, b, 1e-10);
      cand.emplace_back(v, x);
      cand.emplace_back(ev.ratio(a), a);
      cand.emplace_back(ev.ratio(b), b);
      continue;
    }
    double xs[3] = {a, m, b};
    double gs[3] = {ga, gm, gb};
    for (int k = 0; k < 3; ++k)
      if (std::abs(gs[k]) <= tol_area) cand.emplace_back(ev.ratio(xs[k]), xs[k]);
    for (int k = 0; k < 2; ++k) {
      if (gs[k] * gs[k + 1] < 0.0) {
        double lo = xs[k], hi = xs[k + 1], glo = gs[k];
        for (int it = 0; it < 90; ++it) {
          double mid = 0.5 * (lo + hi);
          double gmid = ev.area_gap(mid);
          if ((gmid < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gmid;
          } else {
            hi = mid;
          }
        }
        double r = 0.5 * (lo + hi);
        cand.emplace_back(ev.ratio(r), r);
      }
    }
  }
  return select_best(cand);
}

// First-ray offsets at which some ray of the equal-area fan passes through a
// polygon vertex, restricted to [0, period].
inline std::vector<double> event_offsets(const SectorTable& table,
                                         const std::vector<double>& fractions,
                                         double period) {
  const double total = table.total_area;
  std::vector<double> targets(fractions.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    targets[k] = acc * total;
    acc += fractions[k];
  }
  std::vector<double> events{0.0, period};
  for (const auto& sec : table.sectors) {
    for (double t : targets) {
      double a = sec.area_lo - t;
      if (a < 0.0) a += total;
      if (a >= total) a -= total;
      double e = table.at_area(a).offset;
      if (e <= period + 1e-12) events.push_back(std::min(e, period));
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               events.end());
  return events;
}

inline std::pair<FairnessValue, double> best_interior_fan(const SectorTable& table,
                                                          const std::vector<double>& fractions,
                                                          EvalMode mode) {
  const std::size_t n = fractions.size();
  InteriorEvaluator ev{table, fractions, {}};

  bool equal = true;
  for (double f : fractions)
    if (std::abs(f - 1.0 / static_cast<double>(n)) > 1e-12) equal = false;
  double period = table.sweep_span;
  if (equal) period = table.at_area(table.total_area / static_cast<double>(n)).offset;

  std::vector<std::pair<double, double>> cand;
  auto probe = [&](double a, double b) {
    if (b - a < 1e-13) {
      cand.emplace_back(ev(a), a);
      return;
    }
    // Piece perimeters are smooth here, but the max/min ratio still kinks
    // wherever the extremal piece identity switches, so one interval can hold
    // several dips. Polish every sample-local dip, not just the deepest.
    constexpr int P = 17;
    double xs[P], vs[P];
    for (int i = 0; i < P; ++i) {
      xs[i] = a + (b - a) * i / (P - 1);
      vs[i] = ev(xs[i]);
    }
    cand.emplace_back(vs[0], xs[0]);
    cand.emplace_back(vs[P - 1], xs[P - 1]);
    for (int i = 0; i < P; ++i) {
      if (i > 0 && vs[i] > vs[i - 1]) continue;
      if (i + 1 < P && vs[i] > vs[i + 1]) continue;
      auto [x, v] = golden_min(ev, xs[std::max(0, i - 1)], xs[std::min(P - 1, i + 1)], 1e-10);
      cand.emplace_back(v, x);
    }
  };

  if (mode.kind == EvalMode::Kind::exact) {
    std::vector<double> events = event_offsets(table, fractions, period);
    for (std::size_t i = 0; i + 1 < events.size(); ++i) probe(events[i], events[i + 1]);
  } else {
    const std::size_t K = std::max<std::size_t>(4, mode.samples);
    double step = period / static_cast<double>(K);
    std::size_t ib = 0;
    double vb = kInfiniteFairness, xb = 0.5 * step;
    for (std::size_t i = 0; i < K; ++i) {
      double x = (static_cast<double>(i) + 0.5) * step;
      double v = ev(x);
      if (v < vb) {
        vb = v;
        xb = x;
        ib = i;
      }
    }
    (void)ib;
    if (vb < kInfiniteFairness) {
      auto [x, v] =
          golden_min(ev, std::max(0.0, xb - step), std::min(period, xb + step), 1e-10);
      cand.emplace_back(v, x);
      cand.emplace_back(vb, xb);
    }
  }
  return select_best(cand);
}

}  // namespace detail

struct PointFairness {
  FairnessValue value = 1.0;
  PointClass origin_class = PointClass::interior;
  double theta = 0.0;  // first-ray angle attaining the value
  Fan witness;
};

inline std::vector<double> theta_events(const ConvexPolygon& poly, Point p, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::bad_input, "n must be at least 1");
  if (classify_point(poly, p) != PointClass::interior)
    throw Error(ErrorCode::point_not_interior, "events are defined for interior origins");
  SectorTable table = sector_table(poly, p);
  std::vector<double> offs =
      detail::event_offsets(table, equal_fractions(n), table.sweep_span);
  std::vector<double> angles;
  angles.reserve(offs.size());
  for (double o : offs) {
    if (o >= kTwoPi - 1e-12) continue;
    angles.push_back(table.abs_angle(o));
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-10; }),
               angles.end());
  if (angles.size() > 1 && angles.front() + kTwoPi - angles.back() < 1e-10)
    angles.pop_back();
  return angles;
}

inline PointFairness fairness_at_point(const ConvexPolygon& poly, Point p, std::size_t n,
                                       EvalMode mode = EvalMode::sampled()) {
  if (n == 0) throw Error(ErrorCode::bad_input, "n must be at least 1");
  PointFairness out;
  out.origin_class = classify_point(poly, p);
  out.witness.origin = FanOrigin::at(p);

  if (n == 1) {
    if (out.origin_class == PointClass::interior) out.witness.ray_angles = {0.0};
    return out;
  }

  SectorTable table = sector_table(poly, p);

  if (out.origin_class != PointClass::interior) {
    std::vector<double> fr = equal_fractions(n);
    std::vector<double> targets = detail::area_targets(fr, table.total_area);
    std::vector<double> perims;
    perims.reserve(n);
    SectorTable::RaySolution prev = table.at_offset(0.0);
    for (std::size_t k = 0; k < n; ++k) {
      SectorTable::RaySolution cur = (k + 1 < n) ? table.at_area(targets[k])
                                                 : table.at_offset(table.sweep_span);
      perims.push_back(prev.chord + cur.chord + (cur.exit_arc - prev.exit_arc) +
                       (cur.entry_arc - prev.entry_arc));
      if (k + 1 < n) out.witness.ray_angles.push_back(cur.theta);
      prev = cur;
    }
    out.value = detail::ratio_of(perims);
    out.theta = out.witness.ray_angles.empty() ? 0.0 : out.witness.ray_angles.front();
    return out;
  }

  std::vector<double> fr = equal_fractions(n);
  std::pair<FairnessValue, double> best =
      (n == 2) ? detail::best_line_fan(table, fr[0])
               : detail::best_interior_fan(table, fr, mode);
  out.value = best.first;
  if (!(out.value < kInfiniteFairness)) {
    out.value = kInfiniteFairness;
    return out;
  }
  double off0 = best.second;
  out.theta = table.abs_angle(off0);
  if (n == 2) {
    double o2 = off0 + kPi;
    if (o2 >= kTwoPi) o2 -= kTwoPi;
    out.witness.ray_angles = {table.abs_angle(off0), table.abs_angle(o2)};
  } else {
    SectorTable::RaySolution first = table.at_offset(off0);
    out.witness.ray_angles.push_back(first.theta);
    double base = first.area, acc = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      acc += fr[k];
      double a = base + acc * table.total_area;
      if (a >= table.total_area) a -= table.total_area;
      out.witness.ray_angles.push_back(table.at_area(a).theta);
    }
  }
  return out;
}

// Limit of the fairness at p as the piece count grows: the ratio of extreme
// intersection lengths of rays from p with the region.  Finite inside and on
// the boundary; infinite at exterior points unless both tangent directions
// run along edges (extended-edge intersection points).
inline FairnessValue asymptotic_fairness(const ConvexPolygon& poly, Point p) {
  PointClass cls = classify_point(poly, p);
  if (cls == PointClass::interior) {
    BoundaryDistances d = boundary_distance_extremes(poly, p);
    return d.d_max / d.d_min;
  }

  SectorTable table = sector_table(poly, p);
  auto chord_at = [&](double off) { return table.at_offset(off).chord; };

  if (cls == PointClass::exterior) {
    double end_lo = chord_at(0.0), end_hi = chord_at(table.sweep_span);
    if (end_lo <= kEpsClassify * table.scale || end_hi <= kEpsClassify * table.scale)
      return kInfiniteFairness;
  }

  double cmin = kInfiniteFairness, cmax = 0.0;
  for (const auto& sec : table.sectors) {
    constexpr int P = 9;
    double xs[P], cs[P];
    int imin = 0, imax = 0;
    for (int i = 0; i < P; ++i) {
      xs[i] = sec.off_lo + (sec.off_hi - sec.off_lo) * i / (P - 1);
      cs[i] = chord_at(xs[i]);
      if (cs[i] < cs[imin]) imin = i;
      if (cs[i] > cs[imax]) imax = i;
    }
    auto [xlo, clo] = detail::golden_min(chord_at, xs[std::max(0, imin - 1)],
                                         xs[std::min(P - 1, imin + 1)], 1e-10);
    (void)xlo;
    auto [xhi, chi_neg] =
        detail::golden_min([&](double o) { return -chord_at(o); },
                           xs[std::max(0, imax - 1)], xs[std::min(P - 1, imax + 1)], 1e-10);
    (void)xhi;
    cmin = std::min({cmin, clo, cs[0], cs[P - 1]});
    cmax = std::max({cmax, -chi_neg, cs[0], cs[P - 1]});
  }
  if (cls == PointClass::exterior && cmin <= kEpsClassify * table.scale)
    return kInfiniteFairness;
  return cmax / cmin;
}

// How far the partition sits from the balanced-perimeter target for unequal
// areas: perimeters of the extreme-area pieces should relate like the square
// root of their area ratio.
inline double area_weighted_deviation(const FanPartition& part) {
  if (part.pieces.empty()) throw Error(ErrorCode::empty_partition, "no pieces");
  auto area_close = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1e-300});
  };
  std::size_t imin = 0, imax = 0;
  for (std::size_t i = 1; i < part.pieces.size(); ++i) {
    const Piece& pc = part.pieces[i];
    const Piece& lo = part.pieces[imin];
    const Piece& hi = part.pieces[imax];
    if (area_close(pc.area, lo.area) ? pc.perimeter < lo.perimeter : pc.area < lo.area)
      imin = i;
    if (area_close(pc.area, hi.area) ? pc.perimeter > hi.perimeter : pc.area > hi.area)
      imax = i;
  }
  double ratio = part.pieces[imin].perimeter / part.pieces[imax].perimeter;
  return std::abs(ratio - std::sqrt(part.pieces[imin].area / part.pieces[imax].area));
}

struct ThetaSample {
  double theta = 0.0;
  FairnessValue value = kInfiniteFairness;
  bool feasible = false;
};

struct ThetaProfile {
  Point origin;
  std::size_t n = 1;
  std::vector<ThetaSample> samples;
  std::vector<double> events;
  double best_theta = 0.0;
  FairnessValue best_value = kInfiniteFairness;
};

inline ThetaProfile theta_profile(const ConvexPolygon& poly, Point p, std::size_t n,
                                  std::size_t num_samples = 256) {
  if (n == 0) throw Error(ErrorCode::bad_input, "n must be at least 1");
  if (classify_point(poly, p) != PointClass::interior)
    throw Error(ErrorCode::point_not_interior, "profiles are defined for interior origins");
  SectorTable table = sector_table(poly, p);
  std::vector<double> fr = equal_fractions(n);
  detail::InteriorEvaluator ev{table, fr, {}};
  detail::LineFanEvaluator line{table, 0.5};
  const double tol_area = 1e-9 * table.total_area;

  ThetaProfile prof;
  prof.origin = p;
  prof.n = n;
  prof.samples.reserve(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) {
    double off = kTwoPi * static_cast<double>(i) / static_cast<double>(num_samples);
    ThetaSample s;
    s.theta = table.abs_angle(off);
    if (n == 1) {
      s.value = 1.0;
    } else if (n == 2) {
      s.value = std::abs(line.area_gap(off)) <= tol_area ? line.ratio(off)
                                                         : kInfiniteFairness;
    } else {
      s.value = ev(off);
    }
    s.feasible = s.value < kInfiniteFairness;
    prof.samples.push_back(s);
  }
  if (n >= 2) prof.events = theta_events(poly, p, n);
  PointFairness best = fairness_at_point(poly, p, n, EvalMode::exact());
  prof.best_theta = best.theta;
  prof.best_value = best.value;
  return prof;
}

}  // namespace fairfan
