#pragma once

// File formats: polygon documents (JSON), terrain grids (gnuplot-compatible
// ASCII, byte-exact round trip), structured run reports (JSON), and plotting
// scripts.  Failures to reach a file throw IoError; invalid content throws
// Error, so callers can map the two to distinct exit codes.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairness.hpp"
#include "geometry.hpp"
#include "partition.hpp"
#include "search.hpp"

namespace fairfan {

inline constexpr const char* kVersion = "0.1.0";

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

using ordered_json = nlohmann::ordered_json;

struct NamedPolygon {
  ConvexPolygon polygon;
  std::string name;
  bool reversed = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string grid_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt("%.9g", v);
}

}  // namespace detail

// Doubles in reports carry 12 significant digits; infinities become the
// string "inf" (JSON has no literal for them).
inline ordered_json json_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return std::strtod(detail::fmt("%.12g", v).c_str(), nullptr);
}

inline ordered_json json_point(Point p) {
  return ordered_json::array({json_real(p.x), json_real(p.y)});
}

inline std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string polygon_hash(const ConvexPolygon& poly) {
  std::string text;
  for (const Point& v : poly.vertices()) {
    text += detail::fmt("%.17g", v.x);
    text += ',';
    text += detail::fmt("%.17g", v.y);
    text += ';';
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

inline NamedPolygon parse_polygon(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::bad_input, std::string("polygon document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw Error(ErrorCode::bad_input, "polygon document needs a 'vertices' array");
  std::vector<Point> verts;
  for (const auto& item : doc["vertices"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
      throw Error(ErrorCode::bad_input, "each vertex must be a [x, y] number pair");
    verts.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  NamedPolygon out{validate_polygon(verts), "", false};
  out.reversed = out.polygon.reversed_from_cw();
  if (doc.contains("name") && doc["name"].is_string()) out.name = doc["name"].get<std::string>();
  return out;
}

inline NamedPolygon load_polygon(const std::string& path) {
  return parse_polygon(detail::read_file(path));
}

inline std::string polygon_document(const std::vector<Point>& vertices,
                                    const std::string& name) {
  ordered_json doc;
  if (!name.empty()) doc["name"] = name;
  auto arr = ordered_json::array();
  for (const Point& v : vertices) arr.push_back(ordered_json::array({v.x, v.y}));
  doc["vertices"] = std::move(arr);
  return doc.dump(2) + "\n";
}

// Terrain grid file: '#' header lines, then one `x y value` line per cell at
// %.9g, x ascending within a row, rows by y ascending, one blank line between
// rows.  Re-emitting a parsed file reproduces it byte for byte.
inline std::string terrain_text(const Terrain& t) {
  std::string out;
  out.reserve(t.values.size() * 32 + 256);
  out += "# fairfan terrain 1\n";
  out += "# window " + detail::fmt("%.17g", t.x0) + " " + detail::fmt("%.17g", t.y0) + " " +
         detail::fmt("%.17g", t.x1) + " " + detail::fmt("%.17g", t.y1) + "\n";
  out += "# res " + std::to_string(t.cols) + "x" + std::to_string(t.rows) + "\n";
  out += "# n " + (t.n_mode.asymptotic ? std::string("inf") : std::to_string(t.n_mode.n)) + "\n";
  out += "# K " + std::to_string(t.n_mode.mode.samples) + "\n";
  for (std::size_t r = 0; r < t.rows; ++r) {
    if (r > 0) out += "\n";
    for (std::size_t c = 0; c < t.cols; ++c) {
      Point p = t.cell_center(c, r);
      out += detail::grid_number(p.x);
      out += ' ';
      out += detail::grid_number(p.y);
      out += ' ';
      out += detail::grid_number(t.at(c, r));
      out += '\n';
    }
  }
  return out;
}

inline void save_terrain(const Terrain& t, const std::string& path) {
  detail::write_file(path, terrain_text(t));
}

inline Terrain parse_terrain(const std::string& text) {
  Terrain t;
  bool have_window = false, have_res = false, have_n = false;
  std::size_t samples = 0;
  bool asymptotic = false;
  std::size_t n = 0;

  std::istringstream in(text);
  std::string line;
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string key;
      h >> key;
      if (key == "window") {
        h >> t.x0 >> t.y0 >> t.x1 >> t.y1;
        have_window = static_cast<bool>(h);
      } else if (key == "res") {
        std::string spec;
        h >> spec;
        std::size_t x = spec.find('x');
        if (x == std::string::npos) throw IoError("malformed res header");
        t.cols = std::strtoull(spec.c_str(), nullptr, 10);
        t.rows = std::strtoull(spec.c_str() + x + 1, nullptr, 10);
        have_res = t.cols >= 2 && t.rows >= 2;
      } else if (key == "n") {
        std::string v;
        h >> v;
        if (v == "inf") {
          asymptotic = true;
        } else {
          n = std::strtoull(v.c_str(), nullptr, 10);
        }
        have_n = true;
      } else if (key == "K") {
        h >> samples;
      }
      continue;
    }
    const char* s = line.c_str();
    char* end = nullptr;
    std::strtod(s, &end);
    if (end == s) throw IoError("malformed terrain data line: " + line);
    s = end;
    std::strtod(s, &end);
    if (end == s) throw IoError("malformed terrain data line: " + line);
    s = end;
    double v = std::strtod(s, &end);
    if (end == s) throw IoError("malformed terrain data line: " + line);
    vals.push_back(v);
  }
  if (!have_window || !have_res || !have_n)
    throw IoError("terrain file is missing window/res/n headers");
  if (vals.size() != t.cols * t.rows)
    throw IoError("terrain file holds " + std::to_string(vals.size()) + " values, expected " +
                  std::to_string(t.cols * t.rows));
  t.n_mode = asymptotic ? NMode::infinite() : NMode::finite(n, EvalMode::sampled(samples));
  if (asymptotic) t.n_mode.mode.samples = samples;
  t.values = std::move(vals);
  return t;
}

inline Terrain load_terrain(const std::string& path) {
  return parse_terrain(detail::read_file(path));
}

inline ordered_json polygon_json(const NamedPolygon& np) {
  ordered_json j;
  j["name"] = np.name.empty() ? "unnamed" : np.name;
  j["hash"] = polygon_hash(np.polygon);
  j["vertex_count"] = np.polygon.size();
  j["area"] = json_real(np.polygon.area());
  j["perimeter"] = json_real(np.polygon.perimeter());
  if (np.reversed) j["reversed_from_cw"] = true;
  return j;
}

inline ordered_json minimum_json(const Minimum& m) {
  ordered_json j;
  j["location"] = json_point(m.location);
  j["value"] = json_real(m.value);
  j["kind"] = m.kind == Minimum::Kind::grid ? "grid" : "refined";
  if (m.basin_seed != Minimum::npos) j["basin_seed"] = m.basin_seed;
  return j;
}

inline ordered_json candidate_json(const Candidate& c, const char* kind) {
  ordered_json j;
  j["location"] = json_point(c.location);
  j["value"] = json_real(c.value);
  j["kind"] = kind;
  return j;
}

inline ordered_json fan_json(const Fan& fan) {
  ordered_json j;
  if (fan.origin.at_infinity) {
    j["origin"] = "infinity";
    j["direction"] = json_real(fan.origin.direction);
    auto offs = ordered_json::array();
    for (double o : fan.line_offsets) offs.push_back(json_real(o));
    j["line_offsets"] = std::move(offs);
  } else {
    j["origin"] = json_point(fan.origin.point);
    auto rays = ordered_json::array();
    for (double a : fan.ray_angles) rays.push_back(json_real(a));
    j["ray_angles"] = std::move(rays);
  }
  return j;
}

inline ordered_json partition_json(const FanPartition& part, bool include_vertices = true) {
  ordered_json j;
  j["fan"] = fan_json(part.fan);
  auto fr = ordered_json::array();
  for (double f : part.fractions) fr.push_back(json_real(f));
  j["fractions"] = std::move(fr);
  auto pieces = ordered_json::array();
  for (const Piece& p : part.pieces) {
    ordered_json pj;
    pj["area"] = json_real(p.area);
    pj["perimeter"] = json_real(p.perimeter);
    if (include_vertices) {
      auto vs = ordered_json::array();
      for (const Point& v : p.vertices) vs.push_back(json_point(v));
      pj["vertices"] = std::move(vs);
    }
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  j["fairness"] = json_real(fairness_ratio(part));
  return j;
}

inline ordered_json make_report(const std::string& command, const NamedPolygon& np) {
  ordered_json j;
  j["tool"] = "fairfan";
  j["version"] = kVersion;
  j["command"] = command;
  j["polygon"] = polygon_json(np);
  return j;
}

inline void save_report(const ordered_json& report, const std::string& path) {
  detail::write_file(path, report.dump(2) + "\n");
}

// Companion gnuplot script for a terrain file, with optional point overlays.
inline std::string gnuplot_script(const std::string& terrain_file, const std::string& title,
                                  const std::vector<std::pair<Point, std::string>>& marks,
                                  const std::string& png_file) {
  std::string s;
  s += "set terminal pngcairo size 1100,800\n";
  s += "set output '" + png_file + "'\n";
  s += "set title '" + title + "'\n";
  s += "set pm3d map\n";
  s += "set palette rgbformulae 33,13,10\n";
  s += "set xlabel 'x'\nset ylabel 'y'\n";
  if (!marks.empty()) {
    s += "$marks << EOD\n";
    for (const auto& [p, label] : marks) {
      s += detail::grid_number(p.x) + " " + detail::grid_number(p.y);
      s += label.empty() ? "" : " # " + label;
      s += "\n";
    }
    s += "EOD\n";
    s += "splot '" + terrain_file +
         "' using 1:2:3 notitle, $marks using 1:2:(0) with points pt 7 ps 1.3 lc rgb 'white' "
         "notitle\n";
  } else {
    s += "splot '" + terrain_file + "' using 1:2:3 notitle\n";
  }
  return s;
}

inline void save_text(const std::string& path, const std::string& text) {
  detail::write_file(path, text);
}

}  // namespace fairfan
