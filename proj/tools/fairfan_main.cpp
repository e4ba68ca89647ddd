// Command-line front end: polygon files in, values / partitions / terrain
// grids / reports out.  Exit codes: 0 success, 2 argument or validation
// error, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fairfan/fairfan.hpp>

namespace {

using namespace fairfan;

Point parse_point_arg(const std::string& text) {
  const char* s = text.c_str();
  char* end = nullptr;
  double x = std::strtod(s, &end);
  if (end == s || *end != ',') throw Error(ErrorCode::bad_input, "expected X,Y: " + text);
  s = end + 1;
  double y = std::strtod(s, &end);
  if (end == s || *end != '\0') throw Error(ErrorCode::bad_input, "expected X,Y: " + text);
  return {x, y};
}

struct Window {
  double x0, y0, x1, y1;
};

Window parse_window_arg(const std::string& text) {
  double v[4];
  const char* s = text.c_str();
  char* end = nullptr;
  for (int i = 0; i < 4; ++i) {
    v[i] = std::strtod(s, &end);
    if (end == s) throw Error(ErrorCode::bad_input, "expected x0,y0,x1,y1: " + text);
    s = end;
    if (i < 3) {
      if (*s != ',') throw Error(ErrorCode::bad_input, "expected x0,y0,x1,y1: " + text);
      ++s;
    }
  }
  if (*s != '\0') throw Error(ErrorCode::bad_input, "expected x0,y0,x1,y1: " + text);
  return {v[0], v[1], v[2], v[3]};
}

std::pair<std::size_t, std::size_t> parse_res_arg(const std::string& text) {
  std::size_t x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 == text.size())
    throw Error(ErrorCode::bad_input, "expected COLSxROWS: " + text);
  return {std::strtoull(text.c_str(), nullptr, 10),
          std::strtoull(text.c_str() + x + 1, nullptr, 10)};
}

std::vector<double> parse_fractions_arg(const std::string& text) {
  std::vector<double> out;
  const char* s = text.c_str();
  char* end = nullptr;
  while (true) {
    double v = std::strtod(s, &end);
    if (end == s) throw Error(ErrorCode::bad_input, "expected comma-separated fractions");
    out.push_back(v);
    s = end;
    if (*s == '\0') break;
    if (*s != ',') throw Error(ErrorCode::bad_input, "expected comma-separated fractions");
    ++s;
  }
  return out;
}

std::string value12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string num12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* class_name(PointClass c) {
  switch (c) {
    case PointClass::interior: return "interior";
    case PointClass::boundary: return "boundary";
    default: return "exterior";
  }
}

std::vector<Point> builtin_ellipse12() {
  std::vector<Point> v;
  for (int k = 0; k < 12; ++k) {
    double a = k * kPi / 6.0;
    v.push_back({8.0 * std::cos(a), 5.0 * std::sin(a)});
  }
  return v;
}

std::vector<Point> builtin_hexagon() {
  return {{0, 0}, {10, 0}, {11, 7}, {1, 12}, {-4, 10}, {-4, 4}};
}

std::vector<Point> builtin_triangle() { return {{0, 0}, {10, 0}, {5, 9.01042}}; }

EvalMode mode_from(const std::string& name, std::size_t samples) {
  if (name == "exact") return EvalMode::exact();
  if (name == "sampled") return EvalMode::sampled(samples);
  throw Error(ErrorCode::bad_input, "mode must be exact or sampled");
}

struct ScanArgs {
  std::string polygon_path;
  std::size_t n = 0;
  bool asymptotic = false;
  std::string window_text;
  std::string res_text = "160x120";
  std::size_t theta_samples = 32;

  NMode n_mode() const {
    if (asymptotic) return NMode::infinite();
    if (n == 0) throw Error(ErrorCode::bad_input, "--n is required unless --asymptotic");
    return NMode::finite(n, EvalMode::sampled(theta_samples));
  }

  Terrain scan(const NamedPolygon& np) const {
    if (window_text.empty()) throw Error(ErrorCode::bad_input, "--window is required");
    Window w = parse_window_arg(window_text);
    auto [cols, rows] = parse_res_arg(res_text);
    return scan_terrain(np.polygon, n_mode(), w.x0, w.y0, w.x1, w.y1, cols, rows);
  }
};

void add_scan_options(CLI::App* cmd, ScanArgs& a, bool window_required) {
  cmd->add_option("--polygon", a.polygon_path, "polygon JSON file")->required();
  cmd->add_option("--n", a.n, "number of pieces");
  cmd->add_flag("--asymptotic", a.asymptotic, "large-n limit instead of finite n");
  auto* w = cmd->add_option("--window", a.window_text, "window x0,y0,x1,y1");
  if (window_required) w->required();
  cmd->add_option("--res", a.res_text, "grid resolution COLSxROWS (default 160x120)");
  cmd->add_option("--theta-samples", a.theta_samples,
                  "theta samples per grid cell (default 32)");
}

ordered_json terrain_params_json(const Terrain& t) {
  ordered_json j;
  j["window"] = ordered_json::array(
      {json_real(t.x0), json_real(t.y0), json_real(t.x1), json_real(t.y1)});
  j["res"] = std::to_string(t.cols) + "x" + std::to_string(t.rows);
  if (t.n_mode.asymptotic) {
    j["n"] = "inf";
  } else {
    j["n"] = t.n_mode.n;
    j["theta_samples"] = t.n_mode.mode.samples;
  }
  return j;
}

int run_fvalue(const std::string& polygon_path, const std::string& point_text, std::size_t n,
               bool asymptotic, const std::string& mode_name, std::size_t samples,
               const std::string& out_path) {
  NamedPolygon np = load_polygon(polygon_path);
  Point p = parse_point_arg(point_text);
  ordered_json report = make_report("fvalue", np);
  report["point"] = json_point(p);

  if (asymptotic) {
    FairnessValue v = asymptotic_fairness(np.polygon, p);
    std::cout << value12(v) << "\n";
    std::cout << "class " << class_name(classify_point(np.polygon, p)) << "\n";
    report["asymptotic"] = true;
    report["value"] = json_real(v);
  } else {
    if (n == 0) throw Error(ErrorCode::bad_input, "--n is required unless --asymptotic");
    PointFairness pf = fairness_at_point(np.polygon, p, n, mode_from(mode_name, samples));
    std::cout << value12(pf.value) << "\n";
    std::cout << "class " << class_name(pf.origin_class) << "\n";
    std::cout << "theta " << num12(pf.theta) << "\n";
    report["n"] = n;
    report["mode"] = mode_name;
    if (mode_name == "sampled") report["theta_samples"] = samples;
    report["value"] = json_real(pf.value);
    report["theta"] = json_real(pf.theta);
    report["witness"] = fan_json(pf.witness);
  }
  if (!out_path.empty()) save_report(report, out_path);
  return 0;
}

int run_fan(const std::string& polygon_path, const std::string& point_text,
            const std::string& direction_text, std::size_t n, const std::string& fractions_text,
            const std::string& theta_text, const std::string& out_path) {
  NamedPolygon np = load_polygon(polygon_path);
  if (n == 0) throw Error(ErrorCode::bad_input, "--n is required");
  std::vector<double> fractions =
      fractions_text.empty() ? equal_fractions(n) : parse_fractions_arg(fractions_text);
  if (fractions.size() != n)
    throw Error(ErrorCode::bad_fractions, "fraction count must equal --n");

  FanPartition part;
  if (!direction_text.empty()) {
    part = parallel_fan(np.polygon, std::strtod(direction_text.c_str(), nullptr), fractions);
  } else {
    if (point_text.empty())
      throw Error(ErrorCode::bad_input, "--point or --direction is required");
    Point p = parse_point_arg(point_text);
    if (classify_point(np.polygon, p) == PointClass::interior) {
      double theta;
      if (theta_text.empty()) {
        theta = fairness_at_point(np.polygon, p, n, EvalMode::exact()).theta;
      } else {
        theta = std::strtod(theta_text.c_str(), nullptr);
      }
      auto maybe = interior_fan(np.polygon, p, fractions, theta);
      if (!maybe)
        throw Error(ErrorCode::bad_input,
                    "no convex fan with this theta (a wedge would exceed pi)");
      part = *maybe;
    } else {
      part = exterior_fan(np.polygon, p, fractions);
    }
  }

  ordered_json report = make_report("fan", np);
  report["n"] = n;
  report["partition"] = partition_json(part);
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    save_report(report, out_path);
    std::cout << "fairness " << num12(fairness_ratio(part)) << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int run_terrain(const ScanArgs& args, const std::string& out_path) {
  if (out_path.empty()) throw Error(ErrorCode::bad_input, "--out is required");
  NamedPolygon np = load_polygon(args.polygon_path);
  Terrain t = args.scan(np);
  save_terrain(t, out_path);
  double lo = kInfiniteFairness, hi = 0.0;
  std::size_t finite = 0;
  for (FairnessValue v : t.values) {
    if (v < kInfiniteFairness) {
      ++finite;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::cout << "wrote " << out_path << " (" << t.cols << "x" << t.rows << ", " << finite
            << " finite cells";
  if (finite > 0) std::cout << ", min " << num12(lo) << ", max " << num12(hi);
  std::cout << ")\n";
  return 0;
}

int run_minima(const ScanArgs& args, bool refine, const std::string& out_path) {
  NamedPolygon np = load_polygon(args.polygon_path);
  Terrain t = args.scan(np);
  std::vector<Minimum> grid = local_minima(t);
  std::vector<Minimum> result;
  if (refine) {
    double step = std::max(t.cell_width(), t.cell_height());
    for (const Minimum& m : grid)
      result.push_back(refine_minimum(np.polygon, t.n_mode, m.location, step, m.basin_seed));
  } else {
    result = grid;
  }
  for (const Minimum& m : result)
    std::cout << num12(m.location.x) << " " << num12(m.location.y) << " " << num12(m.value)
              << "\n";
  if (!out_path.empty()) {
    ordered_json report = make_report("minima", np);
    report["terrain"] = terrain_params_json(t);
    report["refined"] = refine;
    auto gj = ordered_json::array();
    for (const Minimum& m : grid) gj.push_back(minimum_json(m));
    report["grid_minima"] = std::move(gj);
    if (refine) {
      auto rj = ordered_json::array();
      for (const Minimum& m : result) rj.push_back(minimum_json(m));
      report["refined_minima"] = std::move(rj);
    }
    save_report(report, out_path);
  }
  return 0;
}

int run_best(const std::string& polygon_path, std::size_t n, const std::string& strategy_name,
             const std::string& out_path) {
  NamedPolygon np = load_polygon(polygon_path);
  if (n == 0) throw Error(ErrorCode::bad_input, "--n is required");
  Strategy strategy = Strategy::auto_mode;
  if (strategy_name == "scan") strategy = Strategy::scan;
  else if (strategy_name == "candidates") strategy = Strategy::candidates;
  else if (strategy_name != "auto")
    throw Error(ErrorCode::bad_input, "strategy must be scan, candidates, or auto");

  BestFan best = fairest_fan(np.polygon, n, strategy);
  std::cout << num12(best.minimum.location.x) << " " << num12(best.minimum.location.y) << " "
            << num12(best.minimum.value) << "\n";
  if (!out_path.empty()) {
    ordered_json report = make_report("best", np);
    report["n"] = n;
    report["strategy"] = strategy_name;
    report["minimum"] = minimum_json(best.minimum);
    report["partition"] = partition_json(best.partition);
    save_report(report, out_path);
  }
  return 0;
}

int run_perfect(const std::string& polygon_path, std::size_t n, const std::string& seed_text,
                double tol, const std::string& out_path) {
  NamedPolygon np = load_polygon(polygon_path);
  if (n == 0) throw Error(ErrorCode::bad_input, "--n is required");
  Point seed = parse_point_arg(seed_text);
  PerfectFan r = find_perfect_fan(np.polygon, n, seed, tol);
  std::cout << (r.found ? "found " : "not-found ") << num12(r.minimum.location.x) << " "
            << num12(r.minimum.location.y) << " " << num12(r.minimum.value) << "\n";
  if (!out_path.empty()) {
    ordered_json report = make_report("perfect", np);
    report["n"] = n;
    report["seed"] = json_point(seed);
    report["tol"] = json_real(tol);
    report["found"] = r.found;
    report["minimum"] = minimum_json(r.minimum);
    if (r.found) report["partition"] = partition_json(r.partition);
    save_report(report, out_path);
  }
  return 0;
}

int run_candidates(const std::string& polygon_path, const std::string& out_path) {
  NamedPolygon np = load_polygon(polygon_path);
  CandidateSet cs = asymptotic_candidates(np.polygon);
  auto line = [](const char* kind, const Candidate& c) {
    std::cout << kind << " " << num12(c.location.x) << " " << num12(c.location.y) << " "
              << num12(c.value) << "\n";
  };
  for (const Candidate& c : cs.vertices) line("vertex", c);
  for (const Candidate& c : cs.edge_midpoints) line("edge-midpoint", c);
  for (const Candidate& c : cs.exterior_intersections) line("exterior-intersection", c);
  line("interior-minimum", cs.interior_minimum);
  if (!out_path.empty()) {
    ordered_json report = make_report("candidates", np);
    auto arr = ordered_json::array();
    for (const Candidate& c : cs.vertices) arr.push_back(candidate_json(c, "vertex"));
    for (const Candidate& c : cs.edge_midpoints)
      arr.push_back(candidate_json(c, "edge-midpoint"));
    for (const Candidate& c : cs.exterior_intersections)
      arr.push_back(candidate_json(c, "exterior-intersection"));
    arr.push_back(candidate_json(cs.interior_minimum, "interior-minimum"));
    report["candidates"] = std::move(arr);
    save_report(report, out_path);
  }
  return 0;
}

struct FigureRecipe {
  std::string id;
  std::string polygon_name;
  std::vector<Point> vertices;
  bool asymptotic = false;
  std::size_t n = 0;
  Window window;
  std::size_t cols = 0, rows = 0;
  std::size_t K = 32;
  bool perfect_search = false;
  Point perfect_seed;
};

FigureRecipe figure_recipe(const std::string& id) {
  if (id == "fig1a")
    return {id, "ellipse12", builtin_ellipse12(), false, 3, {-12, -9, 12, 9}, 160, 120, 32};
  if (id == "fig1b")
    return {id, "ellipse12", builtin_ellipse12(), false, 10, {-12, -9, 12, 9}, 160, 120, 32};
  if (id == "fig1c")
    return {id, "ellipse12", builtin_ellipse12(), false, 100, {-12, -9, 12, 9}, 80, 60, 24};
  if (id == "fig2a")
    return {id, "hexagon", builtin_hexagon(), false, 700, {-20, -15, 25, 25}, 80, 72, 16};
  if (id == "fig2b")
    return {id, "hexagon", builtin_hexagon(), false, 700, {-6, -2, 13, 14}, 80, 72, 16};
  if (id == "fig3")
    return {id,   "triangle", builtin_triangle(), false, 6, {0, 6, 10, 11}, 100, 50,
            32,   true,       {5, 9.3}};
  throw Error(ErrorCode::bad_input,
              "unknown figure id (use fig1a, fig1b, fig1c, fig2a, fig2b, fig3)");
}

int run_reproduce(const std::string& figure_id, const std::string& out_dir) {
  FigureRecipe fig = figure_recipe(figure_id);
  std::string base = out_dir.empty() ? fig.id : out_dir + "/" + fig.id;

  std::string polygon_path = base + "_polygon.json";
  save_text(polygon_path, polygon_document(fig.vertices, fig.polygon_name));
  NamedPolygon np = load_polygon(polygon_path);

  NMode nm = fig.asymptotic ? NMode::infinite() : NMode::finite(fig.n, EvalMode::sampled(fig.K));
  Terrain t = scan_terrain(np.polygon, nm, fig.window.x0, fig.window.y0, fig.window.x1,
                           fig.window.y1, fig.cols, fig.rows);
  std::string terrain_path = base + "_terrain.dat";
  save_terrain(t, terrain_path);

  std::vector<Minimum> grid = local_minima(t);
  double step = std::max(t.cell_width(), t.cell_height());
  std::vector<Minimum> refined;
  for (const Minimum& m : grid)
    refined.push_back(refine_minimum(np.polygon, nm, m.location, step, m.basin_seed));

  ordered_json report = make_report("reproduce", np);
  report["figure"] = fig.id;
  report["terrain"] = terrain_params_json(t);
  report["terrain_file"] = terrain_path;
  auto gj = ordered_json::array();
  for (const Minimum& m : grid) gj.push_back(minimum_json(m));
  report["grid_minima"] = std::move(gj);
  auto rj = ordered_json::array();
  for (const Minimum& m : refined) rj.push_back(minimum_json(m));
  report["refined_minima"] = std::move(rj);

  std::vector<std::pair<Point, std::string>> marks;
  for (const Minimum& m : refined) marks.push_back({m.location, "minimum"});

  if (fig.n >= 100 || fig.asymptotic) {
    CandidateSet cs = asymptotic_candidates(np.polygon);
    auto arr = ordered_json::array();
    for (const Candidate& c : cs.vertices) arr.push_back(candidate_json(c, "vertex"));
    for (const Candidate& c : cs.edge_midpoints)
      arr.push_back(candidate_json(c, "edge-midpoint"));
    for (const Candidate& c : cs.exterior_intersections)
      arr.push_back(candidate_json(c, "exterior-intersection"));
    arr.push_back(candidate_json(cs.interior_minimum, "interior-minimum"));
    report["candidates"] = std::move(arr);
  }
  if (fig.perfect_search) {
    PerfectFan r = find_perfect_fan(np.polygon, fig.n, fig.perfect_seed, 1e-3);
    ordered_json pj;
    pj["seed"] = json_point(fig.perfect_seed);
    pj["found"] = r.found;
    pj["minimum"] = minimum_json(r.minimum);
    if (r.found) {
      pj["partition"] = partition_json(r.partition);
      marks.push_back({r.minimum.location, "perfect origin"});
    }
    report["perfect_fan"] = std::move(pj);
  }

  std::string report_path = base + "_report.json";
  save_report(report, report_path);
  std::string plot_path = base + "_plot.gp";
  save_text(plot_path,
            gnuplot_script(terrain_path, fig.id, marks, base + ".png"));

  std::cout << "wrote " << polygon_path << "\n";
  std::cout << "wrote " << terrain_path << "\n";
  std::cout << "wrote " << report_path << "\n";
  std::cout << "wrote " << plot_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairness of convex fan equipartitions of convex polygons"};
  app.set_version_flag("--version", fairfan::kVersion);
  app.require_subcommand(1);
  int rc = 0;

  // fvalue
  std::string fv_polygon, fv_point, fv_mode = "sampled", fv_out;
  std::size_t fv_n = 0, fv_samples = 32;
  bool fv_asym = false;
  auto* fvalue = app.add_subcommand("fvalue", "fairness value at a point");
  fvalue->add_option("--polygon", fv_polygon)->required();
  fvalue->add_option("--point", fv_point, "origin X,Y")->required();
  fvalue->add_option("--n", fv_n, "number of pieces");
  fvalue->add_flag("--asymptotic", fv_asym, "large-n limit");
  fvalue->add_option("--mode", fv_mode, "exact or sampled (default sampled)");
  fvalue->add_option("--theta-samples", fv_samples);
  fvalue->add_option("--out", fv_out, "write a JSON report here");
  fvalue->callback([&] {
    rc = run_fvalue(fv_polygon, fv_point, fv_n, fv_asym, fv_mode, fv_samples, fv_out);
  });

  // fan
  std::string fn_polygon, fn_point, fn_direction, fn_fractions, fn_theta, fn_out;
  std::size_t fn_n = 0;
  auto* fan = app.add_subcommand("fan", "construct an equal-area fan partition");
  fan->add_option("--polygon", fn_polygon)->required();
  fan->add_option("--point", fn_point, "finite origin X,Y");
  fan->add_option("--direction", fn_direction, "fan at infinity with this cut direction");
  fan->add_option("--n", fn_n)->required();
  fan->add_option("--fractions", fn_fractions, "comma-separated area fractions");
  fan->add_option("--theta", fn_theta, "first ray angle (interior origins)");
  fan->add_option("--out", fn_out);
  fan->callback([&] {
    rc = run_fan(fn_polygon, fn_point, fn_direction, fn_n, fn_fractions, fn_theta, fn_out);
  });

  // terrain
  ScanArgs tr_args;
  std::string tr_out;
  auto* terrain = app.add_subcommand("terrain", "scan a fairness terrain to a grid file");
  add_scan_options(terrain, tr_args, true);
  terrain->add_option("--out", tr_out)->required();
  terrain->callback([&] { rc = run_terrain(tr_args, tr_out); });

  // minima
  ScanArgs mn_args;
  std::string mn_out;
  bool mn_no_refine = false;
  auto* minima = app.add_subcommand("minima", "detect and refine terrain local minima");
  add_scan_options(minima, mn_args, true);
  minima->add_flag("--no-refine", mn_no_refine, "report grid-level minima only");
  minima->add_option("--out", mn_out);
  minima->callback([&] { rc = run_minima(mn_args, !mn_no_refine, mn_out); });

  // best
  std::string bs_polygon, bs_strategy = "auto", bs_out;
  std::size_t bs_n = 0;
  auto* best = app.add_subcommand("best", "global fairest fan");
  best->add_option("--polygon", bs_polygon)->required();
  best->add_option("--n", bs_n)->required();
  best->add_option("--strategy", bs_strategy, "scan, candidates, or auto");
  best->add_option("--out", bs_out);
  best->callback([&] { rc = run_best(bs_polygon, bs_n, bs_strategy, bs_out); });

  // perfect
  std::string pf_polygon, pf_seed, pf_out;
  std::size_t pf_n = 0;
  double pf_tol = 1e-3;
  auto* perfect = app.add_subcommand("perfect", "search for a perfectly fair fan");
  perfect->add_option("--polygon", pf_polygon)->required();
  perfect->add_option("--n", pf_n)->required();
  perfect->add_option("--seed", pf_seed, "search start X,Y")->required();
  perfect->add_option("--tol", pf_tol, "acceptance tolerance (default 1e-3)");
  perfect->add_option("--out", pf_out);
  perfect->callback([&] { rc = run_perfect(pf_polygon, pf_n, pf_seed, pf_tol, pf_out); });

  // candidates
  std::string cd_polygon, cd_out;
  auto* candidates = app.add_subcommand("candidates", "large-n candidate origins");
  candidates->add_option("--polygon", cd_polygon)->required();
  candidates->add_option("--out", cd_out);
  candidates->callback([&] { rc = run_candidates(cd_polygon, cd_out); });

  // reproduce
  std::string rp_figure, rp_outdir;
  auto* reproduce = app.add_subcommand("reproduce", "regenerate a known figure's artifacts");
  reproduce->add_option("--figure", rp_figure, "fig1a, fig1b, fig1c, fig2a, fig2b, or fig3")
      ->required();
  reproduce->add_option("--outdir", rp_outdir, "output directory (default current)");
  reproduce->callback([&] { rc = run_reproduce(rp_figure, rp_outdir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fairfan::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fairfan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
