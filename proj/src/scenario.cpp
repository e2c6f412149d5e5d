#include "alexandrov/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>

#include "alexandrov/angles.hpp"
#include "alexandrov/comparison.hpp"
#include "alexandrov/cube_surface.hpp"
#include "alexandrov/metric_graph.hpp"
#include "alexandrov/model_spaces.hpp"
#include "alexandrov/spaces.hpp"
#include "alexandrov/variation.hpp"

namespace alexandrov {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kConfigVersion = 1;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// JSON has no infinities or NaN.
ojson num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

ojson point_json(const Point& p) { return ojson::array({num(p.x), num(p.y), num(p.z)}); }

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ScenarioError(where + ": " + what);
}

// Typed access to one JSON object of the config.
class Params {
 public:
  Params(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) bad(where_, "expected an object");
  }

  const std::string& where() const { return where_; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) const {
    if (!has(key)) bad(where_, "missing \"" + key + "\"");
    return j_.at(key);
  }

  double number(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number()) bad(where_, "\"" + key + "\" must be a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  long long integer(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number_integer()) bad(where_, "\"" + key + "\" must be an integer");
    return v.get<long long>();
  }
  long long integer(const std::string& key, long long fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  std::string string(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_string()) bad(where_, "\"" + key + "\" must be a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) const {
    return has(key) ? string(key) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) bad(where_, "\"" + key + "\" must be true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array()) bad(where_, "\"" + key + "\" must be an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) bad(where_, "\"" + key + "\" must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Params object(const std::string& key) const { return Params(raw(key), where_ + "." + key); }

 private:
  const json& j_;
  std::string where_;
};

struct Context {
  SpaceHandle space;
  std::map<std::string, SampledPath> paths;
  std::map<std::string, CompactSet> sets;
  std::uint64_t seed = 0;
  fs::path base_dir;

  const ModelSpace* model() const { return dynamic_cast<const ModelSpace*>(space.get()); }

  const SampledPath& path(const Params& p, const std::string& key) const {
    const std::string name = p.string(key);
    auto it = paths.find(name);
    if (it == paths.end()) bad(p.where(), "unknown path \"" + name + "\"");
    return it->second;
  }
  const CompactSet& set(const Params& p, const std::string& key) const {
    const std::string name = p.string(key);
    auto it = sets.find(name);
    if (it == sets.end()) bad(p.where(), "unknown set \"" + name + "\"");
    return it->second;
  }
};

// Model-space points: [x, y] (lifted for k < 0), [x, y, z] (normalized for
// k > 0) or {"polar": [azimuth, r]} around the chart origin.
ModelPoint model_point(const json& v, const Curvature& k, const std::string& where) {
  if (v.is_object()) {
    Params p(v, where);
    const auto polar = p.numbers("polar");
    if (polar.size() != 2) bad(where, "\"polar\" takes [azimuth, r]");
    return model_exp(model_origin(k), polar[0], polar[1], k);
  }
  if (!v.is_array() || v.size() < 2 || v.size() > 3) bad(where, "a point is [x, y] or [x, y, z]");
  std::vector<double> c;
  for (const json& e : v) {
    if (!e.is_number()) bad(where, "point coordinates must be numbers");
    c.push_back(e.get<double>());
  }
  switch (chart_for(k)) {
    case Chart::plane:
      return plane_point(c[0], c[1]);
    case Chart::sphere:
      if (c.size() != 3) bad(where, "sphere points take three coordinates");
      return sphere_point(c[0], c[1], c[2]);
    case Chart::hyperboloid:
      if (c.size() == 2) return hyperboloid_point(c[0], c[1]);
      return ModelPoint{Chart::hyperboloid, {c[0], c[1], c[2]}};
  }
  bad(where, "unsupported chart");
}

Point space_point(const json& v, const Context& ctx, const std::string& where) {
  if (const ModelSpace* m = ctx.model()) return model_point(v, m->curvature(), where).coords;
  if (!v.is_array() || v.size() < 2 || v.size() > 3) bad(where, "a point is [x, y] or [x, y, z]");
  double c[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) bad(where, "point coordinates must be numbers");
    c[i] = v[i].get<double>();
  }
  return {c[0], c[1], c[2]};
}

Point space_point(const Params& p, const std::string& key, const Context& ctx) {
  return space_point(p.raw(key), ctx, p.where() + "." + key);
}

Curvature curvature_param(const Params& p, const Context& ctx, const std::string& key = "k") {
  if (p.has(key)) return Curvature(p.number(key));
  if (const ModelSpace* m = ctx.model()) return m->curvature();
  return Curvature(0.0);
}

std::optional<GridSchedule> grid_param(const Params& p) {
  if (!p.has("grid")) return std::nullopt;
  const Params g = p.object("grid");
  GridSchedule grid;
  grid.eps0 = g.number("eps0", grid.eps0);
  grid.factor = g.number("factor", grid.factor);
  grid.levels = static_cast<int>(g.integer("levels", grid.levels));
  grid.samples_per_level = static_cast<int>(g.integer("samples_per_level", grid.samples_per_level));
  grid.span = g.number("span", grid.span);
  const std::string spacing = g.string("spacing", "geometric");
  if (spacing == "geometric") {
    grid.spacing = GridSpacing::geometric;
  } else if (spacing == "uniform") {
    grid.spacing = GridSpacing::uniform;
  } else {
    bad(g.where(), "spacing is \"geometric\" or \"uniform\"");
  }
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    bad(g.where(), e.what());
  }
  return grid;
}

double extent(const SampledPath& path) { return path.t_end() - path.t_begin(); }

GridSchedule grid_for(const Params& p, std::initializer_list<const SampledPath*> paths) {
  if (auto g = grid_param(p)) return *g;
  double shortest = std::numeric_limits<double>::infinity();
  for (const SampledPath* path : paths) shortest = std::min(shortest, extent(*path));
  return GridSchedule::for_paths(shortest);
}

TriangleSides sides_param(const Params& p) {
  const auto s = p.numbers("sides");
  if (s.size() != 3) bad(p.where(), "\"sides\" takes [a, b, c]");
  return {s[0], s[1], s[2]};
}

Side side_param(const Params& p, const std::string& key) {
  const std::string s = p.string(key);
  if (s == "xy") return Side::xy;
  if (s == "xz") return Side::xz;
  if (s == "yz") return Side::yz;
  bad(p.where(), "\"" + key + "\" is one of xy, xz, yz");
}

std::string to_string(Side s) {
  switch (s) {
    case Side::xy:
      return "xy";
    case Side::xz:
      return "xz";
    case Side::yz:
      return "yz";
  }
  return "?";
}

std::string to_string(Monotone m) {
  switch (m) {
    case Monotone::nondecreasing:
      return "nondecreasing";
    case Monotone::nonincreasing:
      return "nonincreasing";
    case Monotone::constant:
      return "constant";
  }
  return "?";
}

std::string to_string(Admissibility a) {
  switch (a) {
    case Admissibility::strict:
      return "strict";
    case Admissibility::loose:
      return "loose";
    case Admissibility::inadmissible:
      return "inadmissible";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Space, paths and sets

SpaceHandle build_space(const Params& p, const fs::path& base_dir) {
  const std::string kind = p.string("kind");
  if (kind == "model") return model_space(p.number("k"));
  if (kind == "taxicab") return taxicab_plane();
  if (kind == "cube_surface") {
    return build_cube_surface(p.number("edge", 1.0), static_cast<int>(p.integer("level")));
  }
  if (kind == "metric_graph") {
    const fs::path file = base_dir / p.string("file");
    std::ifstream in(file);
    if (!in) bad(p.where(), "cannot open graph file " + file.string());
    try {
      return graph_space(MetricGraph::read(in));
    } catch (const std::exception& e) {
      bad(p.where(), std::string("bad graph file: ") + e.what());
    }
  }
  bad(p.where(), "unknown space kind \"" + kind + "\"");
}

SampledPath build_path(const Params& p, const Context& ctx) {
  const std::string type = p.string("type");
  const SpaceHandle& space = ctx.space;
  const double resolution = p.number("resolution", 1.0 / 64.0);

  if (type == "ray" || type == "meridian") {
    const ModelSpace* m = ctx.model();
    if (!m) bad(p.where(), type + " paths need a model space");
    const Curvature k = m->curvature();
    if (type == "meridian" && k.value() <= 0.0) bad(p.where(), "meridians need k > 0");
    const ModelPoint from =
        p.has("from") ? model_point(p.raw("from"), k, p.where() + ".from") : model_origin(k);
    const double azimuth = p.number(type == "ray" ? "azimuth" : "longitude");
    const ModelPoint to = model_exp(from, azimuth, p.number("length"), k);
    return shortest_path(space, from.coords, to.coords, resolution);
  }
  if (type == "equator") {
    const ModelSpace* m = ctx.model();
    if (!m || m->curvature().value() <= 0.0) bad(p.where(), "equator paths need k > 0");
    const double scale = m->curvature().scale();
    const double phi0 = p.number("from_longitude", 0.0);
    const double length = p.number("length");
    const double dir = p.number("direction", 1.0) < 0.0 ? -1.0 : 1.0;
    if (!(length > 0.0)) bad(p.where(), "\"length\" must be positive");
    const int n = std::max(2, static_cast<int>(std::ceil(length / resolution)) + 1);
    std::vector<PathSample> samples;
    for (int i = 0; i < n; ++i) {
      const double t = length * i / (n - 1);
      const double phi = phi0 + dir * t * scale;
      samples.push_back({t, {std::cos(phi), std::sin(phi), 0.0}});
    }
    return SampledPath(space, std::move(samples));
  }
  if (type == "geodesic") {
    const auto reps = shortest_paths(space, space_point(p, "from", ctx), space_point(p, "to", ctx),
                                     resolution);
    const auto index = static_cast<std::size_t>(p.integer("representative", 0));
    if (index >= reps.size()) bad(p.where(), "the space exposes only " + std::to_string(reps.size()) +
                                                 " shortest paths here");
    return reps[index];
  }
  if (type == "polyline") {
    const json& pts = p.raw("points");
    if (!pts.is_array() || pts.size() < 2) bad(p.where(), "\"points\" needs at least two points");
    std::vector<Point> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      points.push_back(space_point(pts[i], ctx, p.where() + ".points[" + std::to_string(i) + "]"));
    }
    return arc_length_reparam(path_through(space, points));
  }
  if (type == "taxicab_diag" || type == "taxicab_axis") {
    if (space->kind() != "taxicab") bad(p.where(), type + " paths need the taxicab plane");
    const Point from = p.has("from") ? space_point(p, "from", ctx) : Point{};
    const double length = p.number("length", 1.0);
    Point dir;
    if (type == "taxicab_diag") {
      // Unit speed in l1: each coordinate moves at 1/2.
      const auto signs = p.has("direction") ? p.numbers("direction") : std::vector<double>{1, 1};
      if (signs.size() != 2) bad(p.where(), "\"direction\" takes two signs");
      dir = {signs[0] < 0 ? -0.5 : 0.5, signs[1] < 0 ? -0.5 : 0.5, 0.0};
    } else {
      const std::string axis = p.string("axis", "x");
      const double sign = p.number("sign", 1.0) < 0.0 ? -1.0 : 1.0;
      if (axis == "x") {
        dir = {sign, 0.0, 0.0};
      } else if (axis == "y") {
        dir = {0.0, sign, 0.0};
      } else {
        bad(p.where(), "\"axis\" is x or y");
      }
    }
    return SampledPath(space, {{0.0, from}, {length, from + dir * length}});
  }
  if (type == "samples") {
    const json& rows = p.raw("samples");
    if (!rows.is_array()) bad(p.where(), "\"samples\" must be an array of [t, x, y(, z)]");
    std::vector<PathSample> samples;
    for (const json& row : rows) {
      if (!row.is_array() || row.size() < 3 || !row[0].is_number()) {
        bad(p.where(), "\"samples\" must be an array of [t, x, y(, z)]");
      }
      json coords = json::array();
      for (std::size_t i = 1; i < row.size(); ++i) coords.push_back(row[i]);
      samples.push_back({row[0].get<double>(), space_point(coords, ctx, p.where())});
    }
    return SampledPath(space, std::move(samples));
  }
  if (type == "piece") {
    const SampledPath& of = ctx.path(p, "of");
    return of.piece(p.number("from"), p.number("to"));
  }
  bad(p.where(), "unknown path type \"" + type + "\"");
}

CompactSet build_set(const Params& p, const Context& ctx) {
  const json& pts = p.raw("points");
  if (!pts.is_array() || pts.empty()) bad(p.where(), "\"points\" must be a nonempty array");
  std::vector<SetPoint> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = p.where() + ".points[" + std::to_string(i) + "]";
    if (pts[i].is_object() && pts[i].contains("id")) {
      Params sp(pts[i], where);
      points.push_back({static_cast<std::size_t>(sp.integer("id")), space_point(sp, "at", ctx)});
    } else {
      points.push_back({i, space_point(pts[i], ctx, where)});
    }
  }
  return CompactSet(ctx.space, std::move(points), p.number("net_spacing", 0.0));
}

// ---------------------------------------------------------------------------
// Operations

struct Outcome {
  ojson payload = ojson::object();
  double value = kNaN;
  double error_bound = 0.0;
  std::optional<bool> verdict;  // the operation's own pass/fail, if it has one
  std::vector<Table> tables;
};

Table level_table(const std::string& file, const std::vector<LevelBracket>& levels) {
  Table t{file, {"eps", "sup", "inf"}, {}};
  for (const auto& l : levels) t.rows.push_back({l.eps, l.sup, l.inf});
  return t;
}

ojson estimate_json(const AngleEstimate& e) {
  return {{"upper", num(e.upper)},
          {"lower", num(e.lower)},
          {"error_bound", num(e.error_bound)},
          {"k", num(e.k_used)},
          {"levels", e.per_level.size()}};
}

Outcome op_diameter(const Params& p, Context& ctx) {
  Outcome o;
  const Curvature k = curvature_param(p, ctx);
  o.value = diameter(k);
  o.payload = {{"k", k.value()}, {"value", num(o.value)}};
  return o;
}

Outcome op_model_distance(const Params& p, Context& ctx) {
  Outcome o;
  const Curvature k = curvature_param(p, ctx);
  const ModelPoint a = model_point(p.raw("p"), k, p.where() + ".p");
  const ModelPoint b = model_point(p.raw("q"), k, p.where() + ".q");
  o.value = model_distance(a, b, k);
  o.payload = {{"value", num(o.value)}, {"reverse", num(model_distance(b, a, k))}};
  return o;
}

Outcome op_geodesic_point(const Params& p, Context& ctx) {
  Outcome o;
  const Curvature k = curvature_param(p, ctx);
  const ModelPoint a = model_point(p.raw("p"), k, p.where() + ".p");
  const ModelPoint b = model_point(p.raw("q"), k, p.where() + ".q");
  const double s = p.number("s");
  const ModelPoint m = geodesic_point(a, b, s, k);
  const double total = model_distance(a, b, k);
  const double from_p = model_distance(a, m, k);
  const double to_q = model_distance(m, b, k);
  o.value = from_p;
  o.error_bound = 1e-10;
  o.verdict = std::abs(from_p - s) <= 1e-10 && std::abs(to_q - (total - s)) <= 1e-10;
  o.payload = {{"point", point_json(m.coords)}, {"from_p", num(from_p)}, {"to_q", num(to_q)}};
  return o;
}

Outcome op_vertex_angle(const Params& p, Context& ctx) {
  Outcome o;
  const Curvature k = curvature_param(p, ctx);
  const ModelPoint a = model_point(p.raw("a"), k, p.where() + ".a");
  const ModelPoint b = model_point(p.raw("b"), k, p.where() + ".b");
  const ModelPoint c = model_point(p.raw("c"), k, p.where() + ".c");
  o.value = vertex_angle(a, b, c, k);
  const double cmp = comparison_angle(
      {model_distance(a, b, k), model_distance(a, c, k), model_distance(b, c, k)}, k);
  o.error_bound = kAngleTolerance;
  o.verdict = std::abs(o.value - cmp) <= kAngleTolerance;
  o.payload = {{"value", num(o.value)}, {"comparison_angle", num(cmp)},
               {"deviation", num(std::abs(o.value - cmp))}};
  return o;
}

Outcome op_comparison_angle(const Params& p, Context& ctx) {
  Outcome o;
  const Curvature k = curvature_param(p, ctx);
  const TriangleSides sides = sides_param(p);
  o.value = comparison_angle(sides, k);
  o.error_bound = kAngleTolerance;
  o.payload = {{"value", num(o.value)}, {"admissibility", to_string(admissibility(sides, k))}};
  return o;
}

Outcome op_embed_triangle(const Params& p, Context& ctx) {
  Outcome o;
  const Curvature k = curvature_param(p, ctx);
  const ComparisonTriangle tri = embed_triangle(sides_param(p), k);
  const auto& v = tri.vertices;
  const double err = std::max({std::abs(model_distance(v[0], v[1], k) - tri.sides.a),
                               std::abs(model_distance(v[0], v[2], k) - tri.sides.b),
                               std::abs(model_distance(v[1], v[2], k) - tri.sides.c)});
  o.value = err;
  o.error_bound = 1e-10;
  o.verdict = err <= 1e-10;
  o.payload = {{"vertices", ojson::array({point_json(v[0].coords), point_json(v[1].coords),
                                          point_json(v[2].coords)})},
               {"realization_error", num(err)},
               {"beyond_strict_bound", tri.beyond_strict_bound}};
  return o;
}

Outcome op_comparison_point(const Params& p, Context& ctx) {
  Outcome o;
  const Curvature k = curvature_param(p, ctx);
  const ComparisonTriangle tri = embed_triangle(sides_param(p), k);
  const Side side = side_param(p, "side");
  const double s = p.number("s");
  const ModelPoint m = comparison_point(tri, side, s);
  const int first = side == Side::yz ? 1 : 0;
  const int second = side == Side::xy ? 1 : 2;
  const double from_first = model_distance(tri.vertices[first], m, k);
  const double from_second = model_distance(tri.vertices[second], m, k);
  o.value = from_first;
  o.error_bound = 1e-10;
  o.verdict = std::abs(from_first - s) <= 1e-10 &&
              std::abs(from_second - (tri.side_length(side) - s)) <= 1e-10;
  o.payload = {{"point", point_json(m.coords)},
               {"from_first", num(from_first)},
               {"from_second", num(from_second)}};
  return o;
}

Outcome op_distance(const Params& p, Context& ctx) {
  Outcome o;
  const Point a = space_point(p, "p", ctx);
  const Point b = space_point(p, "q", ctx);
  o.value = ctx.space->distance(a, b);
  o.error_bound = ctx.space->certified_error();
  o.payload = {{"value", num(o.value)},
               {"certified_error", num(o.error_bound)},
               {"snap_p", num(ctx.space->snap_distance(a))},
               {"snap_q", num(ctx.space->snap_distance(b))}};
  return o;
}

Outcome op_path_length(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& path = ctx.path(p, "path");
  o.value = path_length(path);
  o.payload = {{"value", num(o.value)}, {"samples", path.size()}};
  return o;
}

Outcome op_arc_length_reparam(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath path = arc_length_reparam(ctx.path(p, "path"));
  double worst = 0.0;
  const auto& s = path.samples();
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double step = s[i].t - s[i - 1].t;
    worst = std::max(worst, std::abs(step - path.space()->distance(s[i - 1].point, s[i].point)));
  }
  o.value = path.t_end();
  o.error_bound = 1e-12 * std::max(1.0, o.value);
  o.verdict = worst <= o.error_bound;
  o.payload = {{"length", num(o.value)}, {"max_speed_deviation", num(worst)},
               {"samples", path.size()}};
  return o;
}

Outcome op_shortest_path(const Params& p, Context& ctx) {
  Outcome o;
  const Point a = space_point(p, "p", ctx);
  const Point b = space_point(p, "q", ctx);
  const double resolution = p.number("resolution", 1.0 / 64.0);
  const auto reps = shortest_paths(ctx.space, a, b, resolution,
                                   static_cast<std::size_t>(p.integer("max_count", 16)));
  const double d = ctx.space->distance(a, b);
  const double len = path_length(reps.front());
  o.value = len;
  o.error_bound = ctx.space->certified_error();
  const double excess = len - d;
  const double slack = 1e-9 * std::max(1.0, d);
  o.verdict = excess >= -slack && excess <= o.error_bound + slack;
  o.payload = {{"length", num(len)},
               {"distance", num(d)},
               {"excess", num(excess)},
               {"representatives", reps.size()},
               {"polyline_vertices", ctx.space->geodesic(a, b).size()}};
  return o;
}

Outcome op_build_cube_surface(const Params& p, Context& ctx) {
  Outcome o;
  const double edge = p.number("edge", 1.0);
  const CubeSurface cube(edge, static_cast<int>(p.integer("level")));
  o.error_bound = cube.certified_error();
  o.payload = {{"vertex_count", cube.vertex_count()}, {"certified_error", num(o.error_bound)}};
  if (p.has("p") && p.has("q")) {
    o.value = cube.distance(space_point(p, "p", ctx), space_point(p, "q", ctx));
    o.payload["distance"] = num(o.value);
  } else {
    o.value = static_cast<double>(cube.vertex_count());
  }
  return o;
}

// Distances per refinement level for each pair; passes when they never
// decrease and, from `from_level` on, each gap is at most half the previous.
Outcome op_cube_refinement(const Params& p, Context& ctx) {
  Outcome o;
  const double edge = p.number("edge", 1.0);
  const int lo = static_cast<int>(p.integer("min_level", 0));
  const int hi = static_cast<int>(p.integer("max_level", 8));
  const int from = static_cast<int>(p.integer("from_level", 3));
  if (lo < 0 || hi <= lo) bad(p.where(), "need 0 <= min_level < max_level");
  const json& pairs = p.raw("pairs");
  if (!pairs.is_array() || pairs.empty()) bad(p.where(), "\"pairs\" must list [p, q] pairs");

  Table table{"refinement.csv", {"pair", "level", "distance", "gap", "certified_error"}, {}};
  bool nondecreasing = true;
  bool halving = true;
  double worst_drop = 0.0;
  double worst_ratio = 0.0;  // largest gap_{L+1} / gap_L from `from` on
  double final_gap = 0.0;
  ojson per_pair = ojson::array();
  std::vector<SpaceHandle> cubes;
  for (int level = lo; level <= hi; ++level) cubes.push_back(build_cube_surface(edge, level));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string where = p.where() + ".pairs[" + std::to_string(i) + "]";
    if (!pairs[i].is_array() || pairs[i].size() != 2) bad(where, "a pair is [p, q]");
    const Point a = space_point(pairs[i][0], ctx, where);
    const Point b = space_point(pairs[i][1], ctx, where);
    std::vector<double> d;
    for (const auto& cube : cubes) d.push_back(cube->distance(a, b));
    std::vector<double> gaps;
    for (std::size_t j = 0; j < d.size(); ++j) {
      const double gap = j == 0 ? kNaN : d[j] - d[j - 1];
      if (j > 0) {
        gaps.push_back(std::abs(gap));
        if (gap < -1e-12) {
          nondecreasing = false;
          worst_drop = std::max(worst_drop, -gap);
        }
      }
      table.rows.push_back({static_cast<double>(i), static_cast<double>(lo + j), d[j], gap,
                            cubes[j]->certified_error()});
    }
    // gaps[j] is the step from level lo + j to lo + j + 1.
    for (std::size_t j = 1; j < gaps.size(); ++j) {
      if (lo + static_cast<int>(j) - 1 < from) continue;
      if (gaps[j] > 0.5 * gaps[j - 1] + 1e-15) halving = false;
      if (gaps[j - 1] > 0.0) worst_ratio = std::max(worst_ratio, gaps[j] / gaps[j - 1]);
      if (gaps[j - 1] == 0.0 && gaps[j] > 1e-15) worst_ratio = std::numeric_limits<double>::infinity();
    }
    final_gap = std::max(final_gap, gaps.back());
    ojson entry = ojson::array();
    for (double x : d) entry.push_back(num(x));
    per_pair.push_back(entry);
  }
  o.value = final_gap;
  o.error_bound = cubes.back()->certified_error();
  o.verdict = nondecreasing && halving;
  o.payload = {{"nondecreasing", nondecreasing},
               {"worst_decrease", num(worst_drop)},
               {"gaps_halving", halving},
               {"worst_gap_ratio", num(worst_ratio)},
               {"final_gap", num(final_gap)},
               {"distances", per_pair}};
  o.tables.push_back(std::move(table));
  return o;
}

Outcome op_estimate_angles(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& gamma = ctx.path(p, "gamma");
  const SampledPath& eta = ctx.path(p, "eta");
  const AngleEstimate est =
      estimate_angles(gamma, eta, curvature_param(p, ctx), grid_for(p, {&gamma, &eta}));
  o.value = est.upper;
  o.error_bound = est.error_bound;
  o.payload = estimate_json(est);
  o.tables.push_back(level_table("angle_levels.csv", est.per_level));
  return o;
}

Outcome op_monotonicity_check(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& gamma = ctx.path(p, "gamma");
  const SampledPath& eta = ctx.path(p, "eta");
  std::optional<Monotone> expected;
  if (p.has("expected")) {
    const std::string e = p.string("expected");
    if (e == "nondecreasing") {
      expected = Monotone::nondecreasing;
    } else if (e == "nonincreasing") {
      expected = Monotone::nonincreasing;
    } else if (e == "constant") {
      expected = Monotone::constant;
    } else {
      bad(p.where(), "\"expected\" is nondecreasing, nonincreasing or constant");
    }
  }
  const MonotonicityReport r =
      monotonicity_check(gamma, eta, curvature_param(p, ctx), grid_for(p, {&gamma, &eta}),
                         expected, p.number("slack", 1e-9));
  o.value = r.worst_violation;
  o.error_bound = r.slack;
  o.verdict = r.pass;
  o.payload = {{"expected", to_string(r.expected)},
               {"pairs_checked", r.pairs_checked},
               {"violations", r.violations},
               {"worst_violation", num(r.worst_violation)},
               {"worst_level", r.worst_level},
               {"slack", num(r.slack)}};
  return o;
}

Outcome op_triangle_inequality(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& gamma = ctx.path(p, "gamma");
  const SampledPath& eta = ctx.path(p, "eta");
  const SampledPath& sigma = ctx.path(p, "sigma");
  const TriangleInequalityReport r = angle_triangle_inequality_check(
      gamma, eta, sigma, curvature_param(p, ctx), grid_for(p, {&gamma, &eta, &sigma}));
  o.value = r.margin;
  o.error_bound = r.tolerance;
  o.verdict = r.pass;
  o.payload = {{"gamma_eta", num(r.gamma_eta)},
               {"gamma_sigma", num(r.gamma_sigma)},
               {"sigma_eta", num(r.sigma_eta)},
               {"margin", num(r.margin)},
               {"tolerance", num(r.tolerance)}};
  return o;
}

Outcome op_supplementary(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& gamma = ctx.path(p, "gamma");
  const SampledPath& sigma = ctx.path(p, "sigma");
  const SupplementaryReport r =
      supplementary_angles_check(gamma, p.number("t_mid"), sigma, curvature_param(p, ctx),
                                 grid_param(p), p.number("tolerance", 1e-6));
  o.value = r.sum;
  o.error_bound = r.tolerance;
  o.verdict = r.pass;
  o.payload = {{"forward", estimate_json(r.forward)},
               {"backward", estimate_json(r.backward)},
               {"sum", num(r.sum)},
               {"deviation", num(r.deviation)},
               {"tolerance", num(r.tolerance)},
               {"declared_lower_bound", r.declared_lower_bound}};
  o.tables.push_back(level_table("forward_levels.csv", r.forward.per_level));
  o.tables.push_back(level_table("backward_levels.csv", r.backward.per_level));
  return o;
}

Outcome op_k_independence(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& gamma = ctx.path(p, "gamma");
  const SampledPath& eta = ctx.path(p, "eta");
  const std::vector<double> ks =
      p.has("k_values") ? p.numbers("k_values") : std::vector<double>{-1.0, 0.0, 1.0};
  const KIndependenceReport r = k_independence_check(gamma, eta, grid_for(p, {&gamma, &eta}), ks,
                                                     p.number("tolerance", 1e-4));
  o.value = std::max(r.upper_spread, r.lower_spread);
  o.error_bound = r.tolerance;
  o.verdict = r.pass;
  ojson per_k = ojson::array();
  Table table{"k_levels.csv", {"k", "eps", "sup", "inf"}, {}};
  for (const auto& e : r.estimates) {
    per_k.push_back(estimate_json(e));
    for (const auto& l : e.per_level) table.rows.push_back({e.k_used, l.eps, l.sup, l.inf});
  }
  o.payload = {{"upper_spread", num(r.upper_spread)},
               {"lower_spread", num(r.lower_spread)},
               {"tolerance", num(r.tolerance)},
               {"estimates", per_k}};
  o.tables.push_back(std::move(table));
  return o;
}

Outcome op_diagonal_limit(const Params& p, Context& ctx) {
  Outcome o;
  const std::string fn = p.string("function");
  std::function<double(double, double)> f;
  double a = p.number("a", 0.0);
  if (fn == "sum") {
    f = [](double x, double y) { return x + y; };
  } else if (fn == "ratio") {
    // Compares x - a and y - a, not x and y.
    f = [a](double x, double y) { return std::min(x - a, y - a) / std::max(x - a, y - a); };
  } else if (fn == "comparison_angle") {
    const SampledPath& gamma = ctx.path(p, "gamma");
    const SampledPath& eta = ctx.path(p, "eta");
    f = comparison_angle_map(gamma, eta, curvature_param(p, ctx));
    a = 0.0;
  } else {
    bad(p.where(), "\"function\" is sum, ratio or comparison_angle");
  }
  GridSchedule grid = grid_param(p).value_or(GridSchedule{});
  const DiagonalLimitReport r =
      diagonal_limit_check(f, a, grid, p.number("rel_tol", 1e-2), p.number("abs_tol", 1e-12));
  o.value = r.final_gap;
  o.verdict = r.pass;
  Table table{"levels.csv", {"eps", "sup", "inf", "gap"}, {}};
  for (std::size_t i = 0; i < r.per_level.size(); ++i) {
    const auto& l = r.per_level[i];
    table.rows.push_back({l.eps, l.sup, l.inf, r.gaps[i]});
  }
  o.payload = {{"first_gap", num(r.gaps.front())}, {"final_gap", num(r.final_gap)}};
  o.tables.push_back(std::move(table));
  return o;
}

// Residual |cos(theta) - (s - d)/t| at t0, t0/2, ...; passes when the first
// residual is below `max_residual` and the sequence strictly decreases.
Outcome op_thin_triangle(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& gamma = ctx.path(p, "gamma");
  const SampledPath& eta = ctx.path(p, "eta");
  const Curvature k = curvature_param(p, ctx);
  const double s = p.number("s", 1.0);
  const double t0 = p.number("t0", 1e-3);
  const int halvings = static_cast<int>(p.integer("halvings", 8));
  const double max_residual = p.number("max_residual", 1e-2);
  Table table{"residuals.csv", {"t", "residual"}, {}};
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= halvings; ++j) {
    const ThinTriangleSample smp = thin_triangle_residual(gamma, eta, std::ldexp(t0, -j), s, k);
    table.rows.push_back({std::ldexp(t0, -j), smp.residual});
    if (!(smp.residual < prev)) decreasing = false;
    prev = smp.residual;
  }
  const double first = table.rows.front()[1];
  o.value = first;
  o.error_bound = max_residual;
  o.verdict = first <= max_residual && decreasing;
  o.payload = {{"first_residual", num(first)},
               {"last_residual", num(table.rows.back()[1])},
               {"decreasing", decreasing}};
  o.tables.push_back(std::move(table));
  return o;
}

ojson ids_json(const std::vector<std::size_t>& ids) {
  ojson a = ojson::array();
  for (auto id : ids) a.push_back(id);
  return a;
}

Outcome op_distance_to_set(const Params& p, Context& ctx) {
  Outcome o;
  const SetDistance r = distance_to_set(space_point(p, "p", ctx), ctx.set(p, "set"));
  o.value = r.distance;
  o.error_bound = ctx.space->certified_error();
  o.payload = {{"value", num(r.distance)},
               {"nearest_id", r.nearest.id},
               {"nearest", point_json(r.nearest.point)},
               {"tied_ids", ids_json(r.tied)}};
  return o;
}

ojson feet_json(const MinAngle& m) {
  ojson feet = ojson::array();
  for (const auto& f : m.feet) {
    feet.push_back({{"id", f.target.id},
                    {"point", point_json(f.target.point)},
                    {"distance", num(f.distance)},
                    {"representative", f.representative},
                    {"upper", num(f.angle.upper)},
                    {"lower", num(f.angle.lower)},
                    {"minimizing", f.minimizing}});
  }
  return feet;
}

Outcome op_min_angle_to_set(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& gamma = ctx.path(p, "gamma");
  const CompactSet& set = ctx.set(p, "set");
  const double slack =
      p.number("slack", 2.0 * set.net_spacing() + ctx.space->certified_error());
  const MinAngle m = min_angle_to_set(gamma, set, slack, curvature_param(p, ctx), grid_param(p));
  o.value = m.angle;
  o.error_bound = m.error_bound;
  std::size_t minimizing = 0;
  for (const auto& f : m.feet) minimizing += f.minimizing;
  o.payload = {{"angle", num(m.angle)},
               {"error_bound", num(m.error_bound)},
               {"minimizing_feet", minimizing},
               {"feet", feet_json(m)}};
  return o;
}

Outcome op_first_variation(const Params& p, Context& ctx) {
  Outcome o;
  const SampledPath& gamma = ctx.path(p, "gamma");
  const CompactSet& set = ctx.set(p, "set");
  VariationOptions opt;
  if (p.has("t_schedule")) opt.t_schedule = p.numbers("t_schedule");
  opt.grid = grid_param(p);
  if (p.has("slack")) opt.slack = p.number("slack");
  opt.base_tolerance = p.number("base_tolerance", opt.base_tolerance);
  const VariationReport r = first_variation_check(gamma, set, curvature_param(p, ctx), opt);
  o.value = r.limit_estimate;
  o.error_bound = r.tolerance;
  o.verdict = r.pass;
  Table table{"quotients.csv", {"t", "quotient", "extrapolant"}, {}};
  for (std::size_t i = 0; i < r.quotients.size(); ++i) {
    table.rows.push_back({r.quotients[i].t, r.quotients[i].quotient, r.extrapolants[i]});
  }
  o.payload = {{"ell0", num(r.ell0)},
               {"angle_min", num(r.angle_min)},
               {"target", num(r.target)},
               {"limit_estimate", num(r.limit_estimate)},
               {"limsup_estimate", num(r.limsup_estimate)},
               {"residual", num(r.residual)},
               {"tolerance", num(r.tolerance)},
               {"slack", num(r.slack)},
               {"upper_bound_ok", r.upper_bound_ok},
               {"lower_bound_ok", r.lower_bound_ok},
               {"lipschitz_ok", r.lipschitz_ok},
               {"feet", feet_json(r.min_angle)}};
  o.tables.push_back(std::move(table));
  return o;
}

Outcome op_curvature_bound(const Params& p, Context& ctx) {
  Outcome o;
  const Curvature k = curvature_param(p, ctx);
  const std::string dir = p.string("direction");
  if (dir != "above" && dir != "below") bad(p.where(), "\"direction\" is above or below");
  const BoundDirection direction = dir == "above" ? BoundDirection::above : BoundDirection::below;
  CurvatureBoundReport r;
  if (p.has("triangle")) {
    const Params t = p.object("triangle");
    const GeodesicTriangle tri{ctx.path(t, "xy"), ctx.path(t, "xz"), ctx.path(t, "yz")};
    r = check_triangle(tri, k, direction, static_cast<int>(p.integer("samples_per_side", 16)));
  } else {
    const long long trials = p.integer("trials", 1000);
    if (trials < 1) bad(p.where(), "\"trials\" must be positive");
    r = curvature_bound_test(ctx.space, space_point(p, "center", ctx), p.number("radius"), k,
                             direction, static_cast<std::size_t>(trials), ctx.seed,
                             static_cast<std::size_t>(p.integer("pairs_per_triangle", 4)));
  }
  o.value = r.worst_excess;
  o.error_bound = r.tolerance;
  o.verdict = r.holds;
  o.payload = {{"direction", dir},
               {"k", num(r.k)},
               {"trials", r.trials},
               {"pairs", r.pairs},
               {"skipped", r.skipped},
               {"violations", r.violations},
               {"max_deviation", num(r.max_deviation)},
               {"worst_excess", num(r.worst_excess)},
               {"seed", r.seed},
               {"tolerance", num(r.tolerance)}};
  if (r.witness) {
    const BoundWitness& w = *r.witness;
    o.payload["witness"] = {{"x", point_json(w.x)},
                            {"y", point_json(w.y)},
                            {"z", point_json(w.z)},
                            {"side_u", to_string(w.side_u)},
                            {"s_u", num(w.s_u)},
                            {"side_v", to_string(w.side_v)},
                            {"s_v", num(w.s_v)},
                            {"u", point_json(w.u)},
                            {"v", point_json(w.v)},
                            {"d_space", num(w.d_space)},
                            {"d_model", num(w.d_model)},
                            {"excess", num(w.excess)}};
  }
  return o;
}

using Handler = Outcome (*)(const Params&, Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table = {
      {"diameter", op_diameter},
      {"model_distance", op_model_distance},
      {"geodesic_point", op_geodesic_point},
      {"vertex_angle", op_vertex_angle},
      {"comparison_angle", op_comparison_angle},
      {"embed_triangle", op_embed_triangle},
      {"comparison_point", op_comparison_point},
      {"distance", op_distance},
      {"path_length", op_path_length},
      {"arc_length_reparam", op_arc_length_reparam},
      {"shortest_path", op_shortest_path},
      {"build_cube_surface", op_build_cube_surface},
      {"cube_refinement", op_cube_refinement},
      {"estimate_angles", op_estimate_angles},
      {"monotonicity_check", op_monotonicity_check},
      {"angle_triangle_inequality_check", op_triangle_inequality},
      {"supplementary_angles_check", op_supplementary},
      {"k_independence_check", op_k_independence},
      {"diagonal_limit_check", op_diagonal_limit},
      {"thin_triangle", op_thin_triangle},
      {"distance_to_set", op_distance_to_set},
      {"min_angle_to_set", op_min_angle_to_set},
      {"first_variation_check", op_first_variation},
      {"curvature_bound_test", op_curvature_bound},
  };
  return table;
}

Handler find_handler(const std::string& op) {
  for (const auto& [id, h] : handlers()) {
    if (id == op) return h;
  }
  return nullptr;
}

// Applies {"field": {"min", "max", "approx", "tol", "equals"}} constraints to
// top-level payload fields.
bool check_expectations(const json& expect, const std::string& where, const ojson& payload,
                        std::string& message) {
  if (!expect.is_object()) bad(where, "\"expect\" must be an object");
  bool ok = true;
  for (const auto& [field, rule] : expect.items()) {
    const std::string w = where + "." + field;
    if (!payload.contains(field)) bad(w, "the operation reports no field \"" + field + "\"");
    const ojson& actual = payload.at(field);
    Params r(rule, w);
    if (r.has("equals")) {
      if (json(actual) != r.raw("equals")) {
        ok = false;
        message += field + " = " + actual.dump() + ", expected " + r.raw("equals").dump() + "; ";
      }
      continue;
    }
    if (!actual.is_number()) bad(w, "field \"" + field + "\" is not numeric");
    const double x = actual.get<double>();
    if (r.has("approx")) {
      const double target = r.number("approx");
      const double tol = r.number("tol", 1e-9);
      if (!(std::abs(x - target) <= tol)) {
        ok = false;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s = %.12g, expected %.12g +- %.3g; ", field.c_str(), x,
                      target, tol);
        message += buf;
      }
    }
    if (r.has("min") && !(x >= r.number("min"))) {
      ok = false;
      message += field + " = " + actual.dump() + " below min; ";
    }
    if (r.has("max") && !(x <= r.number("max"))) {
      ok = false;
      message += field + " = " + actual.dump() + " above max; ";
    }
  }
  return ok;
}

CheckResult run_check(const json& spec, std::size_t index, Context& ctx) {
  const std::string where = "checks[" + std::to_string(index) + "]";
  Params p(spec, where);
  CheckResult result;
  result.op = p.string("op");
  result.id = p.string("id", result.op + "_" + std::to_string(index));
  static const std::regex id_pattern("[A-Za-z0-9_.-]+");
  if (!std::regex_match(result.id, id_pattern) || result.id == "." || result.id == "..") {
    bad(where, "check id \"" + result.id + "\" must be a plain file name");
  }
  const Handler handler = find_handler(result.op);
  if (!handler) bad(where, "unknown operation \"" + result.op + "\"");
  const bool expect_error = p.boolean("expect_error", false);
  const bool expect_violation = p.boolean("expect_violation", false);

  const auto start = std::chrono::steady_clock::now();
  std::optional<Outcome> outcome;
  try {
    outcome = handler(p, ctx);
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    result.message = e.what();
  }
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!outcome) {
    result.status = expect_error ? CheckStatus::pass : CheckStatus::error;
    result.value = kNaN;
    result.payload = {{"error", result.message}};
    return result;
  }
  result.payload = std::move(outcome->payload);
  result.value = outcome->value;
  result.error_bound = outcome->error_bound;
  result.tables = std::move(outcome->tables);
  if (expect_error) {
    result.status = CheckStatus::fail;
    result.message = "expected an error";
    return result;
  }
  if (expect_violation && !outcome->verdict) {
    bad(where, "\"" + result.op + "\" has no verdict to violate");
  }
  const bool has_expect = p.has("expect");
  const bool expect_ok =
      !has_expect || check_expectations(p.raw("expect"), where + ".expect", result.payload,
                                        result.message);
  if (!outcome->verdict && !has_expect) {
    result.status = CheckStatus::diagnostic;
    return result;
  }
  if (outcome->verdict) result.payload["check_passed"] = *outcome->verdict;
  if (expect_violation) {
    if (*outcome->verdict) result.message += "counterexample did not reproduce; ";
    result.status = !*outcome->verdict && expect_ok ? CheckStatus::expected_failure
                                                     : CheckStatus::fail;
  } else {
    if (outcome->verdict && !*outcome->verdict) result.message += "check failed; ";
    result.status = outcome->verdict.value_or(true) && expect_ok ? CheckStatus::pass
                                                                  : CheckStatus::fail;
  }
  return result;
}

std::string format_cell(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << content;
  if (!out) throw std::runtime_error("cannot write " + file.string());
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::error:
      return "error";
    case CheckStatus::diagnostic:
      return "diagnostic";
    case CheckStatus::expected_failure:
      return "expected_failure";
  }
  return "?";
}

bool Report::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::fail || c.status == CheckStatus::error;
  });
}

int Report::exit_code() const { return ok() ? 0 : 1; }

ojson Report::to_json() const {
  ojson out;
  out["scenario"] = name;
  out["seed"] = seed;
  out["ok"] = ok();
  ojson list = ojson::array();
  for (const auto& c : checks) {
    ojson entry;
    entry["id"] = c.id;
    entry["op"] = c.op;
    entry["status"] = to_string(c.status);
    entry["value"] = num(c.value);
    entry["error_bound"] = num(c.error_bound);
    if (!c.message.empty()) entry["message"] = c.message;
    entry["payload"] = c.payload;
    list.push_back(std::move(entry));
  }
  out["checks"] = std::move(list);
  return out;
}

const std::vector<std::string>& operation_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, h] : handlers()) out.push_back(id);
    return out;
  }();
  return ids;
}

Report run_scenario(const json& config, const fs::path& base_dir,
                    std::optional<std::uint64_t> seed_override) {
  Params root(config, "config");
  if (root.integer("version") != kConfigVersion) {
    bad("config", "unsupported version (expected " + std::to_string(kConfigVersion) + ")");
  }
  Report report;
  report.name = root.string("name");
  const long long seed = root.integer("seed", 0);
  if (seed < 0) bad("config", "\"seed\" must be nonnegative");
  report.seed = seed_override.value_or(static_cast<std::uint64_t>(seed));

  Context ctx;
  ctx.seed = report.seed;
  ctx.base_dir = base_dir;
  try {
    ctx.space = build_space(root.object("space"), base_dir);
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    bad("config.space", e.what());
  }

  // Paths and sets are built in declaration order, so a "piece" can refer
  // to an earlier path.
  auto build_all = [&](const char* key, auto&& build) {
    if (!root.has(key)) return;
    const json& entries = root.raw(key);
    if (!entries.is_object()) bad("config", std::string("\"") + key + "\" must be an object");
    for (const auto& [name, spec] : entries.items()) {
      const std::string where = std::string("config.") + key + "." + name;
      try {
        build(name, Params(spec, where));
      } catch (const ScenarioError&) {
        throw;
      } catch (const std::exception& e) {
        bad(where, e.what());
      }
    }
  };
  build_all("paths", [&](const std::string& name, const Params& p) {
    ctx.paths.insert_or_assign(name, build_path(p, ctx));
  });
  build_all("sets", [&](const std::string& name, const Params& p) {
    ctx.sets.insert_or_assign(name, build_set(p, ctx));
  });

  if (root.has("checks")) {
    const json& checks = root.raw("checks");
    if (!checks.is_array()) bad("config", "\"checks\" must be an array");
    for (std::size_t i = 0; i < checks.size(); ++i) {
      report.checks.push_back(run_check(checks[i], i, ctx));
      for (std::size_t j = 0; j + 1 < report.checks.size(); ++j) {
        if (report.checks[j].id == report.checks.back().id) {
          bad("checks[" + std::to_string(i) + "]", "duplicate check id \"" +
                                                       report.checks.back().id + "\"");
        }
      }
    }
  }
  return report;
}

Report run_scenario(const fs::path& config_file, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(config_file);
  if (!in) throw ScenarioError("cannot open " + config_file.string());
  json config;
  try {
    config = json::parse(in);
  } catch (const json::exception& e) {
    throw ScenarioError(config_file.string() + ": " + e.what());
  }
  return run_scenario(config, config_file.parent_path(), seed_override);
}

void emit_tables(const Report& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::ostringstream summary;
  summary << "check_id,op,status,value,error_bound\n";
  ojson timings = ojson::object();
  for (const auto& c : report.checks) {
    summary << c.id << ',' << c.op << ',' << to_string(c.status) << ',' << format_cell(c.value)
            << ',' << format_cell(c.error_bound) << '\n';
    timings[c.id] = c.runtime_ms;
    if (c.tables.empty()) continue;
    const fs::path sub = dir / c.id;
    fs::create_directories(sub, ec);
    if (ec) throw std::runtime_error("cannot create " + sub.string() + ": " + ec.message());
    for (const Table& t : c.tables) {
      std::ostringstream csv;
      for (std::size_t i = 0; i < t.columns.size(); ++i) csv << (i ? "," : "") << t.columns[i];
      csv << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << format_cell(row[i]);
        csv << '\n';
      }
      write_file(sub / t.file, csv.str());
    }
  }
  write_file(dir / "summary.csv", summary.str());
  write_file(dir / "report.json", report.to_json().dump(2) + "\n");
  write_file(dir / "timings.json", timings.dump(2) + "\n");
}

std::vector<std::string> bundled_scenarios(const fs::path& dir) {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

fs::path resolve_scenario(const std::string& name_or_path, const fs::path& scenario_dir) {
  const fs::path given(name_or_path);
  if (fs::exists(given)) return given;
  const fs::path bundled = scenario_dir / (name_or_path + ".json");
  if (fs::exists(bundled)) return bundled;
  return given;
}

}  // namespace alexandrov
