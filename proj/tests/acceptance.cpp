// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "alexandrov/angles.hpp"
#include "alexandrov/comparison.hpp"
#include "alexandrov/cube_surface.hpp"
#include "alexandrov/scenario.hpp"
#include "alexandrov/variation.hpp"

using namespace alexandrov;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SampledPath model_ray(const SpaceHandle& space, double az, double len) {
  const Curvature& k = static_cast<const ModelSpace&>(*space).curvature();
  const ModelPoint o = model_origin(k);
  return shortest_path(space, o.coords, model_exp(o, az, len, k).coords, len / 64);
}

Point polar(double kv, double az, double r) {
  const Curvature k(kv);
  return model_exp(model_origin(k), az, r, k).coords;
}

// Sides drawn uniformly from a box, kept when strictly admissible.
TriangleSides random_admissible(std::mt19937_64& rng, const Curvature& k) {
  const double box = k.value() > 0 ? diameter(k) : 4.0;
  std::uniform_real_distribution<double> side(1e-3 * box, box);
  for (;;) {
    const TriangleSides s{side(rng), side(rng), side(rng)};
    if (admissibility(s, k) == Admissibility::strict) return s;
  }
}

Outcome comparison_kernel() {
  double worst = 0.0;
  std::size_t count = 0;
  for (double kv : {-1.0, 0.0, 1.0}) {
    const Curvature k(kv);
    std::mt19937_64 rng(101);
    for (int i = 0; i < 1000; ++i, ++count) {
      const TriangleSides s = random_admissible(rng, k);
      const ComparisonTriangle tri = embed_triangle(s, k);
      const auto& v = tri.vertices;
      worst = std::max(worst, std::abs(vertex_angle(v[0], v[1], v[2], k) - comparison_angle(s, k)));
    }
  }
  return {worst <= 1e-9, fmt("%zu triangles, max |vertex_angle - comparison_angle| = %.3g", count, worst)};
}

Outcome thin_triangle() {
  bool ok = true;
  std::string detail;
  for (double kv : {0.0, 1.0, -1.0}) {
    const SpaceHandle space = model_space(kv);
    const SampledPath gamma = model_ray(space, 0.0, 1.0);
    const SampledPath eta = model_ray(space, 1.0, 1.0);
    double prev = INFINITY, first = 0.0, last = 0.0;
    bool monotone = true;
    for (int j = 0; j <= 8; ++j) {
      const double t = std::ldexp(1e-3, -j);
      const double r = thin_triangle_residual(gamma, eta, t, 1.0, Curvature(kv)).residual;
      if (j == 0) first = r;
      monotone = monotone && r < prev;
      prev = last = r;
    }
    ok = ok && first <= 1e-2 && monotone;
    detail += fmt("k=%g: %.3g -> %.3g%s; ", kv, first, last, monotone ? "" : " (not monotone)");
  }
  return {ok, detail};
}

Outcome taxicab_angles() {
  const SpaceHandle plane = taxicab_plane();
  // gamma(t) = (t, t), eta(s) = (s, 0)
  const SampledPath gamma(plane, {{0.0, {0, 0, 0}}, {1.0, {1, 1, 0}}});
  const SampledPath eta(plane, {{0.0, {0, 0, 0}}, {1.0, {1, 0, 0}}});
  const AngleEstimate est = estimate_angles(gamma, eta, Curvature(0.0));
  const bool ok = est.lower <= 1e-3 && std::abs(est.upper - pi / 2) <= 1e-2;
  return {ok, fmt("lower = %.3g, upper = %.6f", est.lower, est.upper)};
}

Outcome taxicab_curvature() {
  const SpaceHandle plane = taxicab_plane();
  const auto path = [&](std::vector<Point> pts) { return arc_length_reparam(path_through(plane, pts)); };
  const SampledPath bottom = path({{0, 0, 0}, {1, 0, 0}});
  const GeodesicTriangle a{bottom, path({{0, 0, 0}, {0, 0.5, 0}, {0.5, 0.5, 0}}),
                           path({{1, 0, 0}, {1, 0.5, 0}, {0.5, 0.5, 0}})};
  const GeodesicTriangle b{bottom, path({{0, 0, 0}, {0.5, 0, 0}, {0.5, 0.5, 0}}),
                           path({{1, 0, 0}, {0.5, 0, 0}, {0.5, 0.5, 0}})};
  bool ok = true;
  std::string detail;
  for (double kv : {-1.0, 0.0, 1.0}) {
    const CurvatureBoundReport ra = check_triangle(a, Curvature(kv), BoundDirection::above);
    const CurvatureBoundReport rb = check_triangle(b, Curvature(kv), BoundDirection::below);
    ok = ok && ra.witness && rb.witness;
    detail += fmt("k=%g: A excess %.3g, B excess %.3g; ", kv, ra.worst_excess, rb.worst_excess);
  }
  return {ok, detail};
}

Outcome first_variation_point() {
  const SpaceHandle round = model_space(1.0);
  const CompactSet target(round, std::vector<Point>{polar(1.0, 0.0, 1.0)});
  double worst = 0.0;
  for (double alpha : {0.0, pi / 6, pi / 3, pi / 2, 2 * pi / 3}) {
    // d/dt arccos(cos t cos 1 + sin t sin 1 cos a) at t = 0.
    const double oracle =
        -(-std::sin(0.0) * std::cos(1.0) + std::cos(0.0) * std::sin(1.0) * std::cos(alpha)) /
        std::sin(1.0);
    const VariationReport r = first_variation_check(model_ray(round, alpha, 1.0), target, Curvature(0.0));
    worst = std::max(worst, std::abs(r.limit_estimate - oracle));
  }
  return {worst <= 1e-4, fmt("max |limit + cos a| = %.3g over 5 angles", worst)};
}

Outcome first_variation_set() {
  const SpaceHandle flat = model_space(0.0);
  const CompactSet corners(flat, std::vector<Point>{{1, 1, 0}, {1, -1, 0}});
  const VariationReport plane = first_variation_check(model_ray(flat, 0.0, 1.0), corners, Curvature(0.0));
  const double plane_err = std::abs(plane.limit_estimate + std::cos(pi / 4));

  // Two points at distance 1 from the pole, at azimuths 0 and 5 pi / 6; the
  // geodesic leaves at azimuth pi / 3.
  const SpaceHandle round = model_space(1.0);
  const double a1 = pi / 3, a2 = 5 * pi / 6 - pi / 3;
  const CompactSet pair(round, std::vector<Point>{polar(1.0, 0.0, 1.0), polar(1.0, 5 * pi / 6, 1.0)});
  const VariationReport sphere = first_variation_check(model_ray(round, pi / 3, 1.0), pair, Curvature(0.0));
  const auto ell = [](double t, double a) {
    return std::acos(std::cos(t) * std::cos(1.0) + std::sin(t) * std::sin(1.0) * std::cos(a));
  };
  const double h = 1e-7;
  const double oracle = (std::min(ell(h, a1), ell(h, a2)) - std::min(ell(0, a1), ell(0, a2))) / h;
  const double sphere_err = std::abs(sphere.limit_estimate - oracle);
  const double closed = -std::cos(std::min(a1, a2));
  return {plane_err <= 1e-6 && sphere_err <= 1e-4 && std::abs(oracle - closed) <= 1e-6,
          fmt("plane |err| = %.3g, sphere |err| = %.3g", plane_err, sphere_err)};
}

Outcome monotonicity() {
  const GridSchedule grid;
  const SpaceHandle round = model_space(1.0);
  const MonotonicityReport s = monotonicity_check(model_ray(round, 0.0, 1.0), model_ray(round, 1.0, 1.0),
                                                  Curvature(0.0), grid, Monotone::nonincreasing, 1e-9);
  const SpaceHandle hyp = model_space(-1.0);
  const MonotonicityReport h = monotonicity_check(model_ray(hyp, 0.0, 1.0), model_ray(hyp, 1.0, 1.0),
                                                  Curvature(0.0), grid, Monotone::nondecreasing, 1e-9);
  return {s.pass && h.pass && s.violations == 0 && h.violations == 0,
          fmt("sphere %zu/%zu violations, hyperbolic %zu/%zu violations", s.violations,
              s.pairs_checked, h.violations, h.pairs_checked)};
}

Outcome supplementary() {
  const SpaceHandle round = model_space(1.0);
  const SampledPath equator =
      shortest_path(round, {std::cos(-0.5), std::sin(-0.5), 0}, {std::cos(0.5), std::sin(0.5), 0}, 1.0 / 64);
  const SampledPath meridian = shortest_path(round, {1, 0, 0}, {0, 0, 1}, 1.0 / 64);
  const SupplementaryReport sphere = supplementary_angles_check(equator, 0.5, meridian, Curvature(0.0));

  const Report bifurcation = run_scenario(resolve_scenario("taxicab_bifurcation", ALEXANDROV_SCENARIO_DIR));
  const CheckResult& c = bifurcation.checks.at(0);
  const double sum = c.payload.at("sum").get<double>();
  const bool designed = c.status == CheckStatus::expected_failure && std::abs(sum - pi) > 0.1;
  return {std::abs(sphere.sum - pi) <= 1e-6 && designed,
          fmt("sphere |sum - pi| = %.3g; taxicab sum = %.6f (%s)", std::abs(sphere.sum - pi), sum,
              to_string(c.status).c_str())};
}

Outcome k_independence() {
  double worst = 0.0;
  bool ok = true;
  for (double kv : {0.0, 1.0, -1.0}) {
    const SpaceHandle space = model_space(kv);
    for (double alpha : {0.5, pi / 2, 2.5}) {
      const KIndependenceReport r = k_independence_check(model_ray(space, 0.0, 1.0),
                                                         model_ray(space, alpha, 1.0), GridSchedule{},
                                                         {-1.0, 0.0, 1.0}, 1e-4);
      worst = std::max({worst, r.upper_spread, r.lower_spread});
      ok = ok && r.pass;
    }
  }
  return {ok && worst <= 1e-4, fmt("max spread across k = %.3g over 9 ray pairs", worst)};
}

Outcome cube_refinement() {
  const std::vector<std::pair<Point, Point>> pairs{{{0.5, 0.5, 0}, {0.5, 0.5, 1}},
                                                   {{0.3, 0, 0.7}, {1, 0.6, 0.2}},
                                                   {{0.2, 0.3, 0}, {0.9, 1, 0.45}}};
  bool nondecreasing = true, halving = true;
  std::string detail;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    std::vector<double> d;
    for (int level = 3; level <= 8; ++level) {
      d.push_back(CubeSurface(1.0, level).distance(pairs[p].first, pairs[p].second));
    }
    for (std::size_t i = 1; i < d.size(); ++i) nondecreasing = nondecreasing && d[i] >= d[i - 1];
    for (std::size_t i = 2; i < d.size(); ++i) {
      halving = halving && std::abs(d[i] - d[i - 1]) <= 0.5 * std::abs(d[i - 1] - d[i - 2]);
    }
    detail += fmt("pair %zu: L3 %.7f -> L8 %.7f; ", p, d.front(), d.back());
  }
  detail += fmt("nondecreasing=%s, gaps halve=%s", nondecreasing ? "yes" : "no", halving ? "yes" : "no");
  return {nondecreasing && halving, detail};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "alexandrov_acceptance";
  fs::remove_all(root);
  std::size_t files = 0, mismatched = 0;
  const auto names = bundled_scenarios(ALEXANDROV_SCENARIO_DIR);
  for (const std::string& name : names) {
    const fs::path config = resolve_scenario(name, ALEXANDROV_SCENARIO_DIR);
    emit_tables(run_scenario(config), root / "a" / name);
    emit_tables(run_scenario(config), root / "b" / name);
    for (const auto& entry : fs::recursive_directory_iterator(root / "a" / name)) {
      if (entry.path().extension() != ".csv") continue;
      ++files;
      const fs::path twin = root / "b" / name / fs::relative(entry.path(), root / "a" / name);
      if (read_file(entry.path()) != read_file(twin)) ++mismatched;
    }
  }
  fs::remove_all(root);
  return {files > 0 && mismatched == 0,
          fmt("%zu scenarios, %zu CSV files, %zu mismatched", names.size(), files, mismatched)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"comparison kernel round trip", comparison_kernel},
      {"thin-triangle residual", thin_triangle},
      {"taxicab upper and lower angle", taxicab_angles},
      {"taxicab curvature witnesses", taxicab_curvature},
      {"first variation, point target", first_variation_point},
      {"first variation, two-point set", first_variation_set},
      {"comparison-angle monotonicity", monotonicity},
      {"supplementary angles", supplementary},
      {"k-independence", k_independence},
      {"cube refinement convergence", cube_refinement},
      {"end-to-end determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
