#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "alexandrov/angles.hpp"

using namespace alexandrov;
using std::numbers::pi;

namespace {

// Unit-speed ray of length `len` from the origin of M^2_k at azimuth `az`.
SampledPath model_ray(const SpaceHandle& space, double az, double len) {
  const auto& m = static_cast<const ModelSpace&>(*space);
  const Curvature& k = m.curvature();
  const ModelPoint o = model_origin(k);
  return shortest_path(space, o.coords, model_exp(o, az, len, k).coords, len / 64);
}

SampledPath segment(const SpaceHandle& space, const Point& p, const Point& q, double len) {
  return SampledPath(space, {{0.0, p}, {len, q}});
}

GridSchedule small_grid() {
  GridSchedule g;
  g.levels = 6;
  g.samples_per_level = 12;
  return g;
}

}  // namespace

TEST_SUITE("angles") {
  TEST_CASE("grid schedule") {
    GridSchedule g;
    CHECK_NOTHROW(g.validate());
    CHECK(g.eps(3) == doctest::Approx(0.25 / 8));
    const auto s = g.samples(2);
    REQUIRE(s.size() == 32);
    CHECK(s.back() == doctest::Approx(g.eps(2)));
    CHECK(s.front() == doctest::Approx(g.eps(2) * g.span));
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
    CHECK(GridSchedule::for_paths(2.0).eps0 == doctest::Approx(0.5));
    GridSchedule bad = g;
    bad.factor = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = g;
    bad.samples_per_level = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = g;
    bad.eps0 = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }

  TEST_CASE("model space angles equal the vertex angle") {
    for (double kv : {-1.0, 0.0, 1.0}) {
      const SpaceHandle space = model_space(kv);
      for (double alpha : {0.3, 1.0, pi / 2, 2.5}) {
        const SampledPath gamma = model_ray(space, 0.0, 1.0);
        const SampledPath eta = model_ray(space, alpha, 1.0);
        const AngleEstimate est = estimate_angles(gamma, eta, Curvature(kv), small_grid());
        CHECK(std::abs(est.upper - alpha) <= est.error_bound + 1e-6);
        CHECK(std::abs(est.lower - alpha) <= est.error_bound + 1e-6);
        CHECK(est.lower <= est.upper);
      }
    }
  }

  TEST_CASE("level brackets are monotone") {
    const SpaceHandle flat = model_space(0.0);
    const AngleEstimate est =
        estimate_angles(model_ray(flat, 0.0, 1.0), model_ray(flat, 1.2, 1.0), Curvature(-1.0));
    for (std::size_t j = 1; j < est.per_level.size(); ++j) {
      CHECK(est.per_level[j].sup <= est.per_level[j - 1].sup);
      CHECK(est.per_level[j].inf >= est.per_level[j - 1].inf);
      CHECK(est.per_level[j].eps < est.per_level[j - 1].eps);
    }
    const LevelBracket& last = est.per_level.back();
    CHECK(est.error_bound == doctest::Approx(last.sup - last.inf + kAngleTolerance));
  }

  TEST_CASE("taxicab diagonal against an axis") {
    const SpaceHandle plane = taxicab_plane();
    const SampledPath diag = segment(plane, {0, 0, 0}, {1, 1, 0}, 2.0);
    const SampledPath axis = segment(plane, {0, 0, 0}, {1, 0, 0}, 1.0);
    for (double kv : {-1.0, 0.0, 1.0}) {
      const AngleEstimate est = estimate_angles(diag, axis, Curvature(kv));
      CHECK(est.upper == doctest::Approx(pi / 2).epsilon(1e-2));
      CHECK(est.lower <= 1e-3);
    }
    // Along the diagonal and the axis d = |t/2 - s| + t/2, so the triangle
    // is degenerate for s <= t/2 and nearly right for s >> t.
    const Curvature flat(0.0);
    CHECK(comparison_angle_at(diag, axis, 0.2, 0.1, flat) == doctest::Approx(0.0));
    CHECK(comparison_angle_at(diag, axis, 1e-4, 0.5, flat) == doctest::Approx(pi / 2).epsilon(1e-3));
    CHECK(comparison_angle_at(diag, axis, 0.2, 0.4, flat) ==
          doctest::Approx(comparison_angle({0.2, 0.4, 0.4}, flat)));
  }

  TEST_CASE("identical paths have zero angle") {
    const SpaceHandle plane = taxicab_plane();
    const SampledPath axis = segment(plane, {0, 0, 0}, {1, 0, 0}, 1.0);
    const AngleEstimate est = estimate_angles(axis, axis, Curvature(0));
    CHECK(est.upper <= 1e-6);
    CHECK(est.lower <= 1e-6);
  }

  TEST_CASE("paths must share an origin and cover the grid") {
    const SpaceHandle flat = model_space(0.0);
    const SampledPath a = segment(flat, {0, 0, 0}, {1, 0, 0}, 1.0);
    const SampledPath b = segment(flat, {0, 0.1, 0}, {0, 1, 0}, 0.9);
    CHECK_THROWS_AS(estimate_angles(a, b, Curvature(0)), std::invalid_argument);
    GridSchedule wide;
    wide.eps0 = 2.0;
    CHECK_THROWS_AS(estimate_angles(a, a, Curvature(0), wide), std::invalid_argument);
  }

  TEST_CASE("monotonicity follows the curvature bound") {
    // Rays from the origin of M^2_kappa; compared against k below kappa the
    // comparison angle is nonincreasing in each parameter.
    for (double kappa : {1.0, -1.0}) {
      const SpaceHandle space = model_space(kappa);
      const SampledPath gamma = model_ray(space, 0.0, 1.0);
      const SampledPath eta = model_ray(space, 1.3, 1.0);
      const MonotonicityReport below =
          monotonicity_check(gamma, eta, Curvature(kappa - 1.0), small_grid());
      CHECK(below.expected == Monotone::nonincreasing);
      CHECK(below.pairs_checked > 0);
      CHECK(below.violations == 0);
      CHECK(below.pass);
      const MonotonicityReport above =
          monotonicity_check(gamma, eta, Curvature(kappa + 1.0), small_grid());
      CHECK(above.expected == Monotone::nondecreasing);
      CHECK(above.pass);
      const MonotonicityReport same = monotonicity_check(gamma, eta, Curvature(kappa), small_grid());
      CHECK(same.expected == Monotone::constant);
      CHECK(same.pass);
    }
  }

  TEST_CASE("monotonicity against closed-form sphere distances") {
    // On the unit sphere, rays at angle a from the pole satisfy
    // cos d = cos t cos s + sin t sin s cos a. The flat comparison angle from
    // that d decreases in t.
    const double a = 1.1, s = 0.4;
    double prev = INFINITY;
    for (int i = 1; i <= 50; ++i) {
      const double t = 0.02 * i;
      const double d = std::acos(std::cos(t) * std::cos(s) + std::sin(t) * std::sin(s) * std::cos(a));
      const double theta = comparison_angle({t, s, d}, Curvature(0));
      CHECK(theta <= prev + 1e-12);
      prev = theta;
    }
    const SpaceHandle round = model_space(1.0);
    const SampledPath gamma = model_ray(round, 0.0, 1.0);
    const SampledPath eta = model_ray(round, a, 1.0);
    const double d = std::acos(std::cos(0.7) * std::cos(s) + std::sin(0.7) * std::sin(s) * std::cos(a));
    CHECK(comparison_angle_at(gamma, eta, 0.7, s, Curvature(0)) ==
          doctest::Approx(comparison_angle({0.7, s, d}, Curvature(0))).epsilon(1e-9));
  }

  TEST_CASE("angle triangle inequality") {
    for (double kv : {-1.0, 0.0, 1.0}) {
      const SpaceHandle space = model_space(kv);
      const SampledPath g = model_ray(space, 0.0, 1.0);
      const SampledPath e = model_ray(space, 2.0, 1.0);
      const SampledPath s = model_ray(space, 0.7, 1.0);
      const TriangleInequalityReport r =
          angle_triangle_inequality_check(g, e, s, Curvature(kv), small_grid());
      CHECK(r.pass);
      CHECK(r.margin == doctest::Approx(0.0).epsilon(1e-4).scale(1.0));
    }
    const SpaceHandle plane = taxicab_plane();
    const SampledPath diag = segment(plane, {0, 0, 0}, {1, 1, 0}, 2.0);
    const SampledPath x = segment(plane, {0, 0, 0}, {1, 0, 0}, 1.0);
    const SampledPath y = segment(plane, {0, 0, 0}, {0, 1, 0}, 1.0);
    CHECK(angle_triangle_inequality_check(x, y, diag, Curvature(0), GridSchedule{}).pass);
  }

  TEST_CASE("supplementary angles") {
    const SpaceHandle flat = model_space(0.0);
    const SampledPath line = segment(flat, {-1, 0, 0}, {1, 0, 0}, 2.0);
    for (double alpha : {0.4, pi / 2, 2.0}) {
      const SampledPath sigma = segment(flat, {0, 0, 0}, {std::cos(alpha), std::sin(alpha), 0}, 1.0);
      const SupplementaryReport r = supplementary_angles_check(line, 1.0, sigma, Curvature(0));
      CHECK(r.pass);
      CHECK(r.deviation <= 1e-6);
      CHECK(r.forward.upper == doctest::Approx(alpha).epsilon(1e-6));
      CHECK(r.backward.upper == doctest::Approx(pi - alpha).epsilon(1e-6));
    }
    const SpaceHandle round = model_space(1.0);
    const SampledPath equator =
        shortest_path(round, {std::cos(-0.5), std::sin(-0.5), 0}, {std::cos(0.5), std::sin(0.5), 0}, 1.0 / 64);
    const SampledPath meridian = shortest_path(round, {1, 0, 0}, {0, 0, 1}, 1.0 / 64);
    const SupplementaryReport r = supplementary_angles_check(equator, 0.5, meridian, Curvature(0));
    CHECK(r.declared_lower_bound);
    CHECK(r.sum == doctest::Approx(pi).epsilon(1e-6));
  }

  TEST_CASE("angles do not depend on k") {
    const SpaceHandle round = model_space(1.0);
    const KIndependenceReport r =
        k_independence_check(model_ray(round, 0.0, 1.0), model_ray(round, 0.9, 1.0), small_grid(),
                             {-4.0, -1.0, 0.0, 1.0, 2.0});
    CHECK(r.estimates.size() == 5);
    CHECK(r.upper_spread <= 1e-4);
    CHECK(r.lower_spread <= 1e-4);
    CHECK(r.pass);
  }

  TEST_CASE("diagonal limits") {
    GridSchedule g;
    g.levels = 10;
    g.samples_per_level = 8;
    // A continuous function collapses at the diagonal corner.
    const auto smooth = diagonal_limit_check([](double t, double s) { return t + 2 * s; }, 0.0, g);
    CHECK(smooth.pass);
    CHECK(smooth.gaps.size() == 10);
    CHECK(smooth.final_gap <= 1e-2 * smooth.gaps.front());
    // t/s keeps every ratio on each level, so the gap never shrinks.
    const auto ratio = diagonal_limit_check([](double t, double s) { return t / s; }, 0.0, g);
    CHECK_FALSE(ratio.pass);
    // Comparison angles of model-space rays have a limit at the origin.
    const SpaceHandle flat = model_space(0.0);
    const auto f = comparison_angle_map(model_ray(flat, 0.0, 1.0), model_ray(flat, 1.0, 1.0),
                                        Curvature(0));
    GridSchedule g2 = g;
    g2.eps0 = 0.25;
    CHECK(diagonal_limit_check(f, 0.0, g2, 1e-2, 1e-9).pass);
  }

  TEST_CASE("strong angles at a joint") {
    // A path through an interior point splits into two pieces whose upper
    // angles against a third path add to pi; the strong limit of the
    // comparison angle exists along each piece.
    const SpaceHandle flat = model_space(0.0);
    const SampledPath line = segment(flat, {-1, 0, 0}, {1, 0, 0}, 2.0);
    const SampledPath fwd = line.piece(1.0, 2.0);
    const SampledPath sigma = segment(flat, {0, 0, 0}, {0.6, 0.8, 0}, 1.0);
    const AngleEstimate est = estimate_angles(fwd, sigma, Curvature(0));
    CHECK(est.upper - est.lower <= est.error_bound);
    CHECK(est.upper == doctest::Approx(std::acos(0.6)).epsilon(1e-6));
  }

  TEST_CASE("thin triangle residual shrinks linearly") {
    for (double kv : {-1.0, 0.0, 1.0}) {
      const SpaceHandle space = model_space(kv);
      const SampledPath gamma = model_ray(space, 0.0, 1.0);
      const SampledPath eta = model_ray(space, 1.0, 1.0);
      for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const ThinTriangleSample r = thin_triangle_residual(gamma, eta, t, 1.0, Curvature(kv));
        CHECK(r.t == doctest::Approx(t));
        CHECK(r.residual <= 10 * t);
      }
    }
  }
}
