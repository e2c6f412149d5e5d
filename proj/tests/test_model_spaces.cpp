#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "alexandrov/model_spaces.hpp"

using namespace alexandrov;
using std::numbers::pi;

namespace {

// Random point of M^2_k within `radius` of the origin.
ModelPoint random_point(std::mt19937_64& rng, const Curvature& k, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return model_exp(model_origin(k), 2.0 * pi * unit(rng), radius * unit(rng), k);
}

double chart_residual(const ModelPoint& p) {
  const Vec3& c = p.coords;
  switch (p.chart) {
    case Chart::plane:
      return std::abs(c.z);
    case Chart::sphere:
      return std::abs(norm(c) - 1.0);
    case Chart::hyperboloid:
      return std::abs(c.z * c.z - c.x * c.x - c.y * c.y - 1.0) / (c.z * c.z);
  }
  return 1.0;
}

}  // namespace

TEST_SUITE("model_spaces") {
  TEST_CASE("diameter") {
    CHECK(diameter(Curvature(1.0)) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(std::isinf(diameter(Curvature(0.0))));
    CHECK(std::isinf(diameter(Curvature(-2.0))));
    CHECK(diameter(Curvature(4.0)) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(Curvature{std::nan("")}, std::invalid_argument);
    CHECK_THROWS_AS(Curvature{INFINITY}, std::invalid_argument);
  }

  TEST_CASE("distance examples") {
    const Curvature flat(0.0), round(1.0), hyp(-1.0);
    CHECK(model_distance(plane_point(0, 0), plane_point(3, 4), flat) == 5.0);
    CHECK(model_distance(sphere_point(0, 0, 1), sphere_point(1, 0, 0), round) ==
          doctest::Approx(pi / 2).epsilon(1e-15));
    const ModelPoint q{Chart::hyperboloid, {std::sinh(1.0), 0.0, std::cosh(1.0)}};
    CHECK(model_distance(model_origin(hyp), q, hyp) == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("physical scale follows k") {
    // On the sphere of curvature 4 the quarter meridian has length pi/4.
    const Curvature k(4.0);
    CHECK(model_distance(sphere_point(0, 0, 1), sphere_point(1, 0, 0), k) ==
          doctest::Approx(pi / 4).epsilon(1e-15));
    const ModelPoint p = model_exp(model_origin(k), 0.3, 0.5, k);
    CHECK(model_distance(model_origin(k), p, k) == doctest::Approx(0.5).epsilon(1e-13));
  }

  TEST_CASE("hyperboloid distance matches the arccosh formula") {
    const Curvature k(-1.0);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      const ModelPoint p = random_point(rng, k, 3.0);
      const ModelPoint q = random_point(rng, k, 3.0);
      const double arg = -minkowski(p.coords, q.coords);
      const double oracle = std::acosh(std::max(1.0, arg));
      // acosh loses accuracy near 1; compare only well-separated points.
      if (oracle < 1e-3) continue;
      CHECK(model_distance(p, q, k) == doctest::Approx(oracle).epsilon(1e-10));
    }
  }

  TEST_CASE("chart mismatch is rejected") {
    CHECK_THROWS_AS(model_distance(plane_point(0, 0), plane_point(1, 0), Curvature(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(model_distance(sphere_point(0, 0, 1), sphere_point(1, 0, 0), Curvature(-1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_model_point(ModelPoint{Chart::sphere, {0, 0, 2}}, Curvature(1.0)),
                    std::invalid_argument);
  }

  TEST_CASE("symmetry and triangle inequality") {
    for (double kv : {-1.0, 0.0, 1.0, 2.5}) {
      const Curvature k(kv);
      std::mt19937_64 rng(5);
      const double radius = kv > 0 ? 0.45 * diameter(k) : 3.0;
      for (int i = 0; i < 1000; ++i) {
        const ModelPoint p = random_point(rng, k, radius);
        const ModelPoint q = random_point(rng, k, radius);
        const ModelPoint r = random_point(rng, k, radius);
        CHECK(model_distance(p, q, k) == model_distance(q, p, k));
        CHECK(model_distance(p, r, k) <= model_distance(p, q, k) + model_distance(q, r, k) + 1e-12);
      }
    }
  }

  TEST_CASE("geodesic_point examples") {
    const Curvature flat(0.0), round(1.0);
    const ModelPoint mid = geodesic_point(plane_point(0, 0), plane_point(2, 0), 1.0, flat);
    CHECK(mid.coords.x == doctest::Approx(1.0));
    CHECK(mid.coords.y == doctest::Approx(0.0));
    const ModelPoint m = geodesic_point(sphere_point(0, 0, 1), sphere_point(1, 0, 0), pi / 4, round);
    CHECK(m.coords.x == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(m.coords.y == doctest::Approx(0.0));
    CHECK(m.coords.z == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    for (double kv : {-1.0, 0.0, 1.0}) {
      const Curvature k(kv);
      const ModelPoint p = model_exp(model_origin(k), 0.2, 0.7, k);
      const ModelPoint q = model_exp(model_origin(k), 2.1, 0.9, k);
      CHECK(geodesic_point(p, q, 0.0, k) == p);
      CHECK(geodesic_point(p, q, model_distance(p, q, k), k) == q);
    }
  }

  TEST_CASE("geodesic_point errors") {
    const Curvature round(1.0);
    const ModelPoint n = sphere_point(0, 0, 1);
    CHECK_THROWS_AS(geodesic_point(n, sphere_point(0, 0, -1), 1.0, round), std::domain_error);
    CHECK_THROWS_AS(geodesic_point(n, sphere_point(1, 0, 0), 2.0, round), std::invalid_argument);
    CHECK_THROWS_AS(geodesic_point(n, sphere_point(1, 0, 0), -0.1, round), std::invalid_argument);
  }

  TEST_CASE("geodesic additivity and chart closure") {
    for (double kv : {-1.0, 0.0, 1.0}) {
      const Curvature k(kv);
      std::mt19937_64 rng(17);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double radius = kv > 0 ? 1.4 : 2.5;
      for (int i = 0; i < 1000; ++i) {
        const ModelPoint p = random_point(rng, k, radius);
        const ModelPoint q = random_point(rng, k, radius);
        const double d = model_distance(p, q, k);
        const double s = unit(rng) * d;
        const ModelPoint m = geodesic_point(p, q, s, k);
        CHECK(std::abs(model_distance(p, m, k) - s) <= 1e-10);
        CHECK(std::abs(model_distance(m, q, k) - (d - s)) <= 1e-10);
        CHECK(chart_residual(m) <= 1e-12);
      }
    }
  }

  TEST_CASE("vertex_angle examples") {
    const Curvature flat(0.0), round(1.0);
    CHECK(vertex_angle(plane_point(0, 0), plane_point(1, 0), plane_point(0, 1), flat) ==
          doctest::Approx(pi / 2));
    CHECK(vertex_angle(sphere_point(0, 0, 1), sphere_point(1, 0, 0), sphere_point(0, 1, 0), round) ==
          doctest::Approx(pi / 2));
    CHECK(vertex_angle(plane_point(0, 0), plane_point(1, 0), plane_point(-2, 0), flat) ==
          doctest::Approx(pi));
    CHECK_THROWS_AS(vertex_angle(plane_point(0, 0), plane_point(0, 0), plane_point(1, 0), flat),
                    std::invalid_argument);
  }

  TEST_CASE("model_exp places polar coordinates") {
    for (double kv : {-1.0, 0.0, 1.0}) {
      const Curvature k(kv);
      const ModelPoint o = model_origin(k);
      const ModelPoint a = model_exp(o, 0.0, 0.8, k);
      const ModelPoint b = model_exp(o, 1.1, 0.6, k);
      CHECK(model_distance(o, a, k) == doctest::Approx(0.8).epsilon(1e-13));
      CHECK(vertex_angle(o, a, b, k) == doctest::Approx(1.1).epsilon(1e-12));
    }
  }
}
