#include "alexandrov/model_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace alexandrov {

namespace {

constexpr double kChartTolerance = 1e-9;
// Arc-length slack accepted at the ends of a geodesic before s counts as out of range.
constexpr double kArcSlack = 1e-12;
// Sphere geodesics are refused once the central angle is this close to pi.
constexpr double kAntipodalGap = 1e-9;

double inner(Chart chart, const Vec3& a, const Vec3& b) {
  return chart == Chart::hyperboloid ? minkowski(a, b) : dot(a, b);
}

void require_chart(const ModelPoint& p, const Curvature& k) {
  if (p.chart != chart_for(k)) {
    throw std::invalid_argument("model point chart " + std::string(to_string(p.chart)) +
                                " does not match curvature " + std::to_string(k.value()));
  }
}

// Unit tangent at `base` pointing towards `target`, plus the chart length of
// the unnormalized projection (sin or sinh of the central angle).
Vec3 tangent_towards(const ModelPoint& base, const ModelPoint& target) {
  const Vec3& a = base.coords;
  const Vec3& b = target.coords;
  switch (base.chart) {
    case Chart::plane:
      return b - a;
    case Chart::sphere:
      return b - a * dot(a, b);
    case Chart::hyperboloid:
      return b + a * minkowski(a, b);
  }
  return {};
}

double tangent_norm(Chart chart, const Vec3& v) {
  return std::sqrt(std::max(0.0, inner(chart, v, v)));
}

// Orthonormal tangent frame at base, aligned with the x/y axes at the origin.
std::pair<Vec3, Vec3> tangent_frame(const ModelPoint& base) {
  const Vec3& c = base.coords;
  switch (base.chart) {
    case Chart::plane:
      return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    case Chart::sphere: {
      Vec3 e1 = Vec3{1.0, 0.0, 0.0} - c * c.x;
      if (norm(e1) < 1e-8) e1 = Vec3{0.0, 1.0, 0.0} - c * c.y;
      e1 = e1 / norm(e1);
      return {e1, cross(c, e1)};
    }
    case Chart::hyperboloid: {
      Vec3 e1 = Vec3{1.0, 0.0, 0.0} + c * c.x;
      e1 = e1 / tangent_norm(Chart::hyperboloid, e1);
      Vec3 e2 = Vec3{0.0, 1.0, 0.0} + c * c.y;
      e2 = e2 - e1 * minkowski(e2, e1);
      e2 = e2 / tangent_norm(Chart::hyperboloid, e2);
      return {e1, e2};
    }
  }
  return {};
}

}  // namespace

Curvature::Curvature(double k) : k_(k), scale_(std::sqrt(std::abs(k))) {
  if (!std::isfinite(k)) throw std::invalid_argument("curvature must be finite");
}

std::string_view to_string(Chart chart) {
  switch (chart) {
    case Chart::plane:
      return "plane";
    case Chart::sphere:
      return "sphere";
    case Chart::hyperboloid:
      return "hyperboloid";
  }
  return "?";
}

Chart chart_for(const Curvature& k) {
  if (k.sign() > 0) return Chart::sphere;
  if (k.sign() < 0) return Chart::hyperboloid;
  return Chart::plane;
}

ModelPoint plane_point(double x, double y) { return {Chart::plane, {x, y, 0.0}}; }

ModelPoint sphere_point(double x, double y, double z) {
  const Vec3 v{x, y, z};
  const double n = norm(v);
  if (!(n > 0.0)) throw std::invalid_argument("sphere point needs a nonzero direction");
  return {Chart::sphere, v / n};
}

ModelPoint hyperboloid_point(double x, double y) {
  return {Chart::hyperboloid, {x, y, std::sqrt(1.0 + x * x + y * y)}};
}

void validate_model_point(const ModelPoint& p, const Curvature& k) {
  require_chart(p, k);
  const Vec3& c = p.coords;
  if (!std::isfinite(c.x) || !std::isfinite(c.y) || !std::isfinite(c.z)) {
    throw std::invalid_argument("model point has non-finite coordinates");
  }
  switch (p.chart) {
    case Chart::plane:
      if (c.z != 0.0) throw std::invalid_argument("plane point must have z = 0");
      break;
    case Chart::sphere:
      if (std::abs(dot(c, c) - 1.0) > kChartTolerance) {
        throw std::invalid_argument("sphere point is not on the unit sphere");
      }
      break;
    case Chart::hyperboloid:
      if (c.z < 1.0 - kChartTolerance ||
          std::abs(-minkowski(c, c) - 1.0) > kChartTolerance * std::max(1.0, c.z * c.z)) {
        throw std::invalid_argument("hyperboloid point is not on the upper unit sheet");
      }
      break;
  }
}

double diameter(const Curvature& k) {
  if (k.sign() > 0) return std::numbers::pi / k.scale();
  return std::numeric_limits<double>::infinity();
}

double model_distance(const ModelPoint& p, const ModelPoint& q, const Curvature& k) {
  require_chart(p, k);
  require_chart(q, k);
  const Vec3& a = p.coords;
  const Vec3& b = q.coords;
  switch (p.chart) {
    case Chart::plane:
      return std::hypot(a.x - b.x, a.y - b.y);
    case Chart::sphere: {
      // atan2 form stays accurate near 0 and pi where arccos of the dot
      // product loses half the digits.
      const double cosine = std::clamp(dot(a, b), -1.0, 1.0);
      const double sine = norm(cross(a, b));
      return std::atan2(sine, cosine) / k.scale();
    }
    case Chart::hyperboloid: {
      const double cosh_d = std::max(1.0, -minkowski(a, b));
      double angle;
      if (cosh_d < 2.0) {
        // cosh d = 1 + |a - b|_M^2 / 2, i.e. sinh(d/2) = |a - b|_M / 2.
        const Vec3 diff = a - b;
        const double chord2 = std::max(0.0, minkowski(diff, diff));
        angle = 2.0 * std::asinh(std::sqrt(chord2) / 2.0);
      } else {
        angle = std::acosh(cosh_d);
      }
      return angle / k.scale();
    }
  }
  return 0.0;
}

ModelPoint renormalize(const ModelPoint& p) {
  switch (p.chart) {
    case Chart::plane:
      return {Chart::plane, {p.coords.x, p.coords.y, 0.0}};
    case Chart::sphere:
      return {Chart::sphere, p.coords / norm(p.coords)};
    case Chart::hyperboloid: {
      const double m = -minkowski(p.coords, p.coords);
      Vec3 c = m > 0.0 ? p.coords / std::sqrt(m) : p.coords;
      c.z = std::sqrt(1.0 + c.x * c.x + c.y * c.y);
      return {Chart::hyperboloid, c};
    }
  }
  return p;
}

ModelPoint geodesic_point(const ModelPoint& p, const ModelPoint& q, double s, const Curvature& k) {
  const double d = model_distance(p, q, k);
  const double slack = kArcSlack * std::max(1.0, d);
  if (!(s >= -slack && s <= d + slack)) {
    throw std::invalid_argument("arc length " + std::to_string(s) + " outside [0, " +
                                std::to_string(d) + "]");
  }
  if (k.sign() > 0 && d * k.scale() > std::numbers::pi - kAntipodalGap) {
    throw std::domain_error("antipodal points have no unique shortest path");
  }
  s = std::clamp(s, 0.0, d);
  if (s == 0.0 || d == 0.0) return p;
  if (s == d) return q;

  switch (p.chart) {
    case Chart::plane:
      return plane_point(p.coords.x + (q.coords.x - p.coords.x) * (s / d),
                         p.coords.y + (q.coords.y - p.coords.y) * (s / d));
    case Chart::sphere: {
      const Vec3 u = tangent_towards(p, q);
      const double sigma = s * k.scale();
      const Vec3 c = p.coords * std::cos(sigma) + (u / norm(u)) * std::sin(sigma);
      return renormalize({Chart::sphere, c});
    }
    case Chart::hyperboloid: {
      const Vec3 u = tangent_towards(p, q);
      const double sigma = s * k.scale();
      const Vec3 c = p.coords * std::cosh(sigma) +
                     (u / tangent_norm(Chart::hyperboloid, u)) * std::sinh(sigma);
      return renormalize({Chart::hyperboloid, c});
    }
  }
  return p;
}

double vertex_angle(const ModelPoint& a, const ModelPoint& b, const ModelPoint& c,
                    const Curvature& k) {
  require_chart(a, k);
  require_chart(b, k);
  require_chart(c, k);
  const Vec3 u = tangent_towards(a, b);
  const Vec3 v = tangent_towards(a, c);
  const double nu = tangent_norm(a.chart, u);
  const double nv = tangent_norm(a.chart, v);
  if (!(nu > 0.0) || !(nv > 0.0)) {
    throw std::invalid_argument("degenerate vertex: coincident or antipodal points");
  }
  // Split v into components along and across u; atan2 keeps both ends of
  // [0, pi] well conditioned.
  const Vec3 e1 = u / nu;
  const double along = inner(a.chart, v, e1);
  const Vec3 across = v - e1 * along;
  return std::atan2(tangent_norm(a.chart, across), along);
}

ModelPoint model_origin(const Curvature& k) {
  switch (chart_for(k)) {
    case Chart::plane:
      return plane_point(0.0, 0.0);
    case Chart::sphere:
      return {Chart::sphere, {0.0, 0.0, 1.0}};
    case Chart::hyperboloid:
      return {Chart::hyperboloid, {0.0, 0.0, 1.0}};
  }
  return {};
}

ModelPoint model_exp(const ModelPoint& base, double azimuth, double r, const Curvature& k) {
  require_chart(base, k);
  if (r < 0.0) throw std::invalid_argument("exponential map radius must be nonnegative");
  const auto [e1, e2] = tangent_frame(base);
  const Vec3 dir = e1 * std::cos(azimuth) + e2 * std::sin(azimuth);
  switch (base.chart) {
    case Chart::plane:
      return plane_point(base.coords.x + r * dir.x, base.coords.y + r * dir.y);
    case Chart::sphere: {
      const double sigma = r * k.scale();
      return renormalize({Chart::sphere, base.coords * std::cos(sigma) + dir * std::sin(sigma)});
    }
    case Chart::hyperboloid: {
      const double sigma = r * k.scale();
      return renormalize(
          {Chart::hyperboloid, base.coords * std::cosh(sigma) + dir * std::sinh(sigma)});
    }
  }
  return base;
}

}  // namespace alexandrov
