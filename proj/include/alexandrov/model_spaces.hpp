#pragma once

#include <string_view>

#include "alexandrov/vec3.hpp"

namespace alexandrov {

/// Curvature parameter k of the model plane M^2_k, in units of 1/length^2.
class Curvature {
 public:
  explicit Curvature(double k);

  double value() const { return k_; }
  int sign() const { return (k_ > 0.0) - (k_ < 0.0); }
  /// sqrt(|k|); zero for the plane.
  double scale() const { return scale_; }

 private:
  double k_;
  double scale_;
};

enum class Chart { plane, sphere, hyperboloid };

std::string_view to_string(Chart chart);

/// Chart used for points of M^2_k: plane for k = 0, unit sphere for k > 0,
/// unit hyperboloid sheet for k < 0. Physical lengths are chart lengths
/// divided by sqrt(|k|).
Chart chart_for(const Curvature& k);

/// A point of M^2_k in its normalized chart. Plane points keep coords.z = 0.
struct ModelPoint {
  Chart chart = Chart::plane;
  Vec3 coords;

  bool operator==(const ModelPoint&) const = default;
};

ModelPoint plane_point(double x, double y);
/// Normalizes (x, y, z) onto the unit sphere.
ModelPoint sphere_point(double x, double y, double z);
/// Lifts (x, y) onto the upper hyperboloid sheet z = sqrt(1 + x^2 + y^2).
ModelPoint hyperboloid_point(double x, double y);

/// Throws std::invalid_argument if the point violates its chart invariant
/// or does not match the chart of k.
void validate_model_point(const ModelPoint& p, const Curvature& k);

/// pi / sqrt(k) for k > 0, +infinity otherwise.
double diameter(const Curvature& k);

double model_distance(const ModelPoint& p, const ModelPoint& q, const Curvature& k);

/// Point at arc length s along the unique shortest path from p to q.
/// Throws std::invalid_argument when s is outside [0, d(p, q)] and
/// std::domain_error for antipodal points on the sphere.
ModelPoint geodesic_point(const ModelPoint& p, const ModelPoint& q, double s, const Curvature& k);

/// Interior angle at a between the geodesics a->b and a->c, in [0, pi].
double vertex_angle(const ModelPoint& a, const ModelPoint& b, const ModelPoint& c,
                    const Curvature& k);

/// Chart origin: (0,0) in the plane, the north pole on the sphere and the
/// hyperboloid vertex (0,0,1).
ModelPoint model_origin(const Curvature& k);

/// Exponential map at `base`: the point at distance r in the direction with
/// the given azimuth. The tangent frame at the origin is aligned with the x
/// and y axes, so model_exp(origin, phi, r) is the polar point (r, phi).
ModelPoint model_exp(const ModelPoint& base, double azimuth, double r, const Curvature& k);

/// Rescales sphere/hyperboloid coordinates back onto the chart.
ModelPoint renormalize(const ModelPoint& p);

}  // namespace alexandrov
