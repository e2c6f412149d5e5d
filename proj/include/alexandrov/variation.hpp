#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "alexandrov/angles.hpp"
#include "alexandrov/comparison.hpp"
#include "alexandrov/spaces.hpp"

namespace alexandrov {

struct SetPoint {
  std::size_t id = 0;
  Point point;
};

/// Finite net standing in for a compact set K. Every point of K is assumed
/// to lie within net_spacing of some net point.
class CompactSet {
 public:
  /// Ids are assigned 0, 1, 2, ... in the given order.
  CompactSet(SpaceHandle space, const std::vector<Point>& points, double net_spacing = 0.0);
  /// Explicit ids, which must be distinct; lets callers permute a set
  /// without changing which point wins a tie.
  CompactSet(SpaceHandle space, std::vector<SetPoint> points, double net_spacing = 0.0);

  const SpaceHandle& space() const { return space_; }
  const std::vector<SetPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double net_spacing() const { return net_spacing_; }

 private:
  SpaceHandle space_;
  std::vector<SetPoint> points_;
  double net_spacing_;
};

struct SetDistance {
  double distance = 0.0;
  SetPoint nearest;                // lowest id among the minimizers
  std::vector<std::size_t> tied;  // ids of every minimizer, ascending
};

/// Relative tolerance under which two set distances count as tied.
inline constexpr double kSetTieTolerance = 1e-12;

SetDistance distance_to_set(const Point& p, const CompactSet& set);

struct FootPoint {
  SetPoint target;
  double distance = 0.0;          // d(gamma(0), target)
  std::size_t representative = 0;  // index among the space's shortest paths
  AngleEstimate angle;
  bool minimizing = false;
};

struct MinAngle {
  double angle = 0.0;
  double error_bound = 0.0;       // of the minimizing estimate
  std::vector<FootPoint> feet;    // every candidate path, in (id, representative) order
};

/// Smallest upper angle between gamma and a shortest path from gamma(0) to a
/// set point within ell(0) + slack. Every representative the space exposes
/// is considered. Feet whose angle is within the combined estimate error of
/// the minimum are flagged as minimizing.
MinAngle min_angle_to_set(const SampledPath& gamma, const CompactSet& set, double slack,
                          const Curvature& k, std::optional<GridSchedule> grid = std::nullopt);

struct VariationQuotient {
  double t = 0.0;
  double ell = 0.0;       // d(gamma(t), K)
  double quotient = 0.0;  // (ell - ell(0)) / t
};

struct VariationReport {
  std::vector<VariationQuotient> quotients;  // t strictly decreasing
  /// Three-point extrapolation to t = 0 ending at each quotient; NaN for
  /// the first two.
  std::vector<double> extrapolants;
  double ell0 = 0.0;
  double slack = 0.0;
  MinAngle min_angle;
  double angle_min = 0.0;
  double target = 0.0;  // -cos(angle_min)
  double limit_estimate = 0.0;
  /// Linear extrapolation of the last two quotients; stands in for the
  /// limsup of the quotients.
  double limsup_estimate = 0.0;
  double residual = 0.0;  // |limit_estimate - target|
  double tolerance = 0.0;
  bool upper_bound_ok = false;  // limsup_estimate <= target + tolerance
  bool lower_bound_ok = false;  // limit_estimate >= target - tolerance
  bool lipschitz_ok = false;
  bool pass = false;
};

/// t_j = T/8 * 2^-j for j = 0 .. count-1.
std::vector<double> default_t_schedule(double T, int count = 15);

struct VariationOptions {
  std::optional<std::vector<double>> t_schedule;
  std::optional<GridSchedule> grid;
  /// Defaults to 2 * net spacing + the space's certified error.
  std::optional<double> slack;
  /// Floor of the combined tolerance.
  double base_tolerance = 1e-6;
};

/// Compares the one-sided derivative of ell(t) = d(gamma(t), K) at 0 with
/// -cos of the minimal angle between gamma and the paths realizing ell(0).
VariationReport first_variation_check(const SampledPath& gamma, const CompactSet& set,
                                      const Curvature& k, const VariationOptions& options = {});

enum class BoundDirection { above, below };

/// Three unit-speed sides: x -> y, x -> z and y -> z.
struct GeodesicTriangle {
  SampledPath xy;
  SampledPath xz;
  SampledPath yz;
};

GeodesicTriangle geodesic_triangle(const SpaceHandle& space, const Point& x, const Point& y,
                                   const Point& z, double resolution);

struct BoundWitness {
  Point x, y, z;
  Side side_u = Side::xy;
  Side side_v = Side::xy;
  double s_u = 0.0;
  double s_v = 0.0;
  Point u, v;
  double d_space = 0.0;  // d(u, v)
  double d_model = 0.0;  // d_k(u_bar, v_bar)
  double excess = 0.0;   // positive when the inequality fails
};

struct CurvatureBoundReport {
  BoundDirection direction = BoundDirection::above;
  double k = 0.0;
  std::size_t trials = 0;
  std::size_t pairs = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;     // degenerate sampled triangles
  double max_deviation = 0.0;  // max |d(u,v) - d_k(u_bar,v_bar)|
  double worst_excess = 0.0;
  std::optional<BoundWitness> witness;  // worst violation, if any
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool holds = false;
};

/// Scans side points u, v on an explicit triangle over a regular grid of
/// samples_per_side positions per side (endpoints excluded) and checks
/// d(u,v) <= d_k (above) or >= d_k (below).
CurvatureBoundReport check_triangle(const GeodesicTriangle& tri, const Curvature& k,
                                    BoundDirection direction, int samples_per_side = 16);

/// Random triangles with vertices within `radius` of `center`, with
/// pairs_per_triangle random (u, v) side pairs each.
CurvatureBoundReport curvature_bound_test(const SpaceHandle& space, const Point& center,
                                          double radius, const Curvature& k,
                                          BoundDirection direction, std::size_t trials,
                                          std::uint64_t seed, std::size_t pairs_per_triangle = 4);

}  // namespace alexandrov
