#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "alexandrov/metric_graph.hpp"
#include "alexandrov/model_spaces.hpp"
#include "alexandrov/vec3.hpp"

namespace alexandrov {

/// Points of every space are carried as 3-vectors. Model spaces read them in
/// the chart of their curvature, the taxicab plane as (x, y, 0) and graph
/// spaces as ambient positions.
using Point = Vec3;

/// Declared Alexandrov curvature bounds; infinities mark a missing side.
struct CurvatureBounds {
  double lower;
  double upper;
};

/// A metric space with shortest paths. Instances are immutable after
/// construction and safe to query concurrently.
class MetricSpace {
 public:
  virtual ~MetricSpace() = default;

  virtual std::string kind() const = 0;
  virtual std::string describe() const { return kind(); }

  /// Throws std::invalid_argument for points outside the space's domain.
  virtual void validate(const Point& p) const = 0;

  double distance(const Point& p, const Point& q) const;

  /// Point a fraction f in [0, 1] of the way from p to q along the geodesic
  /// segment joining consecutive path samples. Graph spaces snap to the
  /// nearer endpoint.
  virtual Point interpolate(const Point& p, const Point& q, double fraction) const = 0;

  /// Canonical shortest path as a coarse polyline whose consecutive vertices
  /// can be joined with interpolate().
  std::vector<Point> geodesic(const Point& p, const Point& q) const;

  /// All shortest-path representatives the space can enumerate (at most
  /// max_count); the canonical one comes first.
  std::vector<std::vector<Point>> geodesics(const Point& p, const Point& q,
                                            std::size_t max_count) const;

  /// Additive bound on |distance() - true distance| for discretized spaces.
  virtual double certified_error() const { return 0.0; }

  /// Distance from p to the point the space actually uses for it.
  virtual double snap_distance(const Point& /*p*/) const { return 0.0; }

  virtual std::optional<CurvatureBounds> curvature_bounds() const { return std::nullopt; }

  /// Random point within distance `radius` of `center`.
  virtual Point sample_near(const Point& center, double radius, std::mt19937_64& rng) const = 0;

 protected:
  virtual double distance_impl(const Point& p, const Point& q) const = 0;
  virtual std::vector<Point> geodesic_impl(const Point& p, const Point& q) const = 0;
  virtual std::vector<std::vector<Point>> geodesics_impl(const Point& p, const Point& q,
                                                         std::size_t max_count) const;
};

using SpaceHandle = std::shared_ptr<const MetricSpace>;

/// M^2_k with its exact metric.
class ModelSpace final : public MetricSpace {
 public:
  explicit ModelSpace(Curvature k) : k_(k) {}

  const Curvature& curvature() const { return k_; }
  ModelPoint to_model(const Point& p) const { return {chart_for(k_), p}; }

  std::string kind() const override { return "model"; }
  std::string describe() const override;
  void validate(const Point& p) const override;
  Point interpolate(const Point& p, const Point& q, double fraction) const override;
  std::optional<CurvatureBounds> curvature_bounds() const override {
    return CurvatureBounds{k_.value(), k_.value()};
  }
  Point sample_near(const Point& center, double radius, std::mt19937_64& rng) const override;

 protected:
  double distance_impl(const Point& p, const Point& q) const override;
  std::vector<Point> geodesic_impl(const Point& p, const Point& q) const override;

 private:
  Curvature k_;
};

/// R^2 with the l1 metric. Shortest paths are far from unique; the
/// canonical representative is the axis-aligned L through (q.x, p.y).
class TaxicabPlane final : public MetricSpace {
 public:
  std::string kind() const override { return "taxicab"; }
  void validate(const Point& p) const override;
  Point interpolate(const Point& p, const Point& q, double fraction) const override;
  Point sample_near(const Point& center, double radius, std::mt19937_64& rng) const override;

 protected:
  double distance_impl(const Point& p, const Point& q) const override;
  std::vector<Point> geodesic_impl(const Point& p, const Point& q) const override;
  std::vector<std::vector<Point>> geodesics_impl(const Point& p, const Point& q,
                                                 std::size_t max_count) const override;
};

/// Length space of a connected metric graph. Query points snap to the
/// nearest vertex of the embedding.
class GraphSpace final : public MetricSpace {
 public:
  explicit GraphSpace(MetricGraph graph);

  const MetricGraph& graph() const { return graph_; }

  std::string kind() const override { return "metric_graph"; }
  std::string describe() const override;
  void validate(const Point& p) const override;
  Point interpolate(const Point& p, const Point& q, double fraction) const override;
  double snap_distance(const Point& p) const override;
  Point sample_near(const Point& center, double radius, std::mt19937_64& rng) const override;

 protected:
  double distance_impl(const Point& p, const Point& q) const override;
  std::vector<Point> geodesic_impl(const Point& p, const Point& q) const override;
  std::vector<std::vector<Point>> geodesics_impl(const Point& p, const Point& q,
                                                 std::size_t max_count) const override;

 private:
  MetricGraph graph_;
};

SpaceHandle model_space(double k);
SpaceHandle taxicab_plane();
SpaceHandle graph_space(MetricGraph graph);

struct PathSample {
  double t = 0.0;
  Point point;
};

/// A curve recorded as (parameter, point) samples in a space. Points between
/// samples come from the space's interpolate().
class SampledPath {
 public:
  SampledPath(SpaceHandle space, std::vector<PathSample> samples);

  const SpaceHandle& space() const { return space_; }
  const std::vector<PathSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double t_begin() const { return samples_.front().t; }
  double t_end() const { return samples_.back().t; }
  const Point& front() const { return samples_.front().point; }
  const Point& back() const { return samples_.back().point; }

  Point point_at(double t) const;

  /// The piece between parameters `from` and `to`, re-parameterized to start
  /// at 0. from > to yields the piece run backwards.
  SampledPath piece(double from, double to) const;

 private:
  SpaceHandle space_;
  std::vector<PathSample> samples_;
};

/// Path through the given points with parameters 0, 1, 2, ...
SampledPath path_through(SpaceHandle space, const std::vector<Point>& points);

/// Sum of distances between consecutive samples.
double path_length(const SampledPath& path);

/// Re-parameterizes by cumulative chord length; repeated consecutive points
/// are merged. Throws std::invalid_argument for zero-length paths.
SampledPath arc_length_reparam(const SampledPath& path);

/// Unit-speed shortest path sampled at spacing <= resolution.
SampledPath shortest_path(const SpaceHandle& space, const Point& p, const Point& q,
                          double resolution);

/// Every shortest-path representative the space exposes, unit-speed.
std::vector<SampledPath> shortest_paths(const SpaceHandle& space, const Point& p, const Point& q,
                                        double resolution, std::size_t max_count = 16);

}  // namespace alexandrov
