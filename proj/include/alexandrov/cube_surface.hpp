#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "alexandrov/spaces.hpp"

namespace alexandrov {

/// Surface of the cube [0, edge]^3, discretized by a (2^level + 1)^2 vertex
/// grid per face. Every two grid vertices of a common face are joined by
/// their straight chord, so graph paths are genuine surface paths and the
/// graph distance only overestimates the surface distance. Query points are
/// inserted into the search as extra nodes rather than snapped.
class CubeSurface final : public MetricSpace {
 public:
  CubeSurface(double edge, int level);

  double edge() const { return edge_; }
  int level() const { return level_; }
  std::size_t vertex_count() const { return positions_.size(); }
  const Vec3& vertex(VertexId id) const { return positions_.at(id); }

  /// Bit f (f = 2 * axis + side) is set when p lies on that face.
  unsigned faces_of(const Point& p) const;

  /// Explicit graph with one chord per pair of vertices sharing a face.
  /// Only offered up to level 4; the chord count grows like 16^level.
  MetricGraph to_metric_graph() const;

  std::string kind() const override { return "cube_surface"; }
  std::string describe() const override;
  void validate(const Point& p) const override;
  Point interpolate(const Point& p, const Point& q, double fraction) const override;
  /// edge * 2^(1 - level).
  double certified_error() const override;
  std::optional<CurvatureBounds> curvature_bounds() const override;
  /// Samples on a face through `center`, within chord distance `radius`.
  Point sample_near(const Point& center, double radius, std::mt19937_64& rng) const override;

 protected:
  double distance_impl(const Point& p, const Point& q) const override;
  std::vector<Point> geodesic_impl(const Point& p, const Point& q) const override;
  std::vector<std::vector<Point>> geodesics_impl(const Point& p, const Point& q,
                                                 std::size_t max_count) const override;

 private:
  ShortestPathTree search(const Point& p, const Point& q) const;
  Point node_position(VertexId id, const Point& p, const Point& q) const;
  std::vector<Point> simplify(std::vector<Point> poly) const;

  double edge_;
  int level_;
  int cells_;
  double tol_;
  std::vector<Vec3> positions_;
  std::vector<std::uint8_t> face_mask_;
  std::array<std::vector<VertexId>, 6> face_vertices_;
  std::array<std::vector<VertexId>, 6> face_boundary_;  // vertices on cube edges
};

SpaceHandle build_cube_surface(double edge, int level);

}  // namespace alexandrov
