#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "alexandrov/vec3.hpp"

namespace alexandrov {

using VertexId = std::size_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct GraphEdge {
  VertexId u = 0;
  VertexId v = 0;
  double length = 0.0;
};

struct Adjacent {
  VertexId vertex = 0;
  double length = 0.0;
};

/// Undirected graph with positive edge lengths and an embedding position per
/// vertex. Vertex ids are dense, 0..vertex_count()-1, in insertion order.
class MetricGraph {
 public:
  VertexId add_vertex(const Vec3& position);
  void add_edge(VertexId u, VertexId v, double length);

  std::size_t vertex_count() const { return positions_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Vec3& position(VertexId id) const { return positions_.at(id); }
  std::span<const GraphEdge> edges() const { return edges_; }
  std::span<const Adjacent> neighbors(VertexId id) const { return adjacency_.at(id); }

  bool is_connected() const;

  /// Nearest vertex to `p` in the embedding (lowest id on ties).
  VertexId nearest_vertex(const Vec3& p) const;

  /// Line format: "V E", then V lines "id x y z", then E lines "u v length".
  static MetricGraph read(std::istream& in);
  /// Vertices by id, edges sorted by (min id, max id, length).
  void write(std::ostream& out) const;

 private:
  std::vector<Vec3> positions_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

/// Output of a single-source shortest-path search.
struct ShortestPathTree {
  std::vector<double> distance;
  /// Tie-broken predecessor: the lowest-id vertex among tight predecessors.
  std::vector<VertexId> parent;
  /// Every predecessor whose edge is tight within the tie tolerance.
  std::vector<std::vector<VertexId>> tight;
  VertexId source = kNoVertex;

  std::vector<VertexId> path_to(VertexId target) const;
};

/// Relative tolerance under which two path lengths count as a tie.
inline constexpr double kTieTolerance = 1e-12;

/// Single-source shortest paths. `for_each_neighbor(u, relax)` must call
/// relax(v, length) for every edge leaving u. Stops once `target` is settled
/// when one is given.
template <class NeighborFn>
ShortestPathTree dijkstra(std::size_t node_count, VertexId source, std::optional<VertexId> target,
                          NeighborFn&& for_each_neighbor);

ShortestPathTree dijkstra(const MetricGraph& graph, VertexId source,
                          std::optional<VertexId> target = std::nullopt);

/// Enumerates distinct tight-predecessor paths from tree.source to target,
/// in lexicographic order of reversed vertex sequence, at most max_count.
std::vector<std::vector<VertexId>> all_shortest_paths(const ShortestPathTree& tree,
                                                      VertexId target, std::size_t max_count);

}  // namespace alexandrov

#include "alexandrov/detail/dijkstra.ipp"
