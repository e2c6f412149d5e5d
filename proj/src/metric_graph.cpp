#include "alexandrov/metric_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace alexandrov {

VertexId MetricGraph::add_vertex(const Vec3& position) {
  positions_.push_back(position);
  adjacency_.emplace_back();
  return positions_.size() - 1;
}

void MetricGraph::add_edge(VertexId u, VertexId v, double length) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (u == v) throw std::invalid_argument("self-loop edges are not allowed");
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("edge lengths must be positive and finite");
  }
  edges_.push_back({u, v, length});
  adjacency_[u].push_back({v, length});
  adjacency_[v].push_back({u, length});
}

bool MetricGraph::is_connected() const {
  if (positions_.empty()) return true;
  std::vector<char> seen(vertex_count(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (const Adjacent& a : adjacency_[u]) {
      if (!seen[a.vertex]) {
        seen[a.vertex] = 1;
        ++count;
        stack.push_back(a.vertex);
      }
    }
  }
  return count == vertex_count();
}

VertexId MetricGraph::nearest_vertex(const Vec3& p) const {
  if (positions_.empty()) throw std::logic_error("nearest_vertex on an empty graph");
  VertexId best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (VertexId i = 0; i < positions_.size(); ++i) {
    const Vec3 d = positions_[i] - p;
    const double d2 = dot(d, d);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

MetricGraph MetricGraph::read(std::istream& in) {
  std::size_t nv = 0, ne = 0;
  if (!(in >> nv >> ne)) throw std::runtime_error("metric graph: missing 'V E' header");
  std::vector<Vec3> pos(nv);
  std::vector<char> seen(nv, 0);
  for (std::size_t i = 0; i < nv; ++i) {
    std::size_t id = 0;
    Vec3 p;
    if (!(in >> id >> p.x >> p.y >> p.z)) {
      throw std::runtime_error("metric graph: bad vertex line " + std::to_string(i + 1));
    }
    if (id >= nv || seen[id]) {
      throw std::runtime_error("metric graph: vertex id " + std::to_string(id) +
                               " out of range or repeated");
    }
    seen[id] = 1;
    pos[id] = p;
  }
  MetricGraph g;
  for (const Vec3& p : pos) g.add_vertex(p);
  for (std::size_t i = 0; i < ne; ++i) {
    std::size_t u = 0, v = 0;
    double len = 0.0;
    if (!(in >> u >> v >> len)) {
      throw std::runtime_error("metric graph: bad edge line " + std::to_string(i + 1));
    }
    g.add_edge(u, v, len);
  }
  return g;
}

void MetricGraph::write(std::ostream& out) const {
  char buf[128];
  out << vertex_count() << ' ' << edge_count() << '\n';
  for (VertexId i = 0; i < vertex_count(); ++i) {
    const Vec3& p = positions_[i];
    std::snprintf(buf, sizeof buf, "%zu %.17g %.17g %.17g\n", i, p.x, p.y, p.z);
    out << buf;
  }
  std::vector<GraphEdge> sorted(edges_.begin(), edges_.end());
  for (GraphEdge& e : sorted) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(sorted.begin(), sorted.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(a.u, a.v, a.length) < std::tie(b.u, b.v, b.length);
  });
  for (const GraphEdge& e : sorted) {
    std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", e.u, e.v, e.length);
    out << buf;
  }
}

std::vector<VertexId> ShortestPathTree::path_to(VertexId target) const {
  if (target >= distance.size() || !std::isfinite(distance[target])) {
    throw std::runtime_error("target is not reachable from the source");
  }
  std::vector<VertexId> path{target};
  while (path.back() != source) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPathTree dijkstra(const MetricGraph& graph, VertexId source,
                          std::optional<VertexId> target) {
  return dijkstra(graph.vertex_count(), source, target, [&](VertexId u, auto&& relax) {
    for (const Adjacent& a : graph.neighbors(u)) relax(a.vertex, a.length);
  });
}

std::vector<std::vector<VertexId>> all_shortest_paths(const ShortestPathTree& tree,
                                                      VertexId target, std::size_t max_count) {
  if (target >= tree.distance.size() || !std::isfinite(tree.distance[target])) {
    throw std::runtime_error("target is not reachable from the source");
  }
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> stack{target};
  // Depth-first walk back along tight predecessors, lowest id first.
  std::function<void(VertexId)> walk = [&](VertexId v) {
    if (out.size() >= max_count) return;
    if (v == tree.source) {
      out.emplace_back(stack.rbegin(), stack.rend());
      return;
    }
    std::vector<VertexId> preds = tree.tight[v];
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    for (VertexId u : preds) {
      stack.push_back(u);
      walk(u);
      stack.pop_back();
      if (out.size() >= max_count) return;
    }
  };
  walk(target);
  return out;
}

}  // namespace alexandrov
