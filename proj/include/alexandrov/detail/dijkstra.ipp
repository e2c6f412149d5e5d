#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace alexandrov {

template <class NeighborFn>
ShortestPathTree dijkstra(std::size_t node_count, VertexId source, std::optional<VertexId> target,
                          NeighborFn&& for_each_neighbor) {
  if (source >= node_count) throw std::out_of_range("dijkstra source out of range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  ShortestPathTree tree;
  tree.source = source;
  tree.distance.assign(node_count, inf);
  tree.parent.assign(node_count, kNoVertex);
  tree.tight.assign(node_count, {});
  std::vector<char> settled(node_count, 0);

  // (distance, id) ordering settles equal-distance nodes by id.
  using Entry = std::pair<double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  tree.distance[source] = 0.0;
  queue.emplace(0.0, source);

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u] || d > tree.distance[u]) continue;
    settled[u] = 1;
    if (target && *target == u) break;
    for_each_neighbor(u, [&](VertexId v, double length) {
      if (settled[v]) return;
      const double candidate = d + length;
      double& current = tree.distance[v];
      const double tol = kTieTolerance * std::max(1.0, candidate);
      if (candidate < current - tol) {
        current = candidate;
        tree.parent[v] = u;
        tree.tight[v].assign(1, u);
        queue.emplace(candidate, v);
      } else if (std::abs(candidate - current) <= tol) {
        tree.tight[v].push_back(u);
        if (u < tree.parent[v]) tree.parent[v] = u;
      }
    });
  }
  return tree;
}

}  // namespace alexandrov
