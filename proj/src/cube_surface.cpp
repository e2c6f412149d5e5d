#include "alexandrov/cube_surface.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace alexandrov {

namespace {

constexpr int kMaxLevel = 8;
constexpr int kMaxExportLevel = 4;

double coord(const Vec3& p, int axis) { return axis == 0 ? p.x : (axis == 1 ? p.y : p.z); }

bool collinear_through(const Point& a, const Point& mid, const Point& b) {
  const double direct = norm(b - a);
  const double via = norm(mid - a) + norm(b - mid);
  return via - direct <= 1e-12 * std::max(1.0, via);
}

}  // namespace

CubeSurface::CubeSurface(double edge, int level) : edge_(edge), level_(level) {
  if (!(edge > 0.0) || !std::isfinite(edge)) throw std::invalid_argument("cube edge must be positive");
  if (level < 0 || level > kMaxLevel) {
    throw std::invalid_argument("cube level must be in [0, " + std::to_string(kMaxLevel) + "]");
  }
  cells_ = 1 << level;
  tol_ = 1e-9 * edge;
  const int n = cells_;
  const double h = edge / n;
  // Surface lattice points in lexicographic (i, j, k) order.
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        const std::array<int, 3> ijk{i, j, k};
        std::uint8_t mask = 0;
        for (int axis = 0; axis < 3; ++axis) {
          if (ijk[axis] == 0) mask |= 1u << (2 * axis);
          if (ijk[axis] == n) mask |= 1u << (2 * axis + 1);
        }
        if (mask == 0) continue;
        const VertexId id = positions_.size();
        positions_.push_back({i * h, j * h, k * h});
        face_mask_.push_back(mask);
        const bool on_edge = std::popcount(static_cast<unsigned>(mask)) >= 2;
        for (int f = 0; f < 6; ++f) {
          if (!(mask & (1u << f))) continue;
          face_vertices_[f].push_back(id);
          if (on_edge) face_boundary_[f].push_back(id);
        }
      }
    }
  }
}

std::string CubeSurface::describe() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "cube_surface(edge=%g, level=%d)", edge_, level_);
  return buf;
}

unsigned CubeSurface::faces_of(const Point& p) const {
  unsigned mask = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const double c = coord(p, axis);
    if (std::abs(c) <= tol_) mask |= 1u << (2 * axis);
    if (std::abs(c - edge_) <= tol_) mask |= 1u << (2 * axis + 1);
  }
  return mask;
}

void CubeSurface::validate(const Point& p) const {
  for (int axis = 0; axis < 3; ++axis) {
    const double c = coord(p, axis);
    if (!std::isfinite(c) || c < -tol_ || c > edge_ + tol_) {
      throw std::invalid_argument("point lies outside the cube");
    }
  }
  if (faces_of(p) == 0) throw std::invalid_argument("point is not on the cube surface");
}

double CubeSurface::certified_error() const { return edge_ * std::ldexp(1.0, 1 - level_); }

std::optional<CurvatureBounds> CubeSurface::curvature_bounds() const {
  return CurvatureBounds{0.0, std::numeric_limits<double>::infinity()};
}

Point CubeSurface::interpolate(const Point& p, const Point& q, double fraction) const {
  const double f = std::clamp(fraction, 0.0, 1.0);
  if (faces_of(p) & faces_of(q)) return p + (q - p) * f;
  return f < 0.5 ? p : q;
}

Point CubeSurface::node_position(VertexId id, const Point& p, const Point& q) const {
  if (id == positions_.size()) return p;
  if (id == positions_.size() + 1) return q;
  return positions_[id];
}

ShortestPathTree CubeSurface::search(const Point& p, const Point& q) const {
  const VertexId source = positions_.size();
  const VertexId target = source + 1;
  const unsigned p_faces = faces_of(p);
  const unsigned q_faces = faces_of(q);
  auto neighbors = [&](VertexId u, auto&& relax) {
    if (u == target) return;
    const Point from = node_position(u, p, q);
    const unsigned faces = u == source ? p_faces : face_mask_[u];
    for (int f = 0; f < 6; ++f) {
      if (!(faces & (1u << f))) continue;
      // Faces are convex, so a turn at a face-interior vertex can always be
      // cut short by a chord; only cube-edge vertices are needed.
      for (VertexId v : face_boundary_[f]) {
        if (v != u) relax(v, norm(positions_[v] - from));
      }
      if (q_faces & (1u << f)) relax(target, norm(q - from));
    }
  };
  return dijkstra(positions_.size() + 2, source, target, neighbors);
}

double CubeSurface::distance_impl(const Point& p, const Point& q) const {
  // A straight segment inside one flat face is already a shortest path.
  if (faces_of(p) & faces_of(q)) return norm(q - p);
  const ShortestPathTree tree = search(p, q);
  return tree.distance[positions_.size() + 1];
}

std::vector<Point> CubeSurface::simplify(std::vector<Point> poly) const {
  poly.erase(std::unique(poly.begin(), poly.end()), poly.end());
  std::vector<Point> out;
  for (const Point& pt : poly) {
    while (out.size() >= 2) {
      const Point& a = out[out.size() - 2];
      const Point& mid = out.back();
      if ((faces_of(a) & faces_of(pt)) && collinear_through(a, mid, pt)) {
        out.pop_back();
      } else {
        break;
      }
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<Point> CubeSurface::geodesic_impl(const Point& p, const Point& q) const {
  if (p == q) return {p};
  if (faces_of(p) & faces_of(q)) return {p, q};
  const ShortestPathTree tree = search(p, q);
  std::vector<Point> poly;
  for (VertexId id : tree.path_to(positions_.size() + 1)) poly.push_back(node_position(id, p, q));
  return simplify(std::move(poly));
}

std::vector<std::vector<Point>> CubeSurface::geodesics_impl(const Point& p, const Point& q,
                                                            std::size_t max_count) const {
  std::vector<std::vector<Point>> out{geodesic_impl(p, q)};
  if (out.front().size() <= 2 || max_count <= 1) return out;

  const ShortestPathTree tree = search(p, q);
  const VertexId target = positions_.size() + 1;
  // Walk tight predecessors back from the target. A step that continues in a
  // straight line through the current node reproduces a path already reached
  // through the farther predecessor directly, so it is skipped; this keeps
  // the walk proportional to the number of geometrically distinct paths.
  std::vector<VertexId> stack{target};
  std::size_t budget = 64 * max_count;
  std::function<void()> walk = [&]() {
    if (out.size() >= max_count || budget == 0) return;
    --budget;
    const VertexId v = stack.back();
    if (v == tree.source) {
      std::vector<Point> poly;
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) poly.push_back(node_position(*it, p, q));
      poly = simplify(std::move(poly));
      if (std::find(out.begin(), out.end(), poly) == out.end()) out.push_back(std::move(poly));
      return;
    }
    std::vector<VertexId> preds = tree.tight[v];
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    for (VertexId u : preds) {
      if (stack.size() >= 2) {
        const Point next = node_position(stack[stack.size() - 2], p, q);
        if (collinear_through(node_position(u, p, q), node_position(v, p, q), next)) continue;
      }
      stack.push_back(u);
      walk();
      stack.pop_back();
      if (out.size() >= max_count) return;
    }
  };
  walk();
  return out;
}

Point CubeSurface::sample_near(const Point& center, double radius, std::mt19937_64& rng) const {
  validate(center);
  const unsigned faces = faces_of(center);
  std::vector<int> options;
  for (int f = 0; f < 6; ++f) {
    if (faces & (1u << f)) options.push_back(f);
  }
  std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int face = options[pick(rng)];
  const int axis = face / 2;
  for (;;) {
    const double r = radius * std::sqrt(unit(rng));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    std::array<double, 3> c{center.x, center.y, center.z};
    c[(axis + 1) % 3] += r * std::cos(phi);
    c[(axis + 2) % 3] += r * std::sin(phi);
    c[axis] = (face % 2) ? edge_ : 0.0;
    const Point candidate{c[0], c[1], c[2]};
    bool inside = true;
    for (double v : c) inside = inside && v >= 0.0 && v <= edge_;
    if (inside) return candidate;
  }
}

MetricGraph CubeSurface::to_metric_graph() const {
  if (level_ > kMaxExportLevel) {
    throw std::invalid_argument("explicit cube graphs are limited to level " +
                                std::to_string(kMaxExportLevel));
  }
  MetricGraph g;
  for (const Vec3& p : positions_) g.add_vertex(p);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& face : face_vertices_) {
    for (std::size_t i = 0; i < face.size(); ++i) {
      for (std::size_t j = i + 1; j < face.size(); ++j) {
        const auto key = std::minmax(face[i], face[j]);
        if (seen.insert(key).second) {
          g.add_edge(key.first, key.second, norm(positions_[key.first] - positions_[key.second]));
        }
      }
    }
  }
  return g;
}

SpaceHandle build_cube_surface(double edge, int level) {
  return std::make_shared<CubeSurface>(edge, level);
}

}  // namespace alexandrov
