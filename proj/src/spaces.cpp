#include "alexandrov/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace alexandrov {

namespace {

bool finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

std::vector<Point> drop_repeats(std::vector<Point> pts) {
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

// MetricSpace ---------------------------------------------------------------

double MetricSpace::distance(const Point& p, const Point& q) const {
  validate(p);
  validate(q);
  return distance_impl(p, q);
}

std::vector<Point> MetricSpace::geodesic(const Point& p, const Point& q) const {
  validate(p);
  validate(q);
  return geodesic_impl(p, q);
}

std::vector<std::vector<Point>> MetricSpace::geodesics(const Point& p, const Point& q,
                                                       std::size_t max_count) const {
  validate(p);
  validate(q);
  if (max_count == 0) return {};
  return geodesics_impl(p, q, max_count);
}

std::vector<std::vector<Point>> MetricSpace::geodesics_impl(const Point& p, const Point& q,
                                                            std::size_t /*max_count*/) const {
  return {geodesic_impl(p, q)};
}

// ModelSpace ----------------------------------------------------------------

std::string ModelSpace::describe() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "model(k=%g)", k_.value());
  return buf;
}

void ModelSpace::validate(const Point& p) const { validate_model_point(to_model(p), k_); }

double ModelSpace::distance_impl(const Point& p, const Point& q) const {
  return model_distance(to_model(p), to_model(q), k_);
}

Point ModelSpace::interpolate(const Point& p, const Point& q, double fraction) const {
  const ModelPoint a = to_model(p);
  const ModelPoint b = to_model(q);
  const double d = model_distance(a, b, k_);
  return geodesic_point(a, b, std::clamp(fraction, 0.0, 1.0) * d, k_).coords;
}

std::vector<Point> ModelSpace::geodesic_impl(const Point& p, const Point& q) const {
  if (p == q) return {p};
  if (k_.sign() > 0 &&
      model_distance(to_model(p), to_model(q), k_) * k_.scale() > std::numbers::pi - 1e-9) {
    throw std::domain_error("antipodal points have no unique shortest path");
  }
  return {p, q};
}

Point ModelSpace::sample_near(const Point& center, double radius, std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  return model_exp(to_model(center), phi, r, k_).coords;
}

// TaxicabPlane --------------------------------------------------------------

void TaxicabPlane::validate(const Point& p) const {
  if (!finite(p) || p.z != 0.0) {
    throw std::invalid_argument("taxicab points are finite (x, y) pairs");
  }
}

double TaxicabPlane::distance_impl(const Point& p, const Point& q) const {
  return std::abs(p.x - q.x) + std::abs(p.y - q.y);
}

Point TaxicabPlane::interpolate(const Point& p, const Point& q, double fraction) const {
  const double f = std::clamp(fraction, 0.0, 1.0);
  return p + (q - p) * f;
}

std::vector<Point> TaxicabPlane::geodesic_impl(const Point& p, const Point& q) const {
  return drop_repeats({p, Point{q.x, p.y, 0.0}, q});
}

std::vector<std::vector<Point>> TaxicabPlane::geodesics_impl(const Point& p, const Point& q,
                                                             std::size_t max_count) const {
  std::vector<std::vector<Point>> out;
  for (auto candidate : {geodesic_impl(p, q), drop_repeats({p, Point{p.x, q.y, 0.0}, q}),
                         drop_repeats({p, q})}) {
    if (out.size() < max_count && std::find(out.begin(), out.end(), candidate) == out.end()) {
      out.push_back(std::move(candidate));
    }
  }
  return out;
}

Point TaxicabPlane::sample_near(const Point& center, double radius, std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> box(-radius, radius);
  for (;;) {
    const double dx = box(rng);
    const double dy = box(rng);
    if (std::abs(dx) + std::abs(dy) <= radius) return {center.x + dx, center.y + dy, 0.0};
  }
}

// GraphSpace ----------------------------------------------------------------

GraphSpace::GraphSpace(MetricGraph graph) : graph_(std::move(graph)) {
  if (graph_.vertex_count() == 0) throw std::invalid_argument("metric graph has no vertices");
  if (!graph_.is_connected()) throw std::invalid_argument("metric graph is not connected");
}

std::string GraphSpace::describe() const {
  return "metric_graph(V=" + std::to_string(graph_.vertex_count()) +
         ", E=" + std::to_string(graph_.edge_count()) + ")";
}

void GraphSpace::validate(const Point& p) const {
  if (!finite(p)) throw std::invalid_argument("graph query point must be finite");
}

double GraphSpace::snap_distance(const Point& p) const {
  return norm(graph_.position(graph_.nearest_vertex(p)) - p);
}

double GraphSpace::distance_impl(const Point& p, const Point& q) const {
  const VertexId a = graph_.nearest_vertex(p);
  const VertexId b = graph_.nearest_vertex(q);
  if (a == b) return 0.0;
  return dijkstra(graph_, a, b).distance[b];
}

Point GraphSpace::interpolate(const Point& p, const Point& q, double fraction) const {
  return fraction < 0.5 ? p : q;
}

std::vector<Point> GraphSpace::geodesic_impl(const Point& p, const Point& q) const {
  const VertexId a = graph_.nearest_vertex(p);
  const VertexId b = graph_.nearest_vertex(q);
  std::vector<Point> out;
  for (VertexId v : dijkstra(graph_, a, b).path_to(b)) out.push_back(graph_.position(v));
  return out;
}

std::vector<std::vector<Point>> GraphSpace::geodesics_impl(const Point& p, const Point& q,
                                                           std::size_t max_count) const {
  const VertexId a = graph_.nearest_vertex(p);
  const VertexId b = graph_.nearest_vertex(q);
  const ShortestPathTree tree = dijkstra(graph_, a, b);
  std::vector<std::vector<Point>> out;
  // The tie-broken parent chain goes first so geodesics()[0] == geodesic().
  std::vector<std::vector<VertexId>> ids{tree.path_to(b)};
  for (auto& path : all_shortest_paths(tree, b, max_count)) {
    if (path != ids.front()) ids.push_back(std::move(path));
  }
  ids.resize(std::min(ids.size(), max_count));
  for (const auto& path : ids) {
    std::vector<Point> pts;
    for (VertexId v : path) pts.push_back(graph_.position(v));
    out.push_back(std::move(pts));
  }
  return out;
}

Point GraphSpace::sample_near(const Point& center, double radius, std::mt19937_64& rng) const {
  const VertexId c = graph_.nearest_vertex(center);
  const ShortestPathTree tree = dijkstra(graph_, c);
  std::vector<VertexId> ball;
  for (VertexId v = 0; v < graph_.vertex_count(); ++v) {
    if (tree.distance[v] <= radius) ball.push_back(v);
  }
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  return graph_.position(ball[pick(rng)]);
}

SpaceHandle model_space(double k) { return std::make_shared<ModelSpace>(Curvature(k)); }
SpaceHandle taxicab_plane() { return std::make_shared<TaxicabPlane>(); }
SpaceHandle graph_space(MetricGraph graph) {
  return std::make_shared<GraphSpace>(std::move(graph));
}

// SampledPath ---------------------------------------------------------------

SampledPath::SampledPath(SpaceHandle space, std::vector<PathSample> samples)
    : space_(std::move(space)), samples_(std::move(samples)) {
  if (!space_) throw std::invalid_argument("sampled path needs a space");
  if (samples_.empty()) throw std::invalid_argument("sampled path needs at least one sample");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].t)) throw std::invalid_argument("non-finite path parameter");
    if (i > 0 && !(samples_[i].t > samples_[i - 1].t)) {
      throw std::invalid_argument("path parameters must be strictly increasing");
    }
    space_->validate(samples_[i].point);
  }
}

Point SampledPath::point_at(double t) const {
  const double span = t_end() - t_begin();
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end()));
  if (!(t >= t_begin() - slack && t <= t_end() + slack)) {
    throw std::invalid_argument("parameter " + std::to_string(t) + " outside path domain [" +
                                std::to_string(t_begin()) + ", " + std::to_string(t_end()) + "]");
  }
  if (span == 0.0 || t <= t_begin()) return front();
  if (t >= t_end()) return back();
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                                   [](double value, const PathSample& s) { return value < s.t; });
  const PathSample& hi = *it;
  const PathSample& lo = *(it - 1);
  if (t == lo.t) return lo.point;
  return space_->interpolate(lo.point, hi.point, (t - lo.t) / (hi.t - lo.t));
}

SampledPath SampledPath::piece(double from, double to) const {
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  if (!(hi > lo)) throw std::invalid_argument("path piece must have positive extent");
  std::vector<PathSample> forward{{lo, point_at(lo)}};
  for (const PathSample& s : samples_) {
    if (s.t > lo && s.t < hi) forward.push_back(s);
  }
  forward.push_back({hi, point_at(hi)});

  std::vector<PathSample> out;
  out.reserve(forward.size());
  if (from <= to) {
    for (const PathSample& s : forward) out.push_back({s.t - lo, s.point});
  } else {
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) out.push_back({hi - it->t, it->point});
  }
  return SampledPath(space_, std::move(out));
}

SampledPath path_through(SpaceHandle space, const std::vector<Point>& points) {
  std::vector<PathSample> samples;
  samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    samples.push_back({static_cast<double>(i), points[i]});
  }
  return SampledPath(std::move(space), std::move(samples));
}

double path_length(const SampledPath& path) {
  if (path.size() < 2) throw std::invalid_argument("path length needs at least two samples");
  double total = 0.0;
  const auto& s = path.samples();
  for (std::size_t i = 1; i < s.size(); ++i) total += path.space()->distance(s[i - 1].point, s[i].point);
  return total;
}

SampledPath arc_length_reparam(const SampledPath& path) {
  const auto& s = path.samples();
  std::vector<PathSample> out{{0.0, s.front().point}};
  double t = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double step = path.space()->distance(out.back().point, s[i].point);
    if (step == 0.0) continue;
    t += step;
    out.push_back({t, s[i].point});
  }
  if (out.size() < 2) throw std::invalid_argument("cannot reparameterize a zero-length path");
  return SampledPath(path.space(), std::move(out));
}

namespace {

SampledPath densify(const SpaceHandle& space, const std::vector<Point>& poly, double resolution) {
  if (poly.size() == 1) return SampledPath(space, {{0.0, poly.front()}});
  std::vector<Point> pts{poly.front()};
  for (std::size_t i = 1; i < poly.size(); ++i) {
    const double len = space->distance(poly[i - 1], poly[i]);
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(len / resolution)));
    for (std::size_t j = 1; j < pieces; ++j) {
      pts.push_back(space->interpolate(poly[i - 1], poly[i], static_cast<double>(j) / pieces));
    }
    pts.push_back(poly[i]);
  }
  return arc_length_reparam(path_through(space, pts));
}

}  // namespace

SampledPath shortest_path(const SpaceHandle& space, const Point& p, const Point& q,
                          double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  return densify(space, space->geodesic(p, q), resolution);
}

std::vector<SampledPath> shortest_paths(const SpaceHandle& space, const Point& p, const Point& q,
                                        double resolution, std::size_t max_count) {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  std::vector<SampledPath> out;
  for (const auto& poly : space->geodesics(p, q, max_count)) {
    out.push_back(densify(space, poly, resolution));
  }
  return out;
}

}  // namespace alexandrov
