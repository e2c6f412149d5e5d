#include "alexandrov/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

namespace alexandrov {

namespace {

double extent(const SampledPath& path) { return path.t_end() - path.t_begin(); }

// Value at 0 of the polynomial through (t[i], q[i]).
double extrapolate_to_zero(const double* t, const double* q, int n) {
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) w *= -t[j] / (t[i] - t[j]);
    }
    value += w * q[i];
  }
  return value;
}

const SampledPath& side_path(const GeodesicTriangle& tri, Side side) {
  switch (side) {
    case Side::xy:
      return tri.xy;
    case Side::xz:
      return tri.xz;
    case Side::yz:
      return tri.yz;
  }
  return tri.xy;
}

struct PreparedTriangle {
  const GeodesicTriangle* tri;
  ComparisonTriangle model;
  Point x, y, z;
};

std::optional<PreparedTriangle> prepare(const GeodesicTriangle& tri, const Curvature& k) {
  const auto& space = *tri.xy.space();
  const Point x = tri.xy.front(), y = tri.xy.back(), z = tri.xz.back();
  const TriangleSides sides{space.distance(x, y), space.distance(x, z), space.distance(y, z)};
  if (std::min({sides.a, sides.b, sides.c}) <= 1e-12) return std::nullopt;
  if (admissibility(sides, k) == Admissibility::inadmissible) return std::nullopt;
  return PreparedTriangle{&tri, embed_triangle(sides, k), x, y, z};
}

void record(CurvatureBoundReport& report, const PreparedTriangle& pt, Side su, double s_u, Side sv,
            double s_v) {
  const auto& space = *pt.tri->xy.space();
  const SampledPath& pu = side_path(*pt.tri, su);
  const SampledPath& pv = side_path(*pt.tri, sv);
  s_u = std::clamp(s_u, 0.0, pt.model.side_length(su));
  s_v = std::clamp(s_v, 0.0, pt.model.side_length(sv));
  const Point u = pu.point_at(pu.t_begin() + std::min(s_u, extent(pu)));
  const Point v = pv.point_at(pv.t_begin() + std::min(s_v, extent(pv)));
  const double d_space = space.distance(u, v);
  const double d_model = model_distance(comparison_point(pt.model, su, s_u),
                                        comparison_point(pt.model, sv, s_v), pt.model.k);
  const double excess =
      report.direction == BoundDirection::above ? d_space - d_model : d_model - d_space;
  ++report.pairs;
  report.max_deviation = std::max(report.max_deviation, std::abs(d_space - d_model));
  if (excess > report.tolerance) ++report.violations;
  if (excess > report.worst_excess || (!report.witness && excess > report.tolerance)) {
    report.worst_excess = excess;
    if (excess > report.tolerance) {
      report.witness = BoundWitness{pt.x, pt.y, pt.z, su, sv, s_u, s_v, u, v, d_space, d_model,
                                    excess};
    }
  }
}

}  // namespace

CompactSet::CompactSet(SpaceHandle space, const std::vector<Point>& points, double net_spacing)
    : CompactSet(std::move(space),
                 [&] {
                   std::vector<SetPoint> pts;
                   for (std::size_t i = 0; i < points.size(); ++i) pts.push_back({i, points[i]});
                   return pts;
                 }(),
                 net_spacing) {}

CompactSet::CompactSet(SpaceHandle space, std::vector<SetPoint> points, double net_spacing)
    : space_(std::move(space)), points_(std::move(points)), net_spacing_(net_spacing) {
  if (!space_) throw std::invalid_argument("compact set needs a space");
  if (points_.empty()) throw std::invalid_argument("compact set is empty");
  if (!(net_spacing_ >= 0.0) || !std::isfinite(net_spacing_)) {
    throw std::invalid_argument("net spacing must be finite and nonnegative");
  }
  std::vector<std::size_t> ids;
  for (const SetPoint& sp : points_) {
    space_->validate(sp.point);
    ids.push_back(sp.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("compact set ids must be distinct");
  }
}

SetDistance distance_to_set(const Point& p, const CompactSet& set) {
  const auto& space = *set.space();
  std::vector<double> dist;
  dist.reserve(set.size());
  double best = std::numeric_limits<double>::infinity();
  for (const SetPoint& sp : set.points()) {
    dist.push_back(space.distance(p, sp.point));
    best = std::min(best, dist.back());
  }
  SetDistance out;
  out.distance = best;
  const double tie = kSetTieTolerance * std::max(1.0, best);
  bool first = true;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] - best > tie) continue;
    const SetPoint& sp = set.points()[i];
    out.tied.push_back(sp.id);
    if (first || sp.id < out.nearest.id) out.nearest = sp;
    first = false;
  }
  std::sort(out.tied.begin(), out.tied.end());
  return out;
}

MinAngle min_angle_to_set(const SampledPath& gamma, const CompactSet& set, double slack,
                          const Curvature& k, std::optional<GridSchedule> grid) {
  if (!(slack >= 0.0)) throw std::invalid_argument("slack must be nonnegative");
  if (gamma.space() != set.space()) throw std::invalid_argument("path and set live in different spaces");
  const SpaceHandle& space = gamma.space();
  const Point origin = gamma.front();
  const double ell0 = distance_to_set(origin, set).distance;
  if (!(ell0 > space->snap_distance(origin))) throw std::invalid_argument("gamma(0) lies in K");

  std::vector<SetPoint> candidates;
  std::vector<double> cand_dist;
  const double reach = ell0 + slack + kSetTieTolerance * std::max(1.0, ell0);
  for (const SetPoint& sp : set.points()) {
    const double d = space->distance(origin, sp.point);
    if (d <= reach) {
      candidates.push_back(sp);
      cand_dist.push_back(d);
    }
  }
  if (candidates.empty()) throw std::logic_error("no candidate foot points");

  MinAngle out;
  out.angle = std::numeric_limits<double>::infinity();
  const double resolution = ell0 / 64.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto reps = shortest_paths(space, origin, candidates[c].point, resolution);
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const GridSchedule g = grid ? *grid
                                  : GridSchedule::for_paths(std::min(extent(gamma), extent(reps[r])));
      FootPoint foot{candidates[c], cand_dist[c], r, estimate_angles(gamma, reps[r], k, g), false};
      if (foot.angle.upper < out.angle) {
        out.angle = foot.angle.upper;
        out.error_bound = foot.angle.error_bound;
      }
      out.feet.push_back(std::move(foot));
    }
  }
  std::sort(out.feet.begin(), out.feet.end(), [](const FootPoint& a, const FootPoint& b) {
    return std::tie(a.target.id, a.representative) < std::tie(b.target.id, b.representative);
  });
  for (FootPoint& f : out.feet) {
    f.minimizing = f.angle.upper <= out.angle + out.error_bound + f.angle.error_bound;
  }
  return out;
}

std::vector<double> default_t_schedule(double T, int count) {
  if (!(T > 0.0)) throw std::invalid_argument("path domain must be positive");
  if (count < 3) throw std::invalid_argument("schedule needs at least three points");
  std::vector<double> ts;
  for (int j = 0; j < count; ++j) ts.push_back(T / 8.0 * std::ldexp(1.0, -j));
  return ts;
}

VariationReport first_variation_check(const SampledPath& gamma, const CompactSet& set,
                                      const Curvature& k, const VariationOptions& options) {
  if (gamma.space() != set.space()) throw std::invalid_argument("path and set live in different spaces");
  const MetricSpace& space = *gamma.space();
  const std::vector<double> ts =
      options.t_schedule ? *options.t_schedule : default_t_schedule(extent(gamma));
  if (ts.size() < 3) throw std::invalid_argument("schedule needs at least three points");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0)) throw std::invalid_argument("schedule entries must be positive");
    if (i > 0 && !(ts[i] < ts[i - 1])) throw std::invalid_argument("schedule must decrease strictly");
  }
  if (ts.front() > extent(gamma) * (1.0 + 1e-12)) {
    throw std::invalid_argument("schedule exceeds the path domain");
  }

  VariationReport report;
  const Point origin = gamma.front();
  report.ell0 = distance_to_set(origin, set).distance;
  if (!(report.ell0 > space.snap_distance(origin))) throw std::invalid_argument("gamma(0) lies in K");

  for (double t : ts) {
    const double ell = distance_to_set(gamma.point_at(gamma.t_begin() + t), set).distance;
    report.quotients.push_back({t, ell, (ell - report.ell0) / t});
  }
  const std::size_t n = ts.size();
  std::vector<double> qs;
  for (const auto& q : report.quotients) qs.push_back(q.quotient);
  report.extrapolants.assign(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 2; i < n; ++i) {
    report.extrapolants[i] = extrapolate_to_zero(&ts[i - 2], &qs[i - 2], 3);
  }
  report.limit_estimate = report.extrapolants.back();
  report.limsup_estimate = extrapolate_to_zero(&ts[n - 2], &qs[n - 2], 2);

  report.slack = options.slack ? *options.slack
                               : 2.0 * set.net_spacing() + space.certified_error();
  report.min_angle = min_angle_to_set(gamma, set, report.slack, k, options.grid);
  report.angle_min = report.min_angle.angle;
  report.target = -std::cos(report.angle_min);
  report.residual = std::abs(report.limit_estimate - report.target);
  // -cos is 1-Lipschitz, so the angle bracket transfers directly.
  report.tolerance = options.base_tolerance + report.min_angle.error_bound +
                     2.0 * space.certified_error() / ts.back();
  report.upper_bound_ok = report.limsup_estimate <= report.target + report.tolerance;
  report.lower_bound_ok = report.limit_estimate >= report.target - report.tolerance;

  report.lipschitz_ok = true;
  std::vector<std::pair<double, double>> samples{{0.0, report.ell0}};
  for (const auto& q : report.quotients) samples.emplace_back(q.t, q.ell);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double slack = space.certified_error() +
                           1e-12 * std::max({1.0, samples[i].second, samples[j].second});
      if (std::abs(samples[i].second - samples[j].second) >
          std::abs(samples[i].first - samples[j].first) + slack) {
        report.lipschitz_ok = false;
      }
    }
  }
  report.pass = report.residual <= report.tolerance && report.upper_bound_ok &&
                report.lower_bound_ok && report.lipschitz_ok;
  return report;
}

GeodesicTriangle geodesic_triangle(const SpaceHandle& space, const Point& x, const Point& y,
                                   const Point& z, double resolution) {
  return {shortest_path(space, x, y, resolution), shortest_path(space, x, z, resolution),
          shortest_path(space, y, z, resolution)};
}

CurvatureBoundReport check_triangle(const GeodesicTriangle& tri, const Curvature& k,
                                    BoundDirection direction, int samples_per_side) {
  if (samples_per_side < 1) throw std::invalid_argument("need at least one sample per side");
  if (tri.xy.space() != tri.xz.space() || tri.xy.space() != tri.yz.space()) {
    throw std::invalid_argument("triangle sides live in different spaces");
  }
  CurvatureBoundReport report;
  report.direction = direction;
  report.k = k.value();
  report.tolerance = 1e-9 + tri.xy.space()->certified_error();
  report.trials = 1;
  const auto pt = prepare(tri, k);
  if (!pt) throw std::invalid_argument("triangle is degenerate or not realizable in M^2_k");
  constexpr Side kSides[] = {Side::xy, Side::xz, Side::yz};
  for (Side su : kSides) {
    for (Side sv : kSides) {
      const double lu = pt->model.side_length(su);
      const double lv = pt->model.side_length(sv);
      for (int i = 1; i <= samples_per_side; ++i) {
        for (int j = 1; j <= samples_per_side; ++j) {
          record(report, *pt, su, lu * i / (samples_per_side + 1), sv,
                 lv * j / (samples_per_side + 1));
        }
      }
    }
  }
  report.holds = report.violations == 0;
  return report;
}

CurvatureBoundReport curvature_bound_test(const SpaceHandle& space, const Point& center,
                                          double radius, const Curvature& k,
                                          BoundDirection direction, std::size_t trials,
                                          std::uint64_t seed, std::size_t pairs_per_triangle) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (!(radius > 0.0)) throw std::invalid_argument("region radius must be positive");
  if (6.0 * radius >= 2.0 * diameter(k)) {
    throw std::invalid_argument("region too large: perimeters may reach 2 D_k");
  }
  space->validate(center);
  CurvatureBoundReport report;
  report.direction = direction;
  report.k = k.value();
  report.seed = seed;
  report.trials = trials;
  report.tolerance = 1e-9 + space->certified_error();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick_side(0, 2);
  constexpr Side kSides[] = {Side::xy, Side::xz, Side::yz};
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Point x = space->sample_near(center, radius, rng);
    const Point y = space->sample_near(center, radius, rng);
    const Point z = space->sample_near(center, radius, rng);
    // Side points are drawn even for skipped triangles so the stream does
    // not depend on which triangles degenerate.
    std::vector<double> draws;
    for (std::size_t p = 0; p < pairs_per_triangle; ++p) {
      draws.push_back(pick_side(rng));
      draws.push_back(unit(rng));
      draws.push_back(pick_side(rng));
      draws.push_back(unit(rng));
    }
    if (space->distance(x, y) <= 1e-12 || space->distance(x, z) <= 1e-12 ||
        space->distance(y, z) <= 1e-12) {
      ++report.skipped;
      continue;
    }
    const GeodesicTriangle tri = geodesic_triangle(space, x, y, z, radius / 16.0);
    const auto pt = prepare(tri, k);
    if (!pt) {
      ++report.skipped;
      continue;
    }
    for (std::size_t p = 0; p < pairs_per_triangle; ++p) {
      const Side su = kSides[static_cast<int>(draws[4 * p])];
      const Side sv = kSides[static_cast<int>(draws[4 * p + 2])];
      record(report, *pt, su, draws[4 * p + 1] * pt->model.side_length(su), sv,
             draws[4 * p + 3] * pt->model.side_length(sv));
    }
  }
  report.holds = report.violations == 0;
  return report;
}

}  // namespace alexandrov
