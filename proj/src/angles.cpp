#include "alexandrov/angles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace alexandrov {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_same_space(const SampledPath& a, const SampledPath& b) {
  if (a.space() != b.space()) throw std::invalid_argument("paths live in different spaces");
}

void require_common_origin(const SampledPath& gamma, const SampledPath& eta) {
  require_same_space(gamma, eta);
  const auto& space = *gamma.space();
  const double gap = space.distance(gamma.front(), eta.front());
  const double tol = 1e-9 + space.snap_distance(gamma.front()) + space.snap_distance(eta.front());
  if (gap > tol) {
    throw std::invalid_argument("paths have different origins (gap " + std::to_string(gap) + ")");
  }
}

void require_domain(const SampledPath& path, double eps) {
  const double extent = path.t_end() - path.t_begin();
  if (eps > extent * (1.0 + 1e-12)) {
    throw std::invalid_argument("grid scale " + std::to_string(eps) +
                                " exceeds path domain " + std::to_string(extent));
  }
}

double path_extent(const SampledPath& path) { return path.t_end() - path.t_begin(); }

// Comparison angles on one level's grid; angles[i][m] pairs gamma sample i
// with eta sample m. NaN marks points that collapse onto the vertex.
struct LevelGrid {
  std::vector<double> params;
  std::vector<std::vector<double>> angles;
};

LevelGrid evaluate_level(const SampledPath& gamma, const SampledPath& eta, const Curvature& k,
                         const std::vector<double>& params) {
  const auto& space = *gamma.space();
  const Point origin = gamma.front();
  const std::size_t n = params.size();
  std::vector<Point> g(n), e(n);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = gamma.point_at(gamma.t_begin() + params[i]);
    e[i] = eta.point_at(eta.t_begin() + params[i]);
    a[i] = space.distance(origin, g[i]);
    b[i] = space.distance(origin, e[i]);
  }
  LevelGrid out{params, std::vector<std::vector<double>>(n, std::vector<double>(n, kNaN))};
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i] > 0.0)) continue;
    for (std::size_t m = 0; m < n; ++m) {
      if (!(b[m] > 0.0)) continue;
      const TriangleSides sides{a[i], b[m], space.distance(g[i], e[m])};
      if (admissibility(sides, k) == Admissibility::inadmissible) {
        throw std::invalid_argument("grid triangle is not realizable in M^2_k; shrink eps0");
      }
      out.angles[i][m] = comparison_angle(sides, k);
    }
  }
  return out;
}

}  // namespace

void GridSchedule::validate() const {
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) throw std::invalid_argument("grid eps0 must be positive");
  if (!(factor > 0.0 && factor < 1.0)) throw std::invalid_argument("grid factor must lie in (0, 1)");
  if (levels < 2) throw std::invalid_argument("grid needs at least two levels");
  if (samples_per_level < 2) throw std::invalid_argument("grid needs at least two samples per level");
  if (spacing == GridSpacing::geometric && !(span > 0.0 && span < 1.0)) {
    throw std::invalid_argument("geometric grid span must lie in (0, 1)");
  }
}

double GridSchedule::eps(int level) const { return eps0 * std::pow(factor, level); }

std::vector<double> GridSchedule::samples(int level) const {
  const double e = eps(level);
  const int n = samples_per_level;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    if (spacing == GridSpacing::geometric) {
      out[i] = i == n - 1 ? e : e * std::pow(span, static_cast<double>(n - 1 - i) / (n - 1));
    } else {
      out[i] = e * static_cast<double>(i + 1) / n;
    }
  }
  return out;
}

GridSchedule GridSchedule::for_paths(double min_path_length) {
  if (!(min_path_length > 0.0)) throw std::invalid_argument("paths must have positive length");
  GridSchedule grid;
  grid.eps0 = min_path_length / 4.0;
  return grid;
}

double comparison_angle_at(const SampledPath& gamma, const SampledPath& eta, double t, double s,
                           const Curvature& k) {
  require_same_space(gamma, eta);
  const auto& space = *gamma.space();
  const Point o = gamma.front();
  const Point g = gamma.point_at(gamma.t_begin() + t);
  const Point e = eta.point_at(eta.t_begin() + s);
  return comparison_angle({space.distance(o, g), space.distance(o, e), space.distance(g, e)}, k);
}

std::function<double(double, double)> comparison_angle_map(const SampledPath& gamma,
                                                           const SampledPath& eta,
                                                           const Curvature& k) {
  require_common_origin(gamma, eta);
  return [gamma, eta, k](double t, double s) { return comparison_angle_at(gamma, eta, t, s, k); };
}

AngleEstimate estimate_angles(const SampledPath& gamma, const SampledPath& eta, const Curvature& k,
                              const GridSchedule& grid) {
  grid.validate();
  require_common_origin(gamma, eta);
  require_domain(gamma, grid.eps0);
  require_domain(eta, grid.eps0);

  AngleEstimate est;
  est.k_used = k.value();
  for (int level = 0; level < grid.levels; ++level) {
    const LevelGrid lg = evaluate_level(gamma, eta, k, grid.samples(level));
    LevelBracket br;
    br.eps = grid.eps(level);
    br.raw_sup = -std::numeric_limits<double>::infinity();
    br.raw_inf = std::numeric_limits<double>::infinity();
    for (const auto& row : lg.angles) {
      for (double theta : row) {
        if (std::isnan(theta)) continue;
        br.raw_sup = std::max(br.raw_sup, theta);
        br.raw_inf = std::min(br.raw_inf, theta);
        ++br.evaluated;
      }
    }
    if (br.evaluated == 0) {
      throw std::invalid_argument("grid level " + std::to_string(level) +
                                  " is below the path resolution");
    }
    est.per_level.push_back(br);
  }
  // Every grid point of levels >= j lies in (0, eps_j]^2.
  double run_sup = -std::numeric_limits<double>::infinity();
  double run_inf = std::numeric_limits<double>::infinity();
  for (auto it = est.per_level.rbegin(); it != est.per_level.rend(); ++it) {
    run_sup = std::max(run_sup, it->raw_sup);
    run_inf = std::min(run_inf, it->raw_inf);
    it->sup = run_sup;
    it->inf = run_inf;
  }
  est.upper = est.per_level.back().sup;
  est.lower = est.per_level.back().inf;
  est.error_bound = (est.upper - est.lower) + kAngleTolerance;
  return est;
}

AngleEstimate estimate_angles(const SampledPath& gamma, const SampledPath& eta,
                              const Curvature& k) {
  return estimate_angles(gamma, eta, k,
                         GridSchedule::for_paths(std::min(path_extent(gamma), path_extent(eta))));
}

MonotonicityReport monotonicity_check(const SampledPath& gamma, const SampledPath& eta,
                                      const Curvature& k, const GridSchedule& grid,
                                      std::optional<Monotone> expected, double slack) {
  grid.validate();
  require_common_origin(gamma, eta);
  require_domain(gamma, grid.eps0);
  require_domain(eta, grid.eps0);

  MonotonicityReport report;
  if (expected) {
    report.expected = *expected;
  } else {
    const auto bounds = gamma.space()->curvature_bounds();
    if (!bounds) throw std::invalid_argument("space declares no curvature bound");
    const bool below = bounds->lower >= k.value();  // curvature >= k
    const bool above = bounds->upper <= k.value();  // curvature <= k
    if (below && above) {
      report.expected = Monotone::constant;
    } else if (below) {
      report.expected = Monotone::nonincreasing;
    } else if (above) {
      report.expected = Monotone::nondecreasing;
    } else {
      throw std::invalid_argument("declared curvature bounds do not bracket k");
    }
  }
  report.slack = slack + gamma.space()->certified_error();

  // Positive excess = step against the expected direction.
  auto excess = [&](double before, double after) {
    const double rise = after - before;
    switch (report.expected) {
      case Monotone::nondecreasing:
        return -rise;
      case Monotone::nonincreasing:
        return rise;
      case Monotone::constant:
        return std::abs(rise);
    }
    return 0.0;
  };
  auto step = [&](double before, double after, int level, double fixed) {
    if (std::isnan(before) || std::isnan(after)) return;
    ++report.pairs_checked;
    const double e = excess(before, after);
    if (e > report.worst_violation) {
      report.worst_violation = e;
      report.worst_level = level;
      report.worst_fixed = fixed;
    }
    if (e > report.slack) ++report.violations;
  };

  for (int level = 0; level < grid.levels; ++level) {
    const LevelGrid lg = evaluate_level(gamma, eta, k, grid.samples(level));
    const std::size_t n = lg.params.size();
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 1; i < n; ++i) {
        step(lg.angles[i - 1][m], lg.angles[i][m], level, lg.params[m]);  // t moves, s fixed
        step(lg.angles[m][i - 1], lg.angles[m][i], level, lg.params[m]);  // s moves, t fixed
      }
    }
  }
  report.pass = report.violations == 0;
  return report;
}

TriangleInequalityReport angle_triangle_inequality_check(const SampledPath& gamma,
                                                         const SampledPath& eta,
                                                         const SampledPath& sigma,
                                                         const Curvature& k,
                                                         const GridSchedule& grid) {
  const AngleEstimate ge = estimate_angles(gamma, eta, k, grid);
  const AngleEstimate gs = estimate_angles(gamma, sigma, k, grid);
  const AngleEstimate se = estimate_angles(sigma, eta, k, grid);
  TriangleInequalityReport r;
  r.gamma_eta = ge.upper;
  r.gamma_sigma = gs.upper;
  r.sigma_eta = se.upper;
  r.margin = gs.upper + se.upper - ge.upper;
  r.tolerance = ge.error_bound + gs.error_bound + se.error_bound;
  r.pass = r.margin >= -r.tolerance;
  return r;
}

SupplementaryReport supplementary_angles_check(const SampledPath& gamma, double t_mid,
                                               const SampledPath& sigma, const Curvature& k,
                                               std::optional<GridSchedule> grid,
                                               double tolerance) {
  if (!(t_mid > gamma.t_begin() && t_mid < gamma.t_end())) {
    throw std::invalid_argument("t_mid must be interior to gamma's domain");
  }
  const SampledPath forward = gamma.piece(t_mid, gamma.t_end());
  const SampledPath backward = gamma.piece(t_mid, gamma.t_begin());
  const GridSchedule g =
      grid ? *grid
           : GridSchedule::for_paths(std::min(
                 {path_extent(forward), path_extent(backward), path_extent(sigma)}));
  SupplementaryReport r;
  r.forward = estimate_angles(forward, sigma, k, g);
  r.backward = estimate_angles(backward, sigma, k, g);
  r.sum = r.forward.upper + r.backward.upper;
  r.deviation = std::abs(r.sum - std::numbers::pi);
  r.tolerance = tolerance + r.forward.error_bound + r.backward.error_bound;
  const auto bounds = gamma.space()->curvature_bounds();
  r.declared_lower_bound = bounds && std::isfinite(bounds->lower);
  r.pass = r.deviation <= r.tolerance;
  return r;
}

KIndependenceReport k_independence_check(const SampledPath& gamma, const SampledPath& eta,
                                         const GridSchedule& grid,
                                         const std::vector<double>& k_values, double tolerance) {
  if (k_values.empty()) throw std::invalid_argument("k list is empty");
  KIndependenceReport r;
  r.k_values = k_values;
  r.tolerance = tolerance;
  double up_lo = std::numeric_limits<double>::infinity(), up_hi = -up_lo;
  double low_lo = up_lo, low_hi = -up_lo;
  for (double kv : k_values) {
    const AngleEstimate est = estimate_angles(gamma, eta, Curvature(kv), grid);
    up_lo = std::min(up_lo, est.upper);
    up_hi = std::max(up_hi, est.upper);
    low_lo = std::min(low_lo, est.lower);
    low_hi = std::max(low_hi, est.lower);
    r.estimates.push_back(est);
  }
  r.upper_spread = up_hi - up_lo;
  r.lower_spread = low_hi - low_lo;
  r.pass = r.upper_spread <= tolerance && r.lower_spread <= tolerance;
  return r;
}

DiagonalLimitReport diagonal_limit_check(const std::function<double(double, double)>& f, double a,
                                         const GridSchedule& grid, double rel_tol,
                                         double abs_tol) {
  grid.validate();
  DiagonalLimitReport r;
  for (int level = 0; level < grid.levels; ++level) {
    LevelBracket br;
    br.eps = grid.eps(level);
    br.raw_sup = -std::numeric_limits<double>::infinity();
    br.raw_inf = std::numeric_limits<double>::infinity();
    const std::vector<double> xs = grid.samples(level);
    for (double x : xs) {
      for (double y : xs) {
        const double v = f(a + x, a + y);
        if (std::isnan(v)) continue;
        br.raw_sup = std::max(br.raw_sup, v);
        br.raw_inf = std::min(br.raw_inf, v);
        ++br.evaluated;
      }
    }
    if (br.evaluated == 0) throw std::invalid_argument("function is undefined on the whole grid");
    br.sup = br.raw_sup;
    br.inf = br.raw_inf;
    r.gaps.push_back(br.raw_sup - br.raw_inf);
    r.per_level.push_back(br);
  }
  r.final_gap = r.gaps.back();
  r.pass = r.final_gap <= std::max(abs_tol, rel_tol * r.gaps.front());
  return r;
}

ThinTriangleSample thin_triangle_residual(const SampledPath& gamma, const SampledPath& eta,
                                          double t, double s, const Curvature& k) {
  require_same_space(gamma, eta);
  const auto& space = *gamma.space();
  const Point o = gamma.front();
  const Point g = gamma.point_at(gamma.t_begin() + t);
  const Point e = eta.point_at(eta.t_begin() + s);
  ThinTriangleSample out;
  out.t = space.distance(o, g);
  out.s = space.distance(o, e);
  out.d = space.distance(g, e);
  out.angle = comparison_angle({out.t, out.s, out.d}, k);
  out.residual = std::abs(std::cos(out.angle) - (out.s - out.d) / out.t);
  return out;
}

}  // namespace alexandrov
