#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "alexandrov/comparison.hpp"
#include "alexandrov/spaces.hpp"

namespace alexandrov {

/// Tolerance attached to every comparison-angle evaluation.
inline constexpr double kAngleTolerance = 1e-9;

enum class GridSpacing { geometric, uniform };

/// Discretization of the limit eps -> 0 in the upper/lower angle. Level j
/// covers (0, eps_j]^2 with eps_j = eps0 * factor^j, sampled on a
/// samples_per_level x samples_per_level grid.
///
/// Geometric spacing places the samples at eps_j * span^(i/(n-1)), so each
/// level sees parameter ratios t/s across `span`^-1 in both directions; the
/// taxicab pair needs t << s to expose its upper angle.
struct GridSchedule {
  double eps0 = 0.25;
  double factor = 0.5;
  int levels = 12;
  int samples_per_level = 32;
  GridSpacing spacing = GridSpacing::geometric;
  double span = 1e-3;

  void validate() const;
  double eps(int level) const;
  /// Ascending parameters in (0, eps(level)].
  std::vector<double> samples(int level) const;

  /// Defaults with eps0 = min_path_length / 4.
  static GridSchedule for_paths(double min_path_length);
};

struct LevelBracket {
  double eps = 0.0;
  /// Sup/inf over every evaluated grid point inside (0, eps]^2, which makes
  /// them monotone in the level index.
  double sup = 0.0;
  double inf = 0.0;
  /// Sup/inf over this level's own grid only.
  double raw_sup = 0.0;
  double raw_inf = 0.0;
  std::size_t evaluated = 0;
};

struct AngleEstimate {
  double upper = 0.0;
  double lower = 0.0;
  std::vector<LevelBracket> per_level;
  double k_used = 0.0;
  /// (sup - inf) at the final level plus kAngleTolerance.
  double error_bound = 0.0;
};

/// k-comparison angle at gamma's origin between gamma(t) and eta(s), with
/// sides measured by the space's metric.
double comparison_angle_at(const SampledPath& gamma, const SampledPath& eta, double t, double s,
                           const Curvature& k);

/// The map (t, s) -> comparison_angle_at(gamma, eta, t, s, k).
std::function<double(double, double)> comparison_angle_map(const SampledPath& gamma,
                                                           const SampledPath& eta,
                                                           const Curvature& k);

/// Upper and lower angle between two unit-speed paths leaving a common point.
AngleEstimate estimate_angles(const SampledPath& gamma, const SampledPath& eta, const Curvature& k,
                              const GridSchedule& grid);
AngleEstimate estimate_angles(const SampledPath& gamma, const SampledPath& eta, const Curvature& k);

enum class Monotone { nondecreasing, nonincreasing, constant };

struct MonotonicityReport {
  Monotone expected = Monotone::constant;
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  double worst_violation = 0.0;
  int worst_level = -1;
  double worst_fixed = 0.0;  // the parameter held fixed at the worst step
  double slack = 0.0;
  bool pass = false;
};

/// Checks that t -> angle(gamma(t), eta(s0)) and s -> angle(gamma(t0), eta(s))
/// move in the direction forced by the space's declared curvature bounds
/// relative to k, on every level of the grid.
MonotonicityReport monotonicity_check(const SampledPath& gamma, const SampledPath& eta,
                                      const Curvature& k, const GridSchedule& grid,
                                      std::optional<Monotone> expected = std::nullopt,
                                      double slack = 1e-9);

struct TriangleInequalityReport {
  double gamma_eta = 0.0;
  double gamma_sigma = 0.0;
  double sigma_eta = 0.0;
  /// gamma_sigma + sigma_eta - gamma_eta; nonnegative when the inequality holds.
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

TriangleInequalityReport angle_triangle_inequality_check(const SampledPath& gamma,
                                                         const SampledPath& eta,
                                                         const SampledPath& sigma,
                                                         const Curvature& k,
                                                         const GridSchedule& grid);

struct SupplementaryReport {
  AngleEstimate forward;   // angle between gamma|[t, T] and sigma
  AngleEstimate backward;  // angle between gamma|[t, 0] and sigma
  double sum = 0.0;        // of the upper angles
  double deviation = 0.0;  // |sum - pi|
  double tolerance = 0.0;
  bool declared_lower_bound = false;
  bool pass = false;
};

SupplementaryReport supplementary_angles_check(const SampledPath& gamma, double t_mid,
                                               const SampledPath& sigma, const Curvature& k,
                                               std::optional<GridSchedule> grid = std::nullopt,
                                               double tolerance = 1e-6);

struct KIndependenceReport {
  std::vector<double> k_values;
  std::vector<AngleEstimate> estimates;
  double upper_spread = 0.0;
  double lower_spread = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

KIndependenceReport k_independence_check(const SampledPath& gamma, const SampledPath& eta,
                                         const GridSchedule& grid,
                                         const std::vector<double>& k_values,
                                         double tolerance = 1e-4);

struct DiagonalLimitReport {
  std::vector<LevelBracket> per_level;
  std::vector<double> gaps;  // sup - inf per level (raw grids)
  double final_gap = 0.0;
  bool pass = false;
};

/// Samples f on (a, a + eps_j]^2 for every level and checks that sup - inf
/// collapses: final gap <= max(abs_tol, rel_tol * first gap).
DiagonalLimitReport diagonal_limit_check(const std::function<double(double, double)>& f, double a,
                                         const GridSchedule& grid, double rel_tol = 1e-2,
                                         double abs_tol = 1e-12);

struct ThinTriangleSample {
  double t = 0.0;       // d(gamma(0), gamma(t))
  double s = 0.0;       // d(gamma(0), eta(s))
  double d = 0.0;       // d(gamma(t), eta(s))
  double angle = 0.0;   // comparison angle at gamma(0)
  double residual = 0.0;  // |cos(angle) - (s - d) / t|
};

ThinTriangleSample thin_triangle_residual(const SampledPath& gamma, const SampledPath& eta,
                                          double t, double s, const Curvature& k);

}  // namespace alexandrov
