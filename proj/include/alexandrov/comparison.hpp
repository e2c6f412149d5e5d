#pragma once

#include <array>

#include "alexandrov/model_spaces.hpp"

namespace alexandrov {

/// Side lengths of a triangle seen from one vertex x: `a` = d(x, y) and
/// `b` = d(x, z) are adjacent to x, `c` = d(y, z) is opposite.
struct TriangleSides {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double perimeter() const { return a + b + c; }
};

/// How a side triple relates to the realizability bounds of M^2_k.
///   strict:       perimeter < D_k
///   loose:        D_k <= perimeter < 2 D_k (realizable; flagged)
///   inadmissible: negative side, triangle inequality or perimeter >= 2 D_k
enum class Admissibility { strict, loose, inadmissible };

Admissibility admissibility(const TriangleSides& sides, const Curvature& k);

/// Angle at the vertex between sides a and b of the comparison triangle in
/// M^2_k, in [0, pi]. Requires a > 0, b > 0 and admissible sides.
double comparison_angle(const TriangleSides& sides, const Curvature& k);

enum class Side { xy, xz, yz };

struct ComparisonTriangle {
  Curvature k;
  std::array<ModelPoint, 3> vertices;  // x, y, z
  TriangleSides sides;
  /// Perimeter lies in [D_k, 2 D_k): realizable, but beyond the stricter bound.
  bool beyond_strict_bound = false;

  double side_length(Side side) const;
};

/// Canonical comparison triangle: x at the chart origin, y along the +x
/// axis, z in the upper half at the comparison angle.
ComparisonTriangle embed_triangle(const TriangleSides& sides, const Curvature& k);

/// Point at arc length s from the first named vertex of `side`.
ModelPoint comparison_point(const ComparisonTriangle& tri, Side side, double s);

}  // namespace alexandrov
