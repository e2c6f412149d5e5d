#include "alexandrov/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace alexandrov {

namespace {

// Relative slack on the triangle inequality; distances from sampled paths
// routinely land an ulp or two past equality.
constexpr double kTriangleSlack = 1e-10;

// Generalized sine sn_k(x) up to the constant factor 1/sqrt|k|, which
// cancels in every ratio below.
double gen_sine(double x, const Curvature& k) {
  const double s = k.scale();
  if (k.sign() > 0) return std::sin(s * x) / s;
  if (k.sign() < 0) return std::sinh(s * x) / s;
  return x;
}

}  // namespace

Admissibility admissibility(const TriangleSides& sides, const Curvature& k) {
  const auto [a, b, c] = sides;
  if (!(a >= 0.0 && b >= 0.0 && c >= 0.0)) return Admissibility::inadmissible;
  const double slack = kTriangleSlack * sides.perimeter();
  if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
    return Admissibility::inadmissible;
  }
  const double dk = diameter(k);
  if (!(sides.perimeter() < 2.0 * dk)) return Admissibility::inadmissible;
  if (!(sides.perimeter() < dk)) return Admissibility::loose;
  return Admissibility::strict;
}

double comparison_angle(const TriangleSides& sides, const Curvature& k) {
  if (!(sides.a > 0.0) || !(sides.b > 0.0)) {
    throw std::invalid_argument("comparison angle needs positive adjacent sides");
  }
  if (admissibility(sides, k) == Admissibility::inadmissible) {
    throw std::invalid_argument("inadmissible triangle sides (" + std::to_string(sides.a) + ", " +
                                std::to_string(sides.b) + ", " + std::to_string(sides.c) +
                                ") for k = " + std::to_string(k.value()));
  }
  // Half-angle form of the law of cosines in M^2_k:
  //   sin^2(theta/2) = sn(p-a) sn(p-b) / (sn a sn b)
  //   cos^2(theta/2) = sn(p) sn(p-c)   / (sn a sn b)
  // with p the semi-perimeter. The shared denominator drops out of atan2.
  const auto [a, b, c] = sides;
  const double p = 0.5 * (a + b + c);
  const double sin_part = gen_sine(std::max(0.0, p - a), k) * gen_sine(std::max(0.0, p - b), k);
  const double cos_part = gen_sine(p, k) * gen_sine(std::max(0.0, p - c), k);
  const double theta =
      2.0 * std::atan2(std::sqrt(std::max(0.0, sin_part)), std::sqrt(std::max(0.0, cos_part)));
  return std::clamp(theta, 0.0, std::numbers::pi);
}

double ComparisonTriangle::side_length(Side side) const {
  switch (side) {
    case Side::xy:
      return sides.a;
    case Side::xz:
      return sides.b;
    case Side::yz:
      return sides.c;
  }
  return 0.0;
}

ComparisonTriangle embed_triangle(const TriangleSides& sides, const Curvature& k) {
  const double theta = comparison_angle(sides, k);
  const ModelPoint x = model_origin(k);
  const ModelPoint y = model_exp(x, 0.0, sides.a, k);
  const ModelPoint z = model_exp(x, theta, sides.b, k);
  return ComparisonTriangle{k, {x, y, z}, sides,
                            admissibility(sides, k) == Admissibility::loose};
}

ModelPoint comparison_point(const ComparisonTriangle& tri, Side side, double s) {
  const double len = tri.side_length(side);
  const double slack = 1e-12 * std::max(1.0, len);
  if (!(s >= -slack && s <= len + slack)) {
    throw std::invalid_argument("comparison point parameter " + std::to_string(s) +
                                " outside [0, " + std::to_string(len) + "]");
  }
  s = std::clamp(s, 0.0, len);
  const auto& [x, y, z] = tri.vertices;
  switch (side) {
    case Side::xy:
      return geodesic_point(x, y, s, tri.k);
    case Side::xz:
      return geodesic_point(x, z, s, tri.k);
    case Side::yz:
      return geodesic_point(y, z, s, tri.k);
  }
  return x;
}

}  // namespace alexandrov
