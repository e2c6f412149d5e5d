#pragma once

#include <cmath>

namespace alexandrov {

/// Plain 3-vector used for chart coordinates and ambient embeddings.
/// Two-dimensional data (plane chart, taxicab plane) leaves z at zero.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double a) const { return {x * a, y * a, z * a}; }
  constexpr Vec3 operator/(double a) const { return {x / a, y / a, z / a}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double a, const Vec3& v) { return v * a; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Minkowski form x1 x2 + y1 y2 - z1 z2 used by the hyperboloid chart.
constexpr double minkowski(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y - a.z * b.z; }

}  // namespace alexandrov
