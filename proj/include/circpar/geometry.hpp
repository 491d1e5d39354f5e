#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace circpar {

constexpr double pi = std::numbers::pi;

struct Vec2 {
  double x = 0, y = 0;

  constexpr Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr bool operator==(const Vec2 &) const = default;
  constexpr double dot(const Vec2 &o) const { return x * o.x + y * o.y; }
  constexpr double cross(const Vec2 &o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 &operator+=(const Vec3 &o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3 &) const = default;
  constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3 &o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

/// Counterclockwise rotation about the origin.
inline Vec2 rotate(const Vec2 &p, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Reduces an angle to (-pi, pi].
inline double normalize_angle(double a) {
  a = std::remainder(a, 2 * pi);
  return a <= -pi ? a + 2 * pi : a;
}

} // namespace circpar
