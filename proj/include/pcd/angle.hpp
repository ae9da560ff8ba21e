#pragma once

#include <cassert>
#include <cmath>

namespace pcd {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

/// Reduce an angle to the canonical range [0, 2*pi).
/// Reduction is idempotent: canonical_angle(canonical_angle(t)) == canonical_angle(t).
inline double canonical_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative can round back up to exactly 2*pi after the shift
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

/// Signed angular difference a - b mapped to [-pi, pi).
inline double angle_difference(double a, double b) {
  double d = canonical_angle(a - b);
  if (d >= kPi) d -= kTwoPi;
  return d;
}

/// Shortest arc length between two angles, in [0, pi].
inline double circular_distance(double a, double b) {
  return std::fabs(angle_difference(a, b));
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Point on the unit circle at the given angle.
inline Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Angle of a nonzero vector, canonicalized to [0, 2*pi).
inline double angle_of(Vec2 v) {
  assert(v.x != 0.0 || v.y != 0.0);
  return canonical_angle(std::atan2(v.y, v.x));
}

/// Unit tangent at a point of the circle, counterclockwise orientation.
/// For x on S1 this is the derivative of t -> (cos t, sin t) at the point's angle.
inline Vec2 tangent_at(Vec2 x) { return {-x.y, x.x}; }

}  // namespace pcd
