#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "pcd/angle.hpp"
#include "pcd/density.hpp"
#include "pcd/dirac_mixture.hpp"
#include "pcd/errors.hpp"

namespace pcd {

enum class ProjectionMode { Orthographic, ExponentialMap };

inline const char* mode_name(ProjectionMode m) {
  return m == ProjectionMode::Orthographic ? "orthographic" : "expmap";
}

/// Unit projection direction with its angle cached.
struct Direction {
  Vec2 u{1.0, 0.0};
  double angle = 0.0;

  static Direction from_angle(double phi) {
    Direction d;
    d.angle = canonical_angle(phi);
    d.u = unit_vector(d.angle);
    return d;
  }

  static Direction from_vector(Vec2 v) {
    if (std::fabs(norm(v) - 1.0) > 1e-12)
      throw ValidationError("projection direction must be a unit vector");
    Direction d;
    d.u = v;
    d.angle = angle_of(v);
    return d;
  }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// Orthographic evaluation points are clamped this far inside [-1, 1]; the
// 1/|sin(alpha)| pole value is additionally capped. See eval() below.
inline constexpr double kOrthoClampEps = 1e-6;
inline constexpr double kOrthoDensityCap = 1e9;

/// One-dimensional density obtained by projecting a circular density along a
/// direction. ExponentialMap cuts the circle open opposite the direction's angle
/// (support [0, 2pi]); Orthographic marginalizes r = u . x (support [-1, 1]) and
/// carries integrable 1/|sin(alpha)| poles at the endpoints.
class UnivariateProjection {
 public:
  UnivariateProjection(CircularDensity density, Direction dir, ProjectionMode mode)
      : density_(std::move(density)), dir_(dir), mode_(mode) {}

  Interval support() const {
    return mode_ == ProjectionMode::Orthographic ? Interval{-1.0, 1.0}
                                                 : Interval{0.0, kTwoPi};
  }

  /// f(r | u); zero outside the support.
  /// Orthographic values are evaluated at r clamped into [-1+eps, 1-eps] and
  /// capped at 1e9, so querying the singular endpoints is well defined.
  double eval(double r) const {
    if (mode_ == ProjectionMode::ExponentialMap) {
      if (r < 0.0 || r > kTwoPi) return 0.0;
      return density_(r + dir_.angle);
    }
    if (r < -1.0 || r > 1.0) return 0.0;
    const double rc = std::clamp(r, -1.0 + kOrthoClampEps, 1.0 - kOrthoClampEps);
    const double alpha = std::acos(rc);
    const double jac = std::sqrt(1.0 - rc * rc);  // |sin(alpha)|
    const double v = folded_eval(alpha) / jac;
    return std::min(v, kOrthoDensityCap);
  }

  /// Density folded across the projection axis: f(ang(u)+alpha) + f(ang(u)-alpha).
  /// This is eval(cos(alpha)) * |sin(alpha)| without the pole, i.e. the integrand
  /// of the orthographic CDF in the alpha = arccos(r) chart.
  double folded_eval(double alpha) const {
    return density_(dir_.angle + alpha) + density_(dir_.angle - alpha);
  }

  ProjectionMode mode() const { return mode_; }
  const Direction& direction() const { return dir_; }
  const CircularDensity& density() const { return density_; }

 private:
  CircularDensity density_;
  Direction dir_;
  ProjectionMode mode_;
};

inline UnivariateProjection project_density(const CircularDensity& density,
                                            Direction dir, ProjectionMode mode) {
  return UnivariateProjection(density, dir, mode);
}

/// Project one circle point: r = u . x (Orthographic) or the angle of x measured
/// from the cut at ang(u), in [0, 2pi) (ExponentialMap).
inline double project_point(Vec2 x, const Direction& dir, ProjectionMode mode) {
  if (mode == ProjectionMode::Orthographic) return dot(dir.u, x);
  return canonical_angle(angle_of(x) - dir.angle);
}

inline std::vector<double> project_samples(const DiracMixture& samples,
                                           const Direction& dir, ProjectionMode mode) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Vec2& x : samples.samples()) out.push_back(project_point(x, dir, mode));
  return out;
}

/// Planar update for a projected step (Orthographic): the unique vector whose
/// projection onto u is delta_r and which has no component orthogonal to u.
inline Vec2 backproject_step(double delta_r, const Direction& dir) {
  return delta_r * dir.u;
}

/// Planar update for an angular step (ExponentialMap): delta_r along the
/// counterclockwise unit tangent at the sample's current location.
inline Vec2 backproject_step(double delta_r, const Direction& /*dir*/, Vec2 base) {
  return delta_r * tangent_at(base);
}

}  // namespace pcd
