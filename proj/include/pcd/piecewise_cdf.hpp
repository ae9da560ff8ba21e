#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "pcd/errors.hpp"

namespace pcd {

/// Union of `fixed_count` homogeneous points spanning [lo, hi] and the given
/// extra abscissae (already inside the support), sorted with duplicates within
/// 1e-14 merged.
inline std::vector<double> build_evaluation_points(double lo, double hi, int fixed_count,
                                                   std::vector<double> extra) {
  if (!(hi > lo)) throw ValidationError("evaluation support must have positive width");
  if (fixed_count < 2) throw ValidationError("need at least 2 fixed evaluation points");

  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(fixed_count) + extra.size());
  const double h = (hi - lo) / (fixed_count - 1);
  for (int j = 0; j < fixed_count; ++j) pts.push_back(lo + h * j);
  pts.front() = lo;
  pts.back() = hi;
  pts.insert(pts.end(), extra.begin(), extra.end());
  std::sort(pts.begin(), pts.end());

  std::vector<double> out;
  out.reserve(pts.size());
  for (double v : pts) {
    if (out.empty() || v - out.back() > 1e-14) out.push_back(v);
  }
  return out;
}

/// Composite-trapezoid antiderivative anchored at zero:
/// F[0] = 0, F[j] = F[j-1] + (t[j]-t[j-1]) * (f[j]+f[j-1]) / 2.
inline std::vector<double> cumtrapz(const std::vector<double>& points,
                                    const std::vector<double>& values) {
  assert(points.size() == values.size());
  std::vector<double> F(points.size(), 0.0);
  for (std::size_t j = 1; j < points.size(); ++j)
    F[j] = F[j - 1] + 0.5 * (points[j] - points[j - 1]) * (values[j] + values[j - 1]);
  return F;
}

/// Split the discretization deficit 1 - F_end symmetrically between both tails.
inline void center_cdf(std::vector<double>& cumulative) {
  if (cumulative.empty()) return;
  const double shift = 0.5 * (1.0 - cumulative.back());
  for (double& v : cumulative) v += shift;
}

/// Sorted evaluation points with density values and the centered cumulative.
/// Between points the density is treated as linear, so the CDF is piecewise
/// quadratic and segments invert in closed form.
struct PiecewiseCdf {
  std::vector<double> points;
  std::vector<double> density;
  std::vector<double> cumulative;

  static PiecewiseCdf build(std::vector<double> pts, std::vector<double> vals) {
    if (pts.size() < 2) throw ValidationError("piecewise CDF needs at least 2 points");
    PiecewiseCdf cdf;
    cdf.cumulative = cumtrapz(pts, vals);
    center_cdf(cdf.cumulative);
    cdf.points = std::move(pts);
    cdf.density = std::move(vals);
    return cdf;
  }

  /// Piecewise-quadratic forward evaluation, clamped to the end values outside.
  double value_at(double x) const {
    if (x <= points.front()) return cumulative.front();
    if (x >= points.back()) return cumulative.back();
    const std::size_t jr = static_cast<std::size_t>(
        std::upper_bound(points.begin(), points.end(), x) - points.begin());
    const std::size_t jl = jr - 1;
    const double w = points[jr] - points[jl];
    const double s = x - points[jl];
    const double m = (density[jr] - density[jl]) / w;
    return cumulative[jl] + density[jl] * s + 0.5 * m * s * s;
  }
};

struct InversionDiagnostics {
  int clamped_targets = 0;     // targets outside [F_first, F_last]
  int zero_mass_segments = 0;  // inverted inside a segment with no mass
  int linear_fallbacks = 0;    // quadratic root rejected, CDF secant used
};

/// Invert the centered CDF at a target level in (0, 1).
///
/// Locates the segment with F_L <= target < F_R by binary search and solves
/// F_L + f_L s + (m/2) s^2 = target with m the density slope. Root selection:
/// a unique quadratic root inside the segment wins; with two admissible roots
/// the one closer to the linear solution wins; otherwise the CDF secant
/// s = (target - F_L) w / (F_R - F_L) decides. Out-of-range targets clamp to
/// the nearest support point (counted in the diagnostics).
inline double invert_cdf(const PiecewiseCdf& cdf, double target,
                         InversionDiagnostics* diag = nullptr) {
  const std::vector<double>& F = cdf.cumulative;
  const std::vector<double>& t = cdf.points;
  assert(t.size() >= 2);

  if (target < F.front()) {
    if (diag) ++diag->clamped_targets;
    return t.front();
  }
  if (target >= F.back()) {
    if (diag && target > F.back()) ++diag->clamped_targets;
    return t.back();
  }

  const std::size_t jr = static_cast<std::size_t>(
      std::upper_bound(F.begin(), F.end(), target) - F.begin());
  const std::size_t jl = jr - 1;
  const double w = t[jr] - t[jl];
  const double dF = F[jr] - F[jl];
  if (!(dF > 0.0)) {
    if (diag) ++diag->zero_mass_segments;
    return t[jl] + 0.5 * w;
  }

  const double fl = cdf.density[jl];
  const double fr = cdf.density[jr];
  const double m = (fr - fl) / w;
  const double g = target - F[jl];
  const double s_lin = g * w / dF;

  if (m != 0.0) {
    const double disc = fl * fl + 2.0 * m * g;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      // stable root pair: s1 s2 = -2g/m, s1 + s2 = -2 fl / m
      double roots[2];
      int count = 0;
      if (fl + sq > 0.0) roots[count++] = 2.0 * g / (fl + sq);
      roots[count++] = -(fl + sq) / m;
      const double slack = 1e-12 * std::max(w, 1.0);
      double admissible[2];
      int n_adm = 0;
      for (int k = 0; k < count; ++k) {
        if (roots[k] >= -slack && roots[k] <= w + slack)
          admissible[n_adm++] = std::clamp(roots[k], 0.0, w);
      }
      if (n_adm == 1) return t[jl] + admissible[0];
      if (n_adm == 2) {
        const double d0 = std::fabs(admissible[0] - s_lin);
        const double d1 = std::fabs(admissible[1] - s_lin);
        return t[jl] + (d0 <= d1 ? admissible[0] : admissible[1]);
      }
    }
  }
  if (diag) ++diag->linear_fallbacks;
  return t[jl] + std::clamp(s_lin, 0.0, w);
}

}  // namespace pcd
