#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "pcd/piecewise_cdf.hpp"
#include "pcd/projection.hpp"

namespace pcd {

/// Projected CDF in chart coordinates.
///
/// For the exponential map the chart is the support itself. For the orthographic
/// projection the CDF is integrated in x = -arccos(r) (ascending with r): there
/// the integrand is the folded density f(ang(u)+alpha) + f(ang(u)-alpha), which is
/// bounded and smooth, while the direct r-integrand carries 1/sqrt(1-r^2) poles
/// that the trapezoid rule cannot represent. Same evaluation points, same
/// inversion algebra; only the integration variable differs.
struct ProjectedCdf {
  PiecewiseCdf cdf;
  bool arccos_chart = false;

  double to_r(double x) const { return arccos_chart ? std::cos(x) : x; }
  double from_r(double r) const {
    return arccos_chart ? -std::acos(std::clamp(r, -1.0, 1.0)) : r;
  }
};

/// Evaluation grid + CDF for a projected density: `fixed_count` homogeneous points
/// spanning the support, merged with the current projected samples when
/// `adaptive` is set (clamped per the projection module's endpoint rule).
inline ProjectedCdf build_projected_cdf(const UnivariateProjection& proj,
                                        const std::vector<double>& current,
                                        int fixed_count, bool adaptive = true) {
  const Interval sup = proj.support();
  std::vector<double> extra = adaptive ? current : std::vector<double>{};
  if (proj.mode() == ProjectionMode::Orthographic) {
    for (double& r : extra)
      r = std::clamp(r, -1.0 + kOrthoClampEps, 1.0 - kOrthoClampEps);
  } else {
    for (double& r : extra) r = std::clamp(r, sup.lo, sup.hi);
  }

  std::vector<double> rpts = build_evaluation_points(sup.lo, sup.hi, fixed_count,
                                                     std::move(extra));
  ProjectedCdf out;
  if (proj.mode() == ProjectionMode::Orthographic) {
    out.arccos_chart = true;
    std::vector<double> x(rpts.size()), g(rpts.size());
    for (std::size_t j = 0; j < rpts.size(); ++j) {
      const double alpha = std::acos(std::clamp(rpts[j], -1.0, 1.0));
      x[j] = -alpha;
      g[j] = proj.folded_eval(alpha);
    }
    out.cdf = PiecewiseCdf::build(std::move(x), std::move(g));
  } else {
    std::vector<double> f(rpts.size());
    for (std::size_t j = 0; j < rpts.size(); ++j) f[j] = proj.eval(rpts[j]);
    out.cdf = PiecewiseCdf::build(std::move(rpts), std::move(f));
  }
  return out;
}

/// Invert the projected CDF at level p, returned in r coordinates.
inline double invert_projected(const ProjectedCdf& pc, double p,
                               InversionDiagnostics* diag = nullptr) {
  return pc.to_r(invert_cdf(pc.cdf, p, diag));
}

/// Midpoint-stratified quantile levels p_i = (2i-1)/(2L), i = 1..L.
inline std::vector<double> deterministic_targets(std::size_t L) {
  std::vector<double> p(L);
  for (std::size_t i = 0; i < L; ++i)
    p[i] = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(L));
  return p;
}

struct ProjectedStepResult {
  std::vector<double> steps;    // delta r per sample, in the ORIGINAL sample order
  std::vector<double> targets;  // inverted target locations r_e, nondecreasing
  ProjectedCdf projected;       // the CDF that was inverted (testing/diagnostics)
  InversionDiagnostics diagnostics;
};

namespace detail {

/// Shared tail of the 1-D matching step: invert the deterministic targets,
/// associate them to the current samples by sorted order (which minimizes the
/// total 1-D transport cost), and report steps in the original order.
inline ProjectedStepResult finish_projected_steps(ProjectedCdf pc,
                                                  const std::vector<double>& current) {
  if (current.empty()) throw ValidationError("need at least one current sample");
  const std::size_t L = current.size();

  ProjectedStepResult res;
  res.targets.resize(L);
  const std::vector<double> p = deterministic_targets(L);
  for (std::size_t i = 0; i < L; ++i)
    res.targets[i] = invert_projected(pc, p[i], &res.diagnostics);

  std::vector<std::size_t> order(L);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&current](std::size_t a, std::size_t b) {
                     return current[a] < current[b];
                   });

  res.steps.resize(L);
  for (std::size_t rank = 0; rank < L; ++rank) {
    const std::size_t i = order[rank];
    res.steps[i] = res.targets[rank] - current[i];
  }
  res.projected = std::move(pc);
  return res;
}

}  // namespace detail

/// One-dimensional cumulative matching for an arbitrary density on an interval
/// (identity chart). Returns per-sample steps toward the deterministic targets.
template <typename PdfFn>
ProjectedStepResult sample_interval(PdfFn&& pdf, Interval support,
                                    const std::vector<double>& current,
                                    int fixed_count, bool adaptive = true) {
  std::vector<double> extra;
  if (adaptive) {
    extra = current;
    for (double& r : extra) r = std::clamp(r, support.lo, support.hi);
  }
  std::vector<double> pts =
      build_evaluation_points(support.lo, support.hi, fixed_count, std::move(extra));
  std::vector<double> vals(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) vals[j] = pdf(pts[j]);

  ProjectedCdf pc;
  pc.cdf = PiecewiseCdf::build(std::move(pts), std::move(vals));
  return detail::finish_projected_steps(std::move(pc), current);
}

/// Cumulative matching for a projected circular density: builds the adaptive
/// evaluation grid, integrates, inverts the L deterministic targets and pairs
/// them with the current projected samples by sorted order.
inline ProjectedStepResult sample_projected(const UnivariateProjection& proj,
                                            const std::vector<double>& current,
                                            int fixed_count, bool adaptive = true) {
  return detail::finish_projected_steps(
      build_projected_cdf(proj, current, fixed_count, adaptive), current);
}

}  // namespace pcd
