#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pcd/angle.hpp"
#include "pcd/bessel.hpp"
#include "pcd/errors.hpp"

namespace pcd {

enum class DensityFamily {
  Uniform,
  VonMises,
  WrappedNormal,
  WrappedCauchy,
  WrappedExponential,
  WrappedLaplace,
  Mixture,
  PiecewiseConstant,
  Tabulated,
};

inline const char* family_name(DensityFamily f) {
  switch (f) {
    case DensityFamily::Uniform: return "uniform";
    case DensityFamily::VonMises: return "von_mises";
    case DensityFamily::WrappedNormal: return "wrapped_normal";
    case DensityFamily::WrappedCauchy: return "wrapped_cauchy";
    case DensityFamily::WrappedExponential: return "wrapped_exponential";
    case DensityFamily::WrappedLaplace: return "wrapped_laplace";
    case DensityFamily::Mixture: return "mixture";
    case DensityFamily::PiecewiseConstant: return "piecewise_constant";
    case DensityFamily::Tabulated: return "tabulated";
  }
  return "?";
}

/// Declarative description of a continuous density on the unit circle.
/// Only the fields of the selected family are meaningful; the rest stay at defaults.
struct DensitySpec {
  DensityFamily family = DensityFamily::Uniform;

  double mu = 0.0;      // von_mises, wrapped_normal, wrapped_cauchy, wrapped_laplace
  double kappa = 0.0;   // von_mises
  double sigma = 0.0;   // wrapped_normal
  double rho = 0.0;     // wrapped_cauchy
  double lambda = 0.0;  // wrapped_exponential, wrapped_laplace

  std::vector<double> weights;          // mixture, parallel to components
  std::vector<DensitySpec> components;  // mixture

  std::vector<double> edges;   // piecewise_constant, n+1 strictly increasing in [0, 2pi]
  std::vector<double> levels;  // piecewise_constant, n nonnegative values

  std::vector<double> thetas;  // tabulated, >= 8 strictly increasing angles in [0, 2pi)
  std::vector<double> values;  // tabulated, nonnegative values
};

namespace detail {

// Wrapped-series truncation: keep terms until the omitted tail mass is below ~1e-14.
inline int wrapped_normal_terms(double sigma) {
  return std::max(3, static_cast<int>(std::ceil(5.0 * sigma / kTwoPi)) + 2);
}

inline int wrapped_laplace_terms(double lambda) {
  return static_cast<int>(std::ceil(-std::log(1e-14) / (kTwoPi * lambda))) + 1;
}

inline void require(bool ok, const std::string& path, const std::string& message) {
  if (!ok) throw ValidationError(path.empty() ? message : path + ": " + message);
}

inline void validate_spec(const DensitySpec& s, const std::string& path, int depth) {
  require(depth <= 32, path, "mixture nesting deeper than 32 levels");
  switch (s.family) {
    case DensityFamily::Uniform:
      break;
    case DensityFamily::VonMises:
      require(std::isfinite(s.mu), path, "mu must be finite");
      require(std::isfinite(s.kappa) && s.kappa >= 0.0, path, "kappa must be >= 0");
      require(s.kappa <= 1e6, path, "kappa above 1e6 exceeds supported concentration");
      break;
    case DensityFamily::WrappedNormal:
      require(std::isfinite(s.mu), path, "mu must be finite");
      require(std::isfinite(s.sigma) && s.sigma > 0.0, path, "sigma must be > 0");
      require(s.sigma >= 1e-6 && s.sigma <= 1e4, path, "sigma must lie in [1e-6, 1e4]");
      break;
    case DensityFamily::WrappedCauchy:
      require(std::isfinite(s.mu), path, "mu must be finite");
      require(std::isfinite(s.rho) && s.rho >= 0.0 && s.rho < 1.0, path,
              "rho must lie in [0, 1)");
      require(s.rho <= 1.0 - 1e-9, path, "rho this close to 1 is numerically degenerate");
      break;
    case DensityFamily::WrappedExponential:
      require(std::isfinite(s.lambda) && s.lambda > 0.0, path, "lambda must be > 0");
      require(s.lambda <= 1e6, path, "lambda above 1e6 exceeds supported concentration");
      break;
    case DensityFamily::WrappedLaplace:
      require(std::isfinite(s.mu), path, "mu must be finite");
      require(std::isfinite(s.lambda) && s.lambda > 0.0, path, "lambda must be > 0");
      // the wrapped series needs ~5/(2 pi lambda) terms; keep that bounded
      require(s.lambda >= 1e-2 && s.lambda <= 1e6, path, "lambda must lie in [1e-2, 1e6]");
      break;
    case DensityFamily::Mixture: {
      require(!s.components.empty(), path, "mixture needs at least one component");
      require(s.weights.size() == s.components.size(), path,
              "weights and components must have equal length");
      double total = 0.0;
      for (std::size_t i = 0; i < s.weights.size(); ++i) {
        require(std::isfinite(s.weights[i]) && s.weights[i] >= 0.0,
                path + ".components[" + std::to_string(i) + "].weight",
                "must be a finite nonnegative number");
        total += s.weights[i];
      }
      require(std::fabs(total - 1.0) <= 1e-12, path,
              "weights sum to " + std::to_string(total) + ", expected 1");
      for (std::size_t i = 0; i < s.components.size(); ++i)
        validate_spec(s.components[i],
                      path + ".components[" + std::to_string(i) + "].spec", depth + 1);
      break;
    }
    case DensityFamily::PiecewiseConstant: {
      require(s.edges.size() >= 2, path + ".edges", "need at least two edges");
      require(s.levels.size() == s.edges.size() - 1, path + ".levels",
              "need exactly one level per interval (edges - 1)");
      require(s.edges.front() >= 0.0 && s.edges.back() <= kTwoPi + 1e-12, path + ".edges",
              "edges must lie in [0, 2pi]");
      for (std::size_t i = 0; i + 1 < s.edges.size(); ++i)
        require(s.edges[i] < s.edges[i + 1], path + ".edges", "edges must strictly increase");
      bool positive = false;
      for (double v : s.levels) {
        require(std::isfinite(v) && v >= 0.0, path + ".levels",
                "levels must be finite and nonnegative");
        positive = positive || v > 0.0;
      }
      require(positive, path + ".levels", "at least one level must be positive");
      break;
    }
    case DensityFamily::Tabulated: {
      require(s.thetas.size() >= 8, path + ".thetas", "need at least 8 grid nodes");
      require(s.values.size() == s.thetas.size(), path + ".values",
              "thetas and values must have equal length");
      require(s.thetas.front() >= 0.0 && s.thetas.back() < kTwoPi, path + ".thetas",
              "angles must lie in [0, 2pi)");
      for (std::size_t i = 0; i + 1 < s.thetas.size(); ++i)
        require(s.thetas[i] < s.thetas[i + 1], path + ".thetas",
                "angles must strictly increase");
      bool positive = false;
      for (double v : s.values) {
        require(std::isfinite(v) && v >= 0.0, path + ".values",
                "values must be finite and nonnegative");
        positive = positive || v > 0.0;
      }
      require(positive, path + ".values", "at least one value must be positive");
      break;
    }
  }
}

// Piecewise-linear periodic interpolation through (thetas, values).
inline double tabulated_interp(const std::vector<double>& thetas,
                               const std::vector<double>& values, double t) {
  const std::size_t n = thetas.size();
  if (t < thetas.front() || t >= thetas.back()) {
    // wrap segment from the last node back to the first one, one period later
    const double lo = thetas.back();
    const double hi = thetas.front() + kTwoPi;
    const double tq = t < thetas.front() ? t + kTwoPi : t;
    const double f = (tq - lo) / (hi - lo);
    return values.back() + f * (values.front() - values.back());
  }
  const std::size_t j =
      static_cast<std::size_t>(std::upper_bound(thetas.begin(), thetas.end(), t) -
                               thetas.begin()) - 1;
  const std::size_t k = std::min(j, n - 2);
  const double f = (t - thetas[k]) / (thetas[k + 1] - thetas[k]);
  return values[k] + f * (values[k + 1] - values[k]);
}

/// Density value of the spec exactly as written: analytic families carry their
/// closed-form normalization constants, piecewise/tabulated values are taken literally.
inline double eval_raw(const DensitySpec& s, double theta) {
  switch (s.family) {
    case DensityFamily::Uniform:
      return 1.0 / kTwoPi;
    case DensityFamily::VonMises:
      return std::exp(s.kappa * (std::cos(theta - s.mu) - 1.0)) /
             (kTwoPi * bessel_i0_scaled(s.kappa));
    case DensityFamily::WrappedNormal: {
      const double d = angle_difference(theta, s.mu);
      const int terms = wrapped_normal_terms(s.sigma);
      const double inv2s2 = 1.0 / (2.0 * s.sigma * s.sigma);
      double acc = 0.0;
      for (int k = -terms; k <= terms; ++k) {
        const double u = d + kTwoPi * k;
        acc += std::exp(-u * u * inv2s2);
      }
      return acc / (s.sigma * std::sqrt(kTwoPi));
    }
    case DensityFamily::WrappedCauchy: {
      const double c = std::cos(theta - s.mu);
      return (1.0 - s.rho * s.rho) /
             (kTwoPi * (1.0 + s.rho * s.rho - 2.0 * s.rho * c));
    }
    case DensityFamily::WrappedExponential: {
      const double d = canonical_angle(theta);
      return s.lambda * std::exp(-s.lambda * d) / (-std::expm1(-kTwoPi * s.lambda));
    }
    case DensityFamily::WrappedLaplace: {
      const double d = angle_difference(theta, s.mu);
      const int terms = wrapped_laplace_terms(s.lambda);
      double acc = 0.0;
      for (int k = -terms; k <= terms; ++k)
        acc += std::exp(-s.lambda * std::fabs(d + kTwoPi * k));
      return 0.5 * s.lambda * acc;
    }
    case DensityFamily::Mixture: {
      double acc = 0.0;
      for (std::size_t i = 0; i < s.components.size(); ++i)
        acc += s.weights[i] * eval_raw(s.components[i], theta);
      return acc;
    }
    case DensityFamily::PiecewiseConstant: {
      const double t = canonical_angle(theta);
      if (t < s.edges.front() || t >= s.edges.back()) return 0.0;
      const std::size_t j =
          static_cast<std::size_t>(std::upper_bound(s.edges.begin(), s.edges.end(), t) -
                                   s.edges.begin()) - 1;
      return s.levels[std::min(j, s.levels.size() - 1)];
    }
    case DensityFamily::Tabulated:
      return tabulated_interp(s.thetas, s.values, canonical_angle(theta));
  }
  return 0.0;
}

/// Exact integral of the spec as written over one period.
/// Analytic families are normalized by construction; piecewise and tabulated
/// specs integrate their literal values; mixtures combine component integrals.
inline double exact_raw_integral(const DensitySpec& s) {
  switch (s.family) {
    case DensityFamily::PiecewiseConstant: {
      double acc = 0.0;
      for (std::size_t i = 0; i < s.levels.size(); ++i)
        acc += s.levels[i] * (s.edges[i + 1] - s.edges[i]);
      return acc;
    }
    case DensityFamily::Tabulated: {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < s.thetas.size(); ++i)
        acc += 0.5 * (s.values[i] + s.values[i + 1]) * (s.thetas[i + 1] - s.thetas[i]);
      acc += 0.5 * (s.values.back() + s.values.front()) *
             (s.thetas.front() + kTwoPi - s.thetas.back());
      return acc;
    }
    case DensityFamily::Mixture: {
      double acc = 0.0;
      for (std::size_t i = 0; i < s.components.size(); ++i)
        acc += s.weights[i] * exact_raw_integral(s.components[i]);
      return acc;
    }
    default:
      return 1.0;
  }
}

// Rescale piecewise/tabulated nodes to unit mass; returns true if anything
// was further than 1e-6 from normalized.
inline bool normalize_in_place(DensitySpec& s, const std::string& path) {
  bool touched = false;
  switch (s.family) {
    case DensityFamily::PiecewiseConstant:
    case DensityFamily::Tabulated: {
      const double integral = exact_raw_integral(s);
      require(std::isfinite(integral) && integral > 1e-300, path,
              "density is not normalizable; computed integral = " +
                  std::to_string(integral));
      auto& vals = s.family == DensityFamily::PiecewiseConstant ? s.levels : s.values;
      for (double& v : vals) v /= integral;
      touched = std::fabs(integral - 1.0) > 1e-6;
      break;
    }
    case DensityFamily::Mixture:
      for (std::size_t i = 0; i < s.components.size(); ++i)
        touched = normalize_in_place(s.components[i],
                                     path + ".components[" + std::to_string(i) + "].spec") ||
                  touched;
      break;
    default:
      break;
  }
  return touched;
}

}  // namespace detail

/// Composite-trapezoid estimate of the raw spec's mass over [0, 2pi] on a uniform
/// grid of `grid_size` points including both endpoints. Operates on the spec as
/// written, before any renormalization.
inline double normalization_integral(const DensitySpec& spec, int grid_size) {
  if (grid_size < 64) throw ValidationError("normalization grid must have >= 64 points");
  const double h = kTwoPi / (grid_size - 1);
  double acc = 0.5 * (detail::eval_raw(spec, 0.0) + detail::eval_raw(spec, kTwoPi));
  for (int j = 1; j < grid_size - 1; ++j) acc += detail::eval_raw(spec, h * j);
  return acc * h;
}

/// Validated, normalized evaluator of a circular density.
///
/// Construction validates all parameters and renormalizes piecewise-constant and
/// tabulated nodes by their exact integrals (flagged when the correction exceeds
/// 1e-6). Evaluation is pure, periodic and safe to call concurrently.
class CircularDensity {
 public:
  explicit CircularDensity(DensitySpec spec) : spec_(std::move(spec)) {
    detail::validate_spec(spec_, "", 0);
    raw_integral_ = detail::exact_raw_integral(spec_);
    normalized_ = spec_;
    renormalized_ = detail::normalize_in_place(normalized_, "");
  }

  double operator()(double theta) const {
    const double v = detail::eval_raw(normalized_, theta);
    if (!(v >= 0.0) || !std::isfinite(v))
      throw NumericalError("density evaluation produced a non-finite value", theta);
    return v;
  }

  /// The spec as supplied by the caller, before renormalization.
  const DensitySpec& spec() const { return spec_; }

  /// True when construction had to rescale some node by more than 1e-6.
  bool renormalized() const { return renormalized_; }

  /// Exact mass of the spec as written (1 for analytic families).
  double raw_integral() const { return raw_integral_; }

 private:
  DensitySpec spec_;
  DensitySpec normalized_;
  double raw_integral_ = 1.0;
  bool renormalized_ = false;
};

}  // namespace pcd
