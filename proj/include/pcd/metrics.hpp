#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "pcd/angle.hpp"
#include "pcd/density.hpp"
#include "pcd/dirac_mixture.hpp"
#include "pcd/errors.hpp"

namespace pcd {

/// n-th trigonometric moment of the mixture: (1/L) sum_i exp(i n theta_i).
inline std::complex<double> trig_moment_dm(const DiracMixture& samples, int n) {
  if (n < 1) throw ValidationError("moment order must be >= 1");
  std::complex<double> acc{0.0, 0.0};
  for (const Vec2& x : samples.samples()) {
    const double a = n * std::atan2(x.y, x.x);
    acc += std::complex<double>{std::cos(a), std::sin(a)};
  }
  return acc / static_cast<double>(samples.size());
}

/// n-th trigonometric moment of the continuous density by trapezoid quadrature
/// on a uniform periodic grid.
inline std::complex<double> trig_moment_continuous(const CircularDensity& density, int n,
                                                   int grid_size = 4096) {
  if (n < 1) throw ValidationError("moment order must be >= 1");
  if (grid_size < 256) throw ValidationError("moment quadrature grid must be >= 256");
  const double h = kTwoPi / (grid_size - 1);
  std::complex<double> acc{0.0, 0.0};
  for (int j = 0; j < grid_size; ++j) {
    const double t = (j == grid_size - 1) ? kTwoPi : h * j;
    const double w = (j == 0 || j == grid_size - 1) ? 0.5 : 1.0;
    const double f = density(t);
    acc += w * f * std::complex<double>{std::cos(n * t), std::sin(n * t)};
  }
  return acc * h;
}

/// Mean resultant length |m1| of the mixture, in [0, 1].
inline double resultant_length(const DiracMixture& samples) {
  return std::abs(trig_moment_dm(samples, 1));
}

/// Circular standard deviation sqrt(-2 ln |m1|).
inline double circular_std(const DiracMixture& samples) {
  const double r = resultant_length(samples);
  if (r <= 0.0) return std::numeric_limits<double>::infinity();
  if (r >= 1.0) return 0.0;
  return std::sqrt(-2.0 * std::log(r));
}

/// Circular Wasserstein-1 distance between the mixture and the reference,
/// both discretized to `resolution` uniform angular bins.
///
/// On the circle, W1 = min over cut points c of integral |F_dm - F_ref| with the
/// CDFs taken from the cut; the minimum is attained when the cumulative
/// difference D is re-centered at its median, so the scan over cuts reduces to
/// h * sum_k |D_k - median(D)|.
inline double circular_wasserstein(const DiracMixture& samples,
                                   const CircularDensity& density, int resolution) {
  if (resolution < static_cast<int>(10 * samples.size()))
    throw ValidationError("wasserstein resolution must be >= 10 * sample count");
  const std::size_t R = static_cast<std::size_t>(resolution);
  const double h = kTwoPi / static_cast<double>(R);

  std::vector<double> diff(R, 0.0);
  const double atom = 1.0 / static_cast<double>(samples.size());
  for (const Vec2& x : samples.samples()) {
    std::size_t bin = static_cast<std::size_t>(angle_of(x) / h);
    if (bin >= R) bin = R - 1;
    diff[bin] += atom;
  }

  std::vector<double> ref(R);
  double total = 0.0;
  for (std::size_t k = 0; k < R; ++k) {
    ref[k] = density(h * (static_cast<double>(k) + 0.5));
    total += ref[k];
  }
  for (std::size_t k = 0; k < R; ++k) diff[k] -= ref[k] / total;

  double running = 0.0;
  std::vector<double> cum(R);
  for (std::size_t k = 0; k < R; ++k) {
    running += diff[k];
    cum[k] = running;
  }

  std::vector<double> sorted = cum;
  std::nth_element(sorted.begin(), sorted.begin() + R / 2, sorted.end());
  const double median = sorted[R / 2];

  double acc = 0.0;
  for (double d : cum) acc += std::fabs(d - median);
  return acc * h;
}

}  // namespace pcd
