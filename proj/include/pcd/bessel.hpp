#pragma once

#include <cassert>
#include <cmath>

#include "pcd/angle.hpp"

namespace pcd {

/// Exponentially scaled modified Bessel function of order zero, e^{-x} * I0(x), x >= 0.
///
/// Power series for x <= 50 (terms until the relative change drops below 1e-16),
/// asymptotic expansion for larger x where the series would lose precision and
/// the unscaled value overflows long before the concentrations used in practice.
inline double bessel_i0_scaled(double x) {
  assert(x >= 0.0);
  if (x <= 50.0) {
    // I0(x) = sum_k ((x/2)^2)^k / (k!)^2; max term stays below 1e22 at x = 50
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * static_cast<double>(k));
      sum += term;
      if (term < sum * 1e-16) break;
    }
    return sum * std::exp(-x);
  }
  // e^{-x} I0(x) ~ (1 + 1/(8x) + 9/(2!(8x)^2) + 225/(3!(8x)^3) + ...) / sqrt(2 pi x)
  // with numerators prod_{j<k} (2j+1)^2; stop when terms grow or stop mattering.
  const double r = 1.0 / (8.0 * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 24; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd * r / static_cast<double>(k);
    if (next >= term || next < sum * 1e-17) {
      if (next < term) sum += next;
      break;
    }
    term = next;
    sum += term;
  }
  return sum / std::sqrt(kTwoPi * x);
}

/// Unscaled I0; overflows near x ~ 713, intended for moderate arguments.
inline double bessel_i0(double x) { return bessel_i0_scaled(x) * std::exp(x); }

}  // namespace pcd
