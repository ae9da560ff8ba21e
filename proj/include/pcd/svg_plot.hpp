#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "pcd/angle.hpp"
#include "pcd/density.hpp"
#include "pcd/dirac_mixture.hpp"
#include "pcd/errors.hpp"

namespace pcd {

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

/// Static plot of a circular density with its Dirac mixture: the unit circle,
/// the density curve scaled radially outward, and one red spoke per sample whose
/// length matches the density-mode radius.
inline void write_circle_plot(const std::string& path, const CircularDensity& density,
                              const DiracMixture& samples) {
  const double size = 640.0, c = 320.0, R = 200.0, gain = 0.55;

  double fmax = 0.0;
  for (int j = 0; j < 2048; ++j) fmax = std::max(fmax, density(kTwoPi * j / 2048.0));
  if (!(fmax > 0.0))
    throw NumericalError("density has no positive values to plot", 0.0);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << size << ' '
      << size << "\">\n";
  out << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  out << "<circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << R
      << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1.5\"/>\n";

  // density curve, radius R * (1 + gain * f/fmax)
  out << "<path d=\"";
  for (int j = 0; j <= 720; ++j) {
    const double t = kTwoPi * (j % 720) / 720.0;
    const double r = R * (1.0 + gain * density(t) / fmax);
    out << (j == 0 ? 'M' : 'L') << detail::svg_num(c + r * std::cos(t)) << ' '
        << detail::svg_num(c - r * std::sin(t));
  }
  out << "Z\" fill=\"none\" stroke=\"#3a6ea5\" stroke-width=\"2\"/>\n";

  // sample spokes, all reaching the density-mode radius
  const double spoke = R * (1.0 + gain);
  for (const Vec2& x : samples.samples()) {
    const double t = angle_of(x);
    out << "<line x1=\"" << c << "\" y1=\"" << c << "\" x2=\""
        << detail::svg_num(c + spoke * std::cos(t)) << "\" y2=\""
        << detail::svg_num(c - spoke * std::sin(t))
        << "\" stroke=\"#c23b22\" stroke-width=\"1.25\" opacity=\"0.85\"/>\n";
    out << "<circle cx=\"" << detail::svg_num(c + R * std::cos(t)) << "\" cy=\""
        << detail::svg_num(c - R * std::sin(t))
        << "\" r=\"3.5\" fill=\"#c23b22\"/>\n";
  }
  out << "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open file for writing: " + path);
  f << out.str();
  if (!f) throw ParseError("write failed: " + path);
}

}  // namespace pcd
