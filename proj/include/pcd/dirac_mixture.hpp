#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pcd/angle.hpp"
#include "pcd/errors.hpp"

namespace pcd {

/// Unweighted Dirac mixture on the unit circle: L sample locations, each with
/// implicit weight 1/L. All locations are unit vectors in the plane.
class DiracMixture {
 public:
  DiracMixture() = default;

  explicit DiracMixture(std::vector<Vec2> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw ValidationError("Dirac mixture needs at least one sample");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (std::fabs(norm(samples_[i]) - 1.0) > 1e-12)
        throw ValidationError("sample " + std::to_string(i) +
                              " is not on the unit circle");
    }
  }

  static DiracMixture from_angles(const std::vector<double>& thetas) {
    std::vector<Vec2> pts;
    pts.reserve(thetas.size());
    for (double t : thetas) pts.push_back(unit_vector(t));
    return DiracMixture(std::move(pts));
  }

  std::vector<double> angles() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const Vec2& p : samples_) out.push_back(angle_of(p));
    return out;
  }

  const std::vector<Vec2>& samples() const { return samples_; }
  const Vec2& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<Vec2> samples_;
};

}  // namespace pcd
