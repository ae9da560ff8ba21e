#pragma once

#include <stdexcept>
#include <string>

namespace pcd {

/// Malformed density-spec documents, unknown fields, wrong types.
/// The message carries the path of the offending field (e.g. "components[1].kappa").
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input with out-of-range or inconsistent values
/// (negative kappa, mixture weights that do not sum to 1, non-normalizable density, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure during evaluation or sampling (non-finite density value).
/// Carries the angle at which the failure was observed.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double theta)
      : std::runtime_error(what), theta_(theta) {}
  double theta() const { return theta_; }

 private:
  double theta_;
};

}  // namespace pcd
