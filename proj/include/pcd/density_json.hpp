#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcd/density.hpp"
#include "pcd/errors.hpp"

namespace pcd {

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& path,
                          const std::string& key) {
  if (!j.contains(key)) throw ParseError(path + "." + key + ": missing required field");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ParseError(path + "." + key + ": expected a number");
  return v.get<double>();
}

inline std::vector<double> json_number_array(const nlohmann::json& j,
                                             const std::string& path,
                                             const std::string& key) {
  if (!j.contains(key)) throw ParseError(path + "." + key + ": missing required field");
  const auto& v = j.at(key);
  if (!v.is_array()) throw ParseError(path + "." + key + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      throw ParseError(path + "." + key + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

inline void reject_unknown_keys(const nlohmann::json& j, const std::string& path,
                                std::initializer_list<const char*> allowed,
                                const char* family) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known)
      throw ParseError(path + "." + it.key() + ": unknown field for family '" +
                       family + "'");
  }
}

}  // namespace detail

/// Build a DensitySpec from a parsed density-spec document.
/// Throws ParseError with the offending field path on schema violations.
inline DensitySpec density_spec_from_json(const nlohmann::json& j,
                                          const std::string& path = "density") {
  using detail::json_number;
  using detail::json_number_array;
  using detail::reject_unknown_keys;

  if (!j.is_object()) throw ParseError(path + ": expected an object");
  if (!j.contains("family")) throw ParseError(path + ".family: missing required field");
  if (!j.at("family").is_string()) throw ParseError(path + ".family: expected a string");
  const std::string name = j.at("family").get<std::string>();

  DensitySpec s;
  if (name == "uniform") {
    s.family = DensityFamily::Uniform;
    reject_unknown_keys(j, path, {"family"}, "uniform");
  } else if (name == "von_mises") {
    s.family = DensityFamily::VonMises;
    reject_unknown_keys(j, path, {"family", "mu", "kappa"}, "von_mises");
    s.mu = json_number(j, path, "mu");
    s.kappa = json_number(j, path, "kappa");
  } else if (name == "wrapped_normal") {
    s.family = DensityFamily::WrappedNormal;
    reject_unknown_keys(j, path, {"family", "mu", "sigma"}, "wrapped_normal");
    s.mu = json_number(j, path, "mu");
    s.sigma = json_number(j, path, "sigma");
  } else if (name == "wrapped_cauchy") {
    s.family = DensityFamily::WrappedCauchy;
    reject_unknown_keys(j, path, {"family", "mu", "rho"}, "wrapped_cauchy");
    s.mu = json_number(j, path, "mu");
    s.rho = json_number(j, path, "rho");
  } else if (name == "wrapped_exponential") {
    s.family = DensityFamily::WrappedExponential;
    reject_unknown_keys(j, path, {"family", "lambda"}, "wrapped_exponential");
    s.lambda = json_number(j, path, "lambda");
  } else if (name == "wrapped_laplace") {
    s.family = DensityFamily::WrappedLaplace;
    reject_unknown_keys(j, path, {"family", "mu", "lambda"}, "wrapped_laplace");
    s.mu = json_number(j, path, "mu");
    s.lambda = json_number(j, path, "lambda");
  } else if (name == "mixture") {
    s.family = DensityFamily::Mixture;
    reject_unknown_keys(j, path, {"family", "components"}, "mixture");
    if (!j.contains("components"))
      throw ParseError(path + ".components: missing required field");
    const auto& comps = j.at("components");
    if (!comps.is_array()) throw ParseError(path + ".components: expected an array");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string cpath = path + ".components[" + std::to_string(i) + "]";
      const auto& c = comps[i];
      if (!c.is_object()) throw ParseError(cpath + ": expected an object");
      reject_unknown_keys(c, cpath, {"weight", "spec"}, "mixture component");
      s.weights.push_back(json_number(c, cpath, "weight"));
      if (!c.contains("spec")) throw ParseError(cpath + ".spec: missing required field");
      s.components.push_back(density_spec_from_json(c.at("spec"), cpath + ".spec"));
    }
  } else if (name == "piecewise_constant") {
    s.family = DensityFamily::PiecewiseConstant;
    reject_unknown_keys(j, path, {"family", "edges", "levels"}, "piecewise_constant");
    s.edges = json_number_array(j, path, "edges");
    s.levels = json_number_array(j, path, "levels");
  } else if (name == "tabulated") {
    s.family = DensityFamily::Tabulated;
    reject_unknown_keys(j, path, {"family", "thetas", "values"}, "tabulated");
    s.thetas = json_number_array(j, path, "thetas");
    s.values = json_number_array(j, path, "values");
  } else {
    throw ParseError(path + ".family: unknown family '" + name +
                     "' (expected one of uniform, von_mises, wrapped_normal, "
                     "wrapped_cauchy, wrapped_exponential, wrapped_laplace, mixture, "
                     "piecewise_constant, tabulated)");
  }
  return s;
}

/// Parse and fully validate a density-spec document.
/// ParseError on schema violations, ValidationError on bad parameter values
/// (including non-normalizable piecewise/tabulated specs).
inline DensitySpec parse_density_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("density document: ") + e.what());
  }
  DensitySpec s = density_spec_from_json(j);
  CircularDensity probe(s);  // runs full parameter validation + normalizability check
  (void)probe;
  return s;
}

inline nlohmann::json density_spec_to_json(const DensitySpec& s) {
  nlohmann::json j;
  j["family"] = family_name(s.family);
  switch (s.family) {
    case DensityFamily::Uniform:
      break;
    case DensityFamily::VonMises:
      j["mu"] = s.mu;
      j["kappa"] = s.kappa;
      break;
    case DensityFamily::WrappedNormal:
      j["mu"] = s.mu;
      j["sigma"] = s.sigma;
      break;
    case DensityFamily::WrappedCauchy:
      j["mu"] = s.mu;
      j["rho"] = s.rho;
      break;
    case DensityFamily::WrappedExponential:
      j["lambda"] = s.lambda;
      break;
    case DensityFamily::WrappedLaplace:
      j["mu"] = s.mu;
      j["lambda"] = s.lambda;
      break;
    case DensityFamily::Mixture: {
      nlohmann::json comps = nlohmann::json::array();
      for (std::size_t i = 0; i < s.components.size(); ++i) {
        nlohmann::json c;
        c["weight"] = s.weights[i];
        c["spec"] = density_spec_to_json(s.components[i]);
        comps.push_back(std::move(c));
      }
      j["components"] = std::move(comps);
      break;
    }
    case DensityFamily::PiecewiseConstant:
      j["edges"] = s.edges;
      j["levels"] = s.levels;
      break;
    case DensityFamily::Tabulated:
      j["thetas"] = s.thetas;
      j["values"] = s.values;
      break;
  }
  return j;
}

inline std::string serialize_density_spec(const DensitySpec& s) {
  return density_spec_to_json(s).dump(2);
}

}  // namespace pcd
