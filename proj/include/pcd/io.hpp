#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcd/density_json.hpp"
#include "pcd/dirac_mixture.hpp"
#include "pcd/errors.hpp"
#include "pcd/sampler.hpp"
#include "pcd/version.hpp"

namespace pcd {

/// Shortest text that round-trips the double exactly (17 significant digits).
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw ParseError("write failed: " + path);
}

/// samples.csv: one row per sample, angle and planar coordinates at full
/// round-trip precision.
inline void write_samples_csv(const std::string& path, const DiracMixture& samples) {
  std::ostringstream out;
  out << "index,theta,x,y\n";
  const std::vector<double> angles = samples.angles();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << i << ',' << format_g17(angles[i]) << ',' << format_g17(samples[i].x) << ','
        << format_g17(samples[i].y) << '\n';
  }
  write_text_file(path, out.str());
}

inline DiracMixture read_samples_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty samples file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "index,theta,x,y")
    throw ParseError(path + ": expected header 'index,theta,x,y', got '" + line + "'");

  std::vector<double> thetas;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    long idx = 0;
    double theta = 0, x = 0, y = 0;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf", &idx, &theta, &x, &y) != 4)
      throw ParseError(path + ": malformed row " + std::to_string(row + 1));
    if (idx != static_cast<long>(row))
      throw ParseError(path + ": row " + std::to_string(row + 1) +
                       " has index " + std::to_string(idx));
    if (!std::isfinite(theta))
      throw ParseError(path + ": row " + std::to_string(row + 1) + " theta not finite");
    if (std::fabs(std::hypot(x, y) - 1.0) > 1e-9 ||
        circular_distance(canonical_angle(std::atan2(y, x)), canonical_angle(theta)) > 1e-9)
      throw ParseError(path + ": row " + std::to_string(row + 1) +
                       " x,y inconsistent with theta");
    thetas.push_back(canonical_angle(theta));
    ++row;
  }
  if (thetas.empty()) throw ParseError(path + ": samples file has no rows");
  return DiracMixture::from_angles(thetas);
}

/// trace.csv: per-iteration gain and step norm, plus the optional metric column.
inline void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace,
                            bool with_metric) {
  std::ostringstream out;
  out << (with_metric ? "iteration,lambda,mean_step_norm,wasserstein\n"
                      : "iteration,lambda,mean_step_norm\n");
  for (const TraceRecord& r : trace) {
    out << r.iteration << ',' << format_g17(r.lambda) << ','
        << format_g17(r.mean_step_norm);
    if (with_metric) out << ',' << format_g17(r.metric);
    out << '\n';
  }
  write_text_file(path, out.str());
}

/// Everything needed to reproduce a run bit-exactly plus where its outputs went.
struct RunManifest {
  DensitySpec density;
  SamplerConfig config;
  bool trace_metric = false;
  int metric_resolution = 2048;
  std::string version = kVersion;
  std::string samples_file;  // basenames relative to the manifest's directory
  std::string trace_file;
  std::string plot_file;
  double duration_seconds = 0.0;
};

inline nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = m.version;
  j["density"] = density_spec_to_json(m.density);
  nlohmann::json c;
  c["count"] = m.config.count;
  c["iterations"] = m.config.iterations;
  c["projections"] = m.config.projections;
  c["decay"] = m.config.decay;
  c["fixed_points"] = m.config.fixed_points;
  c["mode"] = mode_name(m.config.mode);
  c["seed"] = m.config.seed;
  c["adaptive_points"] = m.config.adaptive_points;
  c["rotation"] = m.config.rotation;
  c["threads"] = m.config.threads;
  c["early_stop"] = m.config.early_stop;
  c["trace_metric"] = m.trace_metric;
  c["metric_resolution"] = m.metric_resolution;
  j["config"] = std::move(c);
  nlohmann::json outs;
  if (!m.samples_file.empty()) outs["samples"] = m.samples_file;
  if (!m.trace_file.empty()) outs["trace"] = m.trace_file;
  if (!m.plot_file.empty()) outs["plot"] = m.plot_file;
  j["outputs"] = std::move(outs);
  j["duration_seconds"] = m.duration_seconds;
  return j;
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("manifest: expected an object");
  RunManifest m;
  if (!j.contains("density")) throw ParseError("manifest.density: missing required field");
  m.density = density_spec_from_json(j.at("density"), "manifest.density");
  if (!j.contains("config") || !j.at("config").is_object())
    throw ParseError("manifest.config: missing or not an object");
  const auto& c = j.at("config");

  auto get_int = [&c](const char* key, int fallback, bool required) {
    if (!c.contains(key)) {
      if (required) throw ParseError(std::string("manifest.config.") + key + ": missing");
      return fallback;
    }
    if (!c.at(key).is_number_integer())
      throw ParseError(std::string("manifest.config.") + key + ": expected an integer");
    return c.at(key).get<int>();
  };
  m.config.count = get_int("count", 0, true);
  m.config.iterations = get_int("iterations", 200, false);
  m.config.projections = get_int("projections", 2, false);
  m.config.fixed_points = get_int("fixed_points", 30, false);
  m.config.threads = get_int("threads", 1, false);
  m.metric_resolution = get_int("metric_resolution", 2048, false);
  if (c.contains("decay")) {
    if (!c.at("decay").is_number())
      throw ParseError("manifest.config.decay: expected a number");
    m.config.decay = c.at("decay").get<double>();
  }
  if (c.contains("rotation")) {
    if (!c.at("rotation").is_number())
      throw ParseError("manifest.config.rotation: expected a number");
    m.config.rotation = c.at("rotation").get<double>();
  }
  if (c.contains("seed")) {
    if (!c.at("seed").is_number_unsigned() && !c.at("seed").is_number_integer())
      throw ParseError("manifest.config.seed: expected an integer");
    m.config.seed = c.at("seed").get<std::uint64_t>();
  }
  if (c.contains("mode")) {
    if (!c.at("mode").is_string())
      throw ParseError("manifest.config.mode: expected a string");
    const std::string mode = c.at("mode").get<std::string>();
    if (mode == "orthographic") m.config.mode = ProjectionMode::Orthographic;
    else if (mode == "expmap") m.config.mode = ProjectionMode::ExponentialMap;
    else throw ParseError("manifest.config.mode: expected 'orthographic' or 'expmap'");
  }
  if (c.contains("adaptive_points")) {
    if (!c.at("adaptive_points").is_boolean())
      throw ParseError("manifest.config.adaptive_points: expected a boolean");
    m.config.adaptive_points = c.at("adaptive_points").get<bool>();
  }
  if (c.contains("early_stop")) {
    if (!c.at("early_stop").is_boolean())
      throw ParseError("manifest.config.early_stop: expected a boolean");
    m.config.early_stop = c.at("early_stop").get<bool>();
  }
  if (c.contains("trace_metric")) {
    if (!c.at("trace_metric").is_boolean())
      throw ParseError("manifest.config.trace_metric: expected a boolean");
    m.trace_metric = c.at("trace_metric").get<bool>();
  }
  if (j.contains("version") && j.at("version").is_string())
    m.version = j.at("version").get<std::string>();
  if (j.contains("outputs") && j.at("outputs").is_object()) {
    const auto& o = j.at("outputs");
    if (o.contains("samples")) m.samples_file = o.at("samples").get<std::string>();
    if (o.contains("trace")) m.trace_file = o.at("trace").get<std::string>();
    if (o.contains("plot")) m.plot_file = o.at("plot").get<std::string>();
  }
  if (j.contains("duration_seconds") && j.at("duration_seconds").is_number())
    m.duration_seconds = j.at("duration_seconds").get<double>();
  return m;
}

inline void write_manifest(const std::string& path, const RunManifest& m) {
  write_text_file(path, manifest_to_json(m).dump(2) + "\n");
}

inline RunManifest read_manifest(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return manifest_from_json(j);
}

}  // namespace pcd
