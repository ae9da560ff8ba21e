#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "pcd/density.hpp"
#include "pcd/dirac_mixture.hpp"
#include "pcd/projection.hpp"
#include "pcd/rng.hpp"
#include "pcd/univariate_sampler.hpp"

namespace pcd {

struct SamplerConfig {
  int count = 15;        // L, number of samples
  int iterations = 200;  // M
  int projections = 2;   // N per iteration
  double decay = 0.99;   // lambda0
  int fixed_points = 30; // homogeneous evaluation points per projection
  ProjectionMode mode = ProjectionMode::Orthographic;
  std::uint64_t seed = 0;
  bool adaptive_points = true;  // merge projected samples into the evaluation grid
  double rotation = 0.0;        // rotates the initialization and every phi0 draw
  int threads = 1;              // >1 evaluates the N projections concurrently
  bool early_stop = false;      // optional: stop after 5 iterations below 1e-10 step
};

inline void validate_config(const SamplerConfig& c) {
  if (c.count < 1) throw ValidationError("sample count must be >= 1");
  if (c.iterations < 1) throw ValidationError("iteration count must be >= 1");
  if (c.projections < 1) throw ValidationError("projections per iteration must be >= 1");
  if (!(c.decay > 0.0) || c.decay > 1.0)
    throw ValidationError("decay factor must lie in (0, 1]");
  if (c.fixed_points < 2) throw ValidationError("fixed evaluation points must be >= 2");
  if (c.threads < 1) throw ValidationError("thread count must be >= 1");
  if (!std::isfinite(c.rotation)) throw ValidationError("rotation must be finite");
}

struct TraceRecord {
  int iteration = 0;          // 1-based
  double lambda = 1.0;        // gain used by this iteration
  double mean_step_norm = 0;  // (1/L) sum of applied planar step norms
  double metric = std::numeric_limits<double>::quiet_NaN();  // optional, NaN when off
};

struct SampleRunResult {
  DiracMixture samples;
  std::vector<TraceRecord> trace;
  int degenerate_skips = 0;  // samples left in place because the update hit the origin
  int iterations_run = 0;
};

/// Projection direction angles of one iteration: pi * n / N + phi0 for n = 0..N-1.
inline std::vector<double> projection_angles(int n_projections, double phi0) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_projections));
  for (int n = 0; n < n_projections; ++n)
    out.push_back(kPi * static_cast<double>(n) / n_projections + phi0);
  return out;
}

/// L independent angles uniform on [0, 2pi) from the counter generator
/// (draw indices 0..L-1), optionally rotated, mapped to unit vectors.
inline DiracMixture init_samples(int count, std::uint64_t seed, double rotation = 0.0) {
  if (count < 1) throw ValidationError("sample count must be >= 1");
  CounterRng rng(seed);
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    angles.push_back(canonical_angle(kTwoPi * rng.uniform(static_cast<std::uint64_t>(i)) +
                                     rotation));
  return DiracMixture::from_angles(angles);
}

namespace detail {

// The 1-D matching needs a total order on the projected samples; exactly
// coincident start angles are separated by alternating +-1e-9 rad nudges.
inline std::vector<double> break_coincidences(std::vector<double> angles) {
  std::vector<std::size_t> order(angles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&angles](std::size_t a, std::size_t b) {
    return angles[a] < angles[b];
  });
  std::size_t run = 0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (angles[order[k]] == angles[order[run]]) {
      const std::size_t j = k - run;  // 1st, 2nd, ... duplicate of this run
      const double nudge = 1e-9 * static_cast<double>((j + 1) / 2);
      angles[order[k]] = canonical_angle(angles[order[k]] +
                                         (j % 2 == 1 ? nudge : -nudge));
    } else {
      run = k;
    }
  }
  return angles;
}

// Accumulated planar updates of a single projection direction.
inline std::vector<Vec2> projection_updates(const DiracMixture& samples,
                                            const CircularDensity& density,
                                            const SamplerConfig& config, double phi) {
  const Direction dir = Direction::from_angle(phi);
  const UnivariateProjection proj = project_density(density, dir, config.mode);
  const std::vector<double> r = project_samples(samples, dir, config.mode);
  const ProjectedStepResult res =
      sample_projected(proj, r, config.fixed_points, config.adaptive_points);

  std::vector<Vec2> updates(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    updates[i] = config.mode == ProjectionMode::Orthographic
                     ? backproject_step(res.steps[i], dir)
                     : backproject_step(res.steps[i], dir, samples[i]);
  }
  return updates;
}

}  // namespace detail

/// One iteration of the multi-projection loop: N symmetric projections with base
/// angle phi0, accumulated planar updates, gain lambda/N, renormalization to the
/// circle. Returns the updated mixture and the mean applied step norm.
inline std::pair<DiracMixture, double> iteration_step(
    const DiracMixture& samples, const CircularDensity& density,
    const SamplerConfig& config, double lambda, double phi0,
    int* degenerate_skips = nullptr) {
  const std::size_t L = samples.size();
  const int N = config.projections;

  // Per-projection contributions are computed independently (optionally in
  // parallel) and reduced in fixed order, so results never depend on scheduling.
  std::vector<std::vector<Vec2>> contributions(static_cast<std::size_t>(N));
  const std::vector<double> phis = projection_angles(N, phi0);
  if (config.threads > 1 && N > 1) {
    std::vector<std::future<std::vector<Vec2>>> futures;
    futures.reserve(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n)
      futures.push_back(std::async(std::launch::async, [&, n] {
        return detail::projection_updates(samples, density, config, phis[n]);
      }));
    for (int n = 0; n < N; ++n) contributions[n] = futures[n].get();
  } else {
    for (int n = 0; n < N; ++n)
      contributions[n] = detail::projection_updates(samples, density, config, phis[n]);
  }

  std::vector<Vec2> acc(L);
  for (int n = 0; n < N; ++n)
    for (std::size_t i = 0; i < L; ++i) acc[i] = acc[i] + contributions[n][i];

  std::vector<Vec2> updated(L);
  double step_sum = 0.0;
  const double gain = lambda / N;
  for (std::size_t i = 0; i < L; ++i) {
    const Vec2 step = gain * acc[i];
    step_sum += norm(step);
    const Vec2 cand = samples[i] + step;
    if (norm(cand) < 1e-12) {
      // renormalization undefined at the origin; keep the previous location
      if (degenerate_skips) ++(*degenerate_skips);
      updated[i] = samples[i];
      continue;
    }
    updated[i] = unit_vector(std::atan2(cand.y, cand.x));
  }
  return {DiracMixture(std::move(updated)), step_sum / static_cast<double>(L)};
}

/// Full deterministic sampling run: random initialization, M iterations with a
/// fresh projection base angle phi0 uniform on [0, pi) per iteration, gain
/// decayed to lambda0^m before the m-th update. Bit-exact reruns are guaranteed
/// by (spec, config) alone, including across thread counts.
///
/// `metric` is an optional per-iteration diagnostic (e.g. a transport distance
/// to the reference); it is recorded in the trace and never influences the run.
inline SampleRunResult sample_circle(
    const CircularDensity& density, const SamplerConfig& config,
    const std::function<double(const DiracMixture&)>& metric = {}) {
  validate_config(config);
  const std::size_t L = static_cast<std::size_t>(config.count);

  CounterRng rng(config.seed);
  DiracMixture samples = DiracMixture::from_angles(
      detail::break_coincidences(init_samples(config.count, config.seed,
                                              config.rotation).angles()));

  SampleRunResult out;
  out.trace.reserve(static_cast<std::size_t>(config.iterations));
  double lambda = 1.0;
  int quiet_iterations = 0;
  for (int m = 1; m <= config.iterations; ++m) {
    const double phi0 = config.rotation + kPi * rng.uniform(L + static_cast<std::size_t>(m) - 1);
    lambda *= config.decay;
    auto [updated, mean_step] =
        iteration_step(samples, density, config, lambda, phi0, &out.degenerate_skips);
    samples = std::move(updated);

    TraceRecord rec;
    rec.iteration = m;
    rec.lambda = lambda;
    rec.mean_step_norm = mean_step;
    if (metric) rec.metric = metric(samples);
    out.trace.push_back(rec);
    out.iterations_run = m;

    if (config.early_stop) {
      quiet_iterations = mean_step < 1e-10 ? quiet_iterations + 1 : 0;
      if (quiet_iterations >= 5) break;
    }
  }
  out.samples = std::move(samples);
  return out;
}

}  // namespace pcd
