#pragma once

// Umbrella header: deterministic Dirac-mixture sampling of circular densities
// by iterative matching of projected cumulative distributions.

#include "pcd/angle.hpp"
#include "pcd/bessel.hpp"
#include "pcd/density.hpp"
#include "pcd/density_json.hpp"
#include "pcd/dirac_mixture.hpp"
#include "pcd/errors.hpp"
#include "pcd/io.hpp"
#include "pcd/metrics.hpp"
#include "pcd/piecewise_cdf.hpp"
#include "pcd/projection.hpp"
#include "pcd/rng.hpp"
#include "pcd/sampler.hpp"
#include "pcd/svg_plot.hpp"
#include "pcd/univariate_sampler.hpp"
#include "pcd/version.hpp"
