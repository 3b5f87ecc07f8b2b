#pragma once

// Cost models and noise sequences for the bundled experiments.

#include <memory>

#include "rao/core.hpp"

namespace rao {

/// Curb-occupancy pricing: occupancy r = xi + A x, loss (r - target)^2 + (nu / 2) x^2.
struct ParkingParams {
  double elasticity = -0.15;     // A
  double target = 0.7;
  double regularization = 0.001; // nu
};

/// Parking loss on a 1-D price interval with noise in [noise_lo, noise_hi]. U and L0
/// are exact maxima over that box (the loss and its x-derivative are extremal at
/// the corners); m = 2 A^2 + nu.
CostModel parking_cost(const ParkingParams& params, const AdmissibleSet& set, double noise_lo,
                       double noise_hi);

/// J(x, xi) = (x - clamp(xi, lower, upper))^2 on a 1-D interval: U = width^2,
/// L0 = 2 width, m = 2. Used with unbounded (Gaussian) noise.
CostModel tracking_cost(const AdmissibleSet& set);

}  // namespace rao
