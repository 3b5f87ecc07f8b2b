#pragma once

// Sphere smoothing: directions on the unit sphere, perturbed actions and the
// one-point CVaR gradient estimate g = (d / delta) * CVaR * u.

#include <cstddef>
#include <span>
#include <vector>

#include "rao/core.hpp"

namespace rao {

struct SmoothingConfig {
  double delta = 0.0;
  std::size_t dim = 1;
};

/// Uniform direction on the unit sphere in R^d. d = 1 gives a fair +-1; d >= 2 a
/// normalized isotropic Gaussian.
std::vector<double> sample_unit_sphere(std::size_t d, Rng& rng);

DecisionVector perturb(const DecisionVector& x, double delta, std::span<const double> u);

std::vector<double> gradient_estimate(double cvar_value, std::span<const double> u, std::size_t d,
                                      double delta);

/// Test oracle for the smoothed objective E_u[C_t(x + delta u)], with C_t from
/// true_cvar on an n_noise-point quantile grid. For d = 1 the expectation over the
/// two-point sphere is taken exactly and `rng` is unused; otherwise n_dirs random
/// directions are averaged. Throws DomainError when x is outside the shrunk set.
double smoothed_cvar_mc(const CostModel& cost, const NoiseSequence& noise, std::size_t t,
                        const DecisionVector& x, const AdmissibleSet& set, double delta,
                        double alpha, std::size_t n_dirs, std::size_t n_noise, Rng& rng);

}  // namespace rao
