#pragma once

// Property suites run by `ra_sim verify` and by the acceptance tests. Each check
// draws its cases from a fixed seed and reports pass/fail with a short detail line.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rao/risk.hpp"

namespace rao {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<PropertyResult> results;

  bool all_passed() const;
  std::size_t failures() const;
};

enum class Suite { risk, smoothing, environment, all };

Suite parse_suite(const std::string& name);

inline constexpr std::uint64_t kVerifySeed = 20240611;

VerifyReport verify(Suite suite, std::uint64_t seed = kVerifySeed);

using CvarFn = std::function<double(const EmpiricalCdf&, double)>;

/// Minimum of the RU functional over `grid` equally spaced v in [min, max] of the
/// samples, each evaluated exactly. Independent of cvar_discrete.
double ru_grid_minimum(const EmpiricalCdf& ecdf, double alpha, std::size_t grid);

// risk
PropertyResult check_cvar_ru_equivalence(std::size_t cases, std::uint64_t seed,
                                         const CvarFn& cvar = cvar_discrete);
PropertyResult check_cvar_alpha_monotone(std::size_t cases, std::uint64_t seed);
PropertyResult check_cvar_translation_homogeneity(std::size_t cases, std::uint64_t seed);
PropertyResult check_cvar_sup_lipschitz(std::size_t cases, std::uint64_t seed, const CvarFn& cvar = cvar_discrete);
PropertyResult check_dkw_validity(std::size_t repetitions, std::size_t n, double confidence,
                                  std::uint64_t seed);

// smoothing
PropertyResult check_sphere_directions(std::size_t draws, std::uint64_t seed);
PropertyResult check_estimator_quadratic_exact();
/// Averages `draws` one-point estimates (each from a batch of `batch` noise draws)
/// of the parking cost at fixed x and compares with a central difference of the
/// smoothed CVaR; passes within `z` standard errors.
PropertyResult check_estimator_vs_smoothed(std::size_t draws, std::size_t batch, double z, std::uint64_t seed);
PropertyResult check_gradient_norm_bound(std::size_t steps, std::uint64_t seed);

// environment
PropertyResult check_w1_metric_axioms(std::size_t cases, std::uint64_t seed);
PropertyResult check_w1_cross_validation(std::size_t cases, std::uint64_t seed);
PropertyResult check_cvar_w1_lipschitz(std::size_t cases, std::uint64_t seed);
PropertyResult check_budget_sublinear();

}  // namespace rao
