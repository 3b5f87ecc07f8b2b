#pragma once

// Ground-truth evaluation of the learner: per-step CVaR on deterministic quantile
// grids, grid search for per-step and per-batch optimal actions, dynamic regret
// and accumulated loss.

#include <cstddef>
#include <span>
#include <vector>

#include "rao/core.hpp"
#include "rao/learner.hpp"

namespace rao {

/// Where the K candidate points of the 1-D action grid sit.
enum class GridPlacement {
  centers,    // midpoints of K equal subintervals
  endpoints,  // K points from lower to upper inclusive
};

struct OracleSettings {
  std::size_t candidates = 100;  // K
  std::size_t quantile_grid = 2000;
  GridPlacement placement = GridPlacement::centers;
};

/// Noise values F_t^{-1}((i - 0.5) / grid_n), i = 1..grid_n.
std::vector<double> quantile_grid(const NoiseSequence& noise, std::size_t t, std::size_t grid_n);

/// CVaR of J(x, xi) over a precomputed quantile grid; `scratch` is resized as needed.
double cvar_on_grid(const CostModel& cost, std::span<const double> xi_grid, const DecisionVector& x,
                    double alpha, std::vector<double>& scratch);

/// C_t(x) = CVaR_alpha[J(x, xi_t)] from a grid_n-point mid-quantile grid (grid_n >= 1000).
double true_cvar(const CostModel& cost, const NoiseSequence& noise, std::size_t t,
                 const DecisionVector& x, double alpha, std::size_t grid_n);

/// The K candidate actions of a 1-D set. Throws ConfigError for d > 1.
std::vector<double> action_grid(const AdmissibleSet& set, std::size_t k, GridPlacement placement);

struct OptimalAction {
  DecisionVector x{0.0};
  double value = 0.0;
};

/// Grid minimizer of C_t; ties go to the smaller coordinate.
OptimalAction optimal_action_grid(const CostModel& cost, const NoiseSequence& noise, std::size_t t,
                                  const AdmissibleSet& set, double alpha, const OracleSettings& settings);

/// optimal_action_grid for t = 1..horizon, evaluated on `jobs` threads.
std::vector<OptimalAction> optimal_actions(const CostModel& cost, const NoiseSequence& noise,
                                           std::size_t horizon, const AdmissibleSet& set, double alpha,
                                           const OracleSettings& settings, std::size_t jobs = 1);

struct RegretReport {
  std::vector<double> played;        // C_t(x_hat_t)
  std::vector<double> optimal;       // C_t(x_t*)
  std::vector<double> regret;        // DR(t), running sum of played - optimal
  std::vector<double> accumulated;   // running sum of played
  std::vector<DecisionVector> x_star;
};

RegretReport dynamic_regret(std::span<const IterationRecord> trajectory, const CostModel& cost,
                            const NoiseSequence& noise, const AdmissibleSet& set, double alpha,
                            const OracleSettings& settings);

/// As above with precomputed per-step optima (optima[t - 1] for step t).
RegretReport dynamic_regret(std::span<const IterationRecord> trajectory, const CostModel& cost,
                            const NoiseSequence& noise, double alpha, std::size_t grid_n,
                            std::span<const OptimalAction> optima);

/// Running sum of C_t(x_hat_t).
std::vector<double> accumulated_loss(std::span<const IterationRecord> trajectory, const CostModel& cost,
                                     const NoiseSequence& noise, double alpha, std::size_t grid_n);

struct BatchOptimum {
  DecisionVector x{0.0};
  double total = 0.0;  // sum over the batch of C_t(x)
};

/// Grid minimizer of sum_{t=first}^{last} C_t(x).
BatchOptimum batch_optimal_actions(const CostModel& cost, const NoiseSequence& noise, std::size_t first,
                                   std::size_t last, const AdmissibleSet& set, double alpha,
                                   const OracleSettings& settings);

}  // namespace rao
