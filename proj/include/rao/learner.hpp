#pragma once

// Zeroth-order risk-averse learner with periodic restarts.
//
// Each iteration t identifies its batch j and epoch tau, draws a direction u on
// the unit sphere, plays x_hat = x + delta u for n_t = phi(tau) noise draws,
// estimates CVaR from the empirical distribution of those costs, forms
// g = (d / delta) CVaR u and steps x <- P_{X^delta}(x - eta_tau g). At a batch
// boundary only tau (hence n_t and eta_t) restarts; x carries over.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rao/core.hpp"
#include "rao/schedule.hpp"

namespace rao {

struct LearnerConfig {
  std::size_t horizon = 1;
  std::size_t batch_size = 2;
  double delta = 0.05;
  double alpha = 0.5;
  SamplingStrategy sampling = SamplingStrategy::constant(1);
  LearningRateSchedule rate = LearningRateSchedule::constant(0.01);
  std::vector<double> x0;
  std::uint64_t seed = 0;
};

struct IterationRecord {
  std::size_t t = 0;
  std::size_t batch = 0;
  std::size_t epoch = 0;
  DecisionVector x{0.0};
  std::vector<double> direction;
  DecisionVector x_hat{0.0};
  std::size_t n_samples = 0;
  std::vector<double> costs;
  double cvar_estimate = 0.0;
  std::vector<double> gradient;
  double eta = 0.0;
};

/// Validates `config` against the set and sequence; throws ConfigError or
/// InvalidSmoothingRadius / InvalidRiskLevel / InvalidBatchSize.
void validate(const LearnerConfig& config, const AdmissibleSet& set, const NoiseSequence& noise);

/// Runs the learner, drawing directions and noise from `rng` in that order each step.
std::vector<IterationRecord> run(const LearnerConfig& config, const CostModel& cost,
                                 const NoiseSequence& noise, const AdmissibleSet& set, Rng& rng);

/// Same, with a generator seeded from config.seed.
std::vector<IterationRecord> run(const LearnerConfig& config, const CostModel& cost,
                                 const NoiseSequence& noise, const AdmissibleSet& set);

}  // namespace rao
