#pragma once

// Experiment runner behind the ra_sim CLI: scenario assembly, seeded trials,
// aggregation and CSV output.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rao/core.hpp"
#include "rao/learner.hpp"
#include "rao/oracle.hpp"
#include "rao/scenarios.hpp"
#include "rao/schedule.hpp"

namespace rao {

enum class ScenarioKind { parking, brownian, custom };

ScenarioKind parse_scenario(const std::string& name);
std::string to_string(ScenarioKind kind);

/// Every knob of an experiment. Defaults reproduce the parking study.
struct ExperimentConfig {
  ScenarioKind scenario = ScenarioKind::parking;

  std::size_t horizon = 6000;
  std::size_t batch_size = 200;
  double delta = 0.05;
  double alpha = 0.5;

  // Sampling: "constant" uses `samples`; "poly" uses ceil(poly_b (batch - tau + 1)^poly_a).
  std::string sampling = "constant";
  std::size_t samples = 8;
  double poly_a = 2.0 / 3.0;
  double poly_b = 1.0;
  // Declared (a, c) of the sampling requirement.
  double req_a = 2.0 / 3.0;
  double req_c = 10.0;

  // Learning rate: "constant" uses `eta`; "inverse" uses 1 / (m tau) with m = strong_m,
  // or the cost's modulus when strong_m is 0.
  std::string rate = "constant";
  double eta = 0.1;
  double strong_m = 0.0;

  double x0 = 1.0;
  double lower = 1.0;
  double upper = 5.0;

  std::size_t trials = 10;
  std::uint64_t base_seed = 1;
  std::size_t jobs = 0;
  std::string out = "ra_out";

  std::size_t oracle_k = 100;
  std::size_t oracle_grid = 2000;
  std::string oracle_placement = "centers";

  ParkingParams parking;
  double diffusivity = 1e-4;
  // custom: uniform range drifting linearly from [lo0, hi0] to [lo1, hi1].
  double custom_lo0 = 0.85;
  double custom_hi0 = 1.15;
  double custom_lo1 = 0.85;
  double custom_hi1 = 1.15;

  double dkw_confidence = 0.05;
};

/// Checks ranges that do not need the scenario; throws ConfigError.
void validate(const ExperimentConfig& config);

struct Scenario {
  std::unique_ptr<NoiseSequence> noise;
  CostModel cost;
  AdmissibleSet set;
  double noise_lo;  // hull of the noise supports (finite; Gaussian noise is clamped by the cost)
  double noise_hi;
};

Scenario build_scenario(const ExperimentConfig& config);

SamplingStrategy sampling_strategy(const ExperimentConfig& config);
LearningRateSchedule rate_schedule(const ExperimentConfig& config, const CostModel& cost);
OracleSettings oracle_settings(const ExperimentConfig& config);

/// Seed of trial i: base_seed + i.
std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t trial);

LearnerConfig learner_config(const ExperimentConfig& config, const CostModel& cost, std::size_t trial);

struct TrialResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> records;
  RegretReport report;
};

struct AggregateColumn {
  std::string name;
  std::vector<double> mean;
  std::vector<double> stddev;  // sample standard deviation; 0 for a single trial
};

struct TrialAggregate {
  std::vector<AggregateColumn> columns;  // x, x_star, c_hat, c_star, dr, acc_loss

  const AggregateColumn& column(const std::string& name) const;
};

TrialAggregate aggregate(const std::vector<TrialResult>& trials);

struct ExperimentResult {
  TrialAggregate aggregate;
  std::vector<TrialResult> trials;
  std::vector<std::string> files;
  double cost_bound = 0.0;
  double cost_lipschitz = 0.0;
};

struct RunOptions {
  bool write_files = true;
  // Per-step optima shared between experiments on the same scenario.
  const std::vector<OptimalAction>* optima = nullptr;
};

/// Runs config.trials seeded trials (learner then oracle) and writes
/// <out>_trial<i>.csv, <out>_aggregate.csv and <out>_summary.txt.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

std::vector<OptimalAction> compute_optima(const ExperimentConfig& config, const Scenario& scenario);

struct AblationRow {
  std::size_t samples = 0;
  double final_mean = 0.0;  // mean over trials of the accumulated loss at T
  double final_std = 0.0;
  SamplingCheck requirement;
  ExperimentResult result;
};

/// One experiment per constant sample count, all with the same trial seeds.
/// Writes <out>_ablation.csv and <out>_ablation_curves.csv.
std::vector<AblationRow> run_ablation(const ExperimentConfig& config, const std::vector<std::size_t>& counts,
                                      bool write_files = true);

struct BudgetReport {
  double budget = 0.0;
  std::vector<double> terms;  // W1(D_{t-1}, D_t), t = 2..T
  std::optional<ConvexParams> convex;
  std::optional<StronglyConvexParams> strongly_convex;
  double strong_m = 0.0;
};

/// Variation budget of the configured scenario plus the matching parameter choices;
/// writes <out>_budget.csv (t,w1) when write_files.
BudgetReport compute_budget(const ExperimentConfig& config, bool write_files = true);

// CSV helpers
std::string format_double(double v);
inline constexpr const char* kTrajectoryHeader = "t,j,tau,x,x_hat,n_t,cvar_est,grad,eta,c_hat,c_star,dr,acc_loss";
void write_trajectory_csv(const std::string& path, const std::vector<IterationRecord>& records,
                          const RegretReport& report);
void write_aggregate_csv(const std::string& path, const TrialAggregate& agg);

}  // namespace rao
