#include "rao/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "rao/environment.hpp"
#include "rao/log.hpp"
#include "rao/parallel.hpp"
#include "rao/risk.hpp"

namespace rao {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot open output file '" + path + "'");
  return os;
}

std::string join(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ';';
    out += format_double(v[i]);
  }
  return out;
}

std::pair<double, double> support_hull(const NoiseSequence& noise) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= noise.horizon(); ++t) {
    const StepDistribution d = noise.at(t);
    lo = std::min(lo, d.support_lo());
    hi = std::max(hi, d.support_hi());
  }
  return {lo, hi};
}

double sample_std(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

ScenarioKind parse_scenario(const std::string& name) {
  if (name == "parking") return ScenarioKind::parking;
  if (name == "brownian") return ScenarioKind::brownian;
  if (name == "custom") return ScenarioKind::custom;
  throw ConfigError("unknown scenario '" + name + "' (expected parking, brownian or custom)");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::parking:
      return "parking";
    case ScenarioKind::brownian:
      return "brownian";
    case ScenarioKind::custom:
      return "custom";
  }
  return "unknown";
}

void validate(const ExperimentConfig& c) {
  if (c.horizon < 1) throw ConfigError("T must be >= 1");
  if (c.batch_size < 2) throw ConfigError("batch must be >= 2");
  if (!(c.delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (c.sampling != "constant" && c.sampling != "poly") {
    throw ConfigError("sampling must be 'constant' or 'poly'");
  }
  if (c.sampling == "constant" && c.samples < 1) throw ConfigError("samples must be >= 1");
  if (c.rate != "constant" && c.rate != "inverse") throw ConfigError("rate must be 'constant' or 'inverse'");
  if (c.rate == "constant" && !(c.eta > 0.0)) throw ConfigError("eta must be positive");
  if (!(c.lower < c.upper)) throw ConfigError("lower must be below upper");
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (c.oracle_placement != "centers" && c.oracle_placement != "endpoints") {
    throw ConfigError("oracle-placement must be 'centers' or 'endpoints'");
  }
  if (c.oracle_grid < 1000) throw ConfigError("oracle-grid must be >= 1000");
  if (c.oracle_k < 2) throw ConfigError("oracle-k must be >= 2");
  if (!(c.dkw_confidence > 0.0 && c.dkw_confidence <= 2.0)) {
    throw ConfigError("dkw-confidence must lie in (0, 2]");
  }
}

Scenario build_scenario(const ExperimentConfig& config) {
  validate(config);
  AdmissibleSet set = AdmissibleSet::box({config.lower}, {config.upper});
  std::unique_ptr<NoiseSequence> noise;
  switch (config.scenario) {
    case ScenarioKind::parking:
      noise = std::make_unique<UniformSeq>(parking_sequence(config.horizon));
      break;
    case ScenarioKind::brownian:
      noise = std::make_unique<BrownianSeq>(config.diffusivity, config.horizon);
      break;
    case ScenarioKind::custom:
      noise = std::make_unique<UniformSeq>(drifting_uniform(config.custom_lo0, config.custom_hi0,
                                                            config.custom_lo1, config.custom_hi1,
                                                            config.horizon));
      break;
  }
  if (config.scenario == ScenarioKind::brownian) {
    CostModel cost = tracking_cost(set);
    return {std::move(noise), std::move(cost), set, config.lower, config.upper};
  }
  const auto [lo, hi] = support_hull(*noise);
  CostModel cost = parking_cost(config.parking, set, lo, hi);
  return {std::move(noise), std::move(cost), set, lo, hi};
}

SamplingStrategy sampling_strategy(const ExperimentConfig& config) {
  if (config.sampling == "poly") return SamplingStrategy::polynomial(config.poly_a, config.poly_b);
  return SamplingStrategy::constant(config.samples);
}

LearningRateSchedule rate_schedule(const ExperimentConfig& config, const CostModel& cost) {
  if (config.rate == "inverse") {
    const double m = config.strong_m > 0.0 ? config.strong_m : cost.strong_convexity;
    return LearningRateSchedule::inverse_strong(m);
  }
  return LearningRateSchedule::constant(config.eta);
}

OracleSettings oracle_settings(const ExperimentConfig& config) {
  return {config.oracle_k, config.oracle_grid,
          config.oracle_placement == "endpoints" ? GridPlacement::endpoints : GridPlacement::centers};
}

std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t trial) {
  return config.base_seed + trial;
}

LearnerConfig learner_config(const ExperimentConfig& config, const CostModel& cost, std::size_t trial) {
  LearnerConfig lc;
  lc.horizon = config.horizon;
  lc.batch_size = config.batch_size;
  lc.delta = config.delta;
  lc.alpha = config.alpha;
  lc.sampling = sampling_strategy(config);
  lc.rate = rate_schedule(config, cost);
  lc.x0 = {config.x0};
  lc.seed = trial_seed(config, trial);
  return lc;
}

const AggregateColumn& TrialAggregate::column(const std::string& name) const {
  for (const auto& c : columns) {
    if (c.name == name) return c;
  }
  throw ConfigError("no aggregate column '" + name + "'");
}

TrialAggregate aggregate(const std::vector<TrialResult>& trials) {
  if (trials.empty()) throw ConfigError("cannot aggregate zero trials");
  const std::size_t horizon = trials.front().records.size();
  using Getter = double (*)(const TrialResult&, std::size_t);
  const std::pair<const char*, Getter> tracked[] = {
      {"x", [](const TrialResult& r, std::size_t i) { return r.records[i].x[0]; }},
      {"x_star", [](const TrialResult& r, std::size_t i) { return r.report.x_star[i][0]; }},
      {"c_hat", [](const TrialResult& r, std::size_t i) { return r.report.played[i]; }},
      {"c_star", [](const TrialResult& r, std::size_t i) { return r.report.optimal[i]; }},
      {"dr", [](const TrialResult& r, std::size_t i) { return r.report.regret[i]; }},
      {"acc_loss", [](const TrialResult& r, std::size_t i) { return r.report.accumulated[i]; }},
  };
  TrialAggregate agg;
  std::vector<double> values(trials.size());
  for (const auto& [name, get] : tracked) {
    AggregateColumn col{name, std::vector<double>(horizon), std::vector<double>(horizon)};
    for (std::size_t i = 0; i < horizon; ++i) {
      double sum = 0.0;
      for (std::size_t k = 0; k < trials.size(); ++k) {
        values[k] = get(trials[k], i);
        sum += values[k];
      }
      col.mean[i] = sum / static_cast<double>(trials.size());
      col.stddev[i] = sample_std(values, col.mean[i]);
    }
    agg.columns.push_back(std::move(col));
  }
  return agg;
}

std::vector<OptimalAction> compute_optima(const ExperimentConfig& config, const Scenario& scenario) {
  return optimal_actions(scenario.cost, *scenario.noise, config.horizon, scenario.set, config.alpha,
                         oracle_settings(config), config.jobs);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(const std::string& path, const std::vector<IterationRecord>& records,
                          const RegretReport& report) {
  auto os = open_output(path);
  os << kTrajectoryHeader << '\n';
  for (std::size_t i = 0; i < records.size(); ++i) {
    const IterationRecord& r = records[i];
    os << r.t << ',' << r.batch << ',' << r.epoch << ',' << join(r.x.coords()) << ','
       << join(r.x_hat.coords()) << ',' << r.n_samples << ',' << format_double(r.cvar_estimate) << ','
       << join(r.gradient) << ',' << format_double(r.eta) << ',' << format_double(report.played[i]) << ','
       << format_double(report.optimal[i]) << ',' << format_double(report.regret[i]) << ','
       << format_double(report.accumulated[i]) << '\n';
  }
}

void write_aggregate_csv(const std::string& path, const TrialAggregate& agg) {
  auto os = open_output(path);
  os << 't';
  for (const auto& c : agg.columns) os << ",mean_" << c.name << ",std_" << c.name;
  os << '\n';
  const std::size_t horizon = agg.columns.front().mean.size();
  for (std::size_t i = 0; i < horizon; ++i) {
    os << i + 1;
    for (const auto& c : agg.columns) os << ',' << format_double(c.mean[i]) << ',' << format_double(c.stddev[i]);
    os << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const Scenario scenario = build_scenario(config);
  std::vector<OptimalAction> own_optima;
  const std::vector<OptimalAction>* optima = options.optima;
  if (optima == nullptr) {
    own_optima = compute_optima(config, scenario);
    optima = &own_optima;
  }

  ExperimentResult result;
  result.cost_bound = scenario.cost.bound;
  result.cost_lipschitz = scenario.cost.lipschitz;
  result.trials.resize(config.trials);
  parallel_for(config.trials, config.jobs, [&](std::size_t i) {
    TrialResult& tr = result.trials[i];
    tr.index = i;
    tr.seed = trial_seed(config, i);
    try {
      tr.records = run(learner_config(config, scenario.cost, i), scenario.cost, *scenario.noise, scenario.set);
      tr.report = dynamic_regret(tr.records, scenario.cost, *scenario.noise, config.alpha,
                                 config.oracle_grid, *optima);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "trial " << i << " (seed " << tr.seed << ") failed: " << e.what();
      throw EnvironmentError(os.str());
    }
  });
  result.aggregate = aggregate(result.trials);

  if (options.write_files) {
    for (const auto& tr : result.trials) {
      const std::string path = config.out + "_trial" + std::to_string(tr.index) + ".csv";
      write_trajectory_csv(path, tr.records, tr.report);
      result.files.push_back(path);
    }
    const std::string agg_path = config.out + "_aggregate.csv";
    write_aggregate_csv(agg_path, result.aggregate);
    result.files.push_back(agg_path);

    const std::string summary_path = config.out + "_summary.txt";
    auto os = open_output(summary_path);
    const std::size_t n1 = sampling_strategy(config).count(1, config.batch_size);
    const double eps = dkw_epsilon(n1, config.dkw_confidence);
    const auto& dr = result.aggregate.column("dr").mean;
    const auto& acc = result.aggregate.column("acc_loss");
    os << "scenario=" << to_string(config.scenario) << '\n'
       << "T=" << config.horizon << '\n'
       << "trials=" << config.trials << '\n'
       << "base_seed=" << config.base_seed << '\n'
       << "cost_bound_U=" << format_double(scenario.cost.bound) << '\n'
       << "cost_lipschitz_L0=" << format_double(scenario.cost.lipschitz) << '\n'
       << "cost_strong_convexity_m=" << format_double(scenario.cost.strong_convexity) << '\n'
       << "dkw_radius_first_epoch=" << format_double(eps) << '\n'
       << "cvar_error_bound_first_epoch=" << format_double(cvar_error_bound(scenario.cost.bound, config.alpha, eps))
       << '\n'
       << "mean_dr_T=" << format_double(dr.back()) << '\n'
       << "mean_dr_over_T=" << format_double(dr.back() / static_cast<double>(config.horizon)) << '\n'
       << "mean_acc_loss_T=" << format_double(acc.mean.back()) << '\n'
       << "std_acc_loss_T=" << format_double(acc.stddev.back()) << '\n';
    result.files.push_back(summary_path);
  }
  return result;
}

std::vector<AblationRow> run_ablation(const ExperimentConfig& config, const std::vector<std::size_t>& counts,
                                      bool write_files) {
  if (counts.size() < 2) throw ConfigError("ablation needs at least two sample counts");
  const Scenario scenario = build_scenario(config);
  const auto optima = compute_optima(config, scenario);

  std::vector<AblationRow> rows;
  for (std::size_t n : counts) {
    ExperimentConfig c = config;
    c.sampling = "constant";
    c.samples = n;
    c.out = config.out + "_n" + std::to_string(n);
    AblationRow row;
    row.samples = n;
    row.requirement = check_sampling_requirement(SamplingStrategy::constant(n), config.batch_size,
                                                 config.req_a, config.req_c);
    if (!row.requirement.satisfied) {
      std::ostringstream os;
      os << "n_t = " << n << " violates the sampling requirement for a = " << config.req_a
         << ", c = " << config.req_c << " (" << row.requirement.lhs << " > " << row.requirement.rhs << ")";
      log::warn(os.str());
    }
    row.result = run_experiment(c, {write_files, &optima});
    const auto& acc = row.result.aggregate.column("acc_loss");
    row.final_mean = acc.mean.back();
    row.final_std = acc.stddev.back();
    rows.push_back(std::move(row));
  }

  if (write_files) {
    auto os = open_output(config.out + "_ablation.csv");
    os << "n_t,mean_acc_loss,std_acc_loss,req_lhs,req_rhs,req_satisfied\n";
    for (const auto& r : rows) {
      os << r.samples << ',' << format_double(r.final_mean) << ',' << format_double(r.final_std) << ','
         << format_double(r.requirement.lhs) << ',' << format_double(r.requirement.rhs) << ','
         << (r.requirement.satisfied ? 1 : 0) << '\n';
    }
    auto curves = open_output(config.out + "_ablation_curves.csv");
    curves << 't';
    for (const auto& r : rows) curves << ",mean_acc_loss_n" << r.samples << ",std_acc_loss_n" << r.samples;
    curves << '\n';
    for (std::size_t i = 0; i < config.horizon; ++i) {
      curves << i + 1;
      for (const auto& r : rows) {
        const auto& acc = r.result.aggregate.column("acc_loss");
        curves << ',' << format_double(acc.mean[i]) << ',' << format_double(acc.stddev[i]);
      }
      curves << '\n';
    }
  }
  return rows;
}

BudgetReport compute_budget(const ExperimentConfig& config, bool write_files) {
  const Scenario scenario = build_scenario(config);
  BudgetReport rep;
  rep.terms = variation_terms(*scenario.noise, config.horizon);
  for (double w : rep.terms) rep.budget += w;
  rep.strong_m = config.strong_m > 0.0 ? config.strong_m : scenario.cost.strong_convexity;
  if (rep.budget <= 0.0) {
    log::warn("variation budget is zero; the batch-size formulas degenerate (no restarts needed)");
  } else if (rep.budget < static_cast<double>(config.horizon)) {
    rep.convex = theorem1_params(config.horizon, rep.budget, config.req_a);
    if (rep.strong_m > 0.0) {
      rep.strongly_convex = theorem2_params(config.horizon, rep.budget, config.req_a, rep.strong_m);
    }
  } else {
    log::warn("variation budget is not below the horizon; no parameter suggestion");
  }
  if (write_files) {
    auto os = open_output(config.out + "_budget.csv");
    os << "t,w1\n";
    for (std::size_t i = 0; i < rep.terms.size(); ++i) os << i + 2 << ',' << format_double(rep.terms[i]) << '\n';
  }
  return rep;
}

}  // namespace rao
