// ra_sim: risk-averse online learning simulator.
//
//   ra_sim run      [flags]            seeded trials, per-trial and aggregate CSVs
//   ra_sim ablate   [flags] --counts   constant sample-count comparison
//   ra_sim budget   [flags]            variation budget and theorem parameters
//   ra_sim verify   [--suite NAME]     property suites
//   ra_sim params   --T --vd --a [--m] parameter calculator
//
// Exit codes: 0 success, 1 config error, 2 runtime failure, 3 verification failure.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rao/harness.hpp"
#include "rao/log.hpp"
#include "rao/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;
constexpr int kVerifyFailed = 3;

bool is_config_error(const rao::Error& e) {
  return dynamic_cast<const rao::ConfigError*>(&e) || dynamic_cast<const rao::InvalidSmoothingRadius*>(&e) ||
         dynamic_cast<const rao::InvalidRiskLevel*>(&e) || dynamic_cast<const rao::InvalidConfidence*>(&e) ||
         dynamic_cast<const rao::InvalidBatchSize*>(&e) || dynamic_cast<const rao::BudgetExceedsHorizon*>(&e);
}

bool seed_on_command_line(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 || std::strncmp(argv[i], "--seed=", 7) == 0) return true;
  }
  return false;
}

std::string fmt(double v) { return rao::format_double(v); }

void print_final(const rao::ExperimentResult& res) {
  const auto& dr = res.aggregate.column("dr");
  const auto& loss = res.aggregate.column("acc_loss");
  const std::size_t horizon = dr.mean.size();
  std::printf("U = %s  L0 = %s\n", fmt(res.cost_bound).c_str(), fmt(res.cost_lipschitz).c_str());
  std::printf("DR(T) = %s +- %s  DR(T)/T = %s\n", fmt(dr.mean.back()).c_str(), fmt(dr.stddev.back()).c_str(),
              fmt(dr.mean.back() / static_cast<double>(horizon)).c_str());
  std::printf("accumulated loss = %s +- %s\n", fmt(loss.mean.back()).c_str(), fmt(loss.stddev.back()).c_str());
  for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
}

int cmd_run(const rao::ExperimentConfig& cfg) {
  print_final(rao::run_experiment(cfg));
  return kOk;
}

int cmd_ablate(const rao::ExperimentConfig& cfg, const std::vector<std::size_t>& counts) {
  const auto rows = rao::run_ablation(cfg, counts);
  std::printf("n_t  mean_acc_loss            std_acc_loss             sampling requirement\n");
  for (const auto& r : rows) {
    std::printf("%-4zu %-24s %-24s %s (%s <= %s)\n", r.samples, fmt(r.final_mean).c_str(), fmt(r.final_std).c_str(),
                r.requirement.satisfied ? "ok" : "violated", fmt(r.requirement.lhs).c_str(),
                fmt(r.requirement.rhs).c_str());
  }
  std::printf("wrote %s_ablation.csv\n", cfg.out.c_str());
  return kOk;
}

int cmd_budget(const rao::ExperimentConfig& cfg) {
  const auto rep = rao::compute_budget(cfg);
  std::printf("V_D = %s over T = %zu\n", fmt(rep.budget).c_str(), cfg.horizon);
  if (rep.convex) {
    std::printf("convex (a = %s): delta = %s  eta = %s  batch = %zu\n", fmt(cfg.req_a).c_str(),
                fmt(rep.convex->delta).c_str(), fmt(rep.convex->eta).c_str(), rep.convex->batch_size);
  }
  if (rep.strongly_convex) {
    std::printf("strongly convex (m = %s): delta = %s  batch = %zu  eta_tau = 1/(m tau)\n",
                fmt(rep.strong_m).c_str(), fmt(rep.strongly_convex->delta).c_str(),
                rep.strongly_convex->batch_size);
  }
  std::printf("wrote %s_budget.csv\n", cfg.out.c_str());
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  const auto rep = rao::verify(rao::parse_suite(suite), seed);
  for (const auto& r : rep.results) {
    std::printf("[%s] %-12s %s (%.2fs)\n      %s\n", r.passed ? "PASS" : "FAIL", r.suite.c_str(), r.name.c_str(),
                r.seconds, r.detail.c_str());
  }
  std::printf("%zu properties checked, %zu failed\n", rep.results.size(), rep.failures());
  return rep.all_passed() ? kOk : kVerifyFailed;
}

int cmd_params(std::size_t horizon, double vd, double a, double m) {
  const auto c = rao::theorem1_params(horizon, vd, a);
  std::printf("convex:          delta = %s  eta = %s  batch = %zu\n", fmt(c.delta).c_str(), fmt(c.eta).c_str(),
              c.batch_size);
  if (m > 0.0) {
    const auto s = rao::theorem2_params(horizon, vd, a, m);
    std::printf("strongly convex: delta = %s  batch = %zu  eta_tau = 1/(%s tau)\n", fmt(s.delta).c_str(),
                s.batch_size, fmt(m).c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  rao::ExperimentConfig cfg;
  std::string scenario = rao::to_string(cfg.scenario);
  bool quiet = false;

  CLI::App app{"Risk-averse zeroth-order online learning simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value configuration file; flags override it");

  app.add_option("--scenario", scenario, "parking, brownian or custom")->capture_default_str();
  app.add_option("--T", cfg.horizon, "Horizon")->capture_default_str();
  app.add_option("--batch", cfg.batch_size, "Restart period")->capture_default_str();
  app.add_option("--delta", cfg.delta, "Smoothing radius")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "Risk level")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Noise draws per step (constant sampling)")->capture_default_str();
  app.add_option("--sampling", cfg.sampling, "constant or poly")->capture_default_str();
  app.add_option("--poly-a", cfg.poly_a, "Exponent of the polynomial sampling rule")->capture_default_str();
  app.add_option("--poly-b", cfg.poly_b, "Scale of the polynomial sampling rule")->capture_default_str();
  app.add_option("--req-a", cfg.req_a, "Declared a of the sampling requirement")->capture_default_str();
  app.add_option("--req-c", cfg.req_c, "Declared c of the sampling requirement")->capture_default_str();
  app.add_option("--rate", cfg.rate, "constant or inverse")->capture_default_str();
  app.add_option("--eta", cfg.eta, "Constant learning rate")->capture_default_str();
  app.add_option("--strong-m", cfg.strong_m, "Modulus for the inverse rate (0: from the cost)")->capture_default_str();
  app.add_option("--x0", cfg.x0, "Initial action")->capture_default_str();
  app.add_option("--lower", cfg.lower, "Lower end of the admissible interval")->capture_default_str();
  app.add_option("--upper", cfg.upper, "Upper end of the admissible interval")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Number of seeded trials")->capture_default_str();
  app.add_option("--seed", cfg.base_seed, "Base seed; trial i uses seed + i (RA_SEED when absent)")
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Parallel trials (0: all cores)")->capture_default_str();
  app.add_option("--out", cfg.out, "Output path prefix")->capture_default_str();
  app.add_option("--oracle-grid", cfg.oracle_grid, "Quantile points per true CVaR evaluation")->capture_default_str();
  app.add_option("--oracle-k", cfg.oracle_k, "Candidate actions of the grid oracle")->capture_default_str();
  app.add_option("--oracle-placement", cfg.oracle_placement, "centers or endpoints")->capture_default_str();
  app.add_option("--elasticity", cfg.parking.elasticity, "Parking price elasticity A")->capture_default_str();
  app.add_option("--target", cfg.parking.target, "Parking target occupancy")->capture_default_str();
  app.add_option("--regularization", cfg.parking.regularization, "Parking price regularization nu")
      ->capture_default_str();
  app.add_option("--diffusivity", cfg.diffusivity, "Brownian diffusivity D")->capture_default_str();
  app.add_option("--custom-lo0", cfg.custom_lo0, "custom: lower end at t = 1")->capture_default_str();
  app.add_option("--custom-hi0", cfg.custom_hi0, "custom: upper end at t = 1")->capture_default_str();
  app.add_option("--custom-lo1", cfg.custom_lo1, "custom: lower end at t = T")->capture_default_str();
  app.add_option("--custom-hi1", cfg.custom_hi1, "custom: upper end at t = T")->capture_default_str();
  app.add_option("--dkw-confidence", cfg.dkw_confidence, "Failure probability of the DKW band")
      ->capture_default_str();
  app.add_flag("--quiet", quiet, "Suppress warnings");

  auto* run = app.add_subcommand("run", "Run seeded trials and write CSVs")->fallthrough();
  auto* ablate = app.add_subcommand("ablate", "Compare constant sample counts")->fallthrough();
  std::vector<std::size_t> counts{8, 16, 24};
  ablate->add_option("--counts", counts, "Sample counts")->delimiter(',')->capture_default_str();
  auto* budget = app.add_subcommand("budget", "Variation budget and theorem parameters")->fallthrough();
  auto* verify = app.add_subcommand("verify", "Run the property suites")->fallthrough();
  std::string suite = "all";
  verify->add_option("--suite", suite, "risk, smoothing, environment or all")->capture_default_str();
  auto* params = app.add_subcommand("params", "Theorem parameter calculator")->fallthrough();
  double vd = 0.0, pa = 1.0, pm = 0.0;
  params->add_option("--vd", vd, "Variation budget V_D")->required();
  params->add_option("--a", pa, "Sampling exponent a")->capture_default_str();
  params->add_option("--m", pm, "Strong-convexity modulus (0: convex case only)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  rao::log::set_quiet(quiet);
  try {
    if (!seed_on_command_line(argc, argv)) {
      if (const char* env = std::getenv("RA_SEED"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || env[0] == '-') throw rao::ConfigError(std::string("RA_SEED is not a seed: ") + env);
        cfg.base_seed = v;
      }
    }
    cfg.scenario = rao::parse_scenario(scenario);
    if (*verify) return cmd_verify(suite, app.count("--seed") || std::getenv("RA_SEED") ? cfg.base_seed : rao::kVerifySeed);
    if (*params) return cmd_params(cfg.horizon, vd, pa, pm);
    rao::validate(cfg);
    if (*run) return cmd_run(cfg);
    if (*ablate) return cmd_ablate(cfg, counts);
    if (*budget) return cmd_budget(cfg);
  } catch (const rao::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_config_error(e) ? kConfigError : kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}
