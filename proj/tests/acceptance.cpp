// Acceptance run: one PASS/FAIL line per criterion. Exit 0 when every criterion
// passes, 3 otherwise. `--expected-fail N[,M]` reports those criteria as usual but
// keeps them out of the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "rao/core.hpp"
#include "rao/harness.hpp"
#include "rao/log.hpp"
#include "rao/schedule.hpp"
#include "rao/verify.hpp"

using namespace rao;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;  // runtime limit, 0 for none
  std::function<Outcome()> body;
};

Outcome from(std::initializer_list<PropertyResult> parts) {
  Outcome o{true, ""};
  for (const auto& p : parts) {
    o.passed = o.passed && p.passed;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += p.name + ": " + p.detail;
  }
  return o;
}

std::string num(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

// The study configuration, shared by criteria 6 to 8.
ExperimentConfig study() {
  ExperimentConfig c;
  c.out = "acceptance";
  return c;
}

double batch_gap(const TrialAggregate& agg, std::size_t first, std::size_t last) {
  const auto& x = agg.column("x").mean;
  const auto& xs = agg.column("x_star").mean;
  double s = 0.0;
  for (std::size_t t = first; t <= last; ++t) s += std::abs(x[t - 1] - xs[t - 1]);
  return s / static_cast<double>(last - first + 1);
}

bool played_inside(const ExperimentResult& r, double lo, double hi, double& worst) {
  bool ok = true;
  for (const auto& tr : r.trials) {
    for (const auto& rec : tr.records) {
      const double v = rec.x_hat[0];
      worst = std::max({worst, lo - v, v - hi});
      if (v < lo - 1e-12 || v > hi + 1e-12) ok = false;
    }
  }
  return ok;
}

using Big = boost::multiprecision::cpp_dec_float_50;

double rel_err(double got, const Big& want) {
  const Big diff = abs(Big(got) - want);
  return diff == 0 ? 0.0 : static_cast<double>(diff / abs(want));
}

std::size_t big_round_batch(const Big& v) {
  const Big r = floor(v + Big(0.5));
  return std::max<std::size_t>(2, static_cast<std::size_t>(r.convert_to<double>()));
}

Outcome theorem_formulas() {
  Rng rng(kVerifySeed + 20);
  // Bands cover both branches of each theorem, plus the two boundaries.
  const double bands[][2] = {{0.05, 1.0}, {1.0, 4.0 / 3.0}, {4.0 / 3.0, 3.0}};
  double worst = 0.0;
  std::size_t batch_mismatch = 0;
  for (int c = 0; c < 50; ++c) {
    const std::size_t horizon = 2 + rng() % 1000000;
    const double budget = static_cast<double>(horizon) * (1e-6 + (1.0 - 2e-6) * uniform01(rng));
    double a;
    if (c == 0) {
      a = 1.0;
    } else if (c == 1) {
      a = 4.0 / 3.0;
    } else {
      const auto& b = bands[c % 3];
      a = b[0] + (b[1] - b[0]) * uniform01(rng);
    }

    const Big ratio = Big(budget) / Big(horizon);
    const Big inv = Big(horizon) / Big(budget);
    const Big aa(a);
    const Big four(4);

    Big d1 = 1 / Big(5), e1 = 3 / Big(5), b1 = 4 / Big(5);
    if (a <= 1.0) {
      d1 = aa / (four + aa);
      e1 = 3 * aa / (four + aa);
      b1 = four / (four + aa);
    }
    const auto p1 = theorem1_params(horizon, budget, a);
    worst = std::max({worst, rel_err(p1.delta, pow(ratio, d1)), rel_err(p1.eta, pow(ratio, e1))});
    if (p1.batch_size != big_round_batch(pow(inv, b1))) ++batch_mismatch;

    Big d2 = 1 / Big(4), b2 = 3 / Big(4);
    if (aa <= four / 3) {
      d2 = aa / (four + aa);
      b2 = four / (four + aa);
    }
    const auto p2 = theorem2_params(horizon, budget, a, 1.0);
    worst = std::max(worst, rel_err(p2.delta, pow(ratio, d2)));
    if (p2.batch_size != big_round_batch(pow(inv, b2))) ++batch_mismatch;
  }
  return {worst <= 1e-12 && batch_mismatch == 0,
          "max relative error " + num(worst, 3) + ", batch mismatches " + std::to_string(batch_mismatch) +
              " over 50 triples"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expected-fail" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string tok; std::getline(ss, tok, ',');) expected_fail.insert(std::stoi(tok));
    } else {
      std::fprintf(stderr, "usage: acceptance [--expected-fail N[,M...]]\n");
      return 1;
    }
  }
  log::set_quiet(true);
  const std::uint64_t seed = kVerifySeed;

  // Criteria 6 and 7 share the main run; 8 reuses its optima via run_ablation.
  ExperimentResult main_run;
  double main_seconds = 0.0;
  auto ensure_main = [&] {
    if (!main_run.trials.empty()) return;
    const auto t0 = std::chrono::steady_clock::now();
    main_run = run_experiment(study(), {false, nullptr});
    main_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  double ablation_worst = 0.0;
  bool ablation_inside = true;

  const std::vector<Criterion> criteria{
      {1, "CVaR equals the RU minimum and its closed form", 10,
       [&] { return from({check_cvar_ru_equivalence(1000, seed)}); }},
      {2, "CVaR is (U/alpha)-Lipschitz in the sup-CDF distance", 10,
       [&] { return from({check_cvar_sup_lipschitz(1000, seed + 3)}); }},
      {3, "CVaR of L0-Lipschitz costs moves by at most (L0/alpha) W1", 30,
       [&] { return from({check_cvar_w1_lipschitz(200, seed + 10)}); }},
      {4, "DKW band covers at the nominal rate", 30,
       [&] { return from({check_dkw_validity(2000, 100, 0.05, seed + 4)}); }},
      {5, "one-point gradient estimator is unbiased", 120,
       [&] {
         return from({check_estimator_quadratic_exact(), check_estimator_vs_smoothed(100000, 8, 3.0, seed + 6)});
       }},
      {6, "played decisions stay in [1, 5] over the full run", 0,
       [&] {
         ensure_main();
         double worst = -INFINITY;
         const bool ok = played_inside(main_run, 1.0, 5.0, worst);
         return Outcome{ok, num(main_run.trials.size(), 3) + " trials x 6000 steps, worst excursion " +
                                num(worst, 3)};
       }},
      {7, "tracking gap shrinks 2x and DR(t)/t decreases", 300,
       [&] {
         ensure_main();
         const auto& agg = main_run.aggregate;
         const double first = batch_gap(agg, 1, 200);
         const double last = batch_gap(agg, 5801, 6000);
         const auto& dr = agg.column("dr").mean;
         const double r1 = dr[1499] / 1500.0, r2 = dr[2999] / 3000.0, r3 = dr[5999] / 6000.0;
         const bool ok = last * 2.0 <= first && r1 > r2 && r2 > r3;
         return Outcome{ok, "gap first " + num(first) + " last " + num(last) + " (ratio " + num(first / last, 4) +
                                "); DR/t at 1500, 3000, 6000 = " + num(r1) + ", " + num(r2) + ", " + num(r3) +
                                "; " + num(main_seconds, 3) + " s"};
       }},
      {8, "accumulated loss ordered n=24 <= n=16 <= n=8", 900,
       [&] {
         const auto rows = run_ablation(study(), {8, 16, 24}, false);
         for (const auto& r : rows) ablation_inside = played_inside(r.result, 1.0, 5.0, ablation_worst) && ablation_inside;
         const double l8 = rows[0].final_mean, l16 = rows[1].final_mean, l24 = rows[2].final_mean;
         const bool ok = l24 <= l16 && l16 <= l8;
         return Outcome{ok, "mean loss n=8 " + num(l8) + " (sd " + num(rows[0].final_std, 3) + "), n=16 " + num(l16) +
                                " (sd " + num(rows[1].final_std, 3) + "), n=24 " + num(l24) + " (sd " +
                                num(rows[2].final_std, 3) + ")"};
       }},
      {9, "restart parameter formulas match 50-digit arithmetic", 0, [&] { return theorem_formulas(); }},
      {10, "uniform W1 closed form and metric axioms", 30,
       [&] { return from({check_w1_cross_validation(500, seed + 9), check_w1_metric_axioms(500, seed + 8)}); }},
  };

  int counted_failures = 0;
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.passed;
    if (c.budget_s > 0 && secs > c.budget_s) {
      ok = false;
      o.detail += "; over the " + num(c.budget_s, 4) + " s limit";
    }
    if (c.id == 8 && !ablation_inside) {
      ok = false;
      o.detail += "; ablation left [1, 5] by " + num(ablation_worst, 3);
    }
    const bool waived = !ok && expected_fail.count(c.id) > 0;
    std::printf("[%s] criterion %2d  %s  (%.2f s)%s\n      %s\n", ok ? "PASS" : "FAIL", c.id, c.title, secs,
                waived ? "  expected failure" : "", o.detail.c_str());
    std::fflush(stdout);
    if (!ok) {
      ++failures;
      if (!waived) ++counted_failures;
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return counted_failures == 0 ? 0 : 3;
}
