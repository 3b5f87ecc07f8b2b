#include "rao/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rao/environment.hpp"
#include "rao/learner.hpp"
#include "rao/oracle.hpp"
#include "rao/scenarios.hpp"
#include "rao/smoothing.hpp"

namespace rao {

namespace {

using Clock = std::chrono::steady_clock;

double uniform_in(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

std::size_t int_in(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

// Random sample set; every other set is rounded to a coarse lattice so ties occur.
std::vector<double> random_samples(Rng& rng, std::size_t n, double lo, double hi) {
  const bool lattice = (rng() & 1) != 0;
  std::vector<double> v(n);
  for (double& x : v) {
    x = uniform_in(rng, lo, hi);
    if (lattice) x = lo + std::round((x - lo) * 2.0) / 2.0;
    x = std::clamp(x, lo, hi);
  }
  return v;
}

template <class Body>
PropertyResult timed(std::string suite, std::string name, Body&& body) {
  PropertyResult r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  const auto start = Clock::now();
  std::ostringstream detail;
  detail.precision(4);
  r.passed = body(detail);
  r.detail = detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

bool VerifyReport::all_passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const PropertyResult& r) { return !r.passed; }));
}

Suite parse_suite(const std::string& name) {
  if (name == "risk") return Suite::risk;
  if (name == "smoothing") return Suite::smoothing;
  if (name == "environment") return Suite::environment;
  if (name == "all") return Suite::all;
  throw ConfigError("unknown verification suite '" + name + "'");
}

double ru_grid_minimum(const EmpiricalCdf& ecdf, double alpha, std::size_t grid) {
  const auto s = ecdf.samples();
  const std::size_t n = s.size();
  const double lo = s.front();
  const double hi = s.back();
  if (grid < 2 || lo == hi) return ru_functional(ecdf, alpha, lo);
  std::vector<double> suffix(n + 1, 0.0);  // suffix[p] = s[p] + ... + s[n-1]
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + s[i];
  const double scale = 1.0 / (alpha * static_cast<double>(n));
  double best = std::numeric_limits<double>::infinity();
  std::size_t p = 0;  // samples <= v
  for (std::size_t g = 0; g < grid; ++g) {
    const double v = g + 1 == grid ? hi : lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(grid - 1);
    while (p < n && s[p] <= v) ++p;
    const double excess = suffix[p] - static_cast<double>(n - p) * v;
    best = std::min(best, v + scale * excess);
  }
  return best;
}

PropertyResult check_cvar_ru_equivalence(std::size_t cases, std::uint64_t seed, const CvarFn& cvar) {
  return timed("risk", "cvar matches RU grid minimum and closed form", [&](std::ostream& detail) {
    constexpr std::size_t kGrid = 100000;
    Rng rng(seed);
    double worst_grid = 0.0;
    double worst_closed = 0.0;
    bool ok = true;
    for (std::size_t c = 0; c < cases; ++c) {
      const std::size_t n = int_in(rng, 1, 50);
      const double alpha = 0.05 * static_cast<double>(int_in(rng, 1, 20));
      const EmpiricalCdf ecdf(random_samples(rng, n, -10.0, 10.0));
      const double value = cvar(ecdf, alpha);
      const double grid_min = ru_grid_minimum(ecdf, alpha, kGrid);
      const double h = (ecdf.samples().back() - ecdf.samples().front()) / static_cast<double>(kGrid - 1);
      const double resolution = h * std::max(1.0, 1.0 / alpha - 1.0) + 1e-12;
      const double gap = grid_min - value;
      const double closed = std::abs(value - ru_functional(ecdf, alpha, value_at_risk(ecdf, alpha)));
      worst_grid = std::max(worst_grid, std::abs(gap));
      worst_closed = std::max(worst_closed, closed);
      if (gap < -1e-12 || gap > resolution || closed > 1e-12) ok = false;
    }
    detail << cases << " sample sets; max |grid min - cvar| " << worst_grid
           << "; max |cvar - RU(VaR)| " << worst_closed;
    return ok;
  });
}

PropertyResult check_cvar_alpha_monotone(std::size_t cases, std::uint64_t seed) {
  return timed("risk", "cvar nonincreasing in alpha", [&](std::ostream& detail) {
    Rng rng(seed);
    bool ok = true;
    std::size_t comparisons = 0;
    for (std::size_t c = 0; c < cases; ++c) {
      const EmpiricalCdf ecdf(random_samples(rng, int_in(rng, 1, 50), -5.0, 5.0));
      std::vector<double> alphas(8);
      for (double& a : alphas) a = uniform_in(rng, 1e-3, 1.0);
      alphas.push_back(1.0);
      std::sort(alphas.begin(), alphas.end());
      for (std::size_t i = 1; i < alphas.size(); ++i) {
        ++comparisons;
        if (cvar_discrete(ecdf, alphas[i - 1]) < cvar_discrete(ecdf, alphas[i]) - 1e-12) ok = false;
      }
    }
    detail << cases << " sample sets, " << comparisons << " ordered alpha pairs";
    return ok;
  });
}

PropertyResult check_cvar_translation_homogeneity(std::size_t cases, std::uint64_t seed) {
  return timed("risk", "cvar translation invariance and positive homogeneity", [&](std::ostream& detail) {
    Rng rng(seed);
    double worst_shift = 0.0;
    double worst_scale = 0.0;
    for (std::size_t c = 0; c < cases; ++c) {
      const auto base = random_samples(rng, int_in(rng, 1, 50), -5.0, 5.0);
      const double alpha = uniform_in(rng, 0.01, 1.0);
      const double shift = uniform_in(rng, -5.0, 5.0);
      const double lambda = uniform_in(rng, 0.1, 3.0);
      auto shifted = base;
      auto scaled = base;
      for (double& v : shifted) v += shift;
      for (double& v : scaled) v *= lambda;
      const double ref = cvar_discrete(EmpiricalCdf(base), alpha);
      worst_shift = std::max(worst_shift, std::abs(cvar_discrete(EmpiricalCdf(shifted), alpha) - (ref + shift)));
      worst_scale = std::max(worst_scale, std::abs(cvar_discrete(EmpiricalCdf(scaled), alpha) - lambda * ref));
    }
    detail << cases << " cases; max shift error " << worst_shift << ", max scale error " << worst_scale;
    return worst_shift <= 1e-12 && worst_scale <= 1e-12;
  });
}

PropertyResult check_cvar_sup_lipschitz(std::size_t cases, std::uint64_t seed, const CvarFn& cvar) {
  return timed("risk", "cvar difference bounded by (U/alpha) sup|F - G|", [&](std::ostream& detail) {
    Rng rng(seed);
    double tightest = std::numeric_limits<double>::infinity();
    std::size_t violations = 0;
    for (std::size_t c = 0; c < cases; ++c) {
      const double bound = uniform_in(rng, 0.1, 10.0);
      const double alpha = uniform_in(rng, 0.02, 1.0);
      auto f_samples = random_samples(rng, int_in(rng, 1, 50), 0.0, bound);
      std::vector<double> g_samples;
      if (c % 2 == 0) {
        // Nearby pair: resample a few points of F.
        g_samples = f_samples;
        const std::size_t changes = int_in(rng, 1, std::max<std::size_t>(1, g_samples.size() / 4));
        for (std::size_t k = 0; k < changes; ++k) {
          g_samples[int_in(rng, 0, g_samples.size() - 1)] = uniform_in(rng, 0.0, bound);
        }
      } else {
        g_samples = random_samples(rng, int_in(rng, 1, 50), 0.0, bound);
      }
      const EmpiricalCdf f(f_samples);
      const EmpiricalCdf g(g_samples);
      const double lhs = std::abs(cvar(f, alpha) - cvar(g, alpha));
      const double rhs = cvar_error_bound(bound, alpha, sup_cdf_distance(f, g));
      tightest = std::min(tightest, rhs - lhs);
      if (lhs > rhs + 1e-12) ++violations;
    }
    detail << cases << " EDF pairs with costs in [0, U]; violations " << violations << "; min slack " << tightest;
    return violations == 0;
  });
}

PropertyResult check_dkw_validity(std::size_t repetitions, std::size_t n, double confidence, std::uint64_t seed) {
  return timed("risk", "DKW band covers the uniform CDF", [&](std::ostream& detail) {
    Rng rng(seed);
    const double eps = dkw_epsilon(n, confidence);
    std::size_t misses = 0;
    std::vector<double> u(n);
    for (std::size_t r = 0; r < repetitions; ++r) {
      for (double& x : u) x = uniform01(rng);
      const EmpiricalCdf ecdf(u);
      const auto s = ecdf.samples();
      double dev = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double above = static_cast<double>(i + 1) / static_cast<double>(n) - s[i];
        const double below = s[i] - static_cast<double>(i) / static_cast<double>(n);
        dev = std::max({dev, above, below});
      }
      if (dev >= eps) ++misses;
    }
    const double freq = static_cast<double>(misses) / static_cast<double>(repetitions);
    detail << repetitions << " runs of n=" << n << ", radius " << eps << ", violation frequency " << freq
           << " (limit " << confidence << ")";
    return freq <= confidence;
  });
}

PropertyResult check_sphere_directions(std::size_t draws, std::uint64_t seed) {
  return timed("smoothing", "unit-sphere directions normalized and centered", [&](std::ostream& detail) {
    Rng rng(seed);
    bool ok = true;
    double worst_norm = 0.0;
    for (std::size_t d : {1u, 2u, 3u, 5u, 10u}) {
      for (std::size_t k = 0; k < 1000; ++k) {
        const auto u = sample_unit_sphere(d, rng);
        double s = 0.0;
        for (double c : u) s += c * c;
        worst_norm = std::max(worst_norm, std::abs(std::sqrt(s) - 1.0));
        if (d == 1 && u[0] != 1.0 && u[0] != -1.0) ok = false;
      }
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
      const auto u = sample_unit_sphere(2, rng);
      mx += u[0];
      my += u[1];
    }
    const double mean_norm = std::hypot(mx, my) / static_cast<double>(draws);
    detail << "max | |u| - 1 | " << worst_norm << "; d=2 mean offset " << mean_norm << " over " << draws << " draws";
    return ok && worst_norm <= 1e-12 && mean_norm <= 0.02;
  });
}

PropertyResult check_estimator_quadratic_exact() {
  return timed("smoothing", "two-direction estimate of x^2 equals 2x exactly", [&](std::ostream& detail) {
    // Dyadic x and delta keep every operation exact.
    const double delta = 0.125;
    std::size_t checked = 0;
    bool ok = true;
    for (double alpha : {0.5, 1.0}) {
      for (int k = -16; k <= 16; ++k) {
        const DecisionVector x{k / 8.0};
        double sum = 0.0;
        for (double dir : {1.0, -1.0}) {
          const std::vector<double> u{dir};
          const DecisionVector x_hat = perturb(x, delta, u);
          const std::vector<double> costs(4, x_hat[0] * x_hat[0]);
          const double c = cvar_discrete(build_ecdf(costs), alpha);
          sum += gradient_estimate(c, u, 1, delta)[0];
        }
        ++checked;
        if (sum / 2.0 != 2.0 * x[0]) ok = false;
      }
    }
    detail << checked << " (x, alpha) cases, zero tolerance";
    return ok;
  });
}

PropertyResult check_estimator_vs_smoothed(std::size_t draws, std::size_t batch, double z, std::uint64_t seed) {
  return timed("smoothing", "mean one-point estimate matches smoothed-CVaR slope", [&](std::ostream& detail) {
    const std::size_t horizon = 6000;
    const std::size_t t = 1000;
    const double delta = 0.05;
    const double alpha = 0.5;
    const AdmissibleSet set = AdmissibleSet::box({1.0}, {5.0});
    const UniformSeq noise = parking_sequence(horizon);
    const CostModel cost = parking_cost({}, set, 0.85, 1.15);
    const DecisionVector x{2.0};
    const StepDistribution dist = noise.at(t);

    Rng rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    std::vector<double> costs(batch);
    for (std::size_t k = 0; k < draws; ++k) {
      const auto u = sample_unit_sphere(1, rng);
      const DecisionVector x_hat = perturb(x, delta, u);
      for (double& c : costs) c = cost(x_hat, dist.sample(rng));
      const double g = gradient_estimate(cvar_discrete(build_ecdf(costs), alpha), u, 1, delta)[0];
      sum += g;
      sum_sq += g * g;
    }
    const double n = static_cast<double>(draws);
    const double mean = sum / n;
    const double se = std::sqrt(std::max(0.0, sum_sq / n - mean * mean) / (n - 1.0));

    const double h = 1e-3;
    Rng unused(0);
    const double up = smoothed_cvar_mc(cost, noise, t, DecisionVector{x[0] + h}, set, delta, alpha, 2, 100000, unused);
    const double down = smoothed_cvar_mc(cost, noise, t, DecisionVector{x[0] - h}, set, delta, alpha, 2, 100000, unused);
    const double fd = (up - down) / (2.0 * h);
    detail << draws << " draws (batch " << batch << "): mean estimate " << mean << " +- " << se
           << ", finite difference " << fd << ", gap " << std::abs(mean - fd) / se << " SE";
    return std::abs(mean - fd) <= z * se;
  });
}

PropertyResult check_gradient_norm_bound(std::size_t steps, std::uint64_t seed) {
  return timed("smoothing", "estimates bounded by U and dU/delta", [&](std::ostream& detail) {
    const AdmissibleSet set = AdmissibleSet::box({1.0}, {5.0});
    const UniformSeq noise = parking_sequence(steps);
    const CostModel cost = parking_cost({}, set, 0.85, 1.15);
    LearnerConfig lc;
    lc.horizon = steps;
    lc.batch_size = 200;
    lc.delta = 0.05;
    lc.alpha = 0.5;
    lc.sampling = SamplingStrategy::constant(8);
    lc.rate = LearningRateSchedule::constant(0.5);
    lc.x0 = {1.0};
    lc.seed = seed;
    const auto records = run(lc, cost, noise, set);
    double worst = 0.0;
    bool ok = true;
    for (const auto& r : records) {
      double g = 0.0;
      for (double c : r.gradient) g += c * c;
      g = std::sqrt(g);
      worst = std::max(worst, g * lc.delta / cost.bound);
      if (std::abs(r.cvar_estimate) > cost.bound || g > cost.bound / lc.delta) ok = false;
    }
    detail << steps << " steps; max |g| delta / (d U) = " << worst;
    return ok;
  });
}

PropertyResult check_w1_metric_axioms(std::size_t cases, std::uint64_t seed) {
  return timed("environment", "closed-form W1 is a metric", [&](std::ostream& detail) {
    Rng rng(seed);
    auto interval = [&] {
      const double a = uniform_in(rng, -2.0, 2.0);
      const double w = uniform01(rng) < 0.1 ? 0.0 : uniform_in(rng, 0.0, 2.0);
      return std::pair{a, a + w};
    };
    double worst_identity = 0.0, worst_symmetry = 0.0, worst_triangle = 0.0;
    bool nonneg = true;
    for (std::size_t c = 0; c < cases; ++c) {
      const auto [a1, b1] = interval();
      const auto [a2, b2] = interval();
      const auto [a3, b3] = interval();
      const double d12 = w1_uniform(a1, b1, a2, b2);
      const double d21 = w1_uniform(a2, b2, a1, b1);
      const double d13 = w1_uniform(a1, b1, a3, b3);
      const double d23 = w1_uniform(a2, b2, a3, b3);
      if (d12 < 0.0 || d13 < 0.0 || d23 < 0.0) nonneg = false;
      worst_identity = std::max(worst_identity, w1_uniform(a1, b1, a1, b1));
      worst_symmetry = std::max(worst_symmetry, std::abs(d12 - d21));
      worst_triangle = std::max(worst_triangle, d13 - (d12 + d23));
    }
    detail << cases << " triples; identity " << worst_identity << ", symmetry " << worst_symmetry
           << ", triangle excess " << worst_triangle;
    return nonneg && worst_identity <= 1e-12 && worst_symmetry <= 1e-12 && worst_triangle <= 1e-10;
  });
}

PropertyResult check_w1_cross_validation(std::size_t cases, std::uint64_t seed) {
  return timed("environment", "closed-form W1 agrees with quadrature", [&](std::ostream& detail) {
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t c = 0; c < cases; ++c) {
      const double a1 = uniform_in(rng, -2.0, 2.0), b1 = a1 + uniform_in(rng, 0.05, 2.0);
      const double a2 = uniform_in(rng, -2.0, 2.0), b2 = a2 + uniform_in(rng, 0.05, 2.0);
      const auto p = StepDistribution::uniform(a1, b1);
      const auto q = StepDistribution::uniform(a2, b2);
      const double numeric = w1_numeric([&](double y) { return p.cdf(y); }, [&](double y) { return q.cdf(y); },
                                        std::min(a1, a2), std::max(b1, b2), 100000);
      worst = std::max(worst, std::abs(numeric - w1_uniform(a1, b1, a2, b2)));
    }
    detail << cases << " uniform pairs; max |closed - numeric| " << worst;
    return worst <= 1e-6;
  });
}

PropertyResult check_cvar_w1_lipschitz(std::size_t cases, std::uint64_t seed) {
  return timed("environment", "cvar shift bounded by (L0/alpha) W1", [&](std::ostream& detail) {
    Rng rng(seed);
    std::size_t violations = 0;
    double tightest = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cases; ++c) {
      const double lip = uniform_in(rng, 0.1, 5.0);
      const double alpha = uniform_in(rng, 0.05, 1.0);
      const double a1 = uniform_in(rng, -2.0, 2.0), b1 = a1 + uniform_in(rng, 0.0, 2.0);
      const double a2 = uniform_in(rng, -2.0, 2.0), b2 = a2 + uniform_in(rng, 0.0, 2.0);
      CostModel linear;
      linear.evaluate = [lip](std::span<const double>, double xi) { return lip * xi; };
      const StaticSeq p(StepDistribution::uniform(a1, b1), 1);
      const StaticSeq q(StepDistribution::uniform(a2, b2), 1);
      const DecisionVector x{0.0};
      const double lhs = std::abs(true_cvar(linear, p, 1, x, alpha, 100000) - true_cvar(linear, q, 1, x, alpha, 100000));
      const double rhs = lip / alpha * w1_uniform(a1, b1, a2, b2);
      tightest = std::min(tightest, rhs - lhs);
      if (lhs > rhs + 1e-6) ++violations;
    }
    detail << cases << " uniform pairs; violations " << violations << "; min slack " << tightest;
    return violations == 0;
  });
}

PropertyResult check_budget_sublinear() {
  return timed("environment", "parking variation budget grows sub-linearly", [&](std::ostream& detail) {
    double prev = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t horizon : {1500u, 3000u, 6000u}) {
      const double ratio = variation_budget(parking_sequence(horizon), horizon) / static_cast<double>(horizon);
      detail << "V/T(" << horizon << ") = " << ratio << "; ";
      if (!(ratio < prev)) ok = false;
      prev = ratio;
    }
    return ok;
  });
}

VerifyReport verify(Suite suite, std::uint64_t seed) {
  VerifyReport rep;
  auto add = [&](PropertyResult r) { rep.results.push_back(std::move(r)); };
  if (suite == Suite::risk || suite == Suite::all) {
    add(check_cvar_ru_equivalence(1000, seed));
    add(check_cvar_alpha_monotone(500, seed + 1));
    add(check_cvar_translation_homogeneity(500, seed + 2));
    add(check_cvar_sup_lipschitz(1000, seed + 3));
    add(check_dkw_validity(2000, 100, 0.05, seed + 4));
  }
  if (suite == Suite::smoothing || suite == Suite::all) {
    add(check_sphere_directions(100000, seed + 5));
    add(check_estimator_quadratic_exact());
    add(check_estimator_vs_smoothed(100000, 8, 3.0, seed + 6));
    add(check_gradient_norm_bound(2000, seed + 7));
  }
  if (suite == Suite::environment || suite == Suite::all) {
    add(check_w1_metric_axioms(500, seed + 8));
    add(check_w1_cross_validation(500, seed + 9));
    add(check_cvar_w1_lipschitz(200, seed + 10));
    add(check_budget_sublinear());
  }
  return rep;
}

}  // namespace rao
