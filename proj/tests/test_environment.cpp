#include <doctest.h>

#include <cmath>

#include "rao/environment.hpp"
#include "rao/log.hpp"
#include "rao/verify.hpp"

using namespace rao;

TEST_CASE("parking_range") {
  auto [l4, r4] = parking_range(4, 6000);
  CHECK(l4 == 0.85);
  CHECK(r4 == doctest::Approx(0.90).epsilon(1e-15));

  auto [l, r] = parking_range(3000, 6000);
  CHECK(l == doctest::Approx(0.85 + 0.5 * std::pow(3000.0, -0.1)).epsilon(1e-15));
  CHECK(l == doctest::Approx(1.0746).epsilon(1e-4));
  CHECK(r == 1.1);

  auto [l2, r2] = parking_range(2704, 6000);
  CHECK(l2 == 0.85);
  CHECK(r2 == doctest::Approx(1.15 - 0.5 / 52.0).epsilon(1e-15));
  CHECK(r2 == doctest::Approx(1.14038).epsilon(1e-5));

  auto [l1, r1] = parking_range(1, 6000);
  CHECK(r1 < l1);
}

TEST_CASE("parking sequence repairs the empty early ranges") {
  log::set_quiet(true);
  const auto seq = parking_sequence(6000);
  CHECK(seq.degenerate_steps() == 2);
  CHECK(seq.at(1) == StepDistribution::point(0.85));
  CHECK(seq.at(2) == StepDistribution::point(0.85));
  CHECK(seq.at(3).kind() == StepDistribution::Kind::uniform);
  CHECK(seq.at(2999).second() == doctest::Approx(1.15 - 0.5 / std::sqrt(2999.0)));
  CHECK(seq.at(3000).first() == doctest::Approx(0.85 + 0.5 * std::pow(3000.0, -0.1)));
  CHECK_THROWS_AS(seq.at(0), EnvironmentError);
  CHECK_THROWS_AS(seq.at(6001), EnvironmentError);
}

TEST_CASE("Brownian variance grows with t") {
  const BrownianSeq seq(0.01, 100);
  double prev = 0.0;
  for (std::size_t t = 1; t <= 100; ++t) {
    const auto d = seq.at(t);
    CHECK(d.first() == 0.0);
    CHECK(d.second() * d.second() == doctest::Approx(2.0 * 0.01 * static_cast<double>(t)));
    CHECK(d.second() > prev);
    prev = d.second();
  }
  CHECK_THROWS_AS(BrownianSeq(0.0, 10), ConfigError);
}

TEST_CASE("w1_uniform") {
  CHECK(w1_uniform(0.3, 1.7, 0.3, 1.7) == 0.0);
  CHECK(w1_uniform(0, 1, 1, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w1_uniform(0, 1, 0, 2) == doctest::Approx(0.5).epsilon(1e-15));
  // Crossing quantile functions: root at q = 0.5 splits the integral.
  CHECK(w1_uniform(0, 2, 0.5, 1.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w1_uniform(1, 1, 3, 3) == 2.0);
  CHECK(w1_uniform(0, 2, 1, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("w1_numeric") {
  const auto u1 = StepDistribution::uniform(0, 1);
  const auto u2 = StepDistribution::uniform(0, 2);
  auto f1 = [&](double y) { return u1.cdf(y); };
  auto f2 = [&](double y) { return u2.cdf(y); };
  CHECK(w1_numeric(f1, f1, -1, 3, 1000) == 0.0);
  CHECK(std::abs(w1_numeric(f1, f2, 0, 2, 100000) - 0.5) <= 1e-6);

  const auto g0 = StepDistribution::gaussian(0, 1);
  const auto g1 = StepDistribution::gaussian(1, 1);
  const double w = w1_numeric([&](double y) { return g0.cdf(y); }, [&](double y) { return g1.cdf(y); }, -10.0, 11.0,
                              1000000);
  CHECK(std::abs(w - 1.0) <= 1e-4);

  CHECK_THROWS_AS(w1_numeric(f1, f2, 0, 2, 999), ConfigError);
  CHECK_THROWS_AS(w1_numeric(f1, f2, -INFINITY, 2, 1000), ConfigError);
}

TEST_CASE("w1_gaussian agrees with quadrature") {
  Rng rng(51);
  for (int c = 0; c < 40; ++c) {
    const double m1 = 4.0 * uniform01(rng) - 2.0, m2 = 4.0 * uniform01(rng) - 2.0;
    const double s1 = 0.1 + uniform01(rng), s2 = 0.1 + uniform01(rng);
    const auto p = StepDistribution::gaussian(m1, s1);
    const auto q = StepDistribution::gaussian(m2, s2);
    const double lo = std::min(m1 - 10 * s1, m2 - 10 * s2);
    const double hi = std::max(m1 + 10 * s1, m2 + 10 * s2);
    const double numeric = w1_numeric([&](double y) { return p.cdf(y); }, [&](double y) { return q.cdf(y); }, lo, hi,
                                      200000);
    CHECK(std::abs(w1_gaussian(m1, s1, m2, s2) - numeric) <= 1e-6);
    CHECK(w1_between(p, q) == w1_gaussian(m1, s1, m2, s2));
  }
  CHECK(w1_gaussian(0.5, 0.7, 2.0, 0.7) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("w1_between on mixed kinds falls back to quadrature") {
  const auto g = StepDistribution::gaussian(0.0, 1.0);
  const auto p = StepDistribution::point(0.0);
  // E|Z| for a standard normal.
  CHECK(std::abs(w1_between(g, p) - std::sqrt(2.0 / M_PI)) <= 1e-6);
}

TEST_CASE("variation_budget") {
  const StaticSeq flat(StepDistribution::uniform(0.0, 1.0), 500);
  CHECK(variation_budget(flat, 500) == 0.0);

  const ExplicitSeq shift({StepDistribution::uniform(0, 1), StepDistribution::uniform(1, 2)});
  CHECK(variation_budget(shift, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(variation_budget(shift, 1), ConfigError);
}

TEST_CASE("parking budget equals its telescoped closed form") {
  log::set_quiet(true);
  const std::size_t horizon = 6000;
  const auto seq = parking_sequence(horizon);
  const double budget = variation_budget(seq, horizon);

  // First branch: L fixed at 0.85 and R rising from 0.85 (the repaired point masses) to R(2999).
  const double r_last = 1.15 - 0.5 / std::sqrt(2999.0);
  const double first = (r_last - 0.85) / 2.0;
  // Second branch: R fixed at 1.1 and L falling from L(3000) to L(6000).
  const double l_first = 0.85 + 0.5 * std::pow(3000.0, -0.1);
  const double l_last = 0.85 + 0.5 * std::pow(6000.0, -0.1);
  const double second = (l_first - l_last) / 2.0;
  // Switch term between U[0.85, R(2999)] and U[L(3000), 1.1] by midpoint quadrature of |Q1 - Q2|.
  double jump = 0.0;
  const int n = 2000000;
  for (int i = 0; i < n; ++i) {
    const double q = (i + 0.5) / n;
    jump += std::abs((0.85 + q * (r_last - 0.85)) - (l_first + q * (1.1 - l_first)));
  }
  jump /= n;
  CHECK(std::abs(budget - (first + second + jump)) <= 1e-9);
}

TEST_CASE("parking step distances cross-checked by quadrature") {
  log::set_quiet(true);
  const auto seq = parking_sequence(6000);
  const auto terms = variation_terms(seq, 6000);
  REQUIRE(terms.size() == 5999);
  Rng rng(52);
  std::vector<std::size_t> steps{3, 4, 3000};
  while (steps.size() < 50) steps.push_back(3 + rng() % 5997);
  for (std::size_t t : steps) {
    const auto p = seq.at(t - 1);
    const auto q = seq.at(t);
    const double lo = std::min(p.support_lo(), q.support_lo());
    const double hi = std::max(p.support_hi(), q.support_hi());
    const double numeric = w1_numeric([&](double y) { return p.cdf(y); }, [&](double y) { return q.cdf(y); }, lo, hi,
                                      100000);
    CHECK(std::abs(terms[t - 2] - numeric) <= 1e-6 * std::max(1.0, numeric) + 1e-12);
  }
}

TEST_CASE("drifting uniform") {
  const auto seq = drifting_uniform(0.0, 1.0, 2.0, 3.0, 11);
  CHECK(seq.at(1) == StepDistribution::uniform(0.0, 1.0));
  CHECK(seq.at(11).first() == doctest::Approx(2.0));
  CHECK(variation_budget(seq, 11) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("environment properties") {
  CHECK(check_w1_metric_axioms(500, 53).passed);
  CHECK(check_w1_cross_validation(500, 54).passed);
  CHECK(check_cvar_w1_lipschitz(200, 55).passed);
  CHECK(check_budget_sublinear().passed);
}
