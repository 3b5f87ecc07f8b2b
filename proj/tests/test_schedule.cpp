#include <doctest.h>

#include <cmath>

#include "rao/core.hpp"
#include "rao/schedule.hpp"

using namespace rao;

TEST_CASE("batch_epoch") {
  CHECK(batch_epoch(1, 200) == BatchIndex{1, 1});
  CHECK(batch_epoch(200, 200) == BatchIndex{1, 200});
  CHECK(batch_epoch(201, 200) == BatchIndex{2, 1});
  CHECK_THROWS_AS(batch_epoch(5, 1), InvalidBatchSize);
  CHECK_THROWS_AS(batch_epoch(5, 0), InvalidBatchSize);
}

TEST_CASE("batch_epoch round trip up to 10^6") {
  for (std::size_t batch : {2u, 3u, 7u, 200u, 999u, 4096u}) {
    bool ok = true;
    for (std::size_t t = 1; t <= 1000000; ++t) {
      const auto b = batch_epoch(t, batch);
      if ((b.batch - 1) * batch + b.epoch != t || b.epoch < 1 || b.epoch > batch) ok = false;
    }
    CHECK(ok);
  }
}

TEST_CASE("sampling_count_poly") {
  for (double a : {0.3, 2.0 / 3.0, 1.0, 2.5}) CHECK(sampling_count_poly(200, 200, a, 1.0) == 1);
  CHECK(sampling_count_poly(1, 3, 1.0, 1.0) == 3);
  CHECK(sampling_count_poly(1, 200, 2.0 / 3.0, 10.0) == 342);
  CHECK_THROWS_AS(sampling_count_poly(0, 10, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(sampling_count_poly(11, 10, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(sampling_count_poly(1, 10, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(sampling_count_poly(1, 10, 1.0, -2.0), ConfigError);
}

TEST_CASE("polynomial counts are positive and nonincreasing in tau") {
  Rng rng(41);
  for (int c = 0; c < 100; ++c) {
    const std::size_t batch = 2 + rng() % 500;
    const double a = 0.05 + 2.0 * uniform01(rng);
    const double b = 0.01 + 5.0 * uniform01(rng);
    const auto s = SamplingStrategy::polynomial(a, b);
    std::size_t prev = s.count(1, batch);
    CHECK(prev >= 1);
    for (std::size_t tau = 2; tau <= batch; ++tau) {
      const std::size_t n = s.count(tau, batch);
      CHECK(n >= 1);
      CHECK(n <= prev);
      prev = n;
    }
  }
}

TEST_CASE("check_sampling_requirement") {
  const auto eight = check_sampling_requirement(SamplingStrategy::constant(8), 200, 2.0 / 3.0, 10.0);
  CHECK(eight.satisfied);
  CHECK(eight.lhs == doctest::Approx(70.71).epsilon(1e-4));
  CHECK(eight.rhs == doctest::Approx(341.99).epsilon(1e-4));

  const auto one = check_sampling_requirement(SamplingStrategy::constant(1), 4, 2.0, 1.0);
  CHECK_FALSE(one.satisfied);
  CHECK(one.lhs == 4.0);
  CHECK(one.rhs == 1.0);

  CHECK_THROWS_AS(SamplingStrategy::polynomial(0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(SamplingStrategy::constant(0), ConfigError);
}

TEST_CASE("requirement checker agrees with direct summation") {
  Rng rng(42);
  for (int c = 0; c < 200; ++c) {
    const std::size_t batch = 2 + rng() % 300;
    const bool poly = (rng() & 1) != 0;
    const double pa = 0.1 + 1.5 * uniform01(rng);
    const double pb = 0.2 + 4.0 * uniform01(rng);
    const std::size_t n = 1 + rng() % 30;
    const auto s = poly ? SamplingStrategy::polynomial(pa, pb) : SamplingStrategy::constant(n);
    const double a = 0.1 + 2.0 * uniform01(rng);
    const double cc = 0.5 + 10.0 * uniform01(rng);

    double lhs = 0.0;
    for (std::size_t tau = 1; tau <= batch; ++tau) {
      const double phi = poly ? std::ceil(pb * std::pow(static_cast<double>(batch - tau + 1), pa)) : n;
      lhs += 1.0 / std::sqrt(phi);
    }
    const double rhs = cc * std::pow(static_cast<double>(batch), 1.0 - a / 2.0);
    const auto got = check_sampling_requirement(s, batch, a, cc);
    CHECK(got.lhs == doctest::Approx(lhs).epsilon(1e-12));
    CHECK(got.rhs == doctest::Approx(rhs).epsilon(1e-12));
    if (std::abs(lhs - rhs) > 1e-9 * rhs) CHECK(got.satisfied == (lhs <= rhs));
  }
}

TEST_CASE("theorem1_params") {
  const auto p = theorem1_params(10000, 10.0, 1.0);
  CHECK(p.delta == doctest::Approx(0.251189).epsilon(1e-6));
  CHECK(p.eta == doctest::Approx(0.0158489).epsilon(1e-6));
  CHECK(p.batch_size == 251);

  const auto q = theorem1_params(10000, 10.0, 2.0);
  const auto r = theorem1_params(10000, 10.0, 1.5);
  CHECK(q.delta == r.delta);
  CHECK(q.eta == r.eta);
  CHECK(q.batch_size == r.batch_size);
  CHECK(q.delta == p.delta);

  // V_D/T -> 1: all three tend to 1 and the batch clamps to 2.
  const auto lim = theorem1_params(1000, std::nextafter(1000.0, 0.0), 0.5);
  CHECK(lim.delta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lim.eta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lim.batch_size == 2);

  CHECK_THROWS_AS(theorem1_params(100, 100.0, 1.0), BudgetExceedsHorizon);
  CHECK_THROWS_AS(theorem1_params(100, 250.0, 1.0), BudgetExceedsHorizon);
  CHECK_THROWS_AS(theorem1_params(100, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(theorem1_params(100, 1.0, 0.0), ConfigError);
}

TEST_CASE("theorem2_params") {
  const auto p = theorem2_params(10000, 10.0, 2.0, 1.0);
  CHECK(p.delta == doctest::Approx(0.177828).epsilon(1e-6));
  CHECK(p.batch_size == 178);

  // a = 4/3 sits in the first branch: exponent a/(4+a) = 1/4, batch exponent 3/4.
  const double a = 4.0 / 3.0;
  const auto edge = theorem2_params(10000, 10.0, a, 1.0);
  CHECK(edge.delta == doctest::Approx(std::pow(1e-3, a / (4.0 + a))).epsilon(1e-14));
  const auto low = theorem2_params(10000, 10.0, 0.5, 1.0);
  CHECK(low.delta == doctest::Approx(std::pow(1e-3, 0.5 / 4.5)).epsilon(1e-14));
  CHECK(low.batch_size == static_cast<std::size_t>(std::floor(std::pow(1e3, 4.0 / 4.5) + 0.5)));

  CHECK(learning_rate(theorem2_params(1000, 5.0, 1.0, 2.0).rate, 5) == doctest::Approx(0.1));
  CHECK_THROWS_AS(theorem2_params(100, 1.0, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(theorem2_params(100, 200.0, 1.0, 1.0), BudgetExceedsHorizon);
}

TEST_CASE("theorem parameters stay positive and below one") {
  Rng rng(43);
  for (int c = 0; c < 500; ++c) {
    const std::size_t horizon = 2 + rng() % 100000;
    const double budget = static_cast<double>(horizon) * (1e-6 + 0.999 * uniform01(rng));
    const double a = 0.05 + 3.0 * uniform01(rng);
    const auto p = theorem1_params(horizon, budget, a);
    CHECK(p.delta > 0.0);
    CHECK(p.delta < 1.0);
    CHECK(p.eta > 0.0);
    CHECK(p.batch_size >= 2);
    const auto q = theorem2_params(horizon, budget, a, 0.5);
    CHECK(q.delta > 0.0);
    CHECK(q.delta < 1.0);
    CHECK(q.batch_size >= 2);
  }
}

TEST_CASE("scale multipliers") {
  ParamScales s;
  s.delta = 0.5;
  s.eta = 3.0;
  s.batch = 2.0;
  const auto base = theorem1_params(10000, 10.0, 1.0);
  const auto scaled = theorem1_params(10000, 10.0, 1.0, s);
  CHECK(scaled.delta == doctest::Approx(0.5 * base.delta));
  CHECK(scaled.eta == doctest::Approx(3.0 * base.eta));
  CHECK(scaled.batch_size == 502);
}

TEST_CASE("learning_rate") {
  CHECK(learning_rate(LearningRateSchedule::constant(0.01), 7) == 0.01);
  CHECK(learning_rate(LearningRateSchedule::inverse_strong(1.0), 1) == 1.0);
  CHECK(learning_rate(LearningRateSchedule::inverse_strong(4.0), 25) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK_THROWS_AS(LearningRateSchedule::constant(0.0), ConfigError);
  CHECK_THROWS_AS(LearningRateSchedule::inverse_strong(-1.0), ConfigError);
  CHECK_THROWS_AS(learning_rate(LearningRateSchedule::constant(0.1), 0), ConfigError);
}

TEST_CASE("round_batch_size") {
  CHECK(round_batch_size(250.5) == 251);
  CHECK(round_batch_size(250.49) == 250);
  CHECK(round_batch_size(1.2) == 2);
  CHECK(round_batch_size(0.1) == 2);
}
