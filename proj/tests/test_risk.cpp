#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rao/core.hpp"
#include "rao/errors.hpp"
#include "rao/risk.hpp"
#include "rao/verify.hpp"

using namespace rao;

namespace {

EmpiricalCdf ecdf(std::vector<double> v) { return build_ecdf(v); }

}  // namespace

TEST_CASE("build_ecdf sorts and keeps duplicates") {
  const auto e = ecdf({3, 1, 2});
  REQUIRE(e.size() == 3);
  CHECK(e.samples()[0] == 1);
  CHECK(e.samples()[1] == 2);
  CHECK(e.samples()[2] == 3);
  CHECK(ecdf({5}).size() == 1);
  const auto dup = ecdf({2, 2, 2});
  CHECK(dup.size() == 3);
  CHECK(dup.samples()[2] == 2);

  CHECK_THROWS_AS(build_ecdf(std::vector<double>{}), EmptySample);
  CHECK_THROWS_AS(ecdf({1.0, NAN}), ConfigError);
}

TEST_CASE("ecdf_eval is the right-continuous step function") {
  const auto e = ecdf({1, 2, 3});
  CHECK(ecdf_eval(e, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(ecdf_eval(e, 0.5) == 0.0);
  CHECK(ecdf_eval(e, 3.0) == 1.0);
  CHECK(ecdf_eval(e, 10.0) == 1.0);
  CHECK(e.left_limit(2.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("cvar_discrete examples") {
  const auto e = ecdf({1, 2, 3, 4});
  CHECK(cvar_discrete(e, 0.5) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(cvar_discrete(e, 1.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(cvar_discrete(e, 0.3) == doctest::Approx((4.0 + 0.2 * 3.0) / 1.2).epsilon(1e-15));
  for (double a : {0.01, 0.3, 0.77, 1.0}) CHECK(cvar_discrete(ecdf({7}), a) == 7.0);

  CHECK_THROWS_AS(cvar_discrete(e, 0.0), InvalidRiskLevel);
  CHECK_THROWS_AS(cvar_discrete(e, 1.5), InvalidRiskLevel);
  CHECK_THROWS_AS(cvar_discrete(e, -0.2), InvalidRiskLevel);
}

TEST_CASE("example values agree with a brute-force RU grid") {
  const auto e = ecdf({1, 2, 3, 4});
  for (double a : {0.3, 0.5, 1.0}) {
    const double grid = ru_grid_minimum(e, a, 100000);
    CHECK(std::abs(grid - cvar_discrete(e, a)) <= 3.0 / 99999.0 / a);
  }
}

TEST_CASE("in-place variant matches") {
  Rng rng(21);
  for (int c = 0; c < 300; ++c) {
    std::vector<double> v(1 + rng() % 40);
    for (double& x : v) x = uniform01(rng) * 4.0 - 2.0;
    const double alpha = 0.01 + 0.99 * uniform01(rng);
    const double ref = cvar_discrete(build_ecdf(v), alpha);
    CHECK(std::abs(cvar_discrete_inplace(v, alpha) - ref) <= 1e-14);
  }
}

TEST_CASE("ru_functional examples") {
  const auto e = ecdf({1, 2, 3, 4});
  CHECK(ru_functional(e, 1.0, 0.0) == doctest::Approx(2.5));
  for (double a : {0.1, 0.5, 1.0}) CHECK(ru_functional(e, a, 4.0) == 4.0);
  CHECK(ru_functional(e, 0.5, 3.0) == doctest::Approx(3.5));
  CHECK(value_at_risk(e, 0.5) == 3.0);
}

TEST_CASE("sup_cdf_distance examples") {
  const auto f = ecdf({0.3, 1.2, 1.2, 5.0});
  CHECK(sup_cdf_distance(f, f) == 0.0);
  CHECK(sup_cdf_distance(ecdf({0}), ecdf({1})) == 1.0);
  CHECK(sup_cdf_distance(ecdf({0, 1}), ecdf({0, 2})) == doctest::Approx(0.5));
  CHECK(sup_cdf_distance(ecdf({1, 1, 1, 2}), ecdf({0, 1, 2, 2})) == doctest::Approx(0.25));
}

TEST_CASE("dkw_epsilon") {
  CHECK(dkw_epsilon(17, 2.0) == 0.0);
  CHECK(dkw_epsilon(50, 0.05) == doctest::Approx(0.19206).epsilon(1e-5));
  CHECK(dkw_epsilon(50, 0.05) == doctest::Approx(std::sqrt(std::log(40.0) / 100.0)).epsilon(1e-15));
  for (std::size_t n : {1u, 10u, 333u}) {
    CHECK(dkw_epsilon(2 * n, 0.1) == doctest::Approx(dkw_epsilon(n, 0.1) / std::sqrt(2.0)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(dkw_epsilon(10, 0.0), InvalidConfidence);
  CHECK_THROWS_AS(dkw_epsilon(10, 2.5), InvalidConfidence);
  CHECK_THROWS_AS(dkw_epsilon(0, 0.05), ConfigError);
}

TEST_CASE("cvar_error_bound") {
  CHECK(cvar_error_bound(3.0, 0.2, 0.0) == 0.0);
  CHECK(cvar_error_bound(2.0, 0.5, 0.1) == doctest::Approx(0.4));
  CHECK(cvar_error_bound(1.0, 1.0, 0.3) == doctest::Approx(0.3));
}

TEST_CASE("risk properties") {
  CHECK(check_cvar_alpha_monotone(500, 101).passed);
  CHECK(check_cvar_translation_homogeneity(500, 102).passed);
  CHECK(check_cvar_ru_equivalence(300, 103).passed);
  CHECK(check_cvar_sup_lipschitz(1000, 104).passed);
  CHECK(check_dkw_validity(2000, 100, 0.05, 105).passed);
}

TEST_CASE("the tail-mean convention is pinned down") {
  // A top-fraction tail mean on asymmetric data distinguishes it from the lower tail.
  const auto e = ecdf({0, 0, 0, 10});
  CHECK(cvar_discrete(e, 0.25) == 10.0);
  CHECK(cvar_discrete(e, 0.5) == 5.0);
}
