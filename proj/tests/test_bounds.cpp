#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "subsup/bounds.hpp"

using namespace subsup;

namespace {

// Independent long-double route for the closed forms.
long double main_oracle(long double gamma) { return 1.0L - std::exp(-(1.0L - gamma)); }
long double beta_oracle(long double gamma, long double beta) {
  return 1.0L - std::exp(-beta * (1.0L - gamma));
}
long double curv_f_oracle(long double c, long double gamma) {
  return 1.0L - std::pow(1.0L - (1.0L - c) * (1.0L - gamma), 1.0L / (1.0L - c));
}

}  // namespace

TEST_CASE("bound_main values") {
  CHECK(bound_main(0.0) == doctest::Approx(0.6321205588285577).epsilon(1e-12));
  CHECK(bound_main(2.0 / 3.0) == doctest::Approx(0.2834686894262107).epsilon(1e-9));
  CHECK(bound_main(0.999999) < 2e-6);  // gamma -> 1 limit is 0
  CHECK(bound_main(0.3) == doctest::Approx(static_cast<double>(main_oracle(0.3L))).epsilon(1e-14));
  CHECK_THROWS_AS(bound_main(1.0), std::invalid_argument);
  CHECK_THROWS_AS(bound_main(-0.1), std::invalid_argument);
}

TEST_CASE("bound_overflow_cap values") {
  CHECK(bound_overflow_cap(0.0) == 2.0);
  CHECK(bound_overflow_cap(0.5) == 3.0);
  CHECK(bound_overflow_cap(2.0 / 3.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(bound_overflow_cap(1.0), std::invalid_argument);
}

TEST_CASE("bound_beta values and identities") {
  CHECK(bound_beta(0.0, 1.0) == bound_main(0.0));  // exact
  CHECK(bound_beta(0.0, 2.0) == doctest::Approx(0.8646647167633873).epsilon(1e-12));
  CHECK(bound_beta(0.2, 1e-12) < 1e-11);  // beta -> 0 limit
  CHECK_THROWS_AS(bound_beta(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bound_beta(0.0, -1.0), std::invalid_argument);
  for (double gamma = 0.0; gamma < 1.0; gamma += 0.05) {
    CHECK(bound_beta(gamma, 1.0) == bound_main(gamma));
    CHECK(bound_beta(gamma, 0.5) ==
          doctest::Approx(static_cast<double>(beta_oracle(gamma, 0.5L))).epsilon(1e-14));
  }
}

TEST_CASE("bound_beta monotone in beta, antitone in gamma") {
  for (double gamma = 0.0; gamma < 0.95; gamma += 0.1) {
    double prev = 0.0;
    for (double beta = 0.1; beta <= 2.0; beta += 0.1) {
      double b = bound_beta(gamma, beta);
      CHECK(b > prev);
      prev = b;
    }
  }
  for (double beta : {0.5, 1.0, 2.0}) {
    double prev = 2.0;
    for (double gamma = 0.0; gamma < 1.0; gamma += 0.05) {
      double b = bound_beta(gamma, beta);
      CHECK(b < prev);
      prev = b;
    }
  }
}

TEST_CASE("bound_curv_f values") {
  CHECK(bound_curv_f(0.0, 0.0) == 1.0);  // the modular knapsack limit
  CHECK(bound_curv_f(0.0, 0.4) == doctest::Approx(0.6).epsilon(1e-12));
  // c -> 1 recovers the main bound
  for (double gamma = 0.0; gamma < 1.0; gamma += 0.05)
    CHECK(std::fabs(bound_curv_f(1.0 - 1e-6, gamma) - bound_main(gamma)) < 1e-4);
  CHECK(bound_curv_f(0.3, 0.2) ==
        doctest::Approx(static_cast<double>(curv_f_oracle(0.3L, 0.2L))).epsilon(1e-12));
  CHECK_THROWS_AS(bound_curv_f(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bound_curv_f(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("bound_curv_f dominates bound_main on a grid") {
  for (int ci = 0; ci < 20; ++ci) {
    for (int gi = 0; gi < 20; ++gi) {
      double c = ci / 20.0;
      double gamma = gi / 20.0;
      CHECK(bound_curv_f(c, gamma) >= bound_main(gamma) - 1e-12);
    }
  }
}

TEST_CASE("bound_beyond values") {
  // beta+ = 1 reduces to bound_curv_f
  for (int ci = 0; ci < 20; ++ci) {
    for (int gi = 0; gi < 20; ++gi) {
      double c = ci / 20.0;
      double gamma = gi / 20.0;
      CHECK(std::fabs(bound_beyond(c, gamma, 1.0) - bound_curv_f(c, gamma)) <= 1e-12);
    }
  }
  // hand-evaluated point: c = 1/2, gamma = 1/2, beta+ = 2
  CHECK(bound_beyond(0.5, 0.5, 2.0) == doctest::Approx(0.625).epsilon(1e-12));
  // beta+ -> infinity pushes the bound to 1
  CHECK(bound_beyond(0.5, 0.5, 1e9) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(bound_beyond(0.5, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("bound_beyond is continuous at gamma -> 0 and nondecreasing in beta+") {
  for (double c : {0.0, 0.3, 0.8}) {
    for (double beta_plus : {1.0, 1.5, 2.0, 4.0}) {
      double at_limit = bound_beyond(c, 0.0, beta_plus);
      double near_zero = bound_beyond(c, 1e-6, beta_plus);
      CHECK(std::fabs(at_limit - near_zero) < 1e-4);
    }
    for (double gamma : {0.0, 0.2, 0.6}) {
      double prev = -1.0;
      for (double beta_plus = 1.0; beta_plus <= 5.0; beta_plus += 0.25) {
        double b = bound_beyond(c, gamma, beta_plus);
        CHECK(b >= prev - 1e-15);
        CHECK(b >= 0.0);
        CHECK(b <= 1.0);
        prev = b;
      }
    }
  }
}

TEST_CASE("bound_dual_cost") {
  CHECK(bound_dual_cost(2.0, 0.01, 1.0) == doctest::Approx(2.02).epsilon(1e-12));
  CHECK(bound_dual_cost(2.0, 1e-15, 5.0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(bound_dual_cost(1.0, 0.1, 10.0) == doctest::Approx(10.1).epsilon(1e-12));
  CHECK_THROWS_AS(bound_dual_cost(2.0, 0.01, 0.0), std::invalid_argument);
}

TEST_CASE("all objective bounds lie in [0, 1]") {
  for (double gamma : {0.0, 0.25, 0.5, 0.9, 0.999}) {
    CHECK(bound_main(gamma) >= 0.0);
    CHECK(bound_main(gamma) <= 1.0);
    for (double beta : {0.01, 0.5, 1.0, 3.0}) {
      double b = bound_beta(gamma, beta);
      CHECK(b >= 0.0);
      CHECK(b <= 1.0);
    }
    for (double c : {0.0, 0.5, 0.99}) {
      double b = bound_curv_f(c, gamma);
      CHECK(b >= 0.0);
      CHECK(b <= 1.0);
    }
  }
}
