#include <cmath>

#include "bh/khinchine.hpp"
#include "bh/specialfn.hpp"
#include "doctest.h"
#include "oracles/oracles.hpp"

using bh::KhinchineMode;

TEST_CASE("A_2 is exactly one in both modes") {
  CHECK(bh::a_p(2.0, KhinchineMode::GammaFormula) == 1.0);
  CHECK(bh::a_p(2.0, KhinchineMode::HaagerupPiecewise) == 1.0);
}

TEST_CASE("A_p at the critical exponent collapses to 2^{1/2 - 1/p0}") {
  const double p0 = bh::critical_exponent();
  const double want = std::pow(2.0, 0.5 - 1.0 / p0);
  CHECK(std::abs(bh::a_p(p0, KhinchineMode::GammaFormula) - want) < 1e-12);
  CHECK(std::abs(bh::a_p(p0, KhinchineMode::HaagerupPiecewise) - want) < 1e-12);
  CHECK(std::abs(bh::a_p(p0, KhinchineMode::GammaFormula) -
                 bh::a_p(p0, KhinchineMode::HaagerupPiecewise)) < 1e-10);
}

TEST_CASE("A_{4/3}") {
  CHECK(bh::a_p(4.0 / 3.0, KhinchineMode::HaagerupPiecewise) ==
        doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-15));
  // sqrt(2) (Gamma(7/6)/sqrt(pi))^{3/4}, mpmath at 40 digits.
  constexpr double kFrozen = 0.8702544467840698141;
  CHECK(bh::a_p(4.0 / 3.0, KhinchineMode::GammaFormula) == doctest::Approx(kFrozen).epsilon(1e-14));

  const oracle::Mp p = oracle::Mp(4) / 3;
  const oracle::Mp lg = oracle::ln_gamma_mp(oracle::Mp(7) / 6);
  const oracle::Mp want = exp(log(oracle::Mp(2)) / 2 + (lg - log(oracle::pi_mp()) / 2) / p);
  CHECK(std::abs(bh::a_p(4.0 / 3.0, KhinchineMode::GammaFormula) - static_cast<double>(want)) <
        1e-15);
  CHECK(abs(exp(bh::log_a_p(bh::Extended(p), KhinchineMode::GammaFormula)) - want) <
        oracle::Mp("1e-40"));
}

TEST_CASE("A_p properties on a grid") {
  const double p0 = bh::critical_exponent();
  double prev = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double p = p0 + (2.0 - p0) * i / 2000.0;
    const double g = bh::a_p(p, KhinchineMode::GammaFormula);
    if (i > 0) REQUIRE(g > prev);
    prev = g;
    CHECK(std::abs(g - bh::a_p(p, KhinchineMode::HaagerupPiecewise)) < 1e-12);
  }
  for (int i = 1; i <= 1000; ++i) {
    const double p = 1.0 + i / 1000.0;
    for (auto mode : {KhinchineMode::GammaFormula, KhinchineMode::HaagerupPiecewise}) {
      const double a = bh::a_p(p, mode);
      CHECK(a > 0.0);
      CHECK(a <= 1.0);
    }
  }
}

TEST_CASE("A_p domain") {
  for (double p : {1.0, 0.5, 2.0000001, -3.0}) {
    CHECK_THROWS_AS(bh::a_p(p, KhinchineMode::GammaFormula), bh::DomainError);
  }
  CHECK(bh::parse_khinchine_mode("gamma") == KhinchineMode::GammaFormula);
  CHECK(bh::parse_khinchine_mode("haagerup") == KhinchineMode::HaagerupPiecewise);
  CHECK_FALSE(bh::parse_khinchine_mode("other"));
}
