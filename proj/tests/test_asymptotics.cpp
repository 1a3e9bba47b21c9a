#include <cmath>
#include <numbers>

#include "bh/asymptotics.hpp"
#include "bh/specialfn.hpp"
#include "doctest.h"
#include "oracles/oracles.hpp"

using bh::Family;
using bh::FamilySpec;
using bh::KhinchineMode;
using bh::LimitKind;

namespace {

const FamilySpec kRealGamma{Family::RecursiveReal, KhinchineMode::GammaFormula};
const FamilySpec kRecursive[] = {{Family::RecursiveReal, KhinchineMode::GammaFormula},
                                 {Family::RecursiveReal, KhinchineMode::HaagerupPiecewise},
                                 {Family::RecursiveComplex, KhinchineMode::GammaFormula},
                                 {Family::RecursiveComplex, KhinchineMode::HaagerupPiecewise}};

using oracle::Mp;

// The pre-limit expressions evaluated directly in 50-digit arithmetic.
Mp pre_limit_mp(LimitKind kind, double param) {
  const Mp half = Mp(1) / 2, three_halves = Mp(3) / 2;
  const Mp ln2 = log(Mp(2));
  const Mp half_log_pi = log(oracle::pi_mp()) / 2;
  auto log_a = [&](const Mp& p) {
    return ln2 / 2 + (oracle::ln_gamma_mp((p + 1) / 2) - half_log_pi) / p;
  };
  const Mp x(param), m(param);
  switch (kind) {
    case LimitKind::HalfShift:
      return exp((oracle::ln_gamma_mp(half - x) - oracle::ln_gamma_mp(half)) / x);
    case LimitKind::ThreeHalfShift:
      return exp((oracle::ln_gamma_mp(three_halves - x) - oracle::ln_gamma_mp(three_halves)) / x);
    case LimitKind::SequencePower:
      return exp(m * (oracle::ln_gamma_mp((3 * m + 2) / (2 * m + 4)) -
                      oracle::ln_gamma_mp(three_halves)));
    case LimitKind::KhinchinePrefactor: {
      const Mp p = 2 * m / (m + 2);
      return exp(m / 4 * ln2 + (m + 2) / 4 * (oracle::ln_gamma_mp((p + 1) / 2) - half_log_pi));
    }
    case LimitKind::EvenRatio:
      return exp(-(m / 2) * log_a(2 * m / (m + 2)));
    case LimitKind::OddRatio:
      return exp(-((m + 1) / 2) * log_a((2 * m - 2) / (m + 1)) * ((m - 1) / (2 * m)));
  }
  return 0;
}

}  // namespace

TEST_CASE("limit targets") {
  const double g = bh::euler_gamma();
  CHECK(bh::limit_target(LimitKind::HalfShift) == doctest::Approx(4.0 * std::exp(g)).epsilon(1e-15));
  CHECK(bh::limit_target(LimitKind::ThreeHalfShift) == doctest::Approx(4.0 * std::exp(g - 2.0)).epsilon(1e-15));
  CHECK(bh::limit_target(LimitKind::SequencePower) == doctest::Approx(16.0 * std::exp(2.0 * g - 4.0)).epsilon(1e-15));
  CHECK(bh::limit_target(LimitKind::KhinchinePrefactor) ==
        doctest::Approx(std::sqrt(2.0) / std::exp(1.0 - g / 2.0)).epsilon(1e-15));
  CHECK(std::floor(bh::limit_target(LimitKind::EvenRatio) * 1e4) / 1e4 == doctest::Approx(1.4402).epsilon(1e-12));
  CHECK(std::floor(bh::limit_target(LimitKind::OddRatio) * 1e4) / 1e4 == doctest::Approx(1.2001).epsilon(1e-12));
  const double odd = bh::limit_target(LimitKind::OddRatio);
  CHECK(std::abs(odd * odd - bh::limit_target(LimitKind::EvenRatio)) < 1e-14);
  CHECK(bh::limit_target(LimitKind::EvenRatio) * bh::limit_target(LimitKind::KhinchinePrefactor) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pre-limit values against 50-digit evaluation") {
  for (LimitKind kind : bh::kAllLimitKinds) {
    const bool shift = bh::takes_shift(kind);
    for (int k = 2; k <= 17; ++k) {
      double param = shift ? std::ldexp(1.0, -k) : std::ldexp(1.0, k);
      if (kind == LimitKind::OddRatio) param += 1.0;
      const double got = bh::gamma_limit_value(kind, param);
      const double want = static_cast<double>(pre_limit_mp(kind, param));
      INFO(bh::to_string(kind) << " at " << param);
      CHECK(std::abs(got - want) <= 1e-12 * want);
    }
  }
}

TEST_CASE("pre-limit values approach their targets") {
  for (LimitKind kind : {LimitKind::HalfShift, LimitKind::ThreeHalfShift}) {
    CHECK(std::abs(bh::gamma_limit_value(kind, 1e-4) / bh::limit_target(kind) - 1.0) < 1e-3);
  }
  for (LimitKind kind : {LimitKind::SequencePower, LimitKind::KhinchinePrefactor, LimitKind::EvenRatio,
                         LimitKind::OddRatio}) {
    CHECK(std::abs(bh::gamma_limit_value(kind, 1e5) / bh::limit_target(kind) - 1.0) < 1e-3);
  }
  // Reciprocal of the Khinchine prefactor matches the even-ratio limit.
  CHECK(std::abs(1.0 / bh::gamma_limit_value(LimitKind::KhinchinePrefactor, 1e5) - 1.4402) < 1e-3);
  const auto [first, second] = bh::odd_ratio_factors(100'001);
  CHECK(std::abs(first - bh::limit_target(LimitKind::OddRatio)) < 1e-4);
  CHECK(std::abs(second - bh::limit_target(LimitKind::OddRatio)) < 1e-4);
}

TEST_CASE("pre-limit sequences are monotone on the dyadic tail") {
  for (LimitKind kind : bh::kAllLimitKinds) {
    const double target = bh::limit_target(kind);
    double prev_gap = INFINITY;
    for (int k = 4; k <= 20; ++k) {
      double param = bh::takes_shift(kind) ? std::ldexp(0.25, -k) : std::ldexp(1.0, k);
      if (kind == LimitKind::OddRatio) param += 1.0;
      const double gap = std::abs(bh::gamma_limit_value(kind, param) - target);
      INFO(bh::to_string(kind) << " k=" << k);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("gamma_limit_value domain") {
  CHECK_THROWS_AS(bh::gamma_limit_value(LimitKind::HalfShift, 0.0), bh::DomainError);
  CHECK_THROWS_AS(bh::gamma_limit_value(LimitKind::HalfShift, 0.5), bh::DomainError);
  CHECK_THROWS_AS(bh::gamma_limit_value(LimitKind::SequencePower, 1.0), bh::DomainError);
  CHECK_THROWS_AS(bh::odd_ratio_factors(4), bh::DomainError);
}

TEST_CASE("even ratio") {
  for (const auto& spec : kRecursive) {
    INFO(bh::to_string(spec.family) << " " << bh::to_string(spec.mode));
    CHECK(std::abs(bh::even_ratio(spec, 100'000) - 1.4402) < 1e-3);
    CHECK(std::abs(bh::even_ratio(spec, 100'000) - bh::limit_target(LimitKind::EvenRatio)) < 1e-3);
  }
  for (std::int64_t n : {2, 5, 40}) {
    CHECK(bh::even_ratio({Family::DavieKaijser}, n) ==
          doctest::Approx(std::pow(2.0, n / 2.0)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(bh::even_ratio(kRealGamma, 1), bh::DomainError);
}

TEST_CASE("half-index ratio residuals") {
  for (const auto& spec : kRecursive) {
    const auto r = bh::check_claim1(spec, 10'000);
    CHECK(r.odd < 1e-3);
    CHECK(r.even < 1e-3);
  }
  const auto dk = bh::check_claim1({Family::DavieKaijser}, 50);
  const double want = std::abs(std::pow(2.0, 0.25) - 1.0);
  CHECK(dk.odd == doctest::Approx(want).epsilon(1e-12));
  CHECK(dk.even == doctest::Approx(want).epsilon(1e-12));
  CHECK(want == doctest::Approx(0.189).epsilon(1e-3));
  // Residuals decay along the dyadic grid.
  double prev = 1.0;
  for (std::int64_t n = 16; n <= (1 << 16); n *= 4) {
    const auto r = bh::check_claim1(kRealGamma, n);
    CHECK(std::max(r.odd, r.even) < prev);
    prev = std::max(r.odd, r.even);
  }
  CHECK_THROWS_AS(bh::check_claim1(kRealGamma, 2), bh::DomainError);
}

TEST_CASE("contraction step") {
  const auto scan = bh::check_contraction(kRealGamma, 1.5, 100, 100'000);
  CHECK(scan.success);
  CHECK(scan.index == 101);
  CHECK(scan.threshold == doctest::Approx(std::pow(1.5, 0.625)));

  // Self-consistent K from the data, then chaining twice gives K^{25/64} < sqrt(K).
  const auto table = bh::cached_table(kRealGamma, 100'001);
  double dmax = 0.0;
  for (std::int64_t n = 3; n <= 100'000; ++n) dmax = std::max(dmax, table->ratio(n));
  const double K = dmax + 1e-9;
  const auto first = bh::check_contraction(kRealGamma, K, 2, 100'000);
  REQUIRE(first.success);
  const auto second = bh::check_contraction(kRealGamma, first.threshold, first.index, 100'000);
  REQUIRE(second.success);
  CHECK(second.threshold < std::sqrt(K));
  CHECK(second.index >= first.index);
  for (std::int64_t n = second.index + 1; n <= 100'000; ++n) REQUIRE(table->ratio(n) < second.threshold);
  if (second.last_violation) CHECK(table->ratio(*second.last_violation) >= second.threshold);

  SUBCASE("hypothesis and domain errors") {
    CHECK_THROWS_AS(bh::check_contraction(kRealGamma, 1.0, 100, 1000), bh::DomainError);
    CHECK_THROWS_AS(bh::check_contraction(kRealGamma, 0.5, 100, 1000), bh::DomainError);
    try {
      bh::check_contraction(kRealGamma, 1.001, 2, 1000);
      FAIL("expected HypothesisError");
    } catch (const bh::HypothesisError& e) {
      CHECK(e.value() >= 1.001);
      CHECK(table->ratio(e.witness()) == e.value());
    }
  }
}

TEST_CASE("envelope") {
  const auto s0 = bh::envelope(kRealGamma, 0, 1.5, 100'000);
  CHECK(s0.success);
  CHECK(s0.index == 2);
  CHECK_FALSE(s0.last_violation);
  for (int s = 0; s <= 6; ++s) {
    const auto e = bh::envelope(kRealGamma, s, 1.5, 1'000'000);
    INFO("s = " << s);
    CHECK(e.success);
    CHECK(e.threshold == doctest::Approx(std::pow(1.5, std::ldexp(1.0, -s))));
  }
  const auto e6 = bh::envelope(kRealGamma, 6, 1.5, 1'000'000);
  CHECK(e6.threshold == doctest::Approx(1.00636).epsilon(1e-5));
  CHECK(e6.index > 2);
  CHECK(e6.index < 1000);  // D_n ≈ 1 + c/n with c ≈ 0.53

  // Threshold below the achievable tail fails with a witness at the end of the scan.
  const auto tiny = bh::envelope(kRealGamma, 40, 1.5, 200);
  CHECK_FALSE(tiny.success);
  REQUIRE(tiny.last_violation);
  CHECK(*tiny.last_violation == 200);

  CHECK_THROWS_AS(bh::envelope(kRealGamma, 0, 1.0, 1000), bh::DomainError);
  // 1.3 is not an upper bound for C_{2n}/C_n.
  CHECK_THROWS_AS(bh::envelope(kRealGamma, 0, 1.3, 1000), bh::HypothesisError);
}

TEST_CASE("convergence report") {
  const auto report = bh::convergence_report(kRealGamma, 1 << 20);
  CHECK(report.tail_sup < 1.00001);
  CHECK(report.tail_inf >= 1.0 - 1e-12);
  CHECK(report.below_one == 0);
  CHECK(report.beats_conjectured_rate);
  CHECK(report.block_max_decreasing);
  CHECK(report.block_max.size() == 19);
  CHECK(report.predicted_c == doctest::Approx(std::log(bh::limit_target(LimitKind::EvenRatio)) / std::numbers::ln2));
  CHECK(std::abs(report.fitted_c / report.predicted_c - 1.0) < 0.02);
  CHECK(report.claim1.odd < 1e-6);
  CHECK(bh::kConjecturedRatio == doctest::Approx(1.0905077326652577).epsilon(1e-15));

  // Below-threshold tail beyond a computable index, both families and modes.
  for (const auto& spec : kRecursive) {
    const auto table = bh::cached_table(spec, (1 << 20) + 1);
    for (double threshold : {1.1, 1.01, 1.001}) {
      std::int64_t last = 1;
      for (std::int64_t n = 2; n <= (1 << 20); ++n) {
        if (table->ratio(n) >= threshold) last = n;
      }
      INFO("threshold " << threshold);
      CHECK(last < (1 << 20) / 2);
    }
  }
  CHECK_THROWS_AS(bh::convergence_report(kRealGamma, 1000), bh::DomainError);
}
