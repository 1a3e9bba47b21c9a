#include <cmath>
#include <numbers>

#include "bh/constants.hpp"
#include "doctest.h"
#include "oracles/oracles.hpp"

using bh::Family;
using bh::FamilySpec;
using bh::KhinchineMode;

namespace {

constexpr double kLn2 = std::numbers::ln2;
const double kLnQ = std::log(2.0 / std::sqrt(std::numbers::pi));

const FamilySpec kRealGamma{Family::RecursiveReal, KhinchineMode::GammaFormula};
const FamilySpec kRealHaag{Family::RecursiveReal, KhinchineMode::HaagerupPiecewise};
const FamilySpec kComplexGamma{Family::RecursiveComplex, KhinchineMode::GammaFormula};
const FamilySpec kComplexHaag{Family::RecursiveComplex, KhinchineMode::HaagerupPiecewise};
const FamilySpec kRecursive[] = {kRealGamma, kRealHaag, kComplexGamma, kComplexHaag};

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("base cases") {
  for (auto mode : {KhinchineMode::GammaFormula, KhinchineMode::HaagerupPiecewise}) {
    CHECK(close_rel(bh::log_constant({Family::RecursiveReal, mode}, 2).value(), std::sqrt(2.0), 1e-12));
    CHECK(close_rel(bh::log_constant({Family::RecursiveReal, mode}, 3).value(),
                    std::pow(2.0, 5.0 / 6.0), 1e-12));
    for (int m = 2; m <= 6; ++m) {
      CHECK(close_rel(bh::log_constant({Family::RecursiveComplex, mode}, m).value(),
                      std::pow(2.0 / std::sqrt(std::numbers::pi), m - 1), 1e-12));
    }
  }
  CHECK(bh::log_constant(kRealGamma, 2).log_value == doctest::Approx(0.5 * kLn2).epsilon(1e-15));
  CHECK(bh::log_constant(kRealGamma, 3).log_value == doctest::Approx(5.0 / 6.0 * kLn2).epsilon(1e-15));
  CHECK(bh::log_constant(kComplexGamma, 4).log_value == doctest::Approx(3.0 * kLnQ).epsilon(1e-15));
}

TEST_CASE("C_4 real with piecewise Khinchine constants is 2") {
  // C_4 = C_2 / A_{4/3}^2 = sqrt(2) / 2^{-1/2}.
  CHECK(bh::log_constant(kRealHaag, 4).log_value == doctest::Approx(kLn2).epsilon(1e-15));
}

TEST_CASE("closed-form families") {
  CHECK(bh::log_constant({Family::Original}, 2).log_value == doctest::Approx(1.25 * kLn2).epsilon(1e-15));
  const auto dk = bh::constant_table({Family::DavieKaijser}, 5);
  REQUIRE(dk.size() == 4);
  const double want[] = {0.5 * kLn2, kLn2, 1.5 * kLn2, 2.0 * kLn2};
  for (int i = 0; i < 4; ++i) {
    CHECK(dk[i].m == i + 2);
    CHECK(dk[i].log_value == doctest::Approx(want[i]).epsilon(1e-15));
  }
  const auto q = bh::constant_table({Family::Queffelec}, 4);
  CHECK(q[1].m == 3);
  CHECK(q[1].log_value == doctest::Approx(2.0 * kLnQ).epsilon(1e-15));
  for (std::int64_t n : {2, 7, 1000}) {
    CHECK(bh::ratio({Family::DavieKaijser}, n) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(bh::ratio({Family::Queffelec}, n) ==
          doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
  }
  CHECK(bh::ratio({Family::DavieKaijser}, 5) == doctest::Approx(1.4142).epsilon(1e-4));
  CHECK(bh::ratio({Family::Queffelec}, 5) == doctest::Approx(1.1284).epsilon(1e-4));
}

TEST_CASE("recursion against the direct multiplicative oracle") {
  for (const auto& spec : kRecursive) {
    for (std::int64_t m = 2; m <= 96; ++m) {
      const double got = bh::log_constant(spec, m).value();
      const double want = static_cast<double>(oracle::constant_direct(spec.family, spec.mode, m));
      INFO(bh::to_string(spec.family) << " " << bh::to_string(spec.mode) << " m=" << m);
      CHECK(close_rel(got, want, 1e-13));
    }
  }
}

TEST_CASE("extended-precision table agrees with the double table") {
  for (const auto& spec : kRecursive) {
    const auto ext = bh::extended_log_table(spec, 512);
    const auto table = bh::cached_table(spec, 512);
    for (std::int64_t m = 2; m <= 512; ++m) {
      CHECK(std::abs(static_cast<double>(ext[m]) - table->log_c(m)) < 1e-14);
    }
  }
}

TEST_CASE("ratio of the real recursion at n = 2") {
  CHECK(bh::ratio(kRealGamma, 2) == doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("even and odd branch identities") {
  for (const auto& spec : kRecursive) {
    const auto table = bh::cached_table(spec, 1 << 12);
    for (std::int64_t m = 8; m <= 4096; m += 2) {
      const double md = static_cast<double>(m);
      const double lhs =
          std::exp(table->log_c(m)) * std::pow(bh::a_p(2 * md / (md + 2), spec.mode), md / 2);
      REQUIRE(close_rel(lhs, std::exp(table->log_c(m / 2)), 1e-10));
    }
    for (std::int64_t m = 7; m <= 4095; m += 2) {
      const double md = static_cast<double>(m);
      const double left = std::exp(table->log_c((m - 1) / 2)) /
                          std::pow(bh::a_p((2 * md - 2) / (md + 1), spec.mode), (md + 1) / 2);
      const double right = std::exp(table->log_c((m + 1) / 2)) /
                           std::pow(bh::a_p((2 * md + 2) / (md + 3), spec.mode), (md - 1) / 2);
      const double rhs = std::pow(left, (md - 1) / (2 * md)) * std::pow(right, (md + 1) / (2 * md));
      REQUIRE(close_rel(std::exp(table->log_c(m)), rhs, 1e-10));
    }
  }
}

TEST_CASE("large tables: finite, consistent, non-decreasing") {
  for (const auto& spec : {kRealGamma, kComplexHaag}) {
    const auto big = bh::constant_table(spec, 1'000'000);
    CHECK(big.back().m == 1'000'000);
    for (std::int64_t m : {2, 3, 99, 4096, 65537, 999'999, 1'000'000}) {
      CHECK(big[m - 2].log_value == bh::log_constant(spec, m).log_value);
    }
  }
  for (const auto& spec : kRecursive) {
    const auto table = bh::cached_table(spec, (1 << 20) + 1);
    for (std::int64_t m = 2; m <= (1 << 20); ++m) {
      REQUIRE(std::isfinite(table->log_c(m)));
      REQUIRE(table->log_c(m) >= 0.0);
    }
  }
  const auto series = bh::ratio_series(kRealGamma, 10'000);
  CHECK(series.entries.size() == 9'998);
  CHECK(series.below_one_count == 0);
  for (const auto& e : series.entries) REQUIRE(e.ratio >= 1.0 - 1e-12);
}

TEST_CASE("ratio_series shapes") {
  const auto dk = bh::ratio_series({Family::DavieKaijser}, 10);
  CHECK(dk.entries.size() == 8);
  CHECK(dk.entries.front().n == 2);
  CHECK(dk.entries.back().n == 9);
  for (const auto& e : dk.entries) CHECK(e.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const auto c = bh::ratio_series(kComplexGamma, 100);
  CHECK(c.entries.back().ratio < c.entries.front().ratio);
}

TEST_CASE("family ordering at large m") {
  for (const auto& spec : kRecursive) {
    for (std::int64_t m : {64, 256, 1024}) {
      const double rec = bh::log_constant(spec, m).log_value;
      CHECK(rec < bh::log_constant({Family::Queffelec}, m).log_value);
      CHECK(rec < bh::log_constant({Family::DavieKaijser}, m).log_value);
    }
  }
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
  for (const auto& spec : {kRealGamma, kRealHaag, kComplexGamma, kComplexHaag, FamilySpec{Family::Original}}) {
    const bh::ConstantTable serial(spec, 100'003, bh::Execution::Serial);
    const bh::ConstantTable parallel(spec, 100'003, bh::Execution::Parallel);
    for (std::int64_t m = 2; m <= 100'003; ++m) REQUIRE(serial.log_c(m) == parallel.log_c(m));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bh::log_constant(kRealGamma, 1), bh::DomainError);
  CHECK_THROWS_AS(bh::log_constant({Family::Original}, 0), bh::DomainError);
  CHECK_THROWS_AS(bh::constant_table(kRealGamma, 1), bh::DomainError);
  CHECK_THROWS_AS(bh::ratio(kRealGamma, 1), bh::DomainError);
  CHECK_THROWS_AS(bh::ratio_series(kRealGamma, 2), bh::DomainError);
  CHECK(bh::parse_family("recursive-complex") == Family::RecursiveComplex);
  CHECK_FALSE(bh::parse_family("bogus"));
}
