#include "bh/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bh/kernels.hpp"
#include "bh/specialfn.hpp"

namespace bh {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

// ln Γ(1/2 − x) − ln Γ(1/2) and ln Γ(3/2 − x) − ln Γ(3/2), via Γ(3/2 − x) = (1/2 − x) Γ(1/2 − x).
double log_gamma_drop(double base, double x) {
  const double three_halves = ln_gamma_shift_from_three_halves(-x);
  return base == 1.5 ? three_halves : three_halves - std::log1p(-2.0 * x);
}

}  // namespace

std::string_view to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::HalfShift:
      return "half-shift";
    case LimitKind::ThreeHalfShift:
      return "three-half-shift";
    case LimitKind::SequencePower:
      return "sequence-power";
    case LimitKind::KhinchinePrefactor:
      return "khinchine-prefactor";
    case LimitKind::EvenRatio:
      return "even-ratio";
    case LimitKind::OddRatio:
      return "odd-ratio";
  }
  return "unknown";
}

bool takes_shift(LimitKind kind) {
  return kind == LimitKind::HalfShift || kind == LimitKind::ThreeHalfShift;
}

double limit_target(LimitKind kind) {
  const double g = euler_gamma();
  switch (kind) {
    case LimitKind::HalfShift:
      return 4.0 * std::exp(g);
    case LimitKind::ThreeHalfShift:
      return 4.0 * std::exp(g - 2.0);
    case LimitKind::SequencePower:
      return 16.0 * std::exp(2.0 * g - 4.0);
    case LimitKind::KhinchinePrefactor:
      return std::exp(0.5 * kLn2 - (1.0 - 0.5 * g));
    case LimitKind::EvenRatio:
      return std::exp((1.0 - 0.5 * g) - 0.5 * kLn2);
    case LimitKind::OddRatio:
      return std::exp((0.5 - 0.25 * g) - 0.25 * kLn2);
  }
  throw InternalError("limit_target: unknown kind");
}

std::pair<double, double> odd_ratio_factors(std::int64_t m) {
  require(m >= 3 && m % 2 == 1, "odd_ratio_factors: m must be odd and at least 3");
  const auto md = static_cast<double>(m);
  const auto mode = KhinchineMode::GammaFormula;
  const double first = -((md + 1.0) / 2.0) * log_a_p((2.0 * md - 2.0) / (md + 1.0), mode) *
                       ((md - 1.0) / (2.0 * md));
  const double second = -((md - 1.0) / 2.0) * log_a_p((2.0 * md + 2.0) / (md + 3.0), mode) *
                        ((md + 1.0) / (2.0 * md));
  return {std::exp(first), std::exp(second)};
}

double gamma_limit_value(LimitKind kind, double param) {
  if (takes_shift(kind)) {
    require(param > 0.0 && param <= 0.4, "gamma_limit_value: shift x must lie in (0, 0.4]");
    const double base = kind == LimitKind::HalfShift ? 0.5 : 1.5;
    return std::exp(log_gamma_drop(base, param) / param);
  }
  require(param >= 2.0 && std::isfinite(param), "gamma_limit_value: degree m must be at least 2");
  const double m = param;
  switch (kind) {
    case LimitKind::SequencePower:
      // (3m+2)/(2m+4) = 3/2 − 2/(m+2).
      return std::exp(m * log_gamma_drop(1.5, 2.0 / (m + 2.0)));
    case LimitKind::KhinchinePrefactor: {
      // (p+1)/2 = 3/2 − 2/(m+2) and ½ ln π = ln Γ(3/2) + ln 2.
      const double drop = log_gamma_drop(1.5, 2.0 / (m + 2.0));
      return std::exp((m + 2.0) / 4.0 * drop - 0.5 * kLn2);
    }
    case LimitKind::EvenRatio:
      return std::exp(-(m / 2.0) * log_a_p(2.0 * m / (m + 2.0), KhinchineMode::GammaFormula));
    case LimitKind::OddRatio: {
      auto odd = static_cast<std::int64_t>(std::ceil(m));
      if (odd % 2 == 0) ++odd;
      return odd_ratio_factors(odd).first;
    }
    default:
      break;
  }
  throw InternalError("gamma_limit_value: unknown kind");
}

double even_ratio(const FamilySpec& spec, std::int64_t n) {
  require(n >= 2, "even_ratio: n must be at least 2");
  return std::exp(log_constant(spec, 2 * n).log_value - log_constant(spec, n).log_value);
}

Claim1Residuals check_claim1(const FamilySpec& spec, std::int64_t n) {
  require(n >= 3, "check_claim1: n must be at least 3");
  const auto table = cached_table(spec, 2 * n + 1);
  const double odd = std::exp(table->log_ratio(2 * n - 1) - 0.5 * table->log_ratio(n - 1));
  const double even = std::exp(table->log_ratio(2 * n) - 0.5 * table->log_ratio(n));
  return {std::abs(odd - 1.0), std::abs(even - 1.0)};
}

namespace {

ThresholdScan scan_threshold(std::span<const double> logs, std::int64_t start, std::int64_t n_end,
                             double threshold) {
  ThresholdScan scan;
  scan.threshold = threshold;
  scan.last_violation = kernels::omp::last_ratio_at_least(logs, start, n_end, threshold);
  scan.index = start;
  if (scan.last_violation) {
    scan.index = std::max(start, *scan.last_violation);
    const auto v = *scan.last_violation;
    scan.violation_value = std::exp(logs[v + 1] - logs[v]);
  }
  scan.success = scan.index < n_end;
  return scan;
}

}  // namespace

ThresholdScan check_contraction(const FamilySpec& spec, double K, std::int64_t n_start,
                                std::int64_t n_end) {
  require(K > 1.0 && std::isfinite(K), "check_contraction: K must exceed 1");
  require(n_start >= 2 && n_end > n_start, "check_contraction: need 2 <= n_start < n_end");
  const auto table = cached_table(spec, n_end + 1);
  const auto logs = table->logs();
  if (auto bad = kernels::omp::last_ratio_at_least(logs, n_start + 1, n_end, K)) {
    throw HypothesisError("check_contraction: D_n < K fails on the scan range", *bad,
                          table->ratio(*bad));
  }
  return scan_threshold(logs, n_start + 1, n_end, std::pow(K, 5.0 / 8.0));
}

ThresholdScan envelope(const FamilySpec& spec, int s, double C, std::int64_t n_end) {
  require(C > 1.0 && std::isfinite(C), "envelope: C must exceed 1");
  require(s >= 0 && s < 64, "envelope: s must lie in [0, 63]");
  require(n_end >= 3, "envelope: n_end must be at least 3");
  const auto table = cached_table(spec, n_end + 1);
  // C must bound every scanned C_{2n}/C_n.
  for (std::int64_t n = 2; 2 * n <= n_end + 1; ++n) {
    const double r = std::exp(table->log_c(2 * n) - table->log_c(n));
    if (r >= C) throw HypothesisError("envelope: C is not an upper bound for C_{2n}/C_n", n, r);
  }
  return scan_threshold(table->logs(), 2, n_end, std::pow(C, std::ldexp(1.0, -s)));
}

ConvergenceReport convergence_report(const FamilySpec& spec, std::int64_t n_max) {
  require(n_max >= 1024, "convergence_report: n_max must be at least 2^10");
  const auto table = cached_table(spec, n_max + 1);
  const auto logs = table->logs();

  ConvergenceReport report;
  report.family = spec;
  report.n_max = n_max;
  const std::int64_t lo = n_max / 2;
  const auto tail = kernels::omp::ratio_extremes(logs, lo, n_max);
  report.tail_sup = tail.max.value;
  report.tail_inf = tail.min.value;

  // Minimizing Σ (1/n)(n ln D_n − c)^2 gives c = Σ ln D_n / Σ 1/n.
  double inv_sum = 0.0;
  for (std::int64_t n = lo; n <= n_max; ++n) inv_sum += 1.0 / static_cast<double>(n);
  report.fitted_c = kernels::omp::sum_log_ratio(logs, lo, n_max) / inv_sum;
  report.predicted_c = std::log(limit_target(LimitKind::EvenRatio)) / kLn2;
  report.beats_conjectured_rate = report.tail_sup < kConjecturedRatio;
  report.below_one = kernels::omp::count_ratio_below(logs, 2, n_max, 1.0 - 1e-12);

  for (std::int64_t k = 1; (std::int64_t{2} << k) <= n_max; ++k) {
    const std::int64_t a = std::int64_t{1} << k;
    report.block_max.push_back(kernels::omp::ratio_extremes(logs, a, 2 * a - 1).max.value);
  }
  report.block_max_decreasing = true;
  for (std::size_t k = 8; k < report.block_max.size(); ++k) {
    // block_max[k - 1] holds block k.
    if (!(report.block_max[k] < report.block_max[k - 1])) report.block_max_decreasing = false;
  }
  report.claim1 = check_claim1(spec, n_max / 4);
  return report;
}

}  // namespace bh
