#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "bh/constants.hpp"

namespace bh {

/// Closed-form limits built from the Euler–Mascheroni constant γ.
///
///   HalfShift           lim_{x→0} (Γ(1/2 − x)/Γ(1/2))^{1/x}         = 4 e^γ
///   ThreeHalfShift      lim_{x→0} (Γ(3/2 − x)/Γ(3/2))^{1/x}         = 4 e^{γ−2}
///   SequencePower       lim_m (Γ((3m+2)/(2m+4))/Γ(3/2))^m            = 16 e^{2γ−4}
///   KhinchinePrefactor  lim_m 2^{m/4} (Γ((p_m+1)/2)/√π)^{(m+2)/4}     = √2 / e^{1−γ/2}
///   EvenRatio           lim_m (A_{2m/(m+2)}^{m/2})^{-1}                = e^{1−γ/2} / √2
///   OddRatio            lim_m (A_{(2m−2)/(m+1)}^{(m+1)/2})^{-(m−1)/(2m)} = e^{1/2−γ/4} / 2^{1/4}
/// with p_m = 2m/(m+2).
enum class LimitKind {
  HalfShift,
  ThreeHalfShift,
  SequencePower,
  KhinchinePrefactor,
  EvenRatio,
  OddRatio
};

inline constexpr LimitKind kAllLimitKinds[] = {
    LimitKind::HalfShift,          LimitKind::ThreeHalfShift, LimitKind::SequencePower,
    LimitKind::KhinchinePrefactor, LimitKind::EvenRatio,      LimitKind::OddRatio};

std::string_view to_string(LimitKind kind);

/// True when the pre-limit parameter is a shift x → 0 rather than a degree m → ∞.
bool takes_shift(LimitKind kind);

double limit_target(LimitKind kind);

/// Exact pre-limit expression at `param` (x ∈ (0, 0.4] for the shift kinds,
/// m ≥ 2 for the others). OddRatio forces m odd by rounding up.
double gamma_limit_value(LimitKind kind, double param);

/// Both odd-degree factors, each tending to limit_target(OddRatio).
std::pair<double, double> odd_ratio_factors(std::int64_t m);

/// C_{2n} / C_n.
double even_ratio(const FamilySpec& spec, std::int64_t n);

struct Claim1Residuals {
  double odd = 0.0;   // |D_{2n−1} / √D_{n−1} − 1|
  double even = 0.0;  // |D_{2n} / √D_n − 1|
};

Claim1Residuals check_claim1(const FamilySpec& spec, std::int64_t n);

/// Outcome of scanning D_n against a threshold on (start, n_end].
/// `index` is max(start, last violating n); success iff index < n_end.
struct ThresholdScan {
  bool success = false;
  double threshold = 0.0;
  std::int64_t index = 0;
  std::optional<std::int64_t> last_violation;
  double violation_value = 0.0;  // D at last_violation
};

/// One contraction step K → K^{5/8}: requires D_n < K on (n_start, n_end]
/// (HypothesisError otherwise) and locates m1.
ThresholdScan check_contraction(const FamilySpec& spec, double K, std::int64_t n_start,
                                std::int64_t n_end);

/// Envelope D_n < C^{2^{-s}} on [2, n_end]. Requires C ≥ max C_{2n}/C_n over
/// 2n ≤ n_end + 1 (HypothesisError otherwise).
ThresholdScan envelope(const FamilySpec& spec, int s, double C, std::int64_t n_end);

struct ConvergenceReport {
  FamilySpec family;
  std::int64_t n_max = 0;
  double tail_sup = 0.0;  // max D_n, n ∈ [n_max/2, n_max]
  double tail_inf = 0.0;
  double fitted_c = 0.0;     // 1/n-weighted least squares of n·ln D_n ≈ c on the tail
  double predicted_c = 0.0;  // ln(limit_target(EvenRatio)) / ln 2
  bool beats_conjectured_rate = false;  // tail_sup < 2^{1/8}
  std::int64_t below_one = 0;           // D_n < 1 − 1e-12 over [2, n_max]
  /// max D_n over [2^k, 2^{k+1}) for k = 1 .. log2(n_max) − 1.
  std::vector<double> block_max;
  bool block_max_decreasing = false;  // strictly, from k = 8 on
  Claim1Residuals claim1;             // at n = n_max / 4
};

ConvergenceReport convergence_report(const FamilySpec& spec, std::int64_t n_max);

/// 2^{1/8}, the ratio suggested by earlier numerical estimates.
inline const double kConjecturedRatio = std::exp2(0.125);

}  // namespace bh
