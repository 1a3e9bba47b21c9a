#pragma once

#include <cmath>
#include <optional>
#include <string_view>

#include "bh/precision.hpp"

namespace bh {

/// Evaluation rule for the Khinchine constant A_p.
///
/// GammaFormula uses √2·(Γ((p+1)/2)/√π)^{1/p} for every p. HaagerupPiecewise
/// switches to 2^{1/2 − 1/p} below the critical exponent p0, where that value
/// is the optimal constant.
enum class KhinchineMode { GammaFormula, HaagerupPiecewise };

std::string_view to_string(KhinchineMode mode);
std::optional<KhinchineMode> parse_khinchine_mode(std::string_view name);

/// p0 resolved once per process with find_p0(1e-12).
double critical_exponent();

/// ln A_p for 1 < p ≤ 2; ln A_2 is exactly 0.
double log_a_p(double p, KhinchineMode mode);
Extended log_a_p(const Extended& p, KhinchineMode mode);

inline double a_p(double p, KhinchineMode mode) { return std::exp(log_a_p(p, mode)); }

}  // namespace bh
