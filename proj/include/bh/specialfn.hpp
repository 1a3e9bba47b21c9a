#pragma once

#include <string_view>

#include "bh/precision.hpp"

namespace bh {

/// ln Γ(x) for x > 0 in double precision.
///
/// Lanczos sum away from the zeros of ln Γ; near x = 1 and x = 2 a Taylor
/// series about 2 keeps the error relative to the (small) result. Relative
/// error is below 1e-13 on (0, 50].
double ln_gamma(double x);

/// ln Γ(x) for x > 0 in extended arithmetic (Stirling series after an upward
/// shift of the argument to at least 200).
Extended ln_gamma(const Extended& x);

/// ln Γ(3/2 + h) − ln Γ(3/2), accurate relative to the result for
/// |h| ≤ 1/3 (Taylor series); plain difference of ln_gamma outside.
double ln_gamma_shift_from_three_halves(double h);

/// Euler–Mascheroni constant, 50 significant digits.
inline constexpr std::string_view kEulerGammaDigits =
    "0.57721566490153286060651209008240243104215933593992";

/// Euler–Mascheroni constant rounded to double.
double euler_gamma() noexcept;
Extended euler_gamma_extended();

/// Abscissa of the minimum of Γ on (0, ∞).
inline constexpr double kGammaMinimumAbscissa = 1.4616321449683623;

/// Critical Khinchine exponent: the unique p0 in (1, 2) with
/// Γ((p0 + 1) / 2) = √π / 2.
///
/// Bisection with secant refinement on [lo, hi]; stops once the bracket is
/// narrower than `tol` and the residual |Γ((p+1)/2) − √π/2| is below `tol`.
/// The root sits on the decreasing branch of Γ, so `hi` is clipped to
/// 2·kGammaMinimumAbscissa − 1 (p = 2 is a second, trivial root).
double find_p0(double tol);
double find_p0(double tol, double lo, double hi);

/// |Γ((p+1)/2) − √π/2|.
double p0_residual(double p);

}  // namespace bh
