#include "bh/specialfn.hpp"

#include <boost/math/constants/constants.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <algorithm>
#include <string>

namespace bh {
namespace {

// Lanczos, g = 671/128, 15 terms (Godfrey coefficients).
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// zeta(k) - 1 for k = 2..30.
constexpr std::array<double, 29> kZetaMinusOne = {
    0.644934066848226436472,    0.2020569031595942854,      0.082323233711138191516,
    0.0369277551433699263314,   0.0173430619844491397145,   0.0083492773819228268398,
    0.00407735619794433937869,  0.00200839282608221441785,  0.000994575127818085337146,
    0.000494188604119464558702, 0.000246086553308048298638, 0.000122713347578489146752,
    6.12481350587048292585e-5,  3.05882363070204935517e-5,  1.52822594086518717326e-5,
    7.6371976378997622736e-6,   3.81729326499983985646e-6,  1.90821271655393892566e-6,
    9.53962033872796113152e-7,  4.76932986787806463117e-7,  2.38450502727732990004e-7,
    1.19219925965311073068e-7,  5.96081890512594796124e-8,  2.98035035146522801861e-8,
    1.49015548283650412347e-8,  7.45071178983542949198e-9,  3.72533402478845705482e-9,
    1.8626597235130490064e-9,   9.31327432419668182872e-10};

constexpr double kSeriesRadius = 0.25;

// psi^{(k-1)}(3/2) / k! for k = 1..40: Taylor coefficients of ln Γ(3/2 + h).
constexpr std::array<double, 40> kThreeHalvesTaylor = {
    0.036489973978576520559, 0.467401100272339654709, -0.138132774039053332599,
    0.058712126416768218185, -0.0289520818888935432545, 0.0154354841700493003358,
    -0.00862260392917128695061, 0.00496572880947581769559, -0.00292097045866795194697,
    0.00174503557579012999003, -0.00105491569386763196942, 0.000643702983038148576884,
    -0.000395771539646507772638, 0.000244871190482944124482, -0.000152315938142700813966,
    0.0000951793966250258746295, -0.0000597136233623377037097, 0.0000375949092696121940236,
    -0.0000237431854692093429426, 0.0000150369834083592174199, -0.00000954715119214818722341,
    0.00000607540647448468960325, -0.00000387415183000977017234, 0.00000247514473442959358442,
    -0.00000158408962629697983767, 0.00000101544091300254638648, -6.51887548631499350189e-7,
    4.19070395383866369749e-7, -2.69746395128981231447e-7, 1.73836540127191060868e-7,
    -1.12152596615481527203e-7, 7.24318814709313566797e-8, -4.6824649157183920736e-8,
    3.0298301817091054205e-8, -1.9621757142380917903e-8, 1.27178054677947000865e-8,
    -8.24938729642608647545e-9, 5.35486542477512861171e-9, -3.47837411690978159624e-9,
    2.26094317397647591468e-9};

constexpr double kThreeHalvesRadius = 1.0 / 3.0;

double lanczos_ln_gamma(double x) {
  double y = x;
  double t = x + kLanczosG;
  t = (x + 0.5) * std::log(t) - t;
  double sum = kLanczosC0;
  for (double c : kLanczos) sum += c / ++y;
  return t + std::log(2.5066282746310005 * sum / x);
}

// ln Γ(2 + e) = (1 - γ) e + Σ_{k≥2} (-1)^k (ζ(k) - 1) e^k / k, |e| ≤ 1/4.
double ln_gamma_near_two(double e) {
  double acc = 0.0;
  // Horner from the highest order down keeps the small terms exact-ish.
  for (std::size_t i = kZetaMinusOne.size(); i-- > 0;) {
    const int k = static_cast<int>(i) + 2;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc = acc * e + sign * kZetaMinusOne[i] / k;
  }
  return e * ((1.0 - euler_gamma()) + e * acc);
}

// Bernoulli numbers B_2 .. B_22 as exact rationals.
struct Rational {
  long long num;
  long long den;
};
constexpr std::array<Rational, 11> kBernoulli = {{{1, 6},
                                                  {-1, 30},
                                                  {1, 42},
                                                  {-1, 30},
                                                  {5, 66},
                                                  {-691, 2730},
                                                  {7, 6},
                                                  {-3617, 510},
                                                  {43867, 798},
                                                  {-174611, 330},
                                                  {854513, 138}}};

}  // namespace

double ln_gamma(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError("ln_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  if (x == 1.0 || x == 2.0) return 0.0;
  if (std::abs(x - 2.0) <= kSeriesRadius) return ln_gamma_near_two(x - 2.0);
  if (std::abs(x - 1.0) <= kSeriesRadius) {
    const double e = x - 1.0;
    return ln_gamma_near_two(e) - std::log1p(e);
  }
  return lanczos_ln_gamma(x);
}

Extended ln_gamma(const Extended& x) {
  using boost::multiprecision::log;
  using boost::multiprecision::isfinite;
  if (!isfinite(x) || !(x > 0)) {
    throw DomainError("ln_gamma: argument must be positive and finite");
  }
  // Γ(x) = Γ(x + n) / (x (x+1) ... (x+n-1))
  Extended z = x;
  Extended product = 1;
  while (z < 200) {
    product *= z;
    z += 1;
  }
  const Extended pi = boost::math::constants::pi<Extended>();
  Extended result = (z - Extended(0.5)) * log(z) - z + log(2 * pi) / 2;
  const Extended inv = 1 / z;
  const Extended inv2 = inv * inv;
  Extended power = inv;
  for (std::size_t i = 0; i < kBernoulli.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const Extended b = Extended(kBernoulli[i].num) / Extended(kBernoulli[i].den);
    result += b / (Extended(2 * k) * Extended(2 * k - 1)) * power;
    power *= inv2;
  }
  return result - log(product);
}

double ln_gamma_shift_from_three_halves(double h) {
  if (!(std::abs(h) <= kThreeHalvesRadius)) return ln_gamma(1.5 + h) - ln_gamma(1.5);
  double acc = 0.0;
  for (std::size_t i = kThreeHalvesTaylor.size(); i-- > 0;) acc = acc * h + kThreeHalvesTaylor[i];
  return h * acc;
}

double euler_gamma() noexcept { return 0.57721566490153286060651209008240243104215933593992; }

Extended euler_gamma_extended() { return Extended(std::string(kEulerGammaDigits)); }

double p0_residual(double p) {
  return std::abs(std::exp(ln_gamma((p + 1.0) / 2.0)) - std::sqrt(std::numbers::pi) / 2.0);
}

double find_p0(double tol) { return find_p0(tol, 1.5, 1.9); }

double find_p0(double tol, double lo, double hi) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("find_p0: tol must be positive");
  hi = std::min(hi, 2.0 * kGammaMinimumAbscissa - 1.0);
  if (!(lo > 1.0) || !(lo < hi)) throw DomainError("find_p0: bracket must satisfy 1 < lo < hi");

  // Root of ln Γ((p+1)/2) - ln Γ(3/2); positive left of p0, negative right of it.
  const double target = ln_gamma(1.5);
  auto f = [&](double p) { return ln_gamma((p + 1.0) / 2.0) - target; };

  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(fa > 0.0 && fb < 0.0)) {
    throw InternalError("find_p0: bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] does not enclose a sign change");
  }

  double p = 0.5 * (a + b);
  for (int iter = 0; iter < 200; ++iter) {
    // Secant step, falling back to bisection when it leaves the inner half of the bracket.
    double candidate = b - fb * (b - a) / (fb - fa);
    const double quarter = 0.25 * (b - a);
    if (!(candidate > a + quarter * 0.01 && candidate < b - quarter * 0.01)) {
      candidate = 0.5 * (a + b);
    }
    p = candidate;
    const double fp = f(p);
    if (fp == 0.0) return p;
    if (fp > 0.0) {
      a = p;
      fa = fp;
    } else {
      b = p;
      fb = fp;
    }
    // Bisect as well so the width shrinks geometrically even when the secant stalls on one side.
    const double mid = 0.5 * (a + b);
    if (mid > a && mid < b) {
      const double fm = f(mid);
      if (fm == 0.0) return mid;
      if (fm > 0.0) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
        fb = fm;
      }
    }
    p = std::abs(fa) < std::abs(fb) ? a : b;
    const bool narrow = (b - a) < tol || std::nextafter(a, b) >= b;
    if (narrow && p0_residual(p) < tol) return p;
    if (std::nextafter(a, b) >= b) break;
  }
  if (p0_residual(p) < tol) return p;
  throw InternalError("find_p0: tolerance " + std::to_string(tol) + " not reachable in double");
}

}  // namespace bh
