#include "bh/khinchine.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "bh/specialfn.hpp"

namespace bh {

std::string_view to_string(KhinchineMode mode) {
  switch (mode) {
    case KhinchineMode::GammaFormula:
      return "gamma";
    case KhinchineMode::HaagerupPiecewise:
      return "haagerup";
  }
  return "unknown";
}

std::optional<KhinchineMode> parse_khinchine_mode(std::string_view name) {
  if (name == "gamma") return KhinchineMode::GammaFormula;
  if (name == "haagerup") return KhinchineMode::HaagerupPiecewise;
  return std::nullopt;
}

double critical_exponent() {
  static const double p0 = find_p0(1e-12);
  return p0;
}

namespace {

void check_exponent(bool in_range) {
  if (!in_range) throw DomainError("a_p: exponent must lie in (1, 2]");
}

}  // namespace

double log_a_p(double p, KhinchineMode mode) {
  check_exponent(p > 1.0 && p <= 2.0);
  if (p == 2.0) return 0.0;
  constexpr double kLn2 = std::numbers::ln2;
  if (mode == KhinchineMode::HaagerupPiecewise && p <= critical_exponent()) {
    return (0.5 - 1.0 / p) * kLn2;
  }
  // With h = (p − 2)/2 and ½ ln π = ln Γ(3/2) + ln 2:
  //   ln A_p = (h ln 2 + ln Γ(3/2 + h) − ln Γ(3/2)) / p,
  // which stays accurate relative to ln A_p as p → 2.
  const double h = 0.5 * (p - 2.0);
  return (h * kLn2 + ln_gamma_shift_from_three_halves(h)) / p;
}

Extended log_a_p(const Extended& p, KhinchineMode mode) {
  using boost::multiprecision::log;
  check_exponent(p > 1 && p <= 2);
  if (p == 2) return Extended(0);
  const Extended ln2 = boost::math::constants::ln_two<Extended>();
  if (mode == KhinchineMode::HaagerupPiecewise && p <= Extended(critical_exponent())) {
    return (Extended(0.5) - 1 / p) * ln2;
  }
  const Extended half_log_pi = log(boost::math::constants::pi<Extended>()) / 2;
  return ln2 / 2 + (ln_gamma((p + 1) / 2) - half_log_pi) / p;
}

}  // namespace bh
