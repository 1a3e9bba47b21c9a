#pragma once

// Per-index arithmetic shared by the serial and OpenMP sweeps and by the
// extended-precision table, so all three evaluate identical expressions.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

#include "bh/constants.hpp"
#include "bh/khinchine.hpp"

namespace bh::detail {

template <class Real>
Real ln2() {
  return boost::math::constants::ln_two<Real>();
}

template <class Real>
Real ln_two_over_sqrt_pi() {
  using std::log;
  using boost::multiprecision::log;
  return ln2<Real>() - log(boost::math::constants::pi<Real>()) / 2;
}

/// Largest degree covered by hard-coded base cases.
inline std::int64_t last_base_case(Family family) {
  return family == Family::RecursiveComplex ? 6 : 3;
}

template <class Real>
Real closed_form_log(Family family, std::int64_t m) {
  using std::log;
  using boost::multiprecision::log;
  const Real mr(m);
  switch (family) {
    case Family::Original:
      return (mr + 1) / (2 * mr) * log(mr) + (mr - 1) / 2 * ln2<Real>();
    case Family::DavieKaijser:
      return (mr - 1) / 2 * ln2<Real>();
    case Family::Queffelec:
      return (mr - 1) * ln_two_over_sqrt_pi<Real>();
    case Family::RecursiveReal:
      return m == 2 ? ln2<Real>() / 2 : ln2<Real>() * 5 / 6;
    case Family::RecursiveComplex:
      return (mr - 1) * ln_two_over_sqrt_pi<Real>();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// ln C_m from the table entries below m. Requires m past the base cases.
template <class Real>
Real recursive_step(const Real* logs, std::int64_t m, KhinchineMode mode) {
  if (m % 2 == 0) {
    const std::int64_t half = m / 2;
    return logs[half] - Real(half) * log_a_p(Real(2 * m) / Real(m + 2), mode);
  }
  const std::int64_t h = (m - 1) / 2;
  const Real lower = logs[h] - Real(h + 1) * log_a_p(Real(2 * m - 2) / Real(m + 1), mode);
  const Real upper = logs[h + 1] - Real(h) * log_a_p(Real(2 * m + 2) / Real(m + 3), mode);
  return (Real(m - 1) * lower + Real(m + 1) * upper) / Real(2 * m);
}

template <class Real>
Real entry(const FamilySpec& spec, const Real* logs, std::int64_t m) {
  if (!spec.is_recursive() || m <= last_base_case(spec.family)) {
    return closed_form_log<Real>(spec.family, m);
  }
  return recursive_step(logs, m, spec.mode);
}

}  // namespace bh::detail
