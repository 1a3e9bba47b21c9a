#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bh/errors.hpp"

namespace bh {

/// Extended arithmetic used for oracle cross-checks (50 significant decimal digits).
using Extended = boost::multiprecision::cpp_bin_float_50;

enum class Arithmetic { Double, Extended };

/// Tolerance contract for a numeric comparison. A check passes when
/// |a - b| <= abs_tol + rel_tol * |b|.
struct Precision {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw DomainError("precision tolerances must be positive");
    }
  }
};

}  // namespace bh
