#include <algorithm>
#include <cmath>
#include <limits>

#include "bh/kernels.hpp"
#include "recursion.hpp"

namespace bh::kernels {
namespace {

void prepare(const FamilySpec& spec, std::span<double> logs) {
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < std::min<std::size_t>(2, logs.size()); ++i) logs[i] = nan;
  // Resolve p0 before any concurrent use.
  if (spec.is_recursive() && spec.mode == KhinchineMode::HaagerupPiecewise) {
    (void)critical_exponent();
  }
}

}  // namespace

void serial::sweep(const FamilySpec& spec, std::span<double> logs) {
  prepare(spec, logs);
  const auto size = static_cast<std::int64_t>(logs.size());
  for (std::int64_t m = 2; m < size; ++m) logs[m] = detail::entry(spec, logs.data(), m);
}

void omp::sweep(const FamilySpec& spec, std::span<double> logs) {
  prepare(spec, logs);
  const auto size = static_cast<std::int64_t>(logs.size());
  if (!spec.is_recursive()) {
#pragma omp parallel for schedule(static)
    for (std::int64_t m = 2; m < size; ++m) logs[m] = detail::entry(spec, logs.data(), m);
    return;
  }
  // Entries in (2^k, 2^{k+1}] read only indices ≤ 2^k, so each dyadic block
  // is independent once the previous blocks are done.
  const std::int64_t base_end = std::min(size, detail::last_base_case(spec.family) + 1);
  for (std::int64_t m = 2; m < base_end; ++m) logs[m] = detail::entry(spec, logs.data(), m);
  std::int64_t lo = base_end;
  while (lo < size) {
    std::int64_t block_end = 2;
    while (block_end < lo) block_end *= 2;  // smallest power of two ≥ lo
    const std::int64_t hi = std::min(size, block_end + 1);
    double* out = logs.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t m = lo; m < hi; ++m) out[m] = detail::entry(spec, out, m);
    lo = hi;
  }
}

}  // namespace bh::kernels
