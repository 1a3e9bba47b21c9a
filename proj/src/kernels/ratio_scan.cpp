#include <algorithm>
#include <cmath>
#include <vector>

#include "bh/kernels.hpp"

namespace bh::kernels {
namespace {

inline double d_at(std::span<const double> logs, std::int64_t n) {
  return std::exp(logs[n + 1] - logs[n]);
}

// Number of fixed-size chunks covering [lo, hi].
inline std::int64_t chunk_count(std::int64_t lo, std::int64_t hi) {
  return hi < lo ? 0 : (hi - lo) / kChunk + 1;
}

RatioExtremes extremes_over(std::span<const double> logs, std::int64_t lo, std::int64_t hi) {
  RatioExtremes e{{-INFINITY, lo}, {INFINITY, lo}};
  for (std::int64_t n = lo; n <= hi; ++n) {
    const double d = d_at(logs, n);
    if (d > e.max.value) e.max = {d, n};
    if (d < e.min.value) e.min = {d, n};
  }
  return e;
}

}  // namespace

// ---- serial reference ----------------------------------------------------

RatioExtremes serial::ratio_extremes(std::span<const double> logs, std::int64_t lo,
                                     std::int64_t hi) {
  return extremes_over(logs, lo, hi);
}

std::optional<std::int64_t> serial::last_ratio_at_least(std::span<const double> logs,
                                                        std::int64_t lo, std::int64_t hi,
                                                        double threshold) {
  for (std::int64_t n = hi; n >= lo; --n) {
    if (d_at(logs, n) >= threshold) return n;
  }
  return std::nullopt;
}

std::int64_t serial::count_ratio_below(std::span<const double> logs, std::int64_t lo,
                                       std::int64_t hi, double threshold) {
  std::int64_t count = 0;
  for (std::int64_t n = lo; n <= hi; ++n) count += d_at(logs, n) < threshold;
  return count;
}

double serial::sum_log_ratio(std::span<const double> logs, std::int64_t lo, std::int64_t hi) {
  double sum = 0.0;
  for (std::int64_t n = lo; n <= hi; ++n) sum += logs[n + 1] - logs[n];
  return sum;
}

// ---- OpenMP --------------------------------------------------------------

RatioExtremes omp::ratio_extremes(std::span<const double> logs, std::int64_t lo,
                                  std::int64_t hi) {
  const std::int64_t chunks = chunk_count(lo, hi);
  std::vector<RatioExtremes> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t a = lo + c * kChunk;
    partial[c] = extremes_over(logs, a, std::min(hi, a + kChunk - 1));
  }
  RatioExtremes e{{-INFINITY, lo}, {INFINITY, lo}};
  for (const auto& p : partial) {
    if (p.max.value > e.max.value) e.max = p.max;
    if (p.min.value < e.min.value) e.min = p.min;
  }
  return e;
}

std::optional<std::int64_t> omp::last_ratio_at_least(std::span<const double> logs,
                                                     std::int64_t lo, std::int64_t hi,
                                                     double threshold) {
  std::int64_t last = lo - 1;
#pragma omp parallel for schedule(static) reduction(max : last)
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (d_at(logs, n) >= threshold) last = std::max(last, n);
  }
  if (last < lo) return std::nullopt;
  return last;
}

std::int64_t omp::count_ratio_below(std::span<const double> logs, std::int64_t lo,
                                    std::int64_t hi, double threshold) {
  std::int64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::int64_t n = lo; n <= hi; ++n) count += d_at(logs, n) < threshold;
  return count;
}

double omp::sum_log_ratio(std::span<const double> logs, std::int64_t lo, std::int64_t hi) {
  const std::int64_t chunks = chunk_count(lo, hi);
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t a = lo + c * kChunk;
    const std::int64_t b = std::min(hi, a + kChunk - 1);
    double s = 0.0;
    for (std::int64_t n = a; n <= b; ++n) s += logs[n + 1] - logs[n];
    partial[c] = s;
  }
  double sum = 0.0;
  for (double s : partial) sum += s;
  return sum;
}

}  // namespace bh::kernels
