#pragma once

// Data-parallel kernels. Each kernel has a plain serial reference in
// bh::kernels::serial and an OpenMP variant in bh::kernels::omp. The OpenMP
// variants are deterministic: reductions use a fixed chunk partition that does
// not depend on the thread count, and ties resolve to the smallest index.

#include <cstdint>
#include <optional>
#include <span>

#include "bh/constants.hpp"

namespace bh::kernels {

/// Chunk length used by the deterministic reductions.
inline constexpr std::int64_t kChunk = 4096;

struct Extremum {
  double value = 0.0;
  std::int64_t index = 0;
};

struct RatioExtremes {
  Extremum max;  // max D_n
  Extremum min;  // min D_n
};

/// Best vertex of the real cube found by enumeration.
struct VertexMax {
  double value = 0.0;
  std::uint64_t vertex = 0;
};

namespace serial {

/// Fills logs[m] = ln C_m for 2 ≤ m < logs.size().
void sweep(const FamilySpec& spec, std::span<double> logs);

RatioExtremes ratio_extremes(std::span<const double> logs, std::int64_t lo, std::int64_t hi);
/// Largest n in [lo, hi] with D_n ≥ threshold.
std::optional<std::int64_t> last_ratio_at_least(std::span<const double> logs, std::int64_t lo,
                                                std::int64_t hi, double threshold);
std::int64_t count_ratio_below(std::span<const double> logs, std::int64_t lo, std::int64_t hi,
                               double threshold);
/// Σ_{n=lo}^{hi} ln D_n.
double sum_log_ratio(std::span<const double> logs, std::int64_t lo, std::int64_t hi);

/// max over vertices of |U| for a real form with coefficients in row-major
/// order. Slot 0 coordinate 0 is fixed to +1 and the last slot is maximized
/// in closed form, so 2^{(m-1)N-1} vertices are visited.
VertexMax sup_real_vertices(int m, int n, std::span<const double> coeffs);

}  // namespace serial

namespace omp {

void sweep(const FamilySpec& spec, std::span<double> logs);
RatioExtremes ratio_extremes(std::span<const double> logs, std::int64_t lo, std::int64_t hi);
std::optional<std::int64_t> last_ratio_at_least(std::span<const double> logs, std::int64_t lo,
                                                std::int64_t hi, double threshold);
std::int64_t count_ratio_below(std::span<const double> logs, std::int64_t lo, std::int64_t hi,
                               double threshold);
double sum_log_ratio(std::span<const double> logs, std::int64_t lo, std::int64_t hi);
VertexMax sup_real_vertices(int m, int n, std::span<const double> coeffs);

}  // namespace omp

}  // namespace bh::kernels
