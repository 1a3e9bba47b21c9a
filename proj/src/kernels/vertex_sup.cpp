#include <algorithm>
#include <cmath>
#include <vector>

#include "bh/kernels.hpp"

namespace bh::kernels {
namespace {

struct Scratch {
  std::vector<double> a;
  std::vector<double> b;
};

// |U| maximized over the last slot for the sign pattern encoded in `vertex`.
double vertex_value(int m, int n, std::span<const double> coeffs, std::uint64_t vertex,
                    Scratch& s) {
  std::size_t size = coeffs.size();
  const double* src = coeffs.data();
  for (int slot = 0; slot + 1 < m; ++slot) {
    const std::size_t stride = size / static_cast<std::size_t>(n);
    std::vector<double>& dst = (slot % 2 == 0) ? s.a : s.b;
    dst.assign(stride, 0.0);
    for (int i = 0; i < n; ++i) {
      const int g = slot * n + i;
      const bool negative = g > 0 && ((vertex >> (g - 1)) & 1u);
      const double* row = src + static_cast<std::size_t>(i) * stride;
      if (negative) {
        for (std::size_t j = 0; j < stride; ++j) dst[j] -= row[j];
      } else {
        for (std::size_t j = 0; j < stride; ++j) dst[j] += row[j];
      }
    }
    src = dst.data();
    size = stride;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < size; ++j) total += std::abs(src[j]);
  return total;
}

std::uint64_t vertex_count(int m, int n) { return std::uint64_t{1} << ((m - 1) * n - 1); }

}  // namespace

VertexMax serial::sup_real_vertices(int m, int n, std::span<const double> coeffs) {
  Scratch scratch;
  VertexMax best{-1.0, 0};
  const std::uint64_t count = vertex_count(m, n);
  for (std::uint64_t v = 0; v < count; ++v) {
    const double value = vertex_value(m, n, coeffs, v, scratch);
    if (value > best.value) best = {value, v};
  }
  return best;
}

VertexMax omp::sup_real_vertices(int m, int n, std::span<const double> coeffs) {
  const std::uint64_t count = vertex_count(m, n);
  const auto chunk = static_cast<std::uint64_t>(kChunk);
  const std::uint64_t chunks = (count + chunk - 1) / chunk;
  std::vector<VertexMax> partial(chunks, VertexMax{-1.0, 0});
#pragma omp parallel
  {
    Scratch scratch;
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      VertexMax local{-1.0, 0};
      const std::uint64_t a = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t b = std::min(count, a + chunk);
      for (std::uint64_t v = a; v < b; ++v) {
        const double value = vertex_value(m, n, coeffs, v, scratch);
        if (value > local.value) local = {value, v};
      }
      partial[static_cast<std::size_t>(c)] = local;
    }
  }
  VertexMax best{-1.0, 0};
  for (const auto& p : partial) {
    if (p.value > best.value) best = p;
  }
  return best;
}

}  // namespace bh::kernels
