#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bh/khinchine.hpp"
#include "bh/precision.hpp"

namespace bh {

/// Constant families for the Bohnenblust–Hille inequality.
///
///   Original          m^{(m+1)/(2m)} · 2^{(m-1)/2}
///   DavieKaijser      2^{(m-1)/2}
///   Queffelec         (2/√π)^{m-1}
///   RecursiveReal     C_2 = √2, C_3 = 2^{5/6}, then the real-scalar recursion
///   RecursiveComplex  (2/√π)^{m-1} for m ≤ 6, then the same recursion
///
/// The recursion reads, for m above the base cases,
///   C_m = C_{m/2} / A_{2m/(m+2)}^{m/2}                                 (m even)
///   C_m = (C_{(m-1)/2} / A_{(2m-2)/(m+1)}^{(m+1)/2})^{(m-1)/(2m)}
///       · (C_{(m+1)/2} / A_{(2m+2)/(m+3)}^{(m-1)/2})^{(m+1)/(2m)}       (m odd)
enum class Family { Original, DavieKaijser, Queffelec, RecursiveReal, RecursiveComplex };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

struct FamilySpec {
  Family family = Family::RecursiveReal;
  /// Only consulted by the recursive families.
  KhinchineMode mode = KhinchineMode::GammaFormula;

  bool is_recursive() const noexcept {
    return family == Family::RecursiveReal || family == Family::RecursiveComplex;
  }
  /// Closed-form families compare equal regardless of mode.
  friend bool operator==(const FamilySpec& a, const FamilySpec& b) noexcept {
    return a.family == b.family && (!a.is_recursive() || a.mode == b.mode);
  }
};

/// ln C_m together with its degree. C_m itself may overflow a double.
struct LogValue {
  double log_value = 0.0;
  std::int64_t m = 0;

  double value() const { return std::exp(log_value); }
};

enum class Execution { Serial, Parallel };

/// Dense table of ln C_m for m = 2..m_max, built in one upward sweep.
/// Immutable after construction; safe to share across threads.
class ConstantTable {
 public:
  ConstantTable(FamilySpec spec, std::int64_t m_max, Execution exec = Execution::Parallel);

  const FamilySpec& spec() const noexcept { return spec_; }
  std::int64_t m_max() const noexcept { return static_cast<std::int64_t>(logs_.size()) - 1; }

  double log_c(std::int64_t m) const;
  /// ln D_n = ln C_{n+1} − ln C_n.
  double log_ratio(std::int64_t n) const;
  double ratio(std::int64_t n) const { return std::exp(log_ratio(n)); }

  /// Indexed by m; entries 0 and 1 are NaN.
  std::span<const double> logs() const noexcept { return logs_; }

 private:
  FamilySpec spec_;
  std::vector<double> logs_;
};

/// Process-wide memo of tables, grown geometrically. The returned table
/// covers at least m_required.
std::shared_ptr<const ConstantTable> cached_table(const FamilySpec& spec, std::int64_t m_required);

LogValue log_constant(const FamilySpec& spec, std::int64_t m);
std::vector<LogValue> constant_table(const FamilySpec& spec, std::int64_t m_max);

/// ln C_m for m = 0..m_max in extended arithmetic (entries 0, 1 are NaN).
std::vector<Extended> extended_log_table(const FamilySpec& spec, std::int64_t m_max);

/// D_n = C_{n+1} / C_n.
double ratio(const FamilySpec& spec, std::int64_t n);

struct RatioEntry {
  std::int64_t n = 0;
  double ratio = 0.0;
  bool below_one = false;
};

struct RatioSeries {
  std::vector<RatioEntry> entries;  // n = 2 .. n_max − 1
  std::int64_t below_one_count = 0;
};

RatioSeries ratio_series(const FamilySpec& spec, std::int64_t n_max);

}  // namespace bh
