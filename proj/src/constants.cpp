#include "bh/constants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <string>

#include "bh/kernels.hpp"
#include "kernels/recursion.hpp"

namespace bh {
namespace {

void require_degree(std::int64_t m, std::int64_t min, const char* what) {
  if (m < min) {
    throw DomainError(std::string(what) + ": degree must be at least " + std::to_string(min) +
                      ", got " + std::to_string(m));
  }
}

// Exact per-step log ratio for the closed-form families.
double closed_form_log_ratio(Family family, std::int64_t n) {
  const double ln2 = std::numbers::ln2;
  switch (family) {
    case Family::DavieKaijser:
      return 0.5 * ln2;
    case Family::Queffelec:
      return ln2 - 0.5 * std::log(std::numbers::pi);
    case Family::Original: {
      const double a = static_cast<double>(n);
      const double b = a + 1.0;
      return (b + 1.0) / (2.0 * b) * std::log(b) - (a + 1.0) / (2.0 * a) * std::log(a) + 0.5 * ln2;
    }
    default:
      break;
  }
  throw InternalError("closed_form_log_ratio called for a recursive family");
}

struct CacheKey {
  Family family;
  KhinchineMode mode;
  bool operator<(const CacheKey& o) const {
    return std::tie(family, mode) < std::tie(o.family, o.mode);
  }
};

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Original:
      return "original";
    case Family::DavieKaijser:
      return "davie-kaijser";
    case Family::Queffelec:
      return "queffelec";
    case Family::RecursiveReal:
      return "recursive-real";
    case Family::RecursiveComplex:
      return "recursive-complex";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Original, Family::DavieKaijser, Family::Queffelec,
                   Family::RecursiveReal, Family::RecursiveComplex}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

ConstantTable::ConstantTable(FamilySpec spec, std::int64_t m_max, Execution exec)
    : spec_(spec) {
  require_degree(m_max, 2, "ConstantTable");
  logs_.resize(static_cast<std::size_t>(m_max) + 1);
  if (exec == Execution::Serial) {
    kernels::serial::sweep(spec_, logs_);
  } else {
    kernels::omp::sweep(spec_, logs_);
  }
}

double ConstantTable::log_c(std::int64_t m) const {
  require_degree(m, 2, "log_c");
  if (m > m_max()) throw DomainError("log_c: degree beyond table size " + std::to_string(m_max()));
  return logs_[static_cast<std::size_t>(m)];
}

double ConstantTable::log_ratio(std::int64_t n) const {
  require_degree(n, 2, "log_ratio");
  if (!spec_.is_recursive()) return closed_form_log_ratio(spec_.family, n);
  return log_c(n + 1) - log_c(n);
}

std::shared_ptr<const ConstantTable> cached_table(const FamilySpec& spec, std::int64_t m_required) {
  require_degree(m_required, 2, "cached_table");
  static std::mutex mutex;
  static std::map<CacheKey, std::shared_ptr<const ConstantTable>> cache;
  const CacheKey key{spec.family,
                     spec.is_recursive() ? spec.mode : KhinchineMode::GammaFormula};
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot || slot->m_max() < m_required) {
    const std::int64_t grown = slot ? slot->m_max() + slot->m_max() / 2 : 0;
    const std::int64_t size = std::max({m_required, grown, std::int64_t{64}});
    slot = std::make_shared<const ConstantTable>(FamilySpec{spec.family, key.mode}, size);
  }
  return slot;
}

LogValue log_constant(const FamilySpec& spec, std::int64_t m) {
  require_degree(m, 2, "log_constant");
  if (!spec.is_recursive()) return {detail::closed_form_log<double>(spec.family, m), m};
  return {cached_table(spec, m)->log_c(m), m};
}

std::vector<LogValue> constant_table(const FamilySpec& spec, std::int64_t m_max) {
  require_degree(m_max, 2, "constant_table");
  const auto table = cached_table(spec, m_max);
  std::vector<LogValue> out;
  out.reserve(static_cast<std::size_t>(m_max - 1));
  for (std::int64_t m = 2; m <= m_max; ++m) out.push_back({table->log_c(m), m});
  return out;
}

std::vector<Extended> extended_log_table(const FamilySpec& spec, std::int64_t m_max) {
  require_degree(m_max, 2, "extended_log_table");
  std::vector<Extended> logs(static_cast<std::size_t>(m_max) + 1,
                             Extended(std::numeric_limits<double>::quiet_NaN()));
  for (std::int64_t m = 2; m <= m_max; ++m) logs[m] = detail::entry(spec, logs.data(), m);
  return logs;
}

double ratio(const FamilySpec& spec, std::int64_t n) {
  require_degree(n, 2, "ratio");
  if (!spec.is_recursive()) return std::exp(closed_form_log_ratio(spec.family, n));
  return cached_table(spec, n + 1)->ratio(n);
}

RatioSeries ratio_series(const FamilySpec& spec, std::int64_t n_max) {
  require_degree(n_max, 3, "ratio_series");
  RatioSeries series;
  series.entries.reserve(static_cast<std::size_t>(n_max - 2));
  const auto table = cached_table(spec, n_max);
  for (std::int64_t n = 2; n < n_max; ++n) {
    const double d = table->ratio(n);
    series.entries.push_back({n, d, d < 1.0});
    series.below_one_count += d < 1.0;
  }
  return series;
}

}  // namespace bh
