#include "bh/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "bh/kernels.hpp"
#include "rng.hpp"

namespace bh {
namespace {

std::size_t checked_power(int n, int m, std::size_t budget) {
  std::size_t size = 1;
  for (int k = 0; k < m; ++k) {
    if (size > budget / static_cast<std::size_t>(n)) {
      throw ResourceError("form tensor N^m exceeds the entry budget of " + std::to_string(budget));
    }
    size *= static_cast<std::size_t>(n);
  }
  return size;
}

// Contracts every slot except `slot` against `point`; returns the N-vector
// v with v_i = U(z_1, ..., e_i, ..., z_m).
std::vector<Scalar> contract_except(const MultilinearForm& form, std::span<const Scalar> point,
                                    int slot) {
  const int m = form.degree();
  const auto n = static_cast<std::size_t>(form.dimension());
  std::vector<Scalar> w(form.coeffs().begin(), form.coeffs().end());
  // Leading slots: fold the most significant index.
  for (int s = 0; s < slot; ++s) {
    const std::size_t stride = w.size() / n;
    std::vector<Scalar> next(stride, Scalar{});
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar z = point[static_cast<std::size_t>(s) * n + i];
      const Scalar* row = w.data() + i * stride;
      for (std::size_t j = 0; j < stride; ++j) next[j] += z * row[j];
    }
    w = std::move(next);
  }
  // Trailing slots: fold the least significant index.
  for (int s = m - 1; s > slot; --s) {
    const std::size_t rows = w.size() / n;
    std::vector<Scalar> next(rows, Scalar{});
    const Scalar* z = point.data() + static_cast<std::size_t>(s) * n;
    for (std::size_t r = 0; r < rows; ++r) {
      Scalar acc{};
      for (std::size_t j = 0; j < n; ++j) acc += w[r * n + j] * z[j];
      next[r] = acc;
    }
    w = std::move(next);
  }
  return w;
}

// Block-coordinate ascent from `point`: each slot in turn takes the optimal
// unit-modulus (or sign) vector given the others. Returns the last sweep value.
double ascend(const MultilinearForm& form, std::vector<Scalar>& point, int iters, bool real) {
  const int m = form.degree();
  const auto n = static_cast<std::size_t>(form.dimension());
  double value = std::abs(form.evaluate(point));
  for (int it = 0; it < iters; ++it) {
    const double before = value;
    for (int slot = 0; slot < m; ++slot) {
      const auto v = contract_except(form, point, slot);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Scalar& z = point[static_cast<std::size_t>(slot) * n + i];
        if (real) {
          const double r = v[i].real();
          if (r != 0.0) z = r > 0.0 ? 1.0 : -1.0;
          total += std::abs(r);
        } else {
          const double a = std::abs(v[i]);
          if (a > 0.0) z = std::conj(v[i]) / a;
          total += a;
        }
      }
      value = total;
    }
    if (value <= before * (1.0 + 1e-15)) break;
  }
  return value;
}

SupNorm multistart(const MultilinearForm& form, int restarts, int iters, std::uint64_t seed,
                   bool real) {
  const std::size_t coords = static_cast<std::size_t>(form.degree()) * form.dimension();
  SupNorm best{-1.0, false, {}};
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    std::vector<Scalar> point(coords, Scalar{1.0, 0.0});
    if (r > 0) {
      detail::Stream rng(seed, static_cast<std::uint64_t>(r));
      for (auto& z : point) z = real ? Scalar{rng.coin() ? -1.0 : 1.0} : std::polar(1.0, rng.phase());
    }
    ascend(form, point, iters, real);
    // Certify by direct evaluation at the final point.
    const double value = std::abs(form.evaluate(point));
    if (value > best.value) best = {value, false, std::move(point)};
  }
  return best;
}

}  // namespace

std::string_view to_string(ScalarField field) {
  return field == ScalarField::Real ? "real" : "complex";
}

std::optional<ScalarField> parse_scalar_field(std::string_view name) {
  if (name == "real") return ScalarField::Real;
  if (name == "complex") return ScalarField::Complex;
  return std::nullopt;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(Distribution dist) {
  return dist == Distribution::SignUniform ? "sign" : "gaussian";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  if (name == "sign") return Distribution::SignUniform;
  if (name == "gaussian") return Distribution::Gaussian;
  return std::nullopt;
}

// ---- MultilinearForm -----------------------------------------------------

MultilinearForm::MultilinearForm(int m, int n, ScalarField field, std::vector<Scalar> coeffs,
                                 std::size_t entry_budget)
    : m_(m), n_(n), field_(field), coeffs_(std::move(coeffs)) {
  if (m < 2) throw DomainError("MultilinearForm: degree must be at least 2");
  if (n < 1) throw DomainError("MultilinearForm: dimension must be at least 1");
  const std::size_t expected = checked_power(n, m, entry_budget);
  if (coeffs_.size() != expected) {
    throw DomainError("MultilinearForm: expected " + std::to_string(expected) +
                      " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (const Scalar& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("MultilinearForm: coefficients must be finite");
    }
    if (field_ == ScalarField::Real && c.imag() != 0.0) {
      throw DomainError("MultilinearForm: real form with a non-zero imaginary part");
    }
  }
}

MultilinearForm MultilinearForm::zeros(int m, int n, ScalarField field) {
  return {m, n, field, std::vector<Scalar>(checked_power(n, m, kDefaultEntryBudget))};
}

MultilinearForm MultilinearForm::littlewood(ScalarField field) {
  return {2, 2, field, {1.0, 1.0, 1.0, -1.0}};
}

std::vector<double> MultilinearForm::real_coeffs() const {
  std::vector<double> out(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), out.begin(), [](Scalar c) { return c.real(); });
  return out;
}

Scalar MultilinearForm::evaluate(std::span<const Scalar> point) const {
  const auto n = static_cast<std::size_t>(n_);
  if (point.size() != static_cast<std::size_t>(m_) * n) {
    throw DomainError("evaluate: point must hold m*N coordinates");
  }
  const auto v = contract_except(*this, point, m_ - 1);
  Scalar acc{};
  for (std::size_t i = 0; i < n; ++i) acc += v[i] * point[(m_ - 1) * n + i];
  return acc;
}

MultilinearForm MultilinearForm::scaled(double t) const {
  std::vector<Scalar> c = coeffs_;
  for (auto& x : c) x *= t;
  return {m_, n_, field_, std::move(c), coeffs_.size()};
}

MultilinearForm MultilinearForm::permuted(int slot, std::span<const int> perm) const {
  if (slot < 0 || slot >= m_ || perm.size() != static_cast<std::size_t>(n_)) {
    throw DomainError("permuted: bad slot or permutation length");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  for (int target : perm) {
    if (target < 0 || target >= n_ || seen[static_cast<std::size_t>(target)]) {
      throw DomainError("permuted: not a permutation of 0..N-1");
    }
    seen[static_cast<std::size_t>(target)] = true;
  }
  std::size_t stride = 1;
  for (int s = m_ - 1; s > slot; --s) stride *= static_cast<std::size_t>(n_);
  std::vector<Scalar> out(coeffs_.size());
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    const std::size_t digit = (idx / stride) % static_cast<std::size_t>(n_);
    const std::size_t target =
        idx - digit * stride + static_cast<std::size_t>(perm[digit]) * stride;
    out[target] = coeffs_[idx];
  }
  return {m_, n_, field_, std::move(out), coeffs_.size()};
}

// ---- norms ---------------------------------------------------------------

double bh_lhs(const MultilinearForm& form) {
  const double m = form.degree();
  const double p = 2.0 * m / (m + 1.0);
  // Neumaier summation of |c|^p.
  double sum = 0.0, comp = 0.0;
  for (const Scalar& c : form.coeffs()) {
    const double term = std::pow(std::abs(c), p);
    const double t = sum + term;
    comp += std::abs(sum) >= term ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return std::pow(sum + comp, 1.0 / p);
}

SupNorm sup_norm_real(const MultilinearForm& form, int max_vertex_bits) {
  if (form.field() != ScalarField::Real) throw DomainError("sup_norm_real: form is not real");
  const int m = form.degree();
  const int n = form.dimension();
  if (m * n > max_vertex_bits || (m - 1) * n - 1 > 62) {
    throw ResourceError("sup_norm_real: m*N = " + std::to_string(m * n) +
                        " exceeds the vertex budget " + std::to_string(max_vertex_bits));
  }
  const auto coeffs = form.real_coeffs();
  const auto best = kernels::omp::sup_real_vertices(m, n, coeffs);

  const auto nn = static_cast<std::size_t>(n);
  std::vector<Scalar> witness(static_cast<std::size_t>(m) * nn, Scalar{1.0});
  for (std::size_t g = 1; g < static_cast<std::size_t>(m - 1) * nn; ++g) {
    if ((best.vertex >> (g - 1)) & 1u) witness[g] = -1.0;
  }
  const auto v = contract_except(form, witness, m - 1);
  for (std::size_t i = 0; i < nn; ++i) {
    witness[(m - 1) * nn + i] = v[i].real() < 0.0 ? -1.0 : 1.0;
  }
  return {best.value, true, std::move(witness)};
}

SupNorm sup_norm_real_lower(const MultilinearForm& form, int restarts, int iters,
                            std::uint64_t seed) {
  if (form.field() != ScalarField::Real) throw DomainError("sup_norm_real_lower: form is not real");
  return multistart(form, restarts, iters, seed, true);
}

SupNorm sup_norm_complex_lower(const MultilinearForm& form, int restarts, int iters,
                               std::uint64_t seed) {
  return multistart(form, restarts, iters, seed, false);
}

InequalityReport check_inequality(const MultilinearForm& form, const FamilySpec& spec,
                                  const CheckOptions& options) {
  options.precision.validate();
  InequalityReport report;
  report.lhs = bh_lhs(form);
  report.bound = log_constant(spec, form.degree()).value();
  const SupNorm sup = form.field() == ScalarField::Real
                          ? sup_norm_real(form, options.max_vertex_bits)
                          : sup_norm_complex_lower(form, options.restarts, options.iters,
                                                   options.seed);
  report.sup_norm = sup.value;
  report.sup_is_exact = sup.exact;
  if (report.lhs == 0.0) {
    report.ratio = 0.0;
    report.verdict = Verdict::Pass;
    return report;
  }
  report.ratio = sup.value > 0.0 ? report.lhs / sup.value : std::numeric_limits<double>::infinity();
  const double allowed =
      report.bound * sup.value * (1.0 + options.precision.rel_tol) + options.precision.abs_tol;
  if (report.lhs <= allowed) {
    report.verdict = Verdict::Pass;
  } else {
    report.verdict = sup.exact ? Verdict::Fail : Verdict::Inconclusive;
  }
  return report;
}

MultilinearForm random_form(int m, int n, ScalarField field, std::uint64_t seed, Distribution dist,
                            std::uint64_t index, std::size_t entry_budget) {
  if (m < 2 || n < 1) throw DomainError("random_form: need m >= 2 and N >= 1");
  const std::size_t size = checked_power(n, m, entry_budget);
  detail::Stream rng(seed, index);
  std::vector<Scalar> coeffs(size);
  for (auto& c : coeffs) {
    if (dist == Distribution::SignUniform) {
      c = field == ScalarField::Real ? Scalar{rng.coin() ? -1.0 : 1.0} : std::polar(1.0, rng.phase());
    } else {
      const double re = rng.normal();
      c = field == ScalarField::Real ? Scalar{re} : Scalar{re, rng.normal()};
    }
  }
  return {m, n, field, std::move(coeffs), entry_budget};
}

SearchResult lower_bound_search(int m, int n, ScalarField field, std::uint64_t seed,
                                std::int64_t budget) {
  if (budget < 1) throw DomainError("lower_bound_search: budget must be positive");
  const bool real = field == ScalarField::Real;
  if (real && m * n > kDefaultVertexBits) {
    throw ResourceError("lower_bound_search: real search needs exact sup-norms (m*N <= 24)");
  }
  SearchResult result{0.0, MultilinearForm::zeros(m, n, field), real, 0};

  auto ratio_of = [&](const MultilinearForm& f) {
    const double sup = real ? sup_norm_real(f).value : sup_norm_complex_lower(f, 4, 50, seed).value;
    return sup > 0.0 ? bh_lhs(f) / sup : 0.0;
  };
  auto consider = [&](const MultilinearForm& f) {
    if (result.evaluations >= budget) return 0.0;
    ++result.evaluations;
    const double r = ratio_of(f);
    if (r > result.best_ratio) {
      result.best_ratio = r;
      result.best_form = f;
    }
    return r;
  };

  // Seed: Littlewood's form in the first two slots, first basis vector elsewhere.
  if (n >= 2) {
    auto seeded = MultilinearForm::zeros(m, n, field);
    std::vector<Scalar> c(seeded.coeffs().begin(), seeded.coeffs().end());
    std::size_t stride = 1;
    for (int s = 2; s < m; ++s) stride *= static_cast<std::size_t>(n);
    const Scalar lw[2][2] = {{1.0, 1.0}, {1.0, -1.0}};
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) c[(i * n + j) * stride] = lw[i][j];
    }
    consider(MultilinearForm(m, n, field, std::move(c)));
  }

  // Random sampling keeps a few incumbents to climb from.
  constexpr std::size_t kStarts = 4;
  std::vector<std::pair<double, MultilinearForm>> starts;
  if (result.evaluations > 0) starts.emplace_back(result.best_ratio, result.best_form);
  const std::int64_t sampling = std::max<std::int64_t>(1, budget / 4);
  for (std::int64_t i = 0; i < sampling && result.evaluations < budget; ++i) {
    const auto dist = i % 2 == 0 ? Distribution::SignUniform : Distribution::Gaussian;
    auto f = random_form(m, n, field, seed, dist, static_cast<std::uint64_t>(i));
    const double r = consider(f);
    if (starts.size() < kStarts + 1) {
      starts.emplace_back(r, std::move(f));
    } else {
      auto worst = std::min_element(starts.begin() + 1, starts.end(),
                                    [](const auto& a, const auto& b) { return a.first < b.first; });
      if (r > worst->first) *worst = {r, std::move(f)};
    }
  }

  // Hill climbing from each incumbent: sparse Gaussian moves with a shrinking
  // step, accepting ties so plateaus can be crossed.
  const std::int64_t climb = (budget - result.evaluations) / static_cast<std::int64_t>(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s) {
    detail::Stream rng(seed, (std::uint64_t{1} << 63) + s);
    auto [cur_ratio, cur] = starts[s];
    for (std::int64_t t = 0; t < climb && result.evaluations < budget; ++t) {
      const double sigma = 0.01 + 0.3 * (1.0 - static_cast<double>(t) / static_cast<double>(climb));
      std::vector<Scalar> c(cur.coeffs().begin(), cur.coeffs().end());
      double scale = 0.0;
      for (const auto& x : c) scale = std::max(scale, std::abs(x));
      if (scale == 0.0) scale = 1.0;
      for (auto& x : c) {
        if (!rng.coin()) continue;
        x += real ? Scalar{sigma * scale * rng.normal()}
                  : Scalar{sigma * scale * rng.normal(), sigma * scale * rng.normal()};
      }
      MultilinearForm next(m, n, field, std::move(c));
      const double r = consider(next);
      if (r >= cur_ratio) {
        cur_ratio = r;
        cur = std::move(next);
      }
    }
  }
  return result;
}

}  // namespace bh
