#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bh/constants.hpp"

namespace bh {

enum class ScalarField { Real, Complex };

std::string_view to_string(ScalarField field);
std::optional<ScalarField> parse_scalar_field(std::string_view name);

using Scalar = std::complex<double>;

/// Default cap on N^m.
inline constexpr std::size_t kDefaultEntryBudget = 1'000'000;

/// m-linear form on K^N × ... × K^N, stored as the coefficient tensor
/// U(e_{i1}, ..., e_{im}) in row-major order (i1 most significant).
/// Real forms keep zero imaginary parts.
class MultilinearForm {
 public:
  MultilinearForm(int m, int n, ScalarField field, std::vector<Scalar> coeffs,
                  std::size_t entry_budget = kDefaultEntryBudget);

  static MultilinearForm zeros(int m, int n, ScalarField field);
  /// [[1, 1], [1, −1]]: the equality case of Littlewood's 4/3 inequality.
  static MultilinearForm littlewood(ScalarField field);

  int degree() const noexcept { return m_; }
  int dimension() const noexcept { return n_; }
  ScalarField field() const noexcept { return field_; }
  std::span<const Scalar> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Real parts, for the real-field kernels.
  std::vector<double> real_coeffs() const;

  /// U(z_1, ..., z_m); `point` holds the m vectors back to back (m·N values).
  Scalar evaluate(std::span<const Scalar> point) const;

  MultilinearForm scaled(double t) const;
  /// Relabels the basis of one slot: new index perm[i] takes old index i.
  MultilinearForm permuted(int slot, std::span<const int> perm) const;

  friend bool operator==(const MultilinearForm&, const MultilinearForm&) = default;

 private:
  int m_;
  int n_;
  ScalarField field_;
  std::vector<Scalar> coeffs_;
};

/// (Σ |U(e_{i1}, ..., e_{im})|^{2m/(m+1)})^{(m+1)/(2m)}, compensated summation.
double bh_lhs(const MultilinearForm& form);

struct SupNorm {
  double value = 0.0;
  bool exact = false;
  /// Point attaining `value` (m·N coordinates), so the bound can be rechecked
  /// with one call to evaluate().
  std::vector<Scalar> witness;
};

/// Largest m·N for exact real vertex enumeration.
inline constexpr int kDefaultVertexBits = 24;

/// Exact max of |U| over [−1, 1]^N × ... × [−1, 1]^N. ResourceError when
/// m·N exceeds max_vertex_bits.
SupNorm sup_norm_real(const MultilinearForm& form, int max_vertex_bits = kDefaultVertexBits);

/// Lower bound on the real sup-norm by multi-start block-coordinate ascent
/// over sign vectors (the path for forms beyond the enumeration budget).
SupNorm sup_norm_real_lower(const MultilinearForm& form, int restarts, int iters,
                            std::uint64_t seed);

/// Certified lower bound on the sup-norm over the closed unit polydisk via
/// multi-start block-coordinate phase ascent on the torus. Deterministic for
/// a fixed seed. value == |evaluate(witness)|.
SupNorm sup_norm_complex_lower(const MultilinearForm& form, int restarts, int iters,
                               std::uint64_t seed);

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view to_string(Verdict verdict);

struct InequalityReport {
  double lhs = 0.0;
  double sup_norm = 0.0;
  bool sup_is_exact = false;
  /// lhs / sup_norm; an upper estimate of the true ratio when !sup_is_exact.
  double ratio = 0.0;
  double bound = 0.0;  // C_m
  Verdict verdict = Verdict::Inconclusive;

  bool pass() const noexcept { return verdict == Verdict::Pass; }
};

struct CheckOptions {
  Precision precision{1e-9, 1e-12};
  int restarts = 16;
  int iters = 200;
  std::uint64_t seed = 0;
  int max_vertex_bits = kDefaultVertexBits;
};

/// Real forms use the exact sup-norm; complex forms use the certified lower
/// bound, so they can only pass or be inconclusive.
InequalityReport check_inequality(const MultilinearForm& form, const FamilySpec& spec,
                                  const CheckOptions& options = {});

enum class Distribution { SignUniform, Gaussian };
std::string_view to_string(Distribution dist);
std::optional<Distribution> parse_distribution(std::string_view name);

/// Deterministic in (seed, index); forms with different indices use
/// independent streams, so they can be generated in any order.
MultilinearForm random_form(int m, int n, ScalarField field, std::uint64_t seed, Distribution dist,
                            std::uint64_t index = 0,
                            std::size_t entry_budget = kDefaultEntryBudget);

struct SearchResult {
  double best_ratio = 0.0;
  MultilinearForm best_form;
  /// True for the real field, where every ratio uses an exact sup-norm and
  /// best_ratio is a valid lower bound on the optimal constant.
  bool is_lower_bound = false;
  std::int64_t evaluations = 0;
};

/// Random sampling followed by perturbative hill climbing of bh_lhs / sup.
/// `budget` counts candidate forms evaluated.
SearchResult lower_bound_search(int m, int n, ScalarField field, std::uint64_t seed,
                                std::int64_t budget);

}  // namespace bh
