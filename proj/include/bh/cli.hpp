#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bh/constants.hpp"
#include "bh/verifier.hpp"

namespace bh::cli {

enum class Command { Constants, Ratios, Limits, Claims, Verify, P0, Report };
std::string_view to_string(Command command);

enum class OutputFormat { Csv, JsonLines, Table };
std::string_view to_string(OutputFormat format);

/// Version tag carried by every JSON-lines record.
inline constexpr int kSchemaVersion = 1;

struct VerifyConfig {
  int m = 2;
  int n = 2;
  ScalarField field = ScalarField::Real;
  int trials = 100;
  Distribution dist = Distribution::SignUniform;
  bool include_littlewood = false;
  std::string form_path;           // empty: no file form
  std::int64_t search_budget = 0;  // 0: no search
  int restarts = 16;
  int iters = 200;
  int max_vertex_bits = kDefaultVertexBits;
};

struct ClaimsConfig {
  std::int64_t residual_n = 10'000;
  double K = 1.5;
  std::int64_t contraction_start = 100;
  std::int64_t contraction_end = 100'000;
  double C = 1.5;
  int s_max = 6;
  std::int64_t envelope_end = 1'000'000;
  double residual_tol = 1e-3;
};

struct LimitsConfig {
  double x = 1e-4;
  double m = 1e5;
  double tol = 1e-3;
};

/// Everything one invocation needs. Unset optionals take per-command defaults.
struct RunConfig {
  Command command = Command::Constants;
  std::optional<Family> family;
  std::optional<KhinchineMode> mode;  // unset: both modes where a command compares them
  std::optional<std::int64_t> max;    // m_max or n_max
  std::int64_t step = 1;
  Arithmetic arithmetic = Arithmetic::Double;
  std::uint64_t seed = 0;
  Precision precision{1e-9, 1e-12};
  double p0_tol = 1e-15;
  bool blocks = false;  // report: per-block maxima instead of the summary
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty: standard output
  int threads = 0;          // 0: OpenMP default
  VerifyConfig verify;
  ClaimsConfig claims;
  LimitsConfig limits;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct ParseOutcome {
  std::optional<RunConfig> config;  // empty when the run should stop
  int exit_code = kExitOk;          // meaningful when config is empty
};

/// Parses argv. Help and usage errors are written to `out` / `err`.
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes a parsed config. Returns 0 on success, 1 when an asserted check
/// fails or a resource limit is hit, 2 on invalid input.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---- record output --------------------------------------------------------

/// A number emitted verbatim (already formatted), e.g. extended-precision digits.
struct Literal {
  std::string text;
};
using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool, Literal>;

struct Records {
  std::string kind;  // record name in JSON-lines
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV and JSON-lines use 17 significant digits; the table format uses 6.
/// Non-finite doubles are written as inf/-inf/nan in CSV and tables, null in JSON.
void write_records(std::ostream& out, const Records& records, OutputFormat format);

}  // namespace bh::cli
