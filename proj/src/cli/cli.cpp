#include "bh/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bh/asymptotics.hpp"
#include "bh/errors.hpp"
#include "bh/form_io.hpp"
#include "bh/kernels.hpp"
#include "bh/khinchine.hpp"
#include "bh/specialfn.hpp"

namespace bh::cli {

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Constants: return "constants";
    case Command::Ratios: return "ratios";
    case Command::Limits: return "limits";
    case Command::Claims: return "claims";
    case Command::Verify: return "verify";
    case Command::P0: return "p0";
    case Command::Report: return "report";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::JsonLines: return "jsonl";
    case OutputFormat::Table: return "table";
  }
  return "?";
}

namespace {

constexpr KhinchineMode kBothModes[] = {KhinchineMode::GammaFormula, KhinchineMode::HaagerupPiecewise};
constexpr Family kRecursiveFamilies[] = {Family::RecursiveReal, Family::RecursiveComplex};

std::string name(Family f) { return std::string(to_string(f)); }
std::string name(KhinchineMode m) { return std::string(to_string(m)); }

std::vector<KhinchineMode> modes_of(const RunConfig& c) {
  if (c.mode) return {*c.mode};
  return {std::begin(kBothModes), std::end(kBothModes)};
}

std::vector<Family> recursive_families_of(const RunConfig& c) {
  if (c.family) return {*c.family};
  return {std::begin(kRecursiveFamilies), std::end(kRecursiveFamilies)};
}

// Maximum D_n over (lo, hi], or 0 for an empty range.
double tail_max(const FamilySpec& spec, std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return 0.0;
  const auto table = cached_table(spec, hi + 1);
  return kernels::omp::ratio_extremes(table->logs(), lo + 1, hi).max.value;
}

// ---- commands -----------------------------------------------------------

struct Outcome {
  Records records;
  bool failed = false;
};

Outcome cmd_constants(const RunConfig& c) {
  const FamilySpec spec{c.family.value_or(Family::RecursiveReal), c.mode.value_or(KhinchineMode::GammaFormula)};
  const std::int64_t m_max = c.max.value_or(16);
  Outcome o{{"constants", {"m", "C_m", "ln_C_m"}, {}}};
  if (c.arithmetic == Arithmetic::Extended) {
    if (m_max > 65'536) throw ResourceError("constants: extended precision is limited to --max 65536");
    const auto logs = extended_log_table(spec, m_max);
    for (std::int64_t m = 2; m <= m_max; m += c.step) {
      const Extended& l = logs[static_cast<std::size_t>(m)];
      o.records.rows.push_back({m, Literal{Extended(exp(l)).str(40)}, Literal{l.str(40)}});
    }
    return o;
  }
  if (m_max < 2) throw DomainError("constants: --max must be at least 2");
  const auto table = cached_table(spec, m_max);
  for (std::int64_t m = 2; m <= m_max; m += c.step) {
    const double l = table->log_c(m);
    o.records.rows.push_back({m, std::exp(l), l});
  }
  return o;
}

Outcome cmd_ratios(const RunConfig& c) {
  const FamilySpec spec{c.family.value_or(Family::RecursiveReal), c.mode.value_or(KhinchineMode::GammaFormula)};
  const auto series = ratio_series(spec, c.max.value_or(64));
  Outcome o{{"ratios", {"n", "D_n", "ln_D_n", "below_one"}, {}}};
  const auto table = cached_table(spec, c.max.value_or(64));
  for (std::size_t i = 0; i < series.entries.size(); i += static_cast<std::size_t>(c.step)) {
    const auto& e = series.entries[i];
    o.records.rows.push_back({e.n, e.ratio, table->log_ratio(e.n), e.below_one});
  }
  return o;
}

std::string closed_form(LimitKind kind) {
  switch (kind) {
    case LimitKind::HalfShift: return "4e^gamma";
    case LimitKind::ThreeHalfShift: return "4e^(gamma-2)";
    case LimitKind::SequencePower: return "16e^(2gamma-4)";
    case LimitKind::KhinchinePrefactor: return "sqrt(2)/e^(1-gamma/2)";
    case LimitKind::EvenRatio: return "e^(1-gamma/2)/sqrt(2)";
    case LimitKind::OddRatio: return "e^(1/2-gamma/4)/2^(1/4)";
  }
  return "?";
}

Outcome cmd_limits(const RunConfig& c) {
  Outcome o{{"limits", {"kind", "closed_form", "limit", "param", "pre_limit", "rel_error", "pass"}, {}}};
  for (LimitKind kind : kAllLimitKinds) {
    const double param = takes_shift(kind) ? c.limits.x : c.limits.m;
    const double target = limit_target(kind);
    const double value = gamma_limit_value(kind, param);
    const double err = std::abs(value / target - 1.0);
    const bool pass = err < c.limits.tol;
    o.failed |= !pass;
    o.records.rows.push_back({std::string(to_string(kind)), closed_form(kind), target, param, value, err, pass});
  }
  return o;
}

Outcome cmd_claims(const RunConfig& c) {
  const auto& cc = c.claims;
  Outcome o{{"claims", {"check", "family", "mode", "param", "index", "value", "bound", "pass"}, {}}};
  auto add = [&](const char* check, const FamilySpec& spec, Cell param, std::int64_t index, double value,
                 double bound, bool pass) {
    o.failed |= !pass;
    o.records.rows.push_back({std::string(check), name(spec.family), name(spec.mode), std::move(param), index,
                              value, bound, pass});
  };
  for (Family family : recursive_families_of(c)) {
    for (KhinchineMode mode : modes_of(c)) {
      const FamilySpec spec{family, mode};
      const auto r1 = check_claim1(spec, cc.residual_n);
      add("half-index-odd", spec, cc.residual_n, cc.residual_n, r1.odd, cc.residual_tol, r1.odd < cc.residual_tol);
      add("half-index-even", spec, cc.residual_n, cc.residual_n, r1.even, cc.residual_tol, r1.even < cc.residual_tol);

      try {
        const auto first = check_contraction(spec, cc.K, cc.contraction_start, cc.contraction_end);
        add("contraction", spec, cc.K, first.index, tail_max(spec, first.index, cc.contraction_end),
            first.threshold, first.success);
        if (first.success) {
          const auto second = check_contraction(spec, first.threshold, first.index, cc.contraction_end);
          add("contraction-twice", spec, cc.K, second.index, tail_max(spec, second.index, cc.contraction_end),
              second.threshold, second.success && second.threshold < std::sqrt(cc.K));
        }
      } catch (const HypothesisError& e) {
        add("contraction", spec, cc.K, e.witness(), e.value(), cc.K, false);
      }

      for (int s = 0; s <= cc.s_max; ++s) {
        try {
          const auto env = envelope(spec, s, cc.C, cc.envelope_end);
          add("envelope", spec, std::int64_t{s}, env.index, tail_max(spec, env.index, cc.envelope_end),
              env.threshold, env.success);
        } catch (const HypothesisError& e) {
          add("envelope", spec, std::int64_t{s}, e.witness(), e.value(), cc.C, false);
        }
      }
    }
  }
  return o;
}

std::vector<Cell> verify_row(const std::string& source, std::int64_t index, const MultilinearForm& form,
                             Family family, const std::vector<KhinchineMode>& modes, const CheckOptions& opts,
                             bool& failed, std::optional<double> ratio_override = std::nullopt) {
  std::vector<Cell> row{source, index, std::int64_t{form.degree()}, std::int64_t{form.dimension()},
                        std::string(to_string(form.field()))};
  std::vector<Cell> tail;
  InequalityReport first;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto r = check_inequality(form, {family, modes[i]}, opts);
    if (i == 0) first = r;
    failed |= r.verdict == Verdict::Fail;
    tail.push_back(r.bound);
    tail.push_back(std::string(to_string(r.verdict)));
  }
  row.insert(row.end(), {first.lhs, first.sup_norm, first.sup_is_exact, ratio_override.value_or(first.ratio)});
  row.insert(row.end(), tail.begin(), tail.end());
  return row;
}

Outcome cmd_verify(const RunConfig& c) {
  const auto& v = c.verify;
  std::optional<MultilinearForm> file_form;
  if (!v.form_path.empty()) file_form = read_form_file(v.form_path);
  const ScalarField field = file_form ? file_form->field() : v.field;
  const Family family =
      c.family.value_or(field == ScalarField::Real ? Family::RecursiveReal : Family::RecursiveComplex);
  const auto modes = modes_of(c);

  CheckOptions opts;
  opts.precision = c.precision;
  opts.restarts = v.restarts;
  opts.iters = v.iters;
  opts.seed = c.seed;
  opts.max_vertex_bits = v.max_vertex_bits;

  Outcome o{{"verify", {"source", "index", "m", "N", "field", "lhs", "sup_norm", "sup_exact", "ratio"}, {}}};
  for (KhinchineMode mode : modes) {
    o.records.columns.push_back("bound_" + name(mode));
    o.records.columns.push_back("verdict_" + name(mode));
  }

  if (v.include_littlewood) {
    o.records.rows.push_back(verify_row("littlewood", 0, MultilinearForm::littlewood(field), family, modes, opts,
                                        o.failed));
  }
  if (file_form) o.records.rows.push_back(verify_row("form", 0, *file_form, family, modes, opts, o.failed));

  if (v.trials > 0) {
    if (field == ScalarField::Real && v.m * v.n > v.max_vertex_bits) {
      throw ResourceError("verify: m*N exceeds the exact real sup-norm budget");
    }
    // Validate shape and budget once, outside the parallel region.
    (void)random_form(v.m, v.n, field, c.seed, v.dist, 0);
    std::vector<std::vector<Cell>> rows(static_cast<std::size_t>(v.trials));
    std::vector<char> fail(rows.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < v.trials; ++i) {
      bool f = false;
      const auto form = random_form(v.m, v.n, field, c.seed, v.dist, static_cast<std::uint64_t>(i));
      rows[static_cast<std::size_t>(i)] = verify_row("random", i, form, family, modes, opts, f);
      fail[static_cast<std::size_t>(i)] = f;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      o.records.rows.push_back(std::move(rows[i]));
      o.failed |= fail[i] != 0;
    }
  }

  if (v.search_budget > 0) {
    const auto s = lower_bound_search(v.m, v.n, field, c.seed, v.search_budget);
    o.records.rows.push_back(verify_row("search", s.evaluations, s.best_form, family, modes, opts, o.failed,
                                        s.best_ratio));
  }
  return o;
}

Outcome cmd_p0(const RunConfig& c) {
  const double p0 = find_p0(c.p0_tol);
  const double residual = p0_residual(p0);
  const bool pass = std::abs(residual) < 1e-12;
  Outcome o{{"p0", {"p0", "residual", "A_p0", "tol", "pass"}, {}}, !pass};
  o.records.rows.push_back({p0, residual, std::exp2(0.5 - 1.0 / p0), c.p0_tol, pass});
  return o;
}

Outcome cmd_report(const RunConfig& c) {
  const std::int64_t n_max = c.max.value_or(std::int64_t{1} << 20);
  Outcome o;
  if (c.blocks) {
    o.records = {"report_blocks", {"family", "mode", "k", "block_start", "block_max"}, {}};
  } else {
    o.records = {"report",
                 {"family", "mode", "n_max", "tail_sup", "tail_inf", "fitted_c", "predicted_c", "below_one",
                  "block_max_decreasing", "beats_conjectured_rate", "half_index_odd", "half_index_even", "pass"},
                 {}};
  }
  for (Family family : recursive_families_of(c)) {
    for (KhinchineMode mode : modes_of(c)) {
      const auto r = convergence_report({family, mode}, n_max);
      const bool pass = r.below_one == 0 && r.block_max_decreasing && r.beats_conjectured_rate;
      o.failed |= !pass;
      if (c.blocks) {
        for (std::size_t k = 0; k < r.block_max.size(); ++k) {
          const auto kk = static_cast<std::int64_t>(k + 1);
          o.records.rows.push_back({name(family), name(mode), kk, std::int64_t{1} << kk, r.block_max[k]});
        }
        continue;
      }
      o.records.rows.push_back({name(family), name(mode), r.n_max, r.tail_sup, r.tail_inf, r.fitted_c,
                                r.predicted_c, r.below_one, r.block_max_decreasing, r.beats_conjectured_rate,
                                r.claim1.odd, r.claim1.even, pass});
    }
  }
  return o;
}

Outcome dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::Constants: return cmd_constants(c);
    case Command::Ratios: return cmd_ratios(c);
    case Command::Limits: return cmd_limits(c);
    case Command::Claims: return cmd_claims(c);
    case Command::Verify: return cmd_verify(c);
    case Command::P0: return cmd_p0(c);
    case Command::Report: return cmd_report(c);
  }
  throw InternalError("unknown command");
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  const char* dir = std::getenv("BH_OUTPUT_DIR");
  if (p.is_relative() && dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  return p;
}

// ---- argument parsing -----------------------------------------------------

template <class Enum>
std::vector<std::string> names_of(std::initializer_list<Enum> values) {
  std::vector<std::string> out;
  for (Enum v : values) out.emplace_back(to_string(v));
  return out;
}

template <class Enum>
Enum lookup(const std::string& text, std::initializer_list<Enum> values) {
  for (Enum v : values) {
    if (to_string(v) == text) return v;
  }
  throw InternalError("unvalidated option value " + text);
}

constexpr auto kFamilies = {Family::Original, Family::DavieKaijser, Family::Queffelec, Family::RecursiveReal,
                            Family::RecursiveComplex};
constexpr auto kModes = {KhinchineMode::GammaFormula, KhinchineMode::HaagerupPiecewise};
constexpr auto kFormats = {OutputFormat::Csv, OutputFormat::JsonLines, OutputFormat::Table};
constexpr auto kFields = {ScalarField::Real, ScalarField::Complex};
constexpr auto kDists = {Distribution::SignUniform, Distribution::Gaussian};

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Bohnenblust-Hille constants: tables, limits, claims and inequality checks", "bhconstants"};
  app.require_subcommand(1);

  std::string family, mode, format = "csv", field = "real", dist = "sign", arithmetic = "double";
  std::int64_t max = 0;

  auto common = [&](CLI::App* sub, bool with_family, bool with_mode) {
    sub->add_option("--format", format, "csv, jsonl or table")->check(CLI::IsMember(names_of(kFormats)));
    sub->add_option("-o,--output", c.output_path, "output file (relative paths resolve under $BH_OUTPUT_DIR)");
    sub->add_option("--threads", c.threads, "OpenMP threads (0: default)")->check(CLI::NonNegativeNumber);
    if (with_family) {
      sub->add_option("--family", family, "constant family")->check(CLI::IsMember(names_of(kFamilies)));
    }
    if (with_mode) {
      sub->add_option("--mode", mode, "Khinchine constant: gamma or haagerup (default: both where compared)")
          ->check(CLI::IsMember(names_of(kModes)));
    }
  };
  auto positive = CLI::PositiveNumber;

  auto* constants = app.add_subcommand("constants", "table of C_m");
  common(constants, true, true);
  constants->add_option("--max", max, "largest m (default 16)")->check(CLI::Range(2, 1 << 30));
  constants->add_option("--step", c.step, "row stride")->check(positive);
  constants->add_option("--precision", arithmetic, "double or extended")
      ->check(CLI::IsMember({"double", "extended"}));

  auto* ratios = app.add_subcommand("ratios", "consecutive ratios D_n = C_{n+1}/C_n");
  common(ratios, true, true);
  ratios->add_option("--max", max, "n_max; rows n = 2..n_max-1 (default 64)")->check(CLI::Range(3, 1 << 30));
  ratios->add_option("--step", c.step, "row stride")->check(positive);

  auto* limits = app.add_subcommand("limits", "Gamma-function limits against their closed forms");
  common(limits, false, false);
  limits->add_option("--x", c.limits.x, "shift for the x -> 0 limits")->check(CLI::Range(1e-300, 0.4));
  limits->add_option("--m", c.limits.m, "degree for the m -> infinity limits")->check(CLI::Range(2.0, 1e15));
  limits->add_option("--tol", c.limits.tol, "relative tolerance")->check(positive);

  auto* claims = app.add_subcommand("claims", "empirical checks of the ratio claims");
  common(claims, true, true);
  claims->add_option("--n", c.claims.residual_n, "n for the half-index ratio residuals")->check(CLI::Range(3, 1 << 28));
  claims->add_option("--K", c.claims.K, "contraction bound K > 1")->check(CLI::Range(1.0 + 1e-15, 1e300));
  claims->add_option("--C", c.claims.C, "envelope constant C > 1")->check(CLI::Range(1.0 + 1e-15, 1e300));
  claims->add_option("--s-max", c.claims.s_max, "largest envelope exponent s")->check(CLI::Range(0, 60));
  claims->add_option("--contraction-start", c.claims.contraction_start)->check(CLI::Range(2, 1 << 28));
  claims->add_option("--contraction-end", c.claims.contraction_end)->check(CLI::Range(3, 1 << 28));
  claims->add_option("--envelope-end", c.claims.envelope_end)->check(CLI::Range(3, 1 << 28));
  claims->add_option("--residual-tol", c.claims.residual_tol)->check(positive);

  auto* verify = app.add_subcommand("verify", "check the inequality on explicit forms");
  common(verify, true, true);
  verify->add_option("--m", c.verify.m, "degree")->check(CLI::Range(2, 64));
  verify->add_option("--N", c.verify.n, "dimension per slot")->check(CLI::Range(1, 1 << 20));
  verify->add_option("--field", field, "real or complex")->check(CLI::IsMember(names_of(kFields)));
  verify->add_option("--trials", c.verify.trials, "random forms to check")->check(CLI::NonNegativeNumber);
  verify->add_option("--dist", dist, "sign or gaussian")->check(CLI::IsMember(names_of(kDists)));
  verify->add_option("--seed", c.seed, "random seed");
  verify->add_flag("--include-littlewood", c.verify.include_littlewood, "add the 2x2 Littlewood form");
  verify->add_option("--form", c.verify.form_path, "form tensor file")->check(CLI::ExistingFile);
  verify->add_option("--search", c.verify.search_budget, "lower-bound search with this many candidates")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--restarts", c.verify.restarts, "complex sup-norm restarts")->check(positive);
  verify->add_option("--iters", c.verify.iters, "complex sup-norm sweeps per restart")->check(CLI::NonNegativeNumber);
  verify->add_option("--max-vertex-bits", c.verify.max_vertex_bits, "budget for exact real sup-norms (m*N)")
      ->check(CLI::Range(1, 40));
  verify->add_option("--rel-tol", c.precision.rel_tol, "relative tolerance of the inequality check")->check(positive);
  verify->add_option("--abs-tol", c.precision.abs_tol, "absolute tolerance of the inequality check")->check(positive);

  auto* p0 = app.add_subcommand("p0", "root of Gamma((p+1)/2) = sqrt(pi)/2 in (1, 2)");
  common(p0, false, false);
  p0->add_option("--tol", c.p0_tol, "root tolerance")->check(CLI::Range(1e-17, 1e-3));

  auto* report = app.add_subcommand("report", "tail statistics of D_n");
  common(report, true, true);
  report->add_option("--max", max, "n_max (default 2^20)")->check(CLI::Range(1024, 1 << 28));
  report->add_flag("--blocks", c.blocks, "per-block maxima of D_n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitUsage};
  }

  const std::pair<CLI::App*, Command> commands[] = {
      {constants, Command::Constants}, {ratios, Command::Ratios}, {limits, Command::Limits},
      {claims, Command::Claims},       {verify, Command::Verify}, {p0, Command::P0},
      {report, Command::Report}};
  for (const auto& [sub, command] : commands) {
    if (!sub->parsed()) continue;
    c.command = command;
    auto given = [sub](const char* flag) {
      const CLI::Option* opt = sub->get_option_no_throw(flag);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--family")) c.family = lookup(family, kFamilies);
    if (given("--mode")) c.mode = lookup(mode, kModes);
    if (given("--max")) c.max = max;
  }
  c.format = lookup(format, kFormats);
  c.verify.field = lookup(field, kFields);
  c.verify.dist = lookup(dist, kDists);
  c.arithmetic = arithmetic == "extended" ? Arithmetic::Extended : Arithmetic::Double;
  if (c.command == Command::Claims) {
    if (c.family && *c.family != Family::RecursiveReal && *c.family != Family::RecursiveComplex) {
      err << "claims: --family must be recursive-real or recursive-complex\n";
      return {std::nullopt, kExitUsage};
    }
    if (c.claims.contraction_end <= c.claims.contraction_start) {
      err << "claims: --contraction-end must exceed --contraction-start\n";
      return {std::nullopt, kExitUsage};
    }
  }
  if (c.command == Command::Report && c.family && *c.family != Family::RecursiveReal &&
      *c.family != Family::RecursiveComplex) {
    err << "report: --family must be recursive-real or recursive-complex\n";
    return {std::nullopt, kExitUsage};
  }
  return {c, kExitOk};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.precision.validate();
    if (config.step < 1) throw DomainError("--step must be positive");
    if (config.threads > 0) omp_set_num_threads(config.threads);
    const Outcome o = dispatch(config);
    if (config.output_path.empty()) {
      write_records(out, o.records, config.format);
    } else {
      const auto path = resolve_output(config.output_path);
      std::ofstream file(path, std::ios::binary);
      if (!file) throw ResourceError("cannot open output file " + path.string());
      write_records(file, o.records, config.format);
      if (!file) throw ResourceError("write failed: " + path.string());
    }
    return o.failed ? kExitCheckFailed : kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_args(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace bh::cli
