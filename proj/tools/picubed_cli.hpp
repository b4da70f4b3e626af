#pragma once

// Command-line front end: eval, compare, verify, catalog.
//
// Exit codes: 0 success, 1 usage error, 2 term budget exceeded,
// 3 output file not writable, 4 identity check failed.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "picubed/catalog.hpp"
#include "picubed/numctx.hpp"
#include "picubed/series.hpp"
#include "picubed/verify.hpp"

namespace picubed::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kBudget = 2, kUnwritable = 3, kIdentityFailed = 4 };

inline constexpr const char* kBudgetEnvVar = "PICUBED_TERM_BUDGET";

inline const std::vector<std::string>& default_compare_series() {
  static const std::vector<std::string> names = {"golden-fifth",  "golden-tenth",     "quarter",
                                                 "alt-odd-cubes", "central-binomial", "pilehrood-apery",
                                                 "sun-harmonic"};
  return names;
}

struct ComparisonRow {
  std::string series_id;
  std::string target;
  std::uint32_t requested_digits = 0;
  long achieved_digits = 0;
  std::uint64_t terms_used = 0;
  std::string value_20;
  std::string error_bound;
  bool uses_reference_pi = false;
};

inline std::string csv_header() {
  return "series_id,target,requested_digits,achieved_digits,terms_used,value_20,error_bound,uses_reference_pi";
}

inline std::string to_csv(const ComparisonRow& r) {
  std::ostringstream os;
  os << r.series_id << ',' << r.target << ',' << r.requested_digits << ',' << r.achieved_digits << ','
     << r.terms_used << ',' << r.value_20 << ',' << r.error_bound << ',' << (r.uses_reference_pi ? "true" : "false");
  return os.str();
}

namespace detail {

/// Parses PICUBED_TERM_BUDGET; nullopt means "unset".
inline std::uint64_t term_budget(const std::optional<std::string>& env) {
  if (!env) return kDefaultTermBudget;
  const std::string& s = *env;
  if (s.empty() || s.size() > 18 || s.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidArgument(std::string(kBudgetEnvVar) + " must be a positive integer, got '" + s + "'");
  }
  const std::uint64_t v = std::stoull(s);
  if (v == 0) throw InvalidArgument(std::string(kBudgetEnvVar) + " must be positive");
  return v;
}

inline PrecCtx context_for(std::uint32_t digits, std::optional<std::uint32_t> precision) {
  return mk_context(precision ? *precision : std::max<std::uint32_t>(digits + 10, 30));
}

inline bool series_uses_reference_pi(const SeriesId& id) { return id.kind == SeriesKind::EulerBilateral; }

inline std::string budget_hint() {
  return "hint: bilateral and alternating series converge as O(N^-3); for many digits use "
         "--series central-binomial, pilehrood-apery or sun-harmonic";
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline void print_table(std::ostream& out, const std::vector<ComparisonRow>& rows) {
  out << std::left << std::setw(26) << "series" << std::setw(7) << "target" << std::right << std::setw(6)
      << "req" << std::setw(6) << "got" << std::setw(10) << "terms" << "  " << std::left << std::setw(23)
      << "value" << std::setw(11) << "error" << "ref_pi\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(26) << r.series_id << std::setw(7) << r.target << std::right << std::setw(6)
        << r.requested_digits << std::setw(6) << r.achieved_digits << std::setw(10) << r.terms_used << "  "
        << std::left << std::setw(23) << r.value_20 << std::setw(11) << r.error_bound
        << (r.uses_reference_pi ? "yes" : "no") << '\n';
  }
}

}  // namespace detail

struct EvalArgs {
  std::string series;
  std::string x;
  std::uint32_t digits = 0;
  std::optional<std::uint32_t> precision;
  bool parallel = false;
};

inline int cmd_eval(const EvalArgs& a, std::uint64_t budget, std::ostream& out, std::ostream& err) {
  try {
    if (a.digits == 0) throw InvalidArgument("--digits must be positive");
    const SeriesId id = a.x.empty() ? SeriesId::parse(a.series) : SeriesId::euler(Rat::parse(a.x));
    const PrecCtx ctx = detail::context_for(a.digits, a.precision);
    EvalResult r = eval_pi3(id, a.digits, ctx, EvalOptions{budget, a.parallel});
    out << "series       " << id.name() << '\n'
        << "value        " << r.value.to_fixed(static_cast<int>(a.digits)) << '\n'
        << "terms_used   " << r.terms_used << '\n'
        << "error_bound  " << r.error_bound.to_sci(3) << '\n'
        << "digits       " << r.achieved_digits << " certified (" << a.digits << " requested)\n";
    return kOk;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n' << detail::budget_hint() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

struct CompareArgs {
  std::uint32_t digits = 0;
  std::string series_list;
  std::string output = "table";
  std::string out_path;
  std::optional<std::uint32_t> precision;
  bool parallel = false;
};

/// Evaluates each series; rows come back sorted by terms_used, then name.
inline std::vector<ComparisonRow> compare_rows(const std::vector<SeriesId>& ids, std::uint32_t digits,
                                               const PrecCtx& ctx, const EvalOptions& opts, bool& any_failed) {
  std::vector<ComparisonRow> rows;
  any_failed = false;
  for (const SeriesId& id : ids) {
    ComparisonRow row{id.name(), "pi^3", digits, 0, 0, "-", "-", detail::series_uses_reference_pi(id)};
    try {
      EvalResult r = eval_pi3(id, digits, ctx, opts);
      row.achieved_digits = r.achieved_digits;
      row.terms_used = r.terms_used;
      row.value_20 = r.value.to_fixed(20);
      row.error_bound = r.error_bound.to_sci(3);
    } catch (const BudgetExceeded&) {
      row.terms_used = opts.term_budget;
      any_failed = true;
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.terms_used != b.terms_used) return a.terms_used < b.terms_used;
    return a.series_id < b.series_id;
  });
  return rows;
}

inline int cmd_compare(const CompareArgs& a, std::uint64_t budget, std::ostream& out, std::ostream& err) {
  std::vector<ComparisonRow> rows;
  bool any_failed = false;
  try {
    if (a.digits == 0) throw InvalidArgument("--digits must be positive");
    if (a.output != "table" && a.output != "csv") throw InvalidArgument("--output must be table or csv");
    std::vector<std::string> names = a.series_list.empty() ? default_compare_series() : detail::split_list(a.series_list);
    if (names.empty()) throw InvalidArgument("--series list is empty");
    std::vector<SeriesId> ids;
    for (const auto& n : names) ids.push_back(SeriesId::parse(n));
    const PrecCtx ctx = detail::context_for(a.digits, a.precision);
    rows = compare_rows(ids, a.digits, ctx, EvalOptions{budget, a.parallel}, any_failed);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ostringstream body;
  if (a.output == "csv") {
    body << csv_header() << '\n';
    for (const auto& r : rows) body << to_csv(r) << '\n';
  } else {
    detail::print_table(body, rows);
  }

  if (!a.out_path.empty()) {
    std::ofstream f(a.out_path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << body.str()) || !f.flush()) {
      err << "error: cannot write " << a.out_path << '\n';
      return kUnwritable;
    }
  } else {
    out << body.str();
  }
  if (any_failed) {
    err << "error: some series could not be certified within the term budget\n" << detail::budget_hint() << '\n';
    return kBudget;
  }
  return kOk;
}

struct VerifyArgs {
  std::string identity = "all";
  std::uint32_t digits = 0;
  std::optional<std::uint32_t> precision;
  bool parallel = false;
};

inline int cmd_verify(const VerifyArgs& a, std::uint64_t budget, std::ostream& out, std::ostream& err) {
  std::vector<IdentityId> ids;
  PrecCtx ctx;
  try {
    if (a.digits == 0) throw InvalidArgument("--digits must be positive");
    ids = a.identity == "all" ? default_identity_suite() : std::vector<IdentityId>{IdentityId::parse(a.identity)};
    ctx = detail::context_for(a.digits, a.precision);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  bool failed = false;
  for (const IdentityId& id : ids) {
    try {
      Report r = verify_identity(id, a.digits, ctx, EvalOptions{budget, a.parallel});
      std::string status;
      if (id.expected_fail()) {
        status = r.pass ? "unexpected-pass" : "expected-fail (printed index typo)";
      } else {
        status = r.pass ? "pass" : "FAIL";
        failed = failed || !r.pass;
      }
      out << std::left << std::setw(22) << id.name() << std::setw(36) << status << "abs_diff " << std::setw(10)
          << r.abs_diff.to_sci(3) << " terms " << r.terms_used << (r.uses_reference_pi ? "  [uses reference pi]" : "")
          << '\n';
    } catch (const BudgetExceeded& e) {
      err << "error: " << e.what() << '\n';
      return kBudget;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  return failed ? kIdentityFailed : kOk;
}

inline int cmd_catalog(std::ostream& out) {
  out << std::left << std::setw(10) << "kind" << std::setw(26) << "name" << std::setw(16) << "tag" << std::setw(21)
      << "convergence" << "uses_reference_pi\n";
  for (const CatalogRow& r : catalog()) {
    out << std::left << std::setw(10) << r.kind << std::setw(26) << r.name << std::setw(16) << r.tag << std::setw(21)
        << r.convergence << (r.uses_reference_pi ? "true" : "false") << '\n';
  }
  return kOk;
}

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name; `budget_env` is the raw PICUBED_TERM_BUDGET value if set.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const std::optional<std::string>& budget_env = std::nullopt) {
  CLI::App app{"High-precision series evaluation and identity checks for pi^3", "picubed"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate pi^3 from one series to a digit target");
  auto* series_opt = eval->add_option("--series", eval_args.series, "Series name (see catalog)");
  auto* x_opt = eval->add_option("--x", eval_args.x, "Rational abscissa p/q for the general bilateral series");
  series_opt->excludes(x_opt);
  x_opt->excludes(series_opt);
  eval->add_option("--digits", eval_args.digits, "Significant digits to certify")->required();
  eval->add_option("--precision", eval_args.precision, "Working precision in decimal digits");
  eval->add_flag("--parallel", eval_args.parallel, "Deterministic parallel summation");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Evaluate several series and compare their cost");
  compare->add_option("--digits", cmp.digits, "Significant digits to certify")->required();
  compare->add_option("--series", cmp.series_list, "Comma-separated series names");
  compare->add_option("--output", cmp.output, "table or csv");
  compare->add_option("--out", cmp.out_path, "Write the report to this file");
  compare->add_option("--precision", cmp.precision, "Working precision in decimal digits");
  compare->add_flag("--parallel", cmp.parallel, "Deterministic parallel summation");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check identities to a digit target");
  verify->add_option("--identity", ver.identity, "Identity name or 'all'");
  verify->add_option("--digits", ver.digits, "Digits to verify")->required();
  verify->add_option("--precision", ver.precision, "Working precision in decimal digits");
  verify->add_flag("--parallel", ver.parallel, "Deterministic parallel summation");

  auto* cat = app.add_subcommand("catalog", "List every series and identity");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::uint64_t budget = kDefaultTermBudget;
  try {
    budget = detail::term_budget(budget_env);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (eval->parsed()) {
    if (eval_args.series.empty() && eval_args.x.empty()) {
      err << "error: eval needs --series or --x\n";
      return kUsage;
    }
    return cmd_eval(eval_args, budget, out, err);
  }
  if (compare->parsed()) return cmd_compare(cmp, budget, out, err);
  if (verify->parsed()) return cmd_verify(ver, budget, out, err);
  if (cat->parsed()) return cmd_catalog(out);
  return kUsage;
}

}  // namespace picubed::cli
