#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fibdelay/asymptotics.hpp"
#include "fibdelay/characteristic.hpp"
#include "fibdelay/combinatorics.hpp"
#include "fibdelay/errors.hpp"
#include "fibdelay/intertwine.hpp"
#include "fibdelay/report.hpp"
#include "fibdelay/sequences.hpp"

namespace fibdelay::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kComputation = 3,
};

struct CliResult {
  int exit_code = kOk;
  std::string output;  // envelope, or help text
  std::string error;   // diagnostics for stderr
};

namespace detail {

inline Json complex_json(const Complex& z, const PrecisionContext& ctx) {
  return Json{{"re", ctx.format(z.re)}, {"im", ctx.format(z.im)}};
}

inline Json report_json(const VerificationReport& report) {
  Json lines = Json::array();
  for (const auto& l : report.lines) {
    lines.push_back(Json{{"block", l.block}, {"label", l.label}, {"passed", l.passed}, {"detail", l.detail}});
  }
  return Json{{"passed", report.passed()}, {"failures", report.failures()}, {"lines", std::move(lines)}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void flatten(const Json& node, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (node.is_array()) {
    std::size_t i = 0;
    for (const auto& value : node) flatten(value, prefix + "." + std::to_string(i++), rows);
  } else if (node.is_string()) {
    rows.emplace_back(prefix, node.get<std::string>());
  } else {
    rows.emplace_back(prefix, node.dump());
  }
}

}  // namespace detail

/// key,value rows: one per scalar leaf of the envelope, keys as dotted paths.
inline std::string render_csv(const Json& envelope) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(envelope, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += detail::csv_field(k) + "," + detail::csv_field(v) + "\n";
  return out;
}

/// Runs one CLI invocation. `args` excludes the program name.
inline CliResult run(const std::vector<std::string>& args, const std::string& default_fixture = {}) {
  CLI::App app{"Undelayed and delayed Fibonacci sequences: exact terms, roots, brackets, identities"};
  app.name("fibdelay");
  app.fallthrough();
  app.require_subcommand(1);

  int digits = 50;
  std::string format = "json";
  std::string fixture = default_fixture;
  app.add_option("--digits", digits, "Requested decimal precision")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed-fixtures", fixture, "Transcribed chain-table fixture file");

  Json params = Json::object();
  Json results = Json::object();
  int exit_code = kOk;

  // seq
  auto* seq = app.add_subcommand("seq", "Exact sequence terms");
  std::string family = "F";
  std::int64_t from = 0;
  std::int64_t to = 10;
  unsigned ell = 1;
  std::string a_text = "1";
  std::vector<std::string> initial;
  seq->add_option("--family", family, "F, G, H, Fell (higher, with --ell) or Ga (with --a)")
      ->check(CLI::IsMember({"F", "G", "H", "Fell", "Ga"}))
      ->capture_default_str();
  seq->add_option("--from", from)->capture_default_str();
  seq->add_option("--to", to)->capture_default_str();
  seq->add_option("--ell", ell, "Order of the higher family")->capture_default_str();
  seq->add_option("--a", a_text, "Middle initial value of the Ga family (rational)")->capture_default_str();
  seq->add_option("--initial", initial, "Override initial values (comma separated)")->delimiter(',');

  // roots
  auto* roots = app.add_subcommand("roots", "Characteristic roots");
  std::string kind;
  roots->add_option("kind", kind)->required()->check(CLI::IsMember({"quadratic", "cubic", "quartic"}));

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Closed-form expansion coefficients");
  std::string coeff_family;
  std::string method = "closed_form";
  coeffs->add_option("family", coeff_family)->required()->check(CLI::IsMember({"F", "G"}));
  coeffs->add_option("--method", method)
      ->check(CLI::IsMember({"closed_form", "linear_solve"}))
      ->capture_default_str();

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "Bracket of F(n) inside the G sequence");
  std::int64_t rank_n = 0;
  rank_cmd->add_option("--n,n", rank_n)->required()->check(CLI::NonNegativeNumber);

  // breakpoints
  auto* bp = app.add_subcommand("breakpoints", "Stage boundaries of the bracketing pattern");
  std::string row_text = "all";
  std::int64_t k_max = 100;
  bp->add_option("--row", row_text, "0..6 or all")->capture_default_str();
  bp->add_option("--k-max", k_max)->capture_default_str()->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "Regression check of every tabulated claim");
  std::int64_t verify_k_max = 100;
  std::uint64_t identity_k_max = 200;
  std::uint64_t enumeration_max = 25;
  std::uint64_t binet_max = 300;
  verify->add_option("--k-max", verify_k_max)->capture_default_str();
  verify->add_option("--identity-k-max", identity_k_max)->capture_default_str();
  verify->add_option("--enumeration-max", enumeration_max)->capture_default_str();
  verify->add_option("--binet-max", binet_max)->capture_default_str();

  // chains
  auto* chains = app.add_subcommand("chains", "Chain compositions into parts {1, ell+1}");
  unsigned chain_ell = 1;
  std::uint64_t chain_length = 0;
  bool count_only = false;
  std::uint64_t cap = kDefaultEnumerationCap;
  chains->add_option("--ell", chain_ell)->capture_default_str()->check(CLI::PositiveNumber);
  chains->add_option("--length", chain_length)->required();
  chains->add_flag("--count", count_only, "Only count, via the binomial sum");
  chains->add_option("--cap", cap, "Enumeration size cap")->capture_default_str();

  // asymptotics
  auto* asym = app.add_subcommand("asymptotics", "Growth ratio, log quotient, alignment samples");
  std::string which;
  std::int64_t align_m = 1000;
  asym->add_option("which", which)->required()->check(CLI::IsMember({"ratio", "mystery", "alignment"}));
  asym->add_option("--m", align_m, "G index for alignment")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), {}};
  } catch (const CLI::CallForAllHelp&) {
    return {kOk, app.help("", CLI::AppFormatMode::All), {}};
  } catch (const CLI::ParseError& e) {
    return {kUsage, {}, std::string(e.what()) + "\n" + app.help()};
  }

  std::string command;
  try {
    const PrecisionContext ctx(digits);

    if (*seq) {
      command = "seq";
      if (from > to) throw std::invalid_argument("--from must not exceed --to");
      RecurrenceSpec spec;
      if (family == "F") spec = RecurrenceSpec::fibonacci();
      if (family == "G") spec = RecurrenceSpec::gibonacci();
      if (family == "H") spec = RecurrenceSpec::double_delay();
      if (family == "Fell") spec = RecurrenceSpec::higher_fibonacci(ell);
      if (family == "Ga") spec = RecurrenceSpec::parametrized_gibonacci(parse_rational(a_text));
      if (!initial.empty()) {
        spec.initial.clear();
        for (const auto& v : initial) spec.initial.push_back(parse_rational(v));
        spec.validate();
      }
      params = Json{{"family", family}, {"from", from}, {"to", to}};
      if (family == "Fell") params["ell"] = ell;
      if (family == "Ga") params["a"] = to_string(parse_rational(a_text));
      if (!initial.empty()) {
        Json init = Json::array();
        for (const auto& v : spec.initial) init.push_back(to_string(v));
        params["initial"] = std::move(init);
      }
      Json terms = Json::array();
      for (const auto& v : stream(spec, from, to)) terms.push_back(to_string(v));
      results = Json{{"p", spec.p}, {"q", spec.q}, {"terms", std::move(terms)}};
    } else if (*roots) {
      command = "roots";
      params = Json{{"kind", kind}};
      if (kind == "quadratic") {
        const auto r = golden_roots(ctx);
        results = Json{{"eta_a", ctx.format(r.eta_a)}, {"eta_b", ctx.format(r.eta_b)}};
      } else if (kind == "cubic") {
        const auto r = plastic_roots(ctx);
        results = Json{{"x0", ctx.format(r.x0)},
                       {"d_plus", ctx.format(r.d_plus)},
                       {"d_minus", ctx.format(r.d_minus)},
                       {"rho_a", ctx.format(r.rho_a)},
                       {"rho_d", ctx.format(r.rho_d)},
                       {"rho_b", detail::complex_json(r.rho_b, ctx)},
                       {"rho_c", detail::complex_json(r.rho_c, ctx)},
                       {"abs_rho_b", ctx.format(r.rho_b.modulus())},
                       {"phi", ctx.format(r.phi)}};
      } else {
        const auto r = quartic_roots(ctx);
        results = Json{{"real_roots", Json::array({ctx.format(r.real_roots[0]), ctx.format(r.real_roots[1])})},
                       {"tau_plus", detail::complex_json(r.tau_plus, ctx)},
                       {"tau_minus", detail::complex_json(r.tau_minus, ctx)},
                       {"abs_tau", ctx.format(r.tau_plus.modulus())}};
      }
    } else if (*coeffs) {
      command = "coeffs";
      params = Json{{"family", coeff_family}};
      if (coeff_family == "F") {
        const auto c = fib_coefficients(ctx);
        results = Json{{"a", ctx.format(c.a)}, {"b", ctx.format(c.b)}};
      } else {
        params["method"] = method;
        const auto m = method == "closed_form" ? CoefficientMethod::closed_form : CoefficientMethod::linear_solve;
        const auto c = gib_coefficients(ctx, m);
        results = Json{{"A", ctx.format(c.A)},
                       {"K", ctx.format(c.K)},
                       {"L", ctx.format(c.L)},
                       {"B", detail::complex_json(c.B(), ctx)},
                       {"C", detail::complex_json(c.C(), ctx)},
                       {"sigma", ctx.format(c.sigma)},
                       {"delta", ctx.format(c.delta)}};
      }
    } else if (*rank_cmd) {
      command = "rank";
      params = Json{{"n", rank_n}};
      const auto r = rank(rank_n);
      const auto split = reindex(Family::F, rank_n);
      results = Json{{"n", r.n},
                     {"j", split.major},
                     {"k", split.minor},
                     {"f_value", to_string(r.f_value)},
                     {"lower_m", r.lower_m},
                     {"tie_end_m", r.tie_end_m},
                     {"tie_above", r.tie_above},
                     {"tie_below", r.tie_below},
                     {"g_lower", to_string(r.g_lower)},
                     {"g_upper", to_string(r.g_upper)}};
    } else if (*bp) {
      command = "breakpoints";
      params = Json{{"row", row_text}, {"k_max", k_max}};
      std::vector<int> rows;
      if (row_text == "all") {
        for (int r = 0; r < kRows; ++r) rows.push_back(r);
      } else {
        std::size_t used = 0;
        int r = -1;
        try {
          r = std::stoi(row_text, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != row_text.size()) throw std::invalid_argument("--row must be 0..6 or all");
        rows.push_back(r);
      }
      Json records = Json::array();
      for (int r : rows) {
        for (const auto& rec : scan_breakpoints(r, k_max)) {
          records.push_back(Json{{"row", rec.row},
                                 {"stage", rec.stage},
                                 {"k_start", rec.k_start},
                                 {"k_end", rec.k_end},
                                 {"offset", rec.offset},
                                 {"closed", rec.closed}});
        }
      }
      results = Json{{"records", std::move(records)}};
    } else if (*verify) {
      command = "verify";
      params = Json{{"k_max", verify_k_max},
                    {"identity_k_max", identity_k_max},
                    {"enumeration_max", enumeration_max},
                    {"binet_max", binet_max}};
      VerificationReport report = verify_stage_tables(verify_k_max);
      for (unsigned l = 1; l <= 3; ++l) report.append(identity_check(l, identity_k_max, enumeration_max));
      if (!fixture.empty()) {
        params["fixture"] = fixture;
        report.append(check_chain_fixture(load_chain_fixture(fixture)));
      }
      const int binet_digits =
          std::max({ctx.digits(), required_binet_digits(Family::F, binet_max), required_binet_digits(Family::G, binet_max)});
      const PrecisionContext binet_ctx(binet_digits);
      const Real residual_bound = Real::power_of_ten(-5, binet_ctx.bits());
      for (Family fam : {Family::F, Family::G}) {
        RecurrenceStream<Integer> exact(RecurrenceSpec::of(fam), 0);
        std::string problem;
        for (std::uint64_t n = 0; n <= binet_max; ++n, exact.advance()) {
          const auto b = binet_eval(fam, n, binet_ctx);
          if (b.value != exact.value() || b.residual >= residual_bound) {
            problem = "n=" + std::to_string(n) + ": closed form " + to_string(b.value) + ", recurrence " +
                      to_string(exact.value());
            break;
          }
        }
        report.add("closed form vs recurrence", std::string(family_name(fam)) + " for n <= " + std::to_string(binet_max),
                   problem.empty(),
                   problem.empty() ? "residuals < 1e-5 at " + std::to_string(binet_digits) + " digits" : problem);
      }
      results = detail::report_json(report);
      if (!report.passed()) exit_code = kVerificationFailed;
    } else if (*chains) {
      command = "chains";
      params = Json{{"ell", chain_ell}, {"length", chain_length}, {"count_only", count_only}};
      results = Json{{"count", to_string(binomial_sum(chain_ell, chain_length))}};
      if (!count_only) {
        params["cap"] = cap;
        Json list = Json::array();
        for (const auto& c : enumerate_chains(chain_ell, chain_length, cap)) list.push_back(c.symbols());
        results["structures"] = std::move(list);
      }
    } else if (*asym) {
      command = "asymptotics";
      params = Json{{"which", which}};
      if (which == "ratio") {
        const auto r = log_ratio(ctx);
        Json partials = Json::array();
        Json residuals = Json::array();
        for (const auto& p : r.expansion_partials) partials.push_back(ctx.format(p));
        for (const auto& p : r.residuals) residuals.push_back(ctx.format(p));
        results = Json{{"ratio", ctx.format(r.ratio)}, {"partials", std::move(partials)}, {"residuals", std::move(residuals)}};
      } else if (which == "mystery") {
        const auto m = mystery_quotient(ctx);
        results = Json{{"log_quotient", ctx.format(m.log_quotient)},
                       {"approx_value", ctx.format(m.approx_value)},
                       {"difference", ctx.format(m.log_quotient - m.approx_value)},
                       {"rho5_relative_error", ctx.format(m.rho5_relative_error)}};
      } else {
        params["m"] = align_m;
        const auto s = growth_alignment(align_m, ctx);
        results = Json{{"M", s.M},
                       {"N", s.N},
                       {"g_m", to_string(s.g_m)},
                       {"f_n", to_string(s.f_n)},
                       {"log_gap", ctx.format(s.log_gap)},
                       {"relative_log_gap", ctx.format(s.log_gap / log(ctx.from(s.g_m)))}};
      }
    }
  } catch (const InsufficientPrecision& e) {
    return {kComputation, {}, e.what()};
  } catch (const CapExceeded& e) {
    return {kComputation, {}, e.what()};
  } catch (const RefinementFailure& e) {
    return {kComputation, {}, e.what()};
  } catch (const std::invalid_argument& e) {
    return {kUsage, {}, e.what()};
  }

  Json envelope{{"command", command},
                {"parameters", std::move(params)},
                {"precision_digits", digits},
                {"results", std::move(results)},
                {"artifact_version", kArtifactVersion}};
  CliResult out;
  out.exit_code = exit_code;
  out.output = format == "csv" ? render_csv(envelope) : envelope.dump(2) + "\n";
  return out;
}

}  // namespace fibdelay::cli
