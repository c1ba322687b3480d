#include "cli.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "expsums/arith.hpp"
#include "expsums/closed_forms.hpp"
#include "expsums/oracle.hpp"
#include "expsums/quadforms.hpp"
#include "expsums/report.hpp"
#include "expsums/satotate.hpp"
#include "expsums/sweep.hpp"

namespace expsums::cli {

namespace {

struct GlobalOptions {
  std::string format = "table";
  std::string out_path;
  unsigned jobs = 0;
  double tol_scale = 1.0;
};

struct EvalOptions {
  std::string sum;
  u64 p = 0;
  std::optional<u64> k, d, n, j, s, a, b;
};

struct VerifyCliOptions {
  std::string theorems;
  u64 pmin = 3;
  u64 pmax = 2000;
  u64 seed = VerifyOptions{}.seed;
};

struct SatoTateOptions {
  u64 p = 0;
  u64 b = 1;
  std::size_t bins = 0;
  bool list_angles = false;
};

class InvalidInput : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_cx(Cx z) {
  return fmt::format("{:.10f} {} {:.10f}i", z.real(), z.imag() < 0 ? '-' : '+',
                     std::abs(z.imag()));
}

OddPrime checked_prime(u64 p) {
  if (p == 2) throw InvalidInput("modulus must be an odd prime");
  if (!is_prime(p)) throw InvalidInput("modulus is not prime (" + std::to_string(p) + ")");
  if (p >= kMaxModulus) throw InvalidInput("modulus exceeds 2^63");
  return OddPrime(p);
}

ReportFormat checked_format(const std::string& name) {
  const auto f = parse_report_format(name);
  if (!f) throw InvalidInput("unknown format '" + name + "'");
  return *f;
}

// Table to stdout; the selected format goes to --out, or to stdout when no
// --out is given and the format is not the table.
void emit_report(const GlobalOptions& g, std::ostream& out,
                 std::span<const ReportRow> rows,
                 std::span<const ReportNote> notes) {
  const ReportFormat format = checked_format(g.format);
  if (g.out_path.empty()) {
    write_report(out, format, rows, notes);
    return;
  }
  write_report(out, ReportFormat::table, rows, notes);
  std::ofstream file(g.out_path);
  if (!file) throw InvalidInput("cannot open output file " + g.out_path);
  write_report(file, format, rows, notes);
}

ReportRow bound_row(u64 p, std::string kind, std::string params, Cx value,
                    double excess, double tol) {
  ReportRow row;
  row.p = p;
  row.kind = std::move(kind);
  row.params = std::move(params);
  row.oracle = value;
  row.discrepancy = std::max(0.0, excess);
  row.status = row.discrepancy <= tol ? Status::ok : Status::formula_mismatch;
  return row;
}

// ---------------------------------------------------------------- eval ----

void reject_unused(const EvalOptions& o, SumKind kind) {
  const bool uses_k = kind == SumKind::s_k;
  const bool uses_d = kind == SumKind::t_d;
  const bool uses_chi = kind == SumKind::g_n || kind == SumKind::t_d;
  const bool uses_s = uses_chi || kind == SumKind::s_k;
  const bool uses_ab = !uses_s;
  auto check = [&](bool given, bool used, std::string_view flag) {
    if (given && !used) {
      throw InvalidInput(fmt::format("--{} does not apply to sum {}", flag,
                                     to_string(kind)));
    }
  };
  check(o.k.has_value(), uses_k, "k");
  check(o.d.has_value(), uses_d, "d");
  check(o.n.has_value(), uses_chi, "n");
  check(o.j.has_value(), uses_chi, "j");
  check(o.s.has_value(), uses_s, "s");
  check(o.a.has_value(), uses_ab, "a");
  check(o.b.has_value(), uses_ab, "b");
}

SumSpec build_spec(const EvalOptions& o, OddPrime p, SumKind kind) {
  reject_unused(o, kind);
  auto required = [&](const std::optional<u64>& v, std::string_view flag) {
    if (!v) {
      throw InvalidInput(
          fmt::format("sum {} requires --{}", to_string(kind), flag));
    }
    return *v;
  };
  const u64 s = o.s.value_or(1);
  auto character = [&] {
    try {
      return Character(p, o.n.value_or(2), o.j.value_or(1));
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(e.what());
    }
  };
  SumSpec spec = [&] {
    switch (kind) {
      case SumKind::s_k: return SumSpec::power(p, required(o.k, "k"), s);
      case SumKind::g_n: return SumSpec::gauss(character(), s);
      case SumKind::t_d:
        return SumSpec::twisted_power(character(), required(o.d, "d"), s);
      case SumKind::kloosterman:
        return SumSpec::kloosterman(p, required(o.a, "a"), o.b.value_or(1));
      case SumKind::salie:
        return SumSpec::salie(p, required(o.a, "a"), o.b.value_or(1));
      case SumKind::mixed_quadratic:
        return SumSpec::mixed_quadratic(p, required(o.a, "a"), o.b.value_or(1));
    }
    throw std::logic_error("unhandled sum kind");
  }();
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  return spec;
}

std::vector<ReportRow> closed_form_rows(const FieldTables& field,
                                        const SumSpec& spec, Cx oracle,
                                        double tol_scale,
                                        std::vector<ReportNote>& notes) {
  const OddPrime p = spec.p;
  const u64 n = p.value();
  const std::string params = spec.params();
  const double tol = tolerance(p, tol_scale);
  const double root_p = std::sqrt(static_cast<double>(n));
  std::vector<ReportRow> rows;
  auto push = [&](std::string kind, const Candidates& c) {
    rows.push_back(make_row(n, std::move(kind), params,
                            sign_resolve(c, oracle, p, tol_scale)));
  };

  switch (spec.kind) {
    case SumKind::s_k: {
      const u64 g = reduce_k(p, *spec.k_or_d);
      push("reduction", {{s_k(field, g, *spec.s)}, "gcd_reduction"});
      notes.push_back({"gcd(k, p-1)", std::to_string(g)});
      break;
    }
    case SumKind::g_n:
    case SumKind::t_d: {
      const u64 d = spec.k_or_d.value_or(1);
      const u64 s = *spec.s;
      const bool quadratic = spec.chi->order() == 2;
      if (quadratic && d == 1) {
        // Gauss: G(χ, s) = (s/p)·i*·√p for the quadratic character.
        push("gauss_quadratic",
             {{static_cast<double>(legendre(s, p)) * unit_factor(p) * root_p},
              "gauss"});
      }
      if (spec.kind == SumKind::g_n) {
        rows.push_back(bound_row(n, "gauss_modulus", params, oracle,
                                 std::abs(std::abs(oracle) - root_p), tol));
        break;
      }
      if (!quadratic) break;
      push("td_identity", {{td_identity(field, d, s)}, "identity"});
      if (vanishing_case(p, d)) push("vanishing", {{Cx{}}, "vanishing"});
      if (s == 1 && d == 2 && n % 4 == 1) push("t2_theorem1", t2_theorem1(p));
      if (s == 1 && d == 3 && n % 6 == 1) {
        try {
          push("t3_theorem2", t3_theorem2(p, s_k(field, 3, 1), tol_scale));
        } catch (const std::domain_error& e) {
          notes.push_back({"t3_theorem2 skipped", e.what()});
        }
      }
      if (s == 1 && d == 4 && n % 8 == 1) {
        push("t4_theorem4_a4", t4_theorem4(p, Theorem4Reading::a4_as_printed));
        push("t4_theorem4_a8", t4_theorem4(p, Theorem4Reading::a8_substituted));
      }
      if (d == 3 && n % 6 == 1) {
        rows.push_back(bound_row(n, "corollary3_upper", params, oracle,
                                 std::abs(oracle) - 3.0 * root_p, tol));
      }
      break;
    }
    case SumKind::kloosterman:
      rows.push_back(bound_row(n, "weil_bound", params, oracle,
                               std::abs(oracle) - 2.0 * root_p, tol));
      break;
    case SumKind::salie: {
      const u64 ab = mul_mod(*spec.a % n, *spec.b % n, n);
      Cx expected{};
      if (legendre(ab, p) == 1) {
        const double v = static_cast<double>(*sqrt_mod(ab, p));
        expected = static_cast<double>(legendre(*spec.a, p)) * unit_factor(p) *
                   2.0 * root_p *
                   std::cos(4.0 * std::numbers::pi * v / static_cast<double>(n));
      }
      push("salie_classical", {{expected}, "salie"});
      break;
    }
    case SumKind::mixed_quadratic: {
      const auto t5 = theorem5_check(field, *spec.a, *spec.b, tol_scale);
      push("decomposition",
           {{t5.k_part + t5.salie_part}, "kloosterman_plus_salie"});
      push("theorem5_printed", {{t5.printed_rhs}, "theorem5_printed"});
      if (t5.variant_rhs) {
        push("theorem5_variant", {{*t5.variant_rhs}, "theorem5_variant"});
      }
      notes.push_back({"kloosterman", format_cx(t5.k_part)});
      notes.push_back({"salie", format_cx(t5.salie_part)});
      notes.push_back({"theta", fmt::format("{:.10f}", t5.theta)});
      break;
    }
  }
  if (rows.empty()) {
    ReportRow row;
    row.p = n;
    row.kind = std::string(to_string(spec.kind));
    row.params = params;
    row.oracle = oracle;
    row.status = Status::skipped;
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_eval(const EvalOptions& o, const GlobalOptions& g, std::ostream& out) {
  const auto kind = parse_sum_kind(o.sum);
  if (!kind) throw InvalidInput("unknown sum kind '" + o.sum + "'");
  const OddPrime p = checked_prime(o.p);
  const SumSpec spec = build_spec(o, p, *kind);
  const FieldTables field(p);
  const Cx oracle = evaluate(field, spec);

  std::vector<ReportNote> notes{
      {"sum", std::string(to_string(spec.kind))},
      {"params", spec.params()},
      {"oracle", format_cx(oracle)},
      {"tolerance", fmt::format("{:.3e}", tolerance(p, g.tol_scale))}};
  const auto rows = closed_form_rows(field, spec, oracle, g.tol_scale, notes);
  for (const auto& r : rows) {
    if (r.resolved_index && !r.candidates.empty()) {
      notes.push_back({"resolved " + r.kind,
                       format_cx(r.candidates[*r.resolved_index])});
    }
  }
  emit_report(g, out, rows, notes);
  return kExitOk;
}

// -------------------------------------------------------------- verify ----

int cmd_verify(const VerifyCliOptions& o, const GlobalOptions& g,
               std::ostream& out) {
  VerifyOptions options;
  options.pmin = o.pmin;
  options.pmax = o.pmax;
  options.jobs = g.jobs;
  options.tol_scale = g.tol_scale;
  options.seed = o.seed;
  if (!o.theorems.empty()) {
    options.checks.clear();
    std::stringstream ss(o.theorems);
    for (std::string name; std::getline(ss, name, ',');) {
      if (name.empty()) continue;
      const auto c = parse_check(name);
      if (!c) throw InvalidInput("unknown check '" + name + "'");
      options.checks.push_back(*c);
    }
  }
  checked_format(g.format);

  VerifyResult result;
  try {
    result = run_verify(options);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  const auto notes = result.summary.notes();
  emit_report(g, out, result.rows, notes);
  out << fmt::format("summary: {} rows over {} primes; OK={} UNRESOLVED={} "
                     "FORMULA_MISMATCH={} SKIPPED={}\n",
                     result.rows.size(), result.summary.primes,
                     result.summary.overall.ok,
                     result.summary.overall.unresolved,
                     result.summary.overall.formula_mismatch,
                     result.summary.overall.skipped);
  return result.summary.hard_failure ? kExitHardFailure : kExitOk;
}

// ------------------------------------------------------------ satotate ----

int cmd_satotate(const SatoTateOptions& o, const GlobalOptions& g,
                 std::ostream& out) {
  const OddPrime p = checked_prime(o.p);
  if (o.b % p.value() == 0) throw InvalidInput("b must be nonzero mod p");
  const ReportFormat format = checked_format(g.format);

  const auto samples = collect_angles(p, o.b, g.jobs, g.tol_scale);
  const KSReport ks = ks_report(samples);
  const double critical = ks_critical_value_1pct(ks.sample_count);

  if (format == ReportFormat::json) {
    out << fmt::format(
        "{{\n  \"format\": \"expsums-satotate\",\n  \"schema\": {},\n"
        "  \"p\": {},\n  \"b\": {},\n  \"sample_count\": {},\n"
        "  \"d_statistic_sin2\": {},\n  \"d_statistic_sin\": {},\n"
        "  \"critical_1pct\": {},\n  \"measure_preferred\": \"{}\"\n}}\n",
        kReportSchemaVersion, p.value(), o.b, ks.sample_count,
        ks.d_statistic_sin2, ks.d_statistic_sin, critical,
        to_string(ks.measure_preferred));
  } else {
    out << fmt::format("p = {}, b = {}, angles = {}\n", p.value(), o.b,
                       ks.sample_count);
    if (o.list_angles || samples.size() <= 64) {
      for (const auto& s : samples) {
        out << fmt::format("  a = {:>6}  theta = {:.10f}\n", s.a, s.theta);
      }
    }
    out << fmt::format("D(sin2_semicircle) = {:.6f}\n", ks.d_statistic_sin2);
    out << fmt::format("D(sin_normalized)  = {:.6f}\n", ks.d_statistic_sin);
    out << fmt::format("1% critical value  = {:.6f} ({} for sin2_semicircle)\n",
                       critical,
                       ks.d_statistic_sin2 < critical ? "not rejected"
                                                      : "rejected");
    out << fmt::format("preferred measure  = {}\n",
                       to_string(ks.measure_preferred));
  }

  if (o.bins > 0) {
    const auto hist = angle_histogram(samples, o.bins);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!g.out_path.empty()) {
      file.open(g.out_path);
      if (!file) throw InvalidInput("cannot open output file " + g.out_path);
      sink = &file;
    }
    *sink << fmt::format("# expsums-histogram format=csv schema={}\n",
                         kReportSchemaVersion)
          << "bin_mid,count,expected_sin2,expected_sin\n";
    for (const auto& bin : hist) {
      *sink << fmt::format("{},{},{},{}\n", bin.midpoint, bin.count,
                           bin.expected_sin2, bin.expected_sin);
    }
  }
  return kExitOk;
}

// ----------------------------------------------------------------- rep ----

int cmd_rep(u64 raw_p, const GlobalOptions& g, std::ostream& out) {
  const OddPrime p = checked_prime(raw_p);
  const u64 n = p.value();
  const ReportFormat format = checked_format(g.format);

  std::vector<ReportNote> lines;
  for (Form form : kAllForms) {
    const auto rep = represent(p, form);
    lines.push_back({std::string(to_string(form)),
                     rep ? fmt::format("({},{})", rep->a, rep->b) : "absent"});
  }
  if (n % 4 == 1) {
    const auto [a4, b4, mu] = normalize_a4(p);
    lines.push_back({"a4", std::to_string(a4)});
    lines.push_back({"b4", std::to_string(b4)});
    lines.push_back({"mu", std::to_string(mu)});
  }
  if (n % 8 == 1) {
    const auto [a8, b8, eta, m] = normalize_a8(p);
    lines.push_back({"a8", std::to_string(a8)});
    lines.push_back({"b8", std::to_string(b8)});
    lines.push_back({"eta", std::to_string(eta)});
    lines.push_back({"m", std::to_string(m)});
  }
  if (n % 3 == 1) {
    lines.push_back({"2 cubic residue",
                     power_residue_test(2, 3, p) ? "yes" : "no"});
  } else {
    lines.push_back({"2 cubic residue", "yes (p ≢ 1 mod 3: every unit is a cube)"});
  }

  if (format == ReportFormat::json) {
    out << "{\n  \"format\": \"expsums-rep\",\n  \"schema\": "
        << kReportSchemaVersion << ",\n  \"p\": " << n;
    for (const auto& l : lines) {
      out << fmt::format(",\n  \"{}\": \"{}\"", l.key, l.value);
    }
    out << "\n}\n";
  } else {
    out << "p = " << n << '\n';
    for (const auto& l : lines) out << fmt::format("  {:<16} {}\n", l.key, l.value);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exponential sums over prime fields: oracle evaluation, "
               "closed-form audits, and Kloosterman angle statistics",
               "expsums"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--format", global.format, "table, json, or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", global.out_path, "report or histogram file");
  app.add_option("--jobs", global.jobs, "worker threads (0 = all cores)");
  app.add_option("--tol-scale", global.tol_scale, "multiplier on tol(p)")
      ->check(CLI::PositiveNumber);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one sum");
  eval_cmd->add_option("--sum", eval.sum,
                       "s_k, g_n, t_d, kloosterman, salie, mixed_quadratic")
      ->required();
  eval_cmd->add_option("--p", eval.p, "prime modulus")->required();
  eval_cmd->add_option("--k", eval.k, "power for s_k");
  eval_cmd->add_option("--d", eval.d, "degree for t_d");
  eval_cmd->add_option("--n", eval.n, "character order (default 2)");
  eval_cmd->add_option("--j", eval.j, "character exponent index (default 1)");
  eval_cmd->add_option("--s", eval.s, "frequency (default 1)");
  eval_cmd->add_option("--a", eval.a);
  eval_cmd->add_option("--b", eval.b, "(default 1)");

  VerifyCliOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "sweep checks over primes");
  verify_cmd->add_option("--theorems", verify.theorems,
                         "comma list of t2,t3,t4,identity,vanishing,"
                         "decomposition,cor3,reduction (default all)");
  verify_cmd->add_option("--pmin", verify.pmin);
  verify_cmd->add_option("--pmax", verify.pmax);
  verify_cmd->add_option("--seed", verify.seed, "seed for (a, b) samples");

  SatoTateOptions st;
  auto* st_cmd = app.add_subcommand("satotate", "Kloosterman angle statistics");
  st_cmd->add_option("--p", st.p)->required();
  st_cmd->add_option("--b", st.b);
  st_cmd->add_option("--bins", st.bins, "histogram bins (CSV)");
  st_cmd->add_flag("--angles", st.list_angles, "list every angle");

  u64 rep_p = 0;
  auto* rep_cmd = app.add_subcommand("rep", "quadratic form representations");
  rep_cmd->add_option("--p", rep_p)->required();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval, global, out);
    if (*verify_cmd) return cmd_verify(verify, global, out);
    if (*st_cmd) return cmd_satotate(st, global, out);
    if (*rep_cmd) return cmd_rep(rep_p, global, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace expsums::cli
