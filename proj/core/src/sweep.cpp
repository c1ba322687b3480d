#include "expsums/sweep.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "expsums/closed_forms.hpp"
#include "expsums/oracle.hpp"
#include "expsums/parallel.hpp"

namespace expsums {

namespace {

std::string kv(std::string_view key, u64 v) {
  return fmt::format("{}={}", key, v);
}

ReportRow skipped_row(u64 p, std::string kind, std::string params, Cx oracle) {
  ReportRow row;
  row.p = p;
  row.kind = std::move(kind);
  row.params = std::move(params);
  row.oracle = oracle;
  row.status = Status::skipped;
  return row;
}

class PrimeVerifier {
 public:
  PrimeVerifier(OddPrime p, const VerifyOptions& options)
      : p_(p), opt_(options), field_(p), chi_(Character::quadratic(p)) {}

  std::vector<ReportRow> run() {
    for (Check c : opt_.checks) {
      switch (c) {
        case Check::t2: t2(); break;
        case Check::t3: t3(); break;
        case Check::t4: t4(); break;
        case Check::identity: identity(); break;
        case Check::vanishing: vanishing(); break;
        case Check::decomposition: decomposition(); break;
        case Check::corollary3: corollary3(); break;
        case Check::reduction: reduction(); break;
      }
    }
    return std::move(rows_);
  }

 private:
  u64 n() const { return p_.value(); }

  void push(std::string kind, std::string params, const Candidates& cands,
            Cx oracle) {
    rows_.push_back(make_row(n(), std::move(kind), std::move(params),
                             sign_resolve(cands, oracle, p_, opt_.tol_scale)));
  }

  void t2() {
    if (n() % 4 != 1) return;
    push("t2_theorem1", "d=2;s=1", t2_theorem1(p_), t_d(field_, chi_, 2, 1));
  }

  void t3() {
    if (n() % 6 != 1) return;
    const Cx oracle = t_d(field_, chi_, 3, 1);
    const std::string params =
        fmt::format("d=3;s=1;branch={}", power_residue_test(2, 3, p_)
                                             ? "residue"
                                             : "nonresidue");
    try {
      push("t3_theorem2", params,
           t3_theorem2(p_, s_k(field_, 3, 1), opt_.tol_scale), oracle);
    } catch (const std::domain_error&) {
      rows_.push_back(skipped_row(n(), "t3_theorem2", params, oracle));
    }
  }

  void t4() {
    if (n() % 8 != 1) return;
    const Cx oracle = t_d(field_, chi_, 4, 1);
    const auto printed = t4_theorem4(p_, Theorem4Reading::a4_as_printed);
    const auto substituted = t4_theorem4(p_, Theorem4Reading::a8_substituted);
    push("t4_theorem4_a4", "d=4;s=1;reading=a4", printed, oracle);
    push("t4_theorem4_a8", "d=4;s=1;reading=a8", substituted, oracle);
    Candidates both{printed.values, "theorem4_either_reading"};
    both.values.insert(both.values.end(), substituted.values.begin(),
                       substituted.values.end());
    push("t4_theorem4", "d=4;s=1;reading=either", both, oracle);
  }

  void identity() {
    for (u64 d = 2; d <= 6; ++d) {
      for (u64 s = 1; s <= 3; ++s) {
        push("td_identity",
             fmt::format("d={};s={};exact={}", d, s,
                         td_identity_exact_regime(p_, d) ? 1 : 0),
             {{td_identity(field_, d, s)}, "identity"},
             t_d(field_, chi_, d, s));
      }
    }
  }

  void vanishing() {
    if (n() % 4 != 3) return;
    for (u64 d = 2; d <= 8; d += 2) {
      for (u64 s = 1; s <= 3; ++s) {
        push("vanishing", fmt::format("d={};s={}", d, s),
             {{Cx{0.0, 0.0}}, "vanishing"}, t_d(field_, chi_, d, s));
      }
    }
  }

  void decomposition() {
    for (auto [a, b] : sample_pairs(p_, opt_.seed, opt_.pairs_per_prime)) {
      const Cx sum = kloosterman(field_, a, b) + salie(field_, a, b);
      push("decomposition", kv("a", a) + ";" + kv("b", b),
           {{sum}, "kloosterman_plus_salie"}, mixed_quadratic(field_, a, b));
    }
  }

  void corollary3() {
    if (n() % 6 != 1) return;
    const double bound = 3.0 * std::sqrt(static_cast<double>(n()));
    for (u64 s = 1; s <= 2; ++s) {
      const auto check = corollary3_check(field_, s, opt_.tol_scale);
      ReportRow row;
      row.p = n();
      row.kind = "corollary3_upper";
      row.params = fmt::format("d=3;s={};lower_ok={};rep3={};rep27={}", s,
                               check.lower_ok ? 1 : 0,
                               check.representable_3 ? 1 : 0,
                               check.representable_27 ? 1 : 0);
      row.oracle = t_d(field_, chi_, 3, s);
      row.discrepancy = std::max(0.0, check.abs_t3 - bound);
      row.status = check.upper_ok ? Status::ok : Status::formula_mismatch;
      rows_.push_back(std::move(row));
    }
  }

  void reduction() {
    for (u64 k = 1; k <= 24; ++k) {
      const u64 g = reduce_k(p_, k);
      push("reduction", kv("k", k) + ";" + kv("gcd", g),
           {{s_k(field_, g, 1)}, "gcd_reduction"}, s_k(field_, k, 1));
    }
  }

  OddPrime p_;
  const VerifyOptions& opt_;
  FieldTables field_;
  Character chi_;
  std::vector<ReportRow> rows_;
};

VerifySummary summarize(const std::vector<ReportRow>& rows,
                        const VerifyOptions& options, std::size_t primes) {
  VerifySummary s;
  s.primes = primes;
  for (const auto& r : rows) {
    s.overall.add(r.status);
    s.by_kind[r.kind].add(r.status);
    if (r.kind == "t3_theorem2" && r.params.ends_with("nonresidue") &&
        r.resolved_index && *r.resolved_index < 2) {
      ++s.t3_nonresidue_sign[*r.resolved_index];
    }
    if (r.kind == "t4_theorem4_a4" && r.status == Status::ok) {
      ++s.t4_reading_matches[0];
    }
    if (r.kind == "t4_theorem4_a8" && r.status == Status::ok) {
      ++s.t4_reading_matches[1];
    }
    if (r.kind == "t4_theorem4") {
      ++s.t4_primes;
      if (r.status == Status::ok || r.status == Status::unresolved) {
        ++s.t4_prime_matches;
      }
    }
  }
  for (Check c : options.checks) {
    if (!is_hard_invariant(c)) continue;
    const std::string kind =
        c == Check::identity ? "td_identity" : std::string(to_string(c));
    if (auto it = s.by_kind.find(kind);
        it != s.by_kind.end() && it->second.formula_mismatch > 0) {
      s.hard_failure = true;
    }
  }
  return s;
}

std::string describe(const StatusCounts& c) {
  return fmt::format("OK={} UNRESOLVED={} FORMULA_MISMATCH={} SKIPPED={}", c.ok,
                     c.unresolved, c.formula_mismatch, c.skipped);
}

}  // namespace

std::string_view to_string(Check c) noexcept {
  switch (c) {
    case Check::t2: return "t2";
    case Check::t3: return "t3";
    case Check::t4: return "t4";
    case Check::identity: return "identity";
    case Check::vanishing: return "vanishing";
    case Check::decomposition: return "decomposition";
    case Check::corollary3: return "cor3";
    case Check::reduction: return "reduction";
  }
  return "?";
}

std::optional<Check> parse_check(std::string_view name) noexcept {
  for (Check c : kAllChecks) {
    if (name == to_string(c)) return c;
  }
  if (name == "t1" || name == "theorem1") return Check::t2;
  if (name == "corollary3") return Check::corollary3;
  return std::nullopt;
}

std::vector<ReportNote> VerifySummary::notes() const {
  std::vector<ReportNote> out;
  out.push_back({"primes", std::to_string(primes)});
  out.push_back({"all", describe(overall)});
  for (const auto& [kind, counts] : by_kind) {
    out.push_back({"kind " + kind, describe(counts)});
  }
  if (by_kind.contains("t3_theorem2")) {
    out.push_back({"t3 nonresidue sign",
                   fmt::format("plus={} minus={}", t3_nonresidue_sign[0],
                               t3_nonresidue_sign[1])});
  }
  if (t4_primes > 0) {
    out.push_back({"t4 primes", std::to_string(t4_primes)});
    out.push_back(
        {"t4 a4 reading match rate",
         fmt::format("{}/{}", t4_reading_matches[0], t4_primes)});
    out.push_back(
        {"t4 a8 reading match rate",
         fmt::format("{}/{}", t4_reading_matches[1], t4_primes)});
    out.push_back({"t4 either reading match rate",
                   fmt::format("{}/{}", t4_prime_matches, t4_primes)});
  }
  out.push_back({"hard invariant failure", hard_failure ? "yes" : "no"});
  return out;
}

std::vector<std::pair<u64, u64>> sample_pairs(OddPrime p, u64 seed,
                                              std::size_t count) {
  const u64 n = p.value();
  std::mt19937_64 rng(seed ^ (n * 0x9E3779B97F4A7C15ull));
  std::vector<std::pair<u64, u64>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const u64 a = rng() % (n - 1) + 1;
    const u64 b = rng() % (n - 1) + 1;
    out.emplace_back(a, b);
  }
  return out;
}

std::vector<ReportRow> verify_prime(OddPrime p, const VerifyOptions& options) {
  return PrimeVerifier(p, options).run();
}

VerifyResult run_verify(const VerifyOptions& options) {
  std::vector<OddPrime> primes;
  for (u64 q = std::max<u64>(options.pmin, 3); q <= options.pmax; ++q) {
    if (auto p = OddPrime::try_make(q)) primes.push_back(*p);
  }
  if (primes.empty()) throw std::invalid_argument("empty range");

  std::vector<std::vector<ReportRow>> per_prime(primes.size());
  parallel_for(primes.size(), options.jobs, [&](std::size_t i) {
    per_prime[i] = verify_prime(primes[i], options);
  });

  VerifyResult result;
  for (auto& rows : per_prime) {
    std::move(rows.begin(), rows.end(), std::back_inserter(result.rows));
  }
  result.summary = summarize(result.rows, options, primes.size());
  return result;
}

}  // namespace expsums
