#include "doctest.h"

#include <sstream>

#include "brute_force.hpp"
#include "expsums/report.hpp"
#include "expsums/sweep.hpp"

using namespace expsums;

namespace {

std::vector<ReportRow> sample_rows() {
  ReportRow a;
  a.p = 13;
  a.kind = "t2_theorem1";
  a.params = "d=2;s=1";
  a.oracle = {1.0 / 3.0, 2.0896632138256309};
  a.candidates = {{0, 2.0896632138256309}, {0, -2.0896632138256309}};
  a.n_candidates = 2;
  a.resolved_index = 0;
  a.discrepancy = 4.440892098500626e-16;
  a.status = Status::ok;

  ReportRow b;
  b.p = 17;
  b.kind = "t4_theorem4_a4";
  b.params = "d=4;s=1";
  b.oracle = {6.7216309595284305, -1e-300};
  b.candidates = {{0, 6.55}, {0, -6.55}};
  b.n_candidates = 2;
  b.discrepancy = 9.39;
  b.status = Status::formula_mismatch;
  return {a, b};
}

void check_same(const ReportRow& x, const ReportRow& y, bool with_candidates) {
  CHECK(x.p == y.p);
  CHECK(x.kind == y.kind);
  CHECK(x.params == y.params);
  CHECK(x.oracle == y.oracle);  // shortest round-trip formatting is exact
  CHECK(x.n_candidates == y.n_candidates);
  CHECK(x.resolved_index == y.resolved_index);
  CHECK(x.discrepancy == y.discrepancy);
  CHECK(x.status == y.status);
  if (with_candidates) CHECK(x.candidates == y.candidates);
}

}  // namespace

TEST_CASE("status names") {
  for (Status s : {Status::ok, Status::unresolved, Status::formula_mismatch,
                   Status::skipped}) {
    CHECK(parse_status(to_string(s)) == s);
  }
  CHECK(to_string(Status::formula_mismatch) == "FORMULA_MISMATCH");
  CHECK_FALSE(parse_status("ok"));
}

TEST_CASE("status_of") {
  EvalReport r{};
  r.qualifying = 1;
  CHECK(status_of(r) == Status::ok);
  r.qualifying = 2;
  CHECK(status_of(r) == Status::unresolved);
  r.qualifying = 0;
  CHECK(status_of(r) == Status::formula_mismatch);
}

TEST_CASE("CSV round trip") {
  const auto rows = sample_rows();
  std::stringstream ss;
  const std::vector<ReportNote> notes{{"primes", "2"}};
  write_csv(ss, rows, notes);
  const std::string text = ss.str();
  CHECK(text.starts_with("# expsums-report format=csv schema=1\n"
                         "p,kind,params,oracle_re,oracle_im,n_candidates,"
                         "resolved_index,discrepancy,status\n"));
  CHECK(text.find("# primes: 2") != std::string::npos);
  const auto back = read_csv(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) check_same(rows[i], back[i], false);
}

TEST_CASE("JSON round trip") {
  const auto rows = sample_rows();
  std::stringstream ss;
  write_json(ss, rows);
  const auto back = read_json(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) check_same(rows[i], back[i], true);
}

TEST_CASE("readers reject foreign input") {
  std::stringstream no_header("p,kind\n13,x\n");
  CHECK_THROWS_AS((void)read_csv(no_header), std::runtime_error);
  std::stringstream future("# expsums-report format=csv schema=2\n");
  CHECK_THROWS_AS((void)read_csv(future), std::runtime_error);
  std::stringstream short_row(
      "# expsums-report format=csv schema=1\n"
      "p,kind,params,oracle_re,oracle_im,n_candidates,resolved_index,discrepancy,status\n"
      "13,x,y,1\n");
  CHECK_THROWS_AS((void)read_csv(short_row), std::runtime_error);
  std::stringstream wrong_json(R"({"format":"other","schema":1,"rows":[]})");
  CHECK_THROWS_AS((void)read_json(wrong_json), std::runtime_error);
  std::stringstream garbage("{");
  CHECK_THROWS_AS((void)read_json(garbage), std::runtime_error);
}

TEST_CASE("parse_check and parse_report_format") {
  for (Check c : kAllChecks) CHECK(parse_check(to_string(c)) == c);
  CHECK(parse_check("cor3") == Check::corollary3);
  CHECK_FALSE(parse_check("t9"));
  CHECK(parse_report_format("json") == ReportFormat::json);
  CHECK_FALSE(parse_report_format("xml"));
  CHECK(is_hard_invariant(Check::identity));
  CHECK_FALSE(is_hard_invariant(Check::t4));
}

TEST_CASE("sample_pairs") {
  const auto pairs = sample_pairs(OddPrime(101), 2002, 10);
  REQUIRE(pairs.size() == 10);
  for (auto [a, b] : pairs) {
    CHECK(a % 101 != 0);
    CHECK(b % 101 != 0);
  }
  CHECK(pairs == sample_pairs(OddPrime(101), 2002, 10));
  CHECK(pairs != sample_pairs(OddPrime(101), 2003, 10));
}

TEST_CASE("run_verify") {
  VerifyOptions o;
  o.pmin = 3;
  o.pmax = 200;

  SUBCASE("empty range") {
    o.pmin = 2;
    o.pmax = 2;
    CHECK_THROWS_WITH_AS((void)run_verify(o), "empty range", std::invalid_argument);
    o.pmin = 24;
    o.pmax = 28;
    CHECK_THROWS_AS((void)run_verify(o), std::invalid_argument);
  }

  SUBCASE("hard invariants hold and rows are ordered") {
    o.jobs = 1;
    const auto serial = run_verify(o);
    CHECK(serial.summary.primes == brute::primes_below(201).size());
    CHECK_FALSE(serial.summary.hard_failure);
    for (const auto& [kind, counts] : serial.summary.by_kind) {
      if (kind == "td_identity" || kind == "vanishing" || kind == "decomposition" ||
          kind == "reduction" || kind == "t2_theorem1" || kind == "corollary3_upper") {
        CAPTURE(kind);
        CHECK(counts.formula_mismatch == 0);
        CHECK(counts.unresolved == 0);
      }
    }
    for (std::size_t i = 1; i < serial.rows.size(); ++i) {
      REQUIRE(serial.rows[i - 1].p <= serial.rows[i].p);
    }

    o.jobs = 4;
    const auto threaded = run_verify(o);
    REQUIRE(threaded.rows.size() == serial.rows.size());
    std::stringstream a, b;
    write_csv(a, serial.rows, serial.summary.notes());
    write_csv(b, threaded.rows, threaded.summary.notes());
    CHECK(a.str() == b.str());
  }

  SUBCASE("a shrunken tolerance trips the hard invariants") {
    o.checks = {Check::identity};
    o.tol_scale = 1e-12;
    CHECK(run_verify(o).summary.hard_failure);
  }

  SUBCASE("check selection") {
    o.checks = {Check::t2};
    const auto r = run_verify(o);
    for (const auto& row : r.rows) {
      REQUIRE(row.kind == "t2_theorem1");
      REQUIRE(row.p % 4 == 1);
    }
  }
}
