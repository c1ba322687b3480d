#include "expsums/report.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace expsums {

namespace {

constexpr std::string_view kCsvHeader =
    "p,kind,params,oracle_re,oracle_im,n_candidates,resolved_index,"
    "discrepancy,status";

std::string csv_schema_line() {
  return fmt::format("# expsums-report format=csv schema={}",
                     kReportSchemaVersion);
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("malformed number: " + s);
  return v;
}

u64 parse_u64(const std::string& s) {
  u64 v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("malformed integer: " + s);
  }
  return v;
}

Status parse_status_or_throw(const std::string& s) {
  const auto st = parse_status(s);
  if (!st) throw std::runtime_error("unknown status: " + s);
  return *st;
}

}  // namespace

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::ok: return "OK";
    case Status::unresolved: return "UNRESOLVED";
    case Status::formula_mismatch: return "FORMULA_MISMATCH";
    case Status::skipped: return "SKIPPED";
  }
  return "?";
}

std::optional<Status> parse_status(std::string_view s) noexcept {
  for (auto st : {Status::ok, Status::unresolved, Status::formula_mismatch,
                  Status::skipped}) {
    if (s == to_string(st)) return st;
  }
  return std::nullopt;
}

Status status_of(const EvalReport& report) noexcept {
  if (report.qualifying == 1) return Status::ok;
  if (report.qualifying > 1) return Status::unresolved;
  return Status::formula_mismatch;
}

ReportRow make_row(u64 p, std::string kind, std::string params,
                   const EvalReport& report) {
  ReportRow row;
  row.p = p;
  row.kind = std::move(kind);
  row.params = std::move(params);
  row.oracle = report.oracle_value;
  row.candidates = report.candidates.values;
  row.n_candidates = row.candidates.size();
  row.resolved_index = report.sign_choice;
  row.discrepancy = report.discrepancy;
  row.status = status_of(report);
  return row;
}

void StatusCounts::add(Status s) noexcept {
  switch (s) {
    case Status::ok: ++ok; break;
    case Status::unresolved: ++unresolved; break;
    case Status::formula_mismatch: ++formula_mismatch; break;
    case Status::skipped: ++skipped; break;
  }
}

StatusCounts count_statuses(std::span<const ReportRow> rows) noexcept {
  StatusCounts c;
  for (const auto& r : rows) c.add(r.status);
  return c;
}

std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "table") return ReportFormat::table;
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  return std::nullopt;
}

void write_table(std::ostream& os, std::span<const ReportRow> rows) {
  os << fmt::format("{:>7}  {:<18} {:<22} {:>24}  {:>4} {:>4}  {:>10}  {}\n",
                    "p", "kind", "params", "oracle", "cand", "idx",
                    "discrep", "status");
  for (const auto& r : rows) {
    const std::string value =
        fmt::format("{:.10f}{:+.10f}i", r.oracle.real(), r.oracle.imag());
    const std::string idx =
        r.resolved_index ? std::to_string(*r.resolved_index) : "-";
    os << fmt::format("{:>7}  {:<18} {:<22} {:>24}  {:>4} {:>4}  {:>10.3e}  {}\n",
                      r.p, r.kind, r.params, value, r.n_candidates, idx,
                      r.discrepancy, to_string(r.status));
  }
}

void write_csv(std::ostream& os, std::span<const ReportRow> rows,
               std::span<const ReportNote> notes) {
  os << csv_schema_line() << '\n' << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << fmt::format("{},{},{},{},{},{},{},{},{}\n", r.p, r.kind, r.params,
                      r.oracle.real(), r.oracle.imag(), r.n_candidates,
                      r.resolved_index ? std::to_string(*r.resolved_index) : "",
                      r.discrepancy, to_string(r.status));
  }
  for (const auto& n : notes) os << "# " << n.key << ": " << n.value << '\n';
}

void write_json(std::ostream& os, std::span<const ReportRow> rows,
                std::span<const ReportNote> notes) {
  using nlohmann::json;
  json doc;
  doc["format"] = "expsums-report";
  doc["schema"] = kReportSchemaVersion;
  json out_rows = json::array();
  for (const auto& r : rows) {
    json cands = json::array();
    for (const auto& c : r.candidates) cands.push_back({c.real(), c.imag()});
    out_rows.push_back({
        {"p", r.p},
        {"kind", r.kind},
        {"params", r.params},
        {"oracle_re", r.oracle.real()},
        {"oracle_im", r.oracle.imag()},
        {"candidates", std::move(cands)},
        {"n_candidates", r.n_candidates},
        {"resolved_index",
         r.resolved_index ? json(*r.resolved_index) : json(nullptr)},
        {"discrepancy", r.discrepancy},
        {"status", to_string(r.status)},
    });
  }
  doc["rows"] = std::move(out_rows);
  json out_notes = json::object();
  for (const auto& n : notes) out_notes[n.key] = n.value;
  doc["notes"] = std::move(out_notes);
  os << doc.dump(2) << '\n';
}

void write_report(std::ostream& os, ReportFormat format,
                  std::span<const ReportRow> rows,
                  std::span<const ReportNote> notes) {
  switch (format) {
    case ReportFormat::table:
      write_table(os, rows);
      for (const auto& n : notes) os << n.key << ": " << n.value << '\n';
      return;
    case ReportFormat::csv: write_csv(os, rows, notes); return;
    case ReportFormat::json: write_json(os, rows, notes); return;
  }
}

std::vector<ReportRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_schema_line()) {
    throw std::runtime_error("missing or unsupported CSV schema header");
  }
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw std::runtime_error("unexpected CSV column header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw std::runtime_error("CSV row has " + std::to_string(f.size()) +
                               " fields, expected 9");
    }
    ReportRow r;
    r.p = parse_u64(f[0]);
    r.kind = f[1];
    r.params = f[2];
    r.oracle = {parse_double(f[3]), parse_double(f[4])};
    r.n_candidates = parse_u64(f[5]);
    if (!f[6].empty()) r.resolved_index = parse_u64(f[6]);
    r.discrepancy = parse_double(f[7]);
    r.status = parse_status_or_throw(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> read_json(std::istream& is) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON report: ") + e.what());
  }
  if (doc.value("format", "") != "expsums-report" ||
      doc.value("schema", 0) != kReportSchemaVersion) {
    throw std::runtime_error("missing or unsupported JSON schema header");
  }
  std::vector<ReportRow> rows;
  try {
    for (const auto& j : doc.at("rows")) {
      ReportRow r;
      r.p = j.at("p").get<u64>();
      r.kind = j.at("kind").get<std::string>();
      r.params = j.at("params").get<std::string>();
      r.oracle = {j.at("oracle_re").get<double>(),
                  j.at("oracle_im").get<double>()};
      for (const auto& c : j.at("candidates")) {
        r.candidates.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      }
      r.n_candidates = j.at("n_candidates").get<std::size_t>();
      if (!j.at("resolved_index").is_null()) {
        r.resolved_index = j.at("resolved_index").get<std::size_t>();
      }
      const auto& d = j.at("discrepancy");
      r.discrepancy = d.is_null() ? std::numeric_limits<double>::infinity()
                                  : d.get<double>();
      r.status = parse_status_or_throw(j.at("status").get<std::string>());
      rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON row: ") + e.what());
  }
  return rows;
}

}  // namespace expsums
