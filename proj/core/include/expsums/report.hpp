#pragma once

// Report rows shared by the sweep driver and the command-line tool, with
// CSV/JSON writers and the matching readers.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expsums/arith.hpp"
#include "expsums/closed_forms.hpp"

namespace expsums {

inline constexpr int kReportSchemaVersion = 1;

enum class Status { ok, unresolved, formula_mismatch, skipped };

[[nodiscard]] std::string_view to_string(Status s) noexcept;
[[nodiscard]] std::optional<Status> parse_status(std::string_view s) noexcept;

struct ReportRow {
  u64 p = 0;
  std::string kind;
  std::string params;
  Cx oracle;
  std::vector<Cx> candidates;  // not carried by the CSV format
  std::size_t n_candidates = 0;
  std::optional<std::size_t> resolved_index;
  double discrepancy = 0.0;
  Status status = Status::skipped;
};

/// OK for a unique match, UNRESOLVED when several candidates match,
/// FORMULA_MISMATCH when none does.
[[nodiscard]] Status status_of(const EvalReport& report) noexcept;

[[nodiscard]] ReportRow make_row(u64 p, std::string kind, std::string params,
                                 const EvalReport& report);

struct StatusCounts {
  std::size_t ok = 0;
  std::size_t unresolved = 0;
  std::size_t formula_mismatch = 0;
  std::size_t skipped = 0;

  void add(Status s) noexcept;
  [[nodiscard]] std::size_t total() const noexcept {
    return ok + unresolved + formula_mismatch + skipped;
  }
};

[[nodiscard]] StatusCounts count_statuses(std::span<const ReportRow> rows) noexcept;

enum class ReportFormat { table, json, csv };

[[nodiscard]] std::optional<ReportFormat> parse_report_format(std::string_view s);

/// Free-form key/value lines appended to a report (summary counts etc.).
struct ReportNote {
  std::string key;
  std::string value;
};

void write_table(std::ostream& os, std::span<const ReportRow> rows);
void write_csv(std::ostream& os, std::span<const ReportRow> rows,
               std::span<const ReportNote> notes = {});
void write_json(std::ostream& os, std::span<const ReportRow> rows,
                std::span<const ReportNote> notes = {});
void write_report(std::ostream& os, ReportFormat format,
                  std::span<const ReportRow> rows,
                  std::span<const ReportNote> notes = {});

/// Parse reports written by write_csv / write_json. Throw std::runtime_error
/// on a missing or unsupported schema header or a malformed row.
[[nodiscard]] std::vector<ReportRow> read_csv(std::istream& is);
[[nodiscard]] std::vector<ReportRow> read_json(std::istream& is);

}  // namespace expsums
