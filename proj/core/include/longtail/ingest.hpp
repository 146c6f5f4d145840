#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "longtail/timestamp.hpp"

namespace longtail {

/// Logical columns of an issue-tracker export.
enum class Column { id, created, resolved, priority, status, resolution, summary };

inline constexpr std::array<Column, 7> kAllColumns = {Column::id,     Column::created,
                                                      Column::resolved, Column::priority,
                                                      Column::status, Column::resolution,
                                                      Column::summary};

std::string_view column_key(Column c);

/// Maps logical columns to header names. Each logical column carries a list
/// of candidate header names; the first one present in the file (compared
/// case-insensitively, surrounding whitespace ignored) is used.
///
/// The defaults follow the GitBugs per-project CSVs (`Issue_id`, `Created`,
/// `Resolved`, `Priority`, `Status`, `Resolution`, `Summary`) plus a few
/// common aliases from Jira and Bugzilla exports.
struct SchemaConfig {
  std::array<std::vector<std::string>, kAllColumns.size()> names;
  /// Header holding the duplicate marker. Empty means "the resolution column".
  std::string duplicate_column;

  SchemaConfig();

  const std::vector<std::string>& candidates(Column c) const {
    return names[static_cast<std::size_t>(c)];
  }
  /// Replaces the candidates of `c` with a single exact header name.
  void set(Column c, std::string header) { names[static_cast<std::size_t>(c)] = {std::move(header)}; }

  /// Reads `key = value` lines (keys: id, created, resolved, priority,
  /// status, resolution, summary, duplicate_column). Blank lines, `#` and
  /// `;` comments and `[section]` headers are ignored; values may be quoted.
  /// Keys not present keep their defaults. Throws InputError on unknown keys
  /// or malformed lines.
  static SchemaConfig from_stream(std::istream& in, std::string_view source = "<schema>");
  static SchemaConfig from_file(const std::filesystem::path& path);
};

/// One parsed issue-tracker row.
struct BugReport {
  std::string id;
  Timestamp created;
  std::optional<Timestamp> resolved;
  std::optional<std::string> priority;
  std::optional<std::string> status;
  std::optional<std::string> resolution;
  std::string summary;
  /// Raw value of the duplicate-marker column (empty when the cell is empty).
  std::string duplicate_marker;
  /// Physical line where the row starts.
  std::size_t line = 0;
};

struct Diagnostic {
  std::size_t line = 0;
  std::string cause;
};

/// "WARN <file>:<row>: <cause>"
std::string format_diagnostic(std::string_view file, const Diagnostic& d);

struct ParseResult {
  std::vector<BugReport> reports;
  std::vector<Diagnostic> diagnostics;
  std::size_t data_rows = 0;  // == reports.size() + diagnostics.size()
};

/// Parses a CSV export. Every data row yields either a BugReport or a
/// Diagnostic, in file order. Throws InputError when the header is missing
/// required columns (id, created, resolved, summary, and an explicitly
/// configured duplicate column) or the stream cannot be read.
ParseResult parse_bug_reports(std::istream& csv_content, const SchemaConfig& schema = {});
ParseResult load_bug_reports(const std::filesystem::path& path, const SchemaConfig& schema = {});

/// A resolved bug and its resolution time.
struct ResolutionRecord {
  std::string bug_id;
  Timestamp created;
  Timestamp resolved;
  double resolution_days = 0.0;
};

/// Resolution time in fractional days. Absent when the bug is unresolved or
/// when it was resolved before it was created; the latter also appends a
/// diagnostic to `diagnostics` when one is supplied.
std::optional<ResolutionRecord> compute_resolution(const BugReport& report,
                                                   std::vector<Diagnostic>* diagnostics = nullptr);

std::vector<ResolutionRecord> compute_resolutions(std::span<const BugReport> reports,
                                                  std::vector<Diagnostic>* diagnostics = nullptr);

/// Rule deciding whether a report counts as a duplicate: its marker equals
/// `literal` ignoring ASCII case. An empty literal matches any non-empty
/// marker, which suits link columns such as "Duplicated issue".
struct DuplicateRule {
  std::string literal = "Duplicate";

  bool matches(std::string_view marker) const;
};

struct RepoSummary {
  std::string project;
  std::size_t total_reports = 0;
  std::size_t duplicates = 0;
  /// Percentage rounded half-up to one decimal; 0.0 for an empty project.
  double duplicate_rate_pct = 0.0;
};

/// 100 * duplicates / total rounded half-up to one decimal, computed exactly
/// in integers.
double duplicate_rate_pct(std::size_t duplicates, std::size_t total);

RepoSummary dataset_summary(std::string project_name, std::span<const BugReport> reports,
                            const DuplicateRule& rule = {});

}  // namespace longtail
