#include "longtail/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <fmt/format.h>

#include "longtail/csv.hpp"
#include "longtail/error.hpp"

namespace longtail {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

constexpr std::size_t kMissing = static_cast<std::size_t>(-1);

std::size_t find_header(const std::vector<std::string>& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (iequals(trim(header[i]), trim(name))) return i;
  }
  return kMissing;
}

std::size_t find_any(const std::vector<std::string>& header, const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (auto i = find_header(header, n); i != kMissing) return i;
  }
  return kMissing;
}

bool is_required(Column c) {
  return c == Column::id || c == Column::created || c == Column::resolved || c == Column::summary;
}

std::optional<std::string> optional_cell(const std::string& cell) {
  auto t = trim(cell);
  if (t.empty()) return std::nullopt;
  return std::string(t);
}

}  // namespace

std::string_view column_key(Column c) {
  switch (c) {
    case Column::id: return "id";
    case Column::created: return "created";
    case Column::resolved: return "resolved";
    case Column::priority: return "priority";
    case Column::status: return "status";
    case Column::resolution: return "resolution";
    case Column::summary: return "summary";
  }
  return "?";
}

SchemaConfig::SchemaConfig() {
  auto& n = names;
  n[static_cast<std::size_t>(Column::id)] = {"Issue_id", "Issue ID", "Issue key", "Bug ID", "id", "key"};
  n[static_cast<std::size_t>(Column::created)] = {"Created", "Created_time", "creation_ts", "Opened"};
  n[static_cast<std::size_t>(Column::resolved)] = {"Resolved", "Resolved_time", "Resolution date"};
  n[static_cast<std::size_t>(Column::priority)] = {"Priority"};
  n[static_cast<std::size_t>(Column::status)] = {"Status"};
  n[static_cast<std::size_t>(Column::resolution)] = {"Resolution"};
  n[static_cast<std::size_t>(Column::summary)] = {"Summary", "Title", "short_desc"};
}

SchemaConfig SchemaConfig::from_stream(std::istream& in, std::string_view source) {
  SchemaConfig cfg;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';' || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InputError(fmt::format("{}:{}: expected key = value", source, lineno));
    const auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    if (value.empty()) throw InputError(fmt::format("{}:{}: empty value for '{}'", source, lineno, key));

    if (iequals(key, "duplicate_column")) {
      cfg.duplicate_column = std::string(value);
      continue;
    }
    bool known = false;
    for (auto c : kAllColumns) {
      if (iequals(key, column_key(c))) {
        cfg.set(c, std::string(value));
        known = true;
      }
    }
    if (!known) throw InputError(fmt::format("{}:{}: unknown schema key '{}'", source, lineno, key));
  }
  if (in.bad()) throw InputError(fmt::format("{}: read error", source));
  return cfg;
}

SchemaConfig SchemaConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open schema file '{}'", path.string()));
  return from_stream(in, path.string());
}

std::string format_diagnostic(std::string_view file, const Diagnostic& d) {
  return fmt::format("WARN {}:{}: {}", file, d.line, d.cause);
}

ParseResult parse_bug_reports(std::istream& csv_content, const SchemaConfig& schema) {
  if (!csv_content) throw InputError("input stream is not readable");
  csv::Reader reader(csv_content);
  csv::Record header;
  if (!reader.next(header)) {
    if (csv_content.bad()) throw InputError("read error");
    throw InputError("missing header row");
  }

  std::array<std::size_t, kAllColumns.size()> index{};
  std::vector<std::string> missing;
  for (auto c : kAllColumns) {
    const auto i = find_any(header.fields, schema.candidates(c));
    index[static_cast<std::size_t>(c)] = i;
    if (i == kMissing && is_required(c)) missing.emplace_back(column_key(c));
  }
  std::size_t dup_index = index[static_cast<std::size_t>(Column::resolution)];
  if (!schema.duplicate_column.empty()) {
    dup_index = find_header(header.fields, schema.duplicate_column);
    if (dup_index == kMissing) missing.push_back("duplicate_column (" + schema.duplicate_column + ")");
  }
  if (!missing.empty()) {
    std::string joined;
    for (const auto& m : missing) joined += (joined.empty() ? "" : ", ") + m;
    throw InputError("header is missing required columns: " + joined);
  }

  const auto at = [&](const csv::Record& r, Column c) -> const std::string* {
    const auto i = index[static_cast<std::size_t>(c)];
    return i == kMissing ? nullptr : &r.fields[i];
  };

  ParseResult result;
  csv::Record row;
  while (reader.next(row)) {
    ++result.data_rows;
    auto reject = [&](std::string cause) { result.diagnostics.push_back({row.line, std::move(cause)}); };

    if (reader.unterminated_quote()) {
      reject("unterminated quoted field");
      continue;
    }
    if (row.fields.size() != header.fields.size()) {
      reject(fmt::format("expected {} fields, found {}", header.fields.size(), row.fields.size()));
      continue;
    }
    BugReport report;
    report.line = row.line;
    report.id = std::string(trim(*at(row, Column::id)));
    if (report.id.empty()) {
      reject("empty issue id");
      continue;
    }
    const auto& created_cell = *at(row, Column::created);
    const auto created = parse_timestamp(created_cell);
    if (!created) {
      reject(fmt::format("unparseable created timestamp '{}'", trim(created_cell)));
      continue;
    }
    report.created = *created;
    const auto& resolved_cell = *at(row, Column::resolved);
    if (!trim(resolved_cell).empty()) {
      const auto resolved = parse_timestamp(resolved_cell);
      if (!resolved) {
        reject(fmt::format("unparseable resolved timestamp '{}'", trim(resolved_cell)));
        continue;
      }
      report.resolved = *resolved;
    }
    if (auto p = at(row, Column::priority)) report.priority = optional_cell(*p);
    if (auto s = at(row, Column::status)) report.status = optional_cell(*s);
    if (auto r = at(row, Column::resolution)) report.resolution = optional_cell(*r);
    report.summary = *at(row, Column::summary);
    if (dup_index != kMissing) report.duplicate_marker = std::string(trim(row.fields[dup_index]));
    result.reports.push_back(std::move(report));
  }
  if (csv_content.bad()) throw InputError("read error");
  return result;
}

ParseResult load_bug_reports(const std::filesystem::path& path, const SchemaConfig& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path.string()));
  return parse_bug_reports(in, schema);
}

std::optional<ResolutionRecord> compute_resolution(const BugReport& report,
                                                   std::vector<Diagnostic>* diagnostics) {
  if (!report.resolved) return std::nullopt;
  if (*report.resolved < report.created) {
    if (diagnostics) {
      diagnostics->push_back({report.line, fmt::format("bug '{}' resolved before it was created; excluded",
                                                       report.id)});
    }
    return std::nullopt;
  }
  constexpr double kMillisPerDay = 86'400'000.0;
  const auto elapsed = (*report.resolved - report.created).count();
  return ResolutionRecord{report.id, report.created, *report.resolved,
                          static_cast<double>(elapsed) / kMillisPerDay};
}

std::vector<ResolutionRecord> compute_resolutions(std::span<const BugReport> reports,
                                                  std::vector<Diagnostic>* diagnostics) {
  std::vector<ResolutionRecord> out;
  out.reserve(reports.size());
  for (const auto& r : reports) {
    if (auto rec = compute_resolution(r, diagnostics)) out.push_back(std::move(*rec));
  }
  return out;
}

bool DuplicateRule::matches(std::string_view marker) const {
  marker = trim(marker);
  if (literal.empty()) return !marker.empty();
  return iequals(marker, trim(literal));
}

double duplicate_rate_pct(std::size_t duplicates, std::size_t total) {
  if (total == 0) return 0.0;
  // tenths = floor((1000 * d) / t + 1/2) = floor((2000 * d + t) / (2 * t))
  const auto tenths = (2000 * static_cast<unsigned long long>(duplicates) + total) / (2 * total);
  return static_cast<double>(tenths) / 10.0;
}

RepoSummary dataset_summary(std::string project_name, std::span<const BugReport> reports,
                            const DuplicateRule& rule) {
  RepoSummary s;
  s.project = std::move(project_name);
  s.total_reports = reports.size();
  s.duplicates = static_cast<std::size_t>(std::count_if(
      reports.begin(), reports.end(), [&](const BugReport& r) { return rule.matches(r.duplicate_marker); }));
  s.duplicate_rate_pct = duplicate_rate_pct(s.duplicates, s.total_reports);
  return s;
}

}  // namespace longtail
