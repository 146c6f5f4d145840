#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace longtail {

/// UTC instant with millisecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses the timestamp spellings found in tracker exports:
///
///   2021-03-12T14:05:09Z, 2021-03-12T14:05:09.123+02:00, 2021-03-12T14:05:09+0200
///   2021-03-12 14:05:09 (optionally followed by an offset or " UTC")
///   2021-03-12T14:05, 2021-03-12
///   12/Mar/21 14:05, 12/Mar/21 2:05 PM, 12/Mar/2021 14:05   (Jira style)
///
/// Timestamps without an offset are taken as UTC. Returns nullopt for
/// anything else, including out-of-range calendar fields.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// ISO-8601 rendering in UTC, e.g. "2021-03-12T14:05:09Z" (milliseconds are
/// printed only when non-zero).
std::string format_timestamp(Timestamp ts);

/// Calendar month in UTC.
struct YearMonth {
  int year = 1970;
  unsigned month = 1;  // 1..12

  auto operator<=>(const YearMonth&) const = default;

  static YearMonth of(Timestamp ts);
  YearMonth next() const;
  /// "YYYY-MM"
  std::string to_string() const;
};

/// Fractional calendar year of an instant (2020-07-02 ~ 2020.5), used for
/// time axes.
double fractional_year(Timestamp ts);

}  // namespace longtail
