#include "longtail/timestamp.hpp"

#include <array>
#include <cctype>

#include <fmt/format.h>

namespace longtail {
namespace {

using namespace std::chrono;

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  // Reads between min_digits and max_digits decimal digits.
  bool digits(int min_digits, int max_digits, int& value, int* count = nullptr) {
    int n = 0;
    value = 0;
    while (n < max_digits && !done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      ++pos_;
      ++n;
    }
    if (count) *count = n;
    return n >= min_digits;
  }

  void skip_spaces() {
    while (!done() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  std::string_view rest() const { return s_.substr(std::min(pos_, s_.size())); }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

struct Fields {
  int year = 0, month = 0, day = 0;
  int hour = 0, minute = 0, second = 0, millis = 0;
  int offset_minutes = 0;
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// [:SS[.fff...]] after HH:MM has been read.
bool parse_seconds(Cursor& c, Fields& f) {
  if (!c.accept(':')) return true;
  if (!c.digits(2, 2, f.second)) return false;
  if (c.accept('.') || c.accept(',')) {
    int frac = 0, n = 0;
    if (!c.digits(1, 9, frac, &n)) return false;
    while (n < 3) {
      frac *= 10;
      ++n;
    }
    while (n > 3) {
      frac /= 10;
      --n;
    }
    f.millis = frac;
  }
  return true;
}

// Z | UTC | GMT | +HH[:MM] | +HHMM | -... ; the cursor may sit on spaces.
bool parse_offset(Cursor& c, Fields& f) {
  c.skip_spaces();
  if (c.done()) return true;
  if (c.accept('Z') || c.accept('z')) return c.done();
  const auto rest = c.rest();
  if (iequals(rest, "UTC") || iequals(rest, "GMT")) {
    c.advance(3);
    return true;
  }
  int sign = 0;
  if (c.accept('+'))
    sign = 1;
  else if (c.accept('-'))
    sign = -1;
  else
    return false;
  int hh = 0, mm = 0;
  if (!c.digits(2, 2, hh)) return false;
  if (c.accept(':')) {
    if (!c.digits(2, 2, mm)) return false;
  } else if (!c.done()) {
    if (!c.digits(2, 2, mm)) return false;
  }
  if (hh > 23 || mm > 59) return false;
  f.offset_minutes = sign * (hh * 60 + mm);
  return c.done();
}

bool parse_iso(std::string_view s, Fields& f) {
  Cursor c(s);
  if (!c.digits(4, 4, f.year) || !c.accept('-') || !c.digits(2, 2, f.month) || !c.accept('-') ||
      !c.digits(2, 2, f.day))
    return false;
  if (c.done()) return true;
  if (!(c.accept('T') || c.accept('t') || c.accept(' '))) return false;
  c.skip_spaces();
  if (!c.digits(2, 2, f.hour) || !c.accept(':') || !c.digits(2, 2, f.minute)) return false;
  if (!parse_seconds(c, f)) return false;
  return parse_offset(c, f);
}

constexpr std::array<std::string_view, 12> kMonthNames = {
    "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"};

// DD/Mon/YY HH:MM [AM|PM]  (Jira CSV export). Four-digit years accepted too.
bool parse_jira(std::string_view s, Fields& f) {
  Cursor c(s);
  if (!c.digits(1, 2, f.day) || !c.accept('/')) return false;
  const auto rest = c.rest();
  if (rest.size() < 3) return false;
  f.month = 0;
  for (std::size_t i = 0; i < kMonthNames.size(); ++i) {
    if (iequals(rest.substr(0, 3), kMonthNames[i])) f.month = static_cast<int>(i) + 1;
  }
  if (f.month == 0) return false;
  c.advance(3);
  if (!c.accept('/')) return false;
  int year = 0, ndigits = 0;
  if (!c.digits(2, 4, year, &ndigits) || ndigits == 3) return false;
  f.year = ndigits == 2 ? (year < 70 ? 2000 + year : 1900 + year) : year;
  c.skip_spaces();
  if (c.done()) return true;
  if (!c.digits(1, 2, f.hour) || !c.accept(':') || !c.digits(2, 2, f.minute)) return false;
  if (!parse_seconds(c, f)) return false;
  c.skip_spaces();
  const auto meridiem = c.rest();
  if (iequals(meridiem, "AM") || iequals(meridiem, "PM")) {
    if (f.hour < 1 || f.hour > 12) return false;
    const bool pm = iequals(meridiem, "PM");
    f.hour = f.hour % 12 + (pm ? 12 : 0);
    c.advance(2);
  }
  return parse_offset(c, f);
}

std::optional<Timestamp> to_timestamp(const Fields& f) {
  if (f.month < 1 || f.month > 12 || f.hour > 23 || f.minute > 59 || f.second > 60) return std::nullopt;
  const year_month_day ymd{year{f.year}, month{static_cast<unsigned>(f.month)},
                           day{static_cast<unsigned>(f.day)}};
  if (!ymd.ok()) return std::nullopt;
  Timestamp ts = time_point_cast<milliseconds>(sys_days{ymd}) + hours{f.hour} + minutes{f.minute} +
                 seconds{f.second} + milliseconds{f.millis};
  ts -= minutes{f.offset_minutes};
  return ts;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  const auto s = trim(text);
  if (s.empty()) return std::nullopt;
  Fields f;
  if (parse_iso(s, f)) return to_timestamp(f);
  f = Fields{};
  if (parse_jira(s, f)) return to_timestamp(f);
  return std::nullopt;
}

std::string format_timestamp(Timestamp ts) {
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const hh_mm_ss<milliseconds> tod{ts - day_point};
  auto out = fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}", static_cast<int>(ymd.year()),
                         static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                         tod.hours().count(), tod.minutes().count(), tod.seconds().count());
  if (tod.subseconds().count() != 0) out += fmt::format(".{:03}", tod.subseconds().count());
  out += 'Z';
  return out;
}

YearMonth YearMonth::of(Timestamp ts) {
  const year_month_day ymd{floor<days>(ts)};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())};
}

YearMonth YearMonth::next() const {
  return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

std::string YearMonth::to_string() const { return fmt::format("{:04}-{:02}", year, month); }

double fractional_year(Timestamp ts) {
  const year_month_day ymd{floor<days>(ts)};
  const auto y = ymd.year();
  const auto start = sys_days{y / January / 1};
  const auto end = sys_days{(y + years{1}) / January / 1};
  const auto span = duration<double>(end - start).count();
  const auto into = duration<double>(ts - time_point_cast<milliseconds>(start)).count();
  return static_cast<int>(y) + into / span;
}

}  // namespace longtail
