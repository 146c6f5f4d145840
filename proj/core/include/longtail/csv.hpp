#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace longtail::csv {

/// One logical CSV record. `line` is the 1-based physical line on which the
/// record starts, which differs from the record ordinal once quoted fields
/// contain newlines.
struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Comma-separated reader with double-quote quoting ("" escapes a quote),
/// CRLF or LF line endings and embedded newlines inside quoted fields.
/// A UTF-8 byte-order mark at the start of the stream is skipped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next record; returns false at end of input. Blank lines are
  /// skipped. An unterminated quote at end of input yields the partial
  /// record with `unterminated_quote()` set.
  bool next(Record& out);

  bool unterminated_quote() const { return unterminated_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  bool at_start_ = true;
  bool unterminated_ = false;
};

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

}  // namespace longtail::csv
