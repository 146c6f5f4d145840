#include "longtail/csv.hpp"

namespace longtail::csv {

bool Reader::next(Record& out) {
  out.fields.clear();
  unterminated_ = false;

  if (at_start_) {
    at_start_ = false;
    if (in_.peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(in_.gcount() == 3 && bom[1] == '\xBB' && bom[2] == '\xBF')) {
        in_.clear();
        for (auto i = in_.gcount(); i > 0; --i) in_.unget();
      }
    }
  }

  int ch = in_.get();
  // Skip blank lines between records.
  while (ch == '\n' || ch == '\r') {
    if (ch == '\r' && in_.peek() == '\n') in_.get();
    ++line_;
    ch = in_.get();
  }
  if (ch == std::char_traits<char>::eof()) return false;

  out.line = line_;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  for (;; ch = in_.get()) {
    if (ch == std::char_traits<char>::eof()) {
      if (quoted) unterminated_ = true;
      out.fields.push_back(std::move(field));
      return true;
    }
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_was_quoted && field.empty()) {
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      out.fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in_.peek() == '\n') in_.get();
      ++line_;
      out.fields.push_back(std::move(field));
      return true;
    } else {
      field += c;
    }
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace longtail::csv
