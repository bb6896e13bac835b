#include "cinerank/csv.hpp"

#include <utility>

#include "cinerank/error.hpp"

namespace cinerank::csv {

Reader::Reader(std::istream& in, std::string source_name)
    : in_(in), source_name_(std::move(source_name)) {}

std::optional<Record> Reader::next() {
  if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;

  Record record;
  record.line = line_;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;

  for (;;) {
    const int c = in_.get();
    if (c == std::char_traits<char>::eof()) {
      if (in_quotes) {
        throw DataError(source_name_ + ": unterminated quoted field starting at line " +
                        std::to_string(record.line));
      }
      record.fields.push_back(std::move(field));
      return record;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field.empty() && !field_was_quoted) {
          in_quotes = true;
          field_was_quoted = true;
        } else {
          field.push_back(ch);
        }
        break;
      case ',':
        record.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        break;
      case '\r':
        if (in_.peek() == '\n') break;
        [[fallthrough]];
      case '\n':
        ++line_;
        record.fields.push_back(std::move(field));
        return record;
      default:
        field.push_back(ch);
    }
  }
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace cinerank::csv
