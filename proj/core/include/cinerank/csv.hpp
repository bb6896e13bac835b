#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cinerank::csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

/// Streaming RFC-4180 reader: comma separated, double-quote quoting with ""
/// escapes, quoted fields may span lines. CRLF and LF are both accepted.
class Reader {
 public:
  Reader(std::istream& in, std::string source_name);

  /// Next record, or nullopt at end of input. Throws DataError on an
  /// unterminated quoted field.
  std::optional<Record> next();

  const std::string& source_name() const { return source_name_; }

 private:
  std::istream& in_;
  std::string source_name_;
  std::size_t line_ = 1;
};

/// Quotes a field when it contains a comma, quote, or line break.
std::string quote(std::string_view field);

}  // namespace cinerank::csv
