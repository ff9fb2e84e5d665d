#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace declmine {

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0; // 1-based line the record starts on
};

/// RFC 4180 reader: quoted fields may contain commas, quotes ("" escape) and
/// line breaks; accepts LF and CRLF; a missing final newline is fine.
/// Throws ParseError on an unterminated quote or stray quote inside an
/// unquoted field. Blank lines are skipped.
std::vector<CsvRecord> parse_csv(std::string_view text);

/// Quotes a field only when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);

void append_csv_row(std::string& out, std::span<const std::string> fields);

} // namespace declmine
