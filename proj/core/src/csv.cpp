#include "declmine/csv.hpp"

#include "declmine/errors.hpp"

namespace declmine {

std::vector<CsvRecord> parse_csv(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);

    std::vector<CsvRecord> records;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    while (i < n) {
        // Skip blank lines between records.
        if (text[i] == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') {
            ++line;
            i += 2;
            continue;
        }

        CsvRecord record;
        record.line = line;
        std::string field;
        bool in_quotes = false;
        bool record_done = false;

        while (i < n && !record_done) {
            char c = text[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < n && text[i + 1] == '"') {
                        field.push_back('"');
                        i += 2;
                    } else {
                        in_quotes = false;
                        ++i;
                    }
                } else {
                    if (c == '\n')
                        ++line;
                    field.push_back(c);
                    ++i;
                }
            } else {
                switch (c) {
                case '"':
                    if (!field.empty())
                        throw ParseError("unexpected quote inside unquoted field", record.line);
                    in_quotes = true;
                    ++i;
                    break;
                case ',':
                    record.fields.push_back(std::move(field));
                    field.clear();
                    ++i;
                    break;
                case '\r':
                    if (i + 1 < n && text[i + 1] == '\n') {
                        ++i;
                        break; // consumed with the '\n' next iteration
                    }
                    field.push_back(c);
                    ++i;
                    break;
                case '\n':
                    ++line;
                    ++i;
                    record_done = true;
                    break;
                default:
                    field.push_back(c);
                    ++i;
                    break;
                }
            }
        }
        if (in_quotes)
            throw ParseError("unterminated quoted field", record.line);
        record.fields.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

std::string csv_field(std::string_view value) {
    bool needs_quotes = value.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes)
        return std::string(value);
    std::string out;
    out.reserve(value.size() + 2);
    out.push_back('"');
    for (char c : value) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void append_csv_row(std::string& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out.push_back(',');
        out += csv_field(fields[i]);
    }
    out.push_back('\n');
}

} // namespace declmine
