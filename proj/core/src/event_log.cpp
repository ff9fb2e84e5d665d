#include "declmine/event_log.hpp"

#include "declmine/csv.hpp"
#include "declmine/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace declmine {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

unsigned days_in_month(std::int64_t year, unsigned month) {
    static constexpr unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[month - 1];
}

bool read_digits(std::string_view s, std::size_t& i, int count, std::int64_t& out) {
    out = 0;
    for (int k = 0; k < count; ++k) {
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
        out = out * 10 + (s[i] - '0');
        ++i;
    }
    return true;
}

} // namespace

Micros parse_timestamp(std::string_view text) {
    text = trim(text);
    if (text.empty())
        throw ParseError("empty timestamp");

    // Plain integer: epoch seconds.
    std::int64_t epoch_seconds = 0;
    if (parse_int(text, epoch_seconds))
        return epoch_seconds * 1'000'000;

    std::size_t i = 0;
    std::int64_t year, month, day, hour, minute, second;
    auto fail = [&]() -> ParseError {
        return ParseError("unparseable timestamp '" + std::string(text) + "'");
    };

    if (!read_digits(text, i, 4, year))
        throw fail();
    if (i >= text.size() || text[i] != '-')
        throw fail();
    ++i;
    if (!read_digits(text, i, 2, month))
        throw fail();
    if (i >= text.size() || text[i] != '-')
        throw fail();
    ++i;
    if (!read_digits(text, i, 2, day))
        throw fail();
    if (i >= text.size() || (text[i] != 'T' && text[i] != ' ' && text[i] != 't'))
        throw fail();
    ++i;
    if (!read_digits(text, i, 2, hour))
        throw fail();
    if (i >= text.size() || text[i] != ':')
        throw fail();
    ++i;
    if (!read_digits(text, i, 2, minute))
        throw fail();
    if (i >= text.size() || text[i] != ':')
        throw fail();
    ++i;
    if (!read_digits(text, i, 2, second))
        throw fail();

    std::int64_t micros = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        std::int64_t scale = 100'000;
        bool any = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (scale > 0)
                micros += (text[i] - '0') * scale;
            scale /= 10;
            any = true;
            ++i;
        }
        if (!any)
            throw fail();
    }

    std::int64_t offset_seconds = 0;
    if (i < text.size()) {
        char c = text[i];
        if (c == 'Z' || c == 'z') {
            ++i;
        } else if (c == '+' || c == '-') {
            int sign = c == '-' ? -1 : 1;
            ++i;
            std::int64_t oh, om = 0;
            if (!read_digits(text, i, 2, oh))
                throw fail();
            if (i < text.size() && text[i] == ':')
                ++i;
            if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                if (!read_digits(text, i, 2, om))
                    throw fail();
            }
            offset_seconds = sign * (oh * 3600 + om * 60);
        }
    }
    if (i != text.size())
        throw fail();

    if (month < 1 || month > 12 || day < 1 ||
        day > days_in_month(year, static_cast<unsigned>(month)) || hour > 23 ||
        minute > 59 || second > 59)
        throw fail();

    std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    std::int64_t utc_seconds = days * 86400 + hour * 3600 + minute * 60 + second - offset_seconds;
    return utc_seconds * 1'000'000 + micros;
}

std::string format_timestamp(Micros value) {
    std::int64_t seconds = value / 1'000'000;
    std::int64_t micros = value % 1'000'000;
    if (micros < 0) {
        micros += 1'000'000;
        seconds -= 1;
    }
    std::int64_t days = seconds / 86400;
    std::int64_t rem = seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    std::int64_t year;
    unsigned month, day;
    civil_from_days(days, year, month, day);

    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lld",
                  static_cast<long long>(year), month, day,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem % 3600) / 60),
                  static_cast<long long>(rem % 60));
    std::string out(buf);
    if (micros != 0) {
        std::snprintf(buf, sizeof(buf), ".%06lld", static_cast<long long>(micros));
        std::string frac(buf);
        while (frac.back() == '0')
            frac.pop_back();
        out += frac;
    }
    out.push_back('Z');
    return out;
}

std::optional<std::uint32_t> EventLog::activity_id(std::string_view activity) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), activity);
    if (it == alphabet_.end() || *it != activity)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - alphabet_.begin());
}

std::optional<std::uint32_t> EventLog::resource_id(std::string_view resource) const {
    auto it = std::lower_bound(identities_.begin(), identities_.end(), resource);
    if (it == identities_.end() || *it != resource)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - identities_.begin());
}

const Trace* EventLog::find_trace(std::string_view trace_id) const {
    auto it = trace_lookup_.find(std::string(trace_id));
    if (it == trace_lookup_.end())
        return nullptr;
    return &traces_[it->second];
}

EventLog parse_event_log(std::string_view csv_text, const LogCsvSchema& schema) {
    auto records = parse_csv(csv_text);
    if (records.empty())
        throw ValidationError("event log is empty");

    const auto& header = records.front().fields;
    auto column = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (std::string(trim(header[i])) == name)
                return i;
        }
        throw ParseError("header does not name column '" + name + "'", records.front().line);
    };
    const std::size_t col_event = column(schema.event_id);
    const std::size_t col_trace = column(schema.trace_id);
    const std::size_t col_activity = column(schema.activity);
    const std::size_t col_time = column(schema.timestamp);
    const std::size_t col_resource = column(schema.resource);

    struct Row {
        Event event;
        std::string trace_id;
        std::size_t file_pos;
    };
    std::vector<Row> rows;
    rows.reserve(records.size() - 1);
    std::unordered_set<std::string> seen_ids;

    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(rec.fields.size()),
                             rec.line);
        Row row;
        row.event.event_id = std::string(trim(rec.fields[col_event]));
        row.trace_id = std::string(trim(rec.fields[col_trace]));
        row.event.activity = std::string(trim(rec.fields[col_activity]));
        row.event.resource = std::string(trim(rec.fields[col_resource]));
        try {
            row.event.timestamp = parse_timestamp(rec.fields[col_time]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), rec.line);
        }
        if (row.event.event_id.empty())
            throw ValidationError("empty event_id (line " + std::to_string(rec.line) + ")");
        if (row.trace_id.empty())
            throw ValidationError("empty trace_id (line " + std::to_string(rec.line) + ")");
        if (row.event.activity.empty())
            throw ValidationError("empty activity (line " + std::to_string(rec.line) + ")");
        if (row.event.resource.empty())
            throw ValidationError("empty resource (line " + std::to_string(rec.line) + ")");
        if (!seen_ids.insert(row.event.event_id).second)
            throw ValidationError("duplicate event_id '" + row.event.event_id + "' (line " +
                                  std::to_string(rec.line) + ")");
        row.file_pos = r;
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw ValidationError("event log contains no events");

    // Group rows by trace in order of first appearance.
    EventLog log;
    std::vector<std::vector<Row>> grouped;
    std::vector<std::string> trace_ids;
    for (auto& row : rows) {
        auto [it, inserted] = log.trace_lookup_.try_emplace(row.trace_id, grouped.size());
        if (inserted) {
            grouped.emplace_back();
            trace_ids.push_back(row.trace_id);
        }
        grouped[it->second].push_back(std::move(row));
    }

    // Canonical per-trace order plus the interning tables.
    std::vector<std::string> alphabet;
    std::vector<std::string> identities;
    for (auto& group : grouped) {
        std::stable_sort(group.begin(), group.end(), [](const Row& a, const Row& b) {
            if (a.event.timestamp != b.event.timestamp)
                return a.event.timestamp < b.event.timestamp;
            return a.file_pos < b.file_pos;
        });
        for (const auto& row : group) {
            alphabet.push_back(row.event.activity);
            identities.push_back(row.event.resource);
        }
    }
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    std::sort(identities.begin(), identities.end());
    identities.erase(std::unique(identities.begin(), identities.end()), identities.end());
    log.alphabet_ = std::move(alphabet);
    log.identities_ = std::move(identities);

    log.traces_.reserve(grouped.size());
    for (std::size_t t = 0; t < grouped.size(); ++t) {
        std::vector<Event> events;
        events.reserve(grouped[t].size());
        for (auto& row : grouped[t]) {
            row.event.activity_id = *log.activity_id(row.event.activity);
            row.event.resource_id = *log.resource_id(row.event.resource);
            log.event_count_ += 1;
            events.push_back(std::move(row.event));
        }
        log.traces_.emplace_back(std::move(trace_ids[t]), std::move(events));
    }
    return log;
}

EventLog parse_event_log_file(const std::filesystem::path& path, const LogCsvSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_event_log(buffer.str(), schema);
}

std::string write_event_log(const EventLog& log, const LogCsvSchema& schema) {
    std::string out;
    append_csv_row(out, std::array<std::string, 5>{schema.event_id, schema.trace_id,
                                                   schema.activity, schema.timestamp,
                                                   schema.resource});
    for (const auto& trace : log.traces()) {
        for (const auto& event : trace.events()) {
            append_csv_row(out, std::array<std::string, 5>{event.event_id, trace.id(),
                                                           event.activity,
                                                           format_timestamp(event.timestamp),
                                                           event.resource});
        }
    }
    return out;
}

std::vector<std::string> activity_alphabet(const EventLog& log) {
    return log.alphabet();
}

std::span<const std::uint32_t> OccurrenceIndex::positions(std::string_view trace_id,
                                                          std::string_view activity) const {
    if (!log_)
        return {};
    const Trace* trace = log_->find_trace(trace_id);
    if (!trace)
        return {};
    auto activity_id = log_->activity_id(activity);
    if (!activity_id)
        return {};
    return positions(static_cast<std::size_t>(trace - log_->traces().data()), *activity_id);
}

void OccurrenceIndex::corrupt_for_testing() {
    for (auto& per_trace : positions_) {
        for (auto& list : per_trace) {
            if (!list.empty()) {
                list.pop_back();
                --total_positions_;
                return;
            }
        }
    }
}

OccurrenceIndex build_occurrence_index(const EventLog& log) {
    OccurrenceIndex index;
    index.log_ = &log;
    index.positions_.resize(log.traces().size());
    const std::size_t alphabet_size = log.alphabet().size();
    for (std::size_t t = 0; t < log.traces().size(); ++t) {
        auto& per_trace = index.positions_[t];
        per_trace.resize(alphabet_size);
        const auto& events = log.traces()[t].events();
        for (std::uint32_t pos = 0; pos < events.size(); ++pos) {
            per_trace[events[pos].activity_id].push_back(pos);
            ++index.total_positions_;
        }
    }
    return index;
}

} // namespace declmine
