#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace declmine {

/// Column names of the event-log CSV header. Defaults follow the tool's own
/// format; remap to ingest tables that use e.g. Task/Instance/Time/Resource
/// or ActivityID/TraceID/Time/Identity.
struct LogCsvSchema {
    std::string event_id = "event_id";
    std::string trace_id = "trace_id";
    std::string activity = "activity";
    std::string timestamp = "timestamp";
    std::string resource = "resource";
};

/// Microseconds since the Unix epoch, UTC.
using Micros = std::int64_t;

/// Parses ISO-8601 ("2020-01-31T08:15:00", optional fractional seconds and
/// Z/±HH:MM offset) or a plain integer (epoch seconds). Throws ParseError.
Micros parse_timestamp(std::string_view text);
std::string format_timestamp(Micros value); // ISO-8601 with trailing Z

struct Event {
    std::string event_id;
    std::string activity;
    std::string resource;
    Micros timestamp = 0;
    std::uint32_t activity_id = 0; // index into EventLog::alphabet()
    std::uint32_t resource_id = 0; // index into EventLog::identities()

    bool operator==(const Event&) const = default;
};

/// Events of one process instance in canonical order: timestamp ascending,
/// original file position breaking ties.
class Trace {
public:
    Trace(std::string id, std::vector<Event> events)
        : id_(std::move(id)), events_(std::move(events)) {}

    const std::string& id() const { return id_; }
    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    bool operator==(const Trace&) const = default;

private:
    std::string id_;
    std::vector<Event> events_;
};

/// Immutable, trace-partitioned view of a log. Traces keep their order of
/// first appearance in the source; alphabet and identities are sorted.
class EventLog {
public:
    const std::vector<Trace>& traces() const { return traces_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<std::string>& identities() const { return identities_; }
    std::size_t event_count() const { return event_count_; }

    std::optional<std::uint32_t> activity_id(std::string_view activity) const;
    std::optional<std::uint32_t> resource_id(std::string_view resource) const;
    const Trace* find_trace(std::string_view trace_id) const;

    bool operator==(const EventLog& other) const {
        return traces_ == other.traces_;
    }

private:
    friend EventLog parse_event_log(std::string_view, const LogCsvSchema&);

    std::vector<Trace> traces_;
    std::vector<std::string> alphabet_;
    std::vector<std::string> identities_;
    std::unordered_map<std::string, std::size_t> trace_lookup_;
    std::size_t event_count_ = 0;
};

/// Parses a UTF-8 CSV event log. Throws ParseError (malformed row, bad
/// timestamp; carries the line number) or ValidationError (duplicate
/// event id, empty log, empty activity/resource).
EventLog parse_event_log(std::string_view csv_text, const LogCsvSchema& schema = {});
EventLog parse_event_log_file(const std::filesystem::path& path, const LogCsvSchema& schema = {});

/// Canonical CSV serialization (default schema header, canonical event
/// order). parse(write(log)) == log.
std::string write_event_log(const EventLog& log, const LogCsvSchema& schema = {});

/// Distinct activities in lexicographic order.
std::vector<std::string> activity_alphabet(const EventLog& log);

/// Per (trace, activity): ascending 0-based positions of that activity's
/// events within the trace. Immutable after construction.
class OccurrenceIndex {
public:
    /// Positions for (trace index, activity id); empty span when the
    /// activity does not occur in the trace.
    std::span<const std::uint32_t> positions(std::size_t trace_idx, std::uint32_t activity_id) const {
        const auto& per_trace = positions_[trace_idx];
        if (activity_id >= per_trace.size())
            return {};
        return per_trace[activity_id];
    }

    /// String-keyed lookup; empty span when the key is absent.
    std::span<const std::uint32_t> positions(std::string_view trace_id, std::string_view activity) const;

    std::size_t trace_count() const { return positions_.size(); }
    std::size_t total_positions() const { return total_positions_; }

    /// Fault-injection hook used by `validate --corrupt-index`: drops one
    /// indexed position so differential checks must report a mismatch.
    void corrupt_for_testing();

private:
    friend OccurrenceIndex build_occurrence_index(const EventLog&);

    const EventLog* log_ = nullptr;
    std::vector<std::vector<std::vector<std::uint32_t>>> positions_;
    std::size_t total_positions_ = 0;
};

OccurrenceIndex build_occurrence_index(const EventLog& log);

} // namespace declmine
