#pragma once

#include "declmine/templates.hpp"

#include <cstdint>
#include <string>

namespace declmine {

/// Synthetic event-log generator for property testing and benchmarks.
/// Output is a pure function of the config: the same seed yields a
/// byte-identical log on every platform (no library distributions, raw
/// engine draws only).
struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::size_t trace_count = 10;
    std::size_t alphabet_size = 6;  // activities a, b, c, ...
    std::size_t resource_count = 3; // identities i1, i2, ...
    std::size_t min_trace_length = 1;
    std::size_t max_trace_length = 10;

    /// Optionally plant a constraint with a target per-activation
    /// satisfaction rate. Supported: Response, ChainResponse.
    bool plant = false;
    TemplateId plant_template = TemplateId::Response;
    std::string plant_task_a = "a";
    std::string plant_task_b = "b";
    double plant_rate = 1.0;
};

/// Exact ground truth recorded while generating; the downstream oracle for
/// planted-constraint tests.
struct GeneratorBookkeeping {
    std::int64_t trace_count = 0;
    std::int64_t event_count = 0;
    std::int64_t distinct_activities = 0;
    // Planted-constraint truth (zero/absent when nothing was planted):
    std::int64_t activation_count = 0;
    std::int64_t fulfilment_count = 0;
    std::int64_t traces_with_condition = 0;
};

struct GeneratedLog {
    std::string csv; // ready to parse_event_log()
    GeneratorBookkeeping bookkeeping;
};

/// Throws std::invalid_argument on contradictory parameters (zero sizes,
/// min > max, planting into traces too short to hold an activation and its
/// witness, plant rate outside [0,1], unsupported plant template).
GeneratedLog generate_log(const GeneratorConfig& config);

/// Activity name used by generated logs for index `i` (a, b, ..., z,
/// act26, act27, ...).
std::string generator_activity_name(std::size_t i);

} // namespace declmine
