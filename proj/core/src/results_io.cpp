#include "declmine/results_io.hpp"

#include "declmine/csv.hpp"

#include <json.hpp>

#include <array>

namespace declmine {

namespace {

std::string field_or_empty(const std::optional<std::string>& value) {
    return value ? *value : std::string{};
}

} // namespace

std::string results_to_csv(std::span<const EvaluatedCandidate> results, bool audit) {
    std::string out;
    std::vector<std::string> header = {"template",        "task_a",
                                       "task_b",          "identity",
                                       "group",           "activation_count",
                                       "fulfilment_count", "condition_trace_fraction",
                                       "support",         "confidence"};
    if (audit)
        header.push_back("passed");
    append_csv_row(out, header);

    std::vector<std::string> row;
    for (const auto& result : results) {
        row.clear();
        row.emplace_back(template_name(result.candidate.template_id));
        row.push_back(field_or_empty(result.candidate.binding.task_a));
        row.push_back(field_or_empty(result.candidate.binding.task_b));
        row.push_back(field_or_empty(result.candidate.binding.identity));
        row.push_back(field_or_empty(result.candidate.binding.group));
        row.push_back(std::to_string(result.metrics.activation_count));
        row.push_back(std::to_string(result.metrics.fulfilment_count));
        row.push_back(to_decimal_string(result.metrics.condition_trace_fraction()));
        row.push_back(to_decimal_string(result.metrics.support()));
        row.push_back(to_decimal_string(result.metrics.confidence()));
        if (audit)
            row.push_back(result.passed ? "true" : "false");
        append_csv_row(out, row);
    }
    return out;
}

std::string results_to_json(std::span<const EvaluatedCandidate> results, bool audit) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& result : results) {
        nlohmann::ordered_json obj;
        obj["template"] = std::string(template_name(result.candidate.template_id));
        auto param = [](const std::optional<std::string>& value) -> nlohmann::ordered_json {
            if (value)
                return *value;
            return nullptr;
        };
        obj["task_a"] = param(result.candidate.binding.task_a);
        obj["task_b"] = param(result.candidate.binding.task_b);
        obj["identity"] = param(result.candidate.binding.identity);
        obj["group"] = param(result.candidate.binding.group);
        obj["activation_count"] = result.metrics.activation_count;
        obj["fulfilment_count"] = result.metrics.fulfilment_count;
        obj["condition_trace_fraction"] = to_decimal_string(result.metrics.condition_trace_fraction());
        obj["support"] = to_decimal_string(result.metrics.support());
        obj["confidence"] = to_decimal_string(result.metrics.confidence());
        if (audit)
            obj["passed"] = result.passed;
        array.push_back(std::move(obj));
    }
    return array.dump(2) + "\n";
}

} // namespace declmine
