#pragma once

#include "declmine/engine.hpp"

#include <span>
#include <string>

namespace declmine {

/// Result rows: template,task_a,task_b,identity,group,activation_count,
/// fulfilment_count,condition_trace_fraction,support,confidence. Unused
/// parameters stay empty; decimals carry nine significant digits. With
/// `audit` a trailing `passed` column is added and every candidate is
/// expected in the span, not just the passing ones.
std::string results_to_csv(std::span<const EvaluatedCandidate> results, bool audit = false);

/// Same records as a JSON array; unused parameters are explicit nulls so
/// the object schema is identical across templates.
std::string results_to_json(std::span<const EvaluatedCandidate> results, bool audit = false);

} // namespace declmine
