#pragma once

#include "declmine/rational.hpp"
#include "declmine/templates.hpp"

#include <span>
#include <string>
#include <vector>

namespace declmine {

/// Table and column identifiers to substitute into the emitted queries.
/// Defaults mirror the published listings.
struct SchemaConfig {
    std::string log_table = "Log";
    std::string task_column = "Task";
    std::string instance_column = "Instance";
    std::string time_column = "Time";
    std::string resource_column = "Resource";
    std::string relation_table = "Relation";
    std::string relation_resource_column = "Resource";
    std::string relation_type_column = "RelationType";
    std::string relation_group_column = "Group";
};

/// `Verbatim` reproduces each published query token for token, including
/// its known defects; `Corrected` applies the documented minimal fixes and
/// lists them in leading comment lines.
enum class EmitMode { Verbatim, Corrected };

struct CorrectionNote {
    TemplateId template_id;
    std::string description;
};

/// The discovery query for one template. Throws std::invalid_argument on
/// identifiers that are not plain SQL identifiers or thresholds outside
/// [0,1]. Deterministic: equal inputs yield byte-identical text.
std::string emit_sql(TemplateId id, const SchemaConfig& schema, const Rational& min_support,
                     const Rational& min_confidence, EmitMode mode);

/// The queries of `templates` joined by UNION in template order. When the
/// set mixes parameter arities, queries with fewer parameter columns are
/// padded with empty-string literals so every arm has the same shape.
/// Correction comments (corrected mode) are hoisted above the first arm.
std::string emit_union(std::span<const TemplateId> templates, const SchemaConfig& schema,
                       const Rational& min_support, const Rational& min_confidence, EmitMode mode);

/// The corrections `Corrected` mode applies for the template (empty for
/// templates whose listing needs none).
std::vector<CorrectionNote> correction_notes(TemplateId id);

} // namespace declmine
