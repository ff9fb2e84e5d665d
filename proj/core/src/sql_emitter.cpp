#include "declmine/sql_emitter.hpp"

#include <cctype>
#include <stdexcept>

namespace declmine {

namespace {

#include "sql_templates.inc"

std::string_view template_sql(TemplateId id) {
    switch (id) {
    case TemplateId::Response: return kResponseSql;
    case TemplateId::AlternateResponse: return kAlternateResponseSql;
    case TemplateId::ChainResponse: return kChainResponseSql;
    case TemplateId::Precedence: return kPrecedenceSql;
    case TemplateId::AlternatePrecedence: return kAlternatePrecedenceSql;
    case TemplateId::ChainPrecedence: return kChainPrecedenceSql;
    case TemplateId::RespondedExistence: return kRespondedExistenceSql;
    case TemplateId::NotSuccession: return kNotSuccessionSql;
    case TemplateId::DirectAllocation: return kDirectAllocationSql;
    case TemplateId::RoleBasedAllocation: return kRoleBasedAllocationSql;
    case TemplateId::BindingOfDuties: return kBindingOfDutiesSql;
    case TemplateId::SeparationOfDuties: return kSeparationOfDutiesSql;
    case TemplateId::RoleBasedResponse: return kRoleBasedResponseSql;
    case TemplateId::RoleBasedPrecedence: return kRoleBasedPrecedenceSql;
    }
    throw std::logic_error("unhandled template");
}

/// Number of parameter columns in the query's SELECT list.
int param_columns(TemplateId id) {
    return param_kind(id) == ParamKind::ActivityPairGroup ? 3 : 2;
}

struct Correction {
    std::string_view before;
    std::string_view after;
    std::string_view note;
};

std::span<const Correction> corrections_for(TemplateId id) {
    // The published queries carry a handful of transcription defects; these
    // are the documented minimal repairs applied by EmitMode::Corrected.
    static const Correction response[] = {
        {"x.TaskA EXISTS (", "x.TaskA AND EXISTS (",
         "restored the AND between the activation filter and the EXISTS subquery"},
        {"b.{{TIME}}] > a.{{TIME}}]", "b.{{TIME}} > a.{{TIME}}",
         "removed the stray ']' brackets from the time comparison"},
    };
    static const Correction responded_existence[] = {
        {"WHERE a.{{TASK}} = x.TaskB AND EXISTS (SELECT * FROM {{LOG}} b WHERE b.{{TASK}} = x.TaskA",
         "WHERE a.{{TASK}} = x.TaskA AND EXISTS (SELECT * FROM {{LOG}} b WHERE b.{{TASK}} = x.TaskB",
         "activation filter moved to TaskA (the listing anchors it on TaskB)"},
    };
    static const Correction role_based_response[] = {
        {"InstanceFROM", "{{INSTANCE}} FROM",
         "separated the run-together 'InstanceFROM' in the confidence denominator"},
    };
    switch (id) {
    case TemplateId::Response: return response;
    case TemplateId::RespondedExistence: return responded_existence;
    case TemplateId::RoleBasedResponse: return role_based_response;
    default: return {};
    }
}

void replace_all(std::string& text, std::string_view needle, std::string_view replacement) {
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), replacement);
        pos += replacement.size();
    }
}

bool replace_once_or_more(std::string& text, std::string_view needle, std::string_view replacement) {
    if (text.find(needle) == std::string::npos)
        return false;
    replace_all(text, needle, replacement);
    return true;
}

bool is_sql_identifier(std::string_view name) {
    if (name.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(name.front())) && name.front() != '_')
        return false;
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    }
    return true;
}

void validate_schema(const SchemaConfig& schema) {
    const std::pair<std::string_view, const std::string*> identifiers[] = {
        {"log_table", &schema.log_table},
        {"task_column", &schema.task_column},
        {"instance_column", &schema.instance_column},
        {"time_column", &schema.time_column},
        {"resource_column", &schema.resource_column},
        {"relation_table", &schema.relation_table},
        {"relation_resource_column", &schema.relation_resource_column},
        {"relation_type_column", &schema.relation_type_column},
        {"relation_group_column", &schema.relation_group_column},
    };
    for (const auto& [name, value] : identifiers) {
        if (!is_sql_identifier(*value))
            throw std::invalid_argument("schema field " + std::string(name) +
                                        " is not a valid SQL identifier: '" + *value + "'");
    }
}

void validate_threshold(const Rational& value, std::string_view name) {
    if (value < Rational(0) || value > Rational(1))
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
}

std::string render(TemplateId id, const SchemaConfig& schema, const Rational& min_support,
                   const Rational& min_confidence, EmitMode mode, int pad_columns,
                   std::string* notes_out) {
    std::string text(template_sql(id));

    if (mode == EmitMode::Corrected) {
        for (const auto& correction : corrections_for(id)) {
            replace_once_or_more(text, correction.before, correction.after);
            if (notes_out) {
                notes_out->append("-- corrected (");
                notes_out->append(template_name(id));
                notes_out->append("): ");
                notes_out->append(correction.note);
                notes_out->push_back('\n');
            }
        }
    }

    std::string pad;
    for (int i = 0; i < pad_columns; ++i)
        pad += ", ''";
    replace_all(text, "{{PAD}}", pad);

    replace_all(text, "{{LOG}}", schema.log_table);
    replace_all(text, "{{TASK}}", schema.task_column);
    replace_all(text, "{{INSTANCE}}", schema.instance_column);
    replace_all(text, "{{TIME}}", schema.time_column);
    replace_all(text, "{{RES}}", schema.resource_column);
    replace_all(text, "{{RELTAB}}", schema.relation_table);
    replace_all(text, "{{RELRES}}", schema.relation_resource_column);
    replace_all(text, "{{RELTYPE}}", schema.relation_type_column);
    replace_all(text, "{{RELGROUP}}", schema.relation_group_column);
    replace_all(text, "{{MINSUP}}", to_decimal_string(min_support));
    replace_all(text, "{{MINCONF}}", to_decimal_string(min_confidence));
    return text;
}

} // namespace

std::string emit_sql(TemplateId id, const SchemaConfig& schema, const Rational& min_support,
                     const Rational& min_confidence, EmitMode mode) {
    validate_schema(schema);
    validate_threshold(min_support, "min_support");
    validate_threshold(min_confidence, "min_confidence");

    std::string notes;
    std::string query =
        render(id, schema, min_support, min_confidence, mode, 0, mode == EmitMode::Corrected ? &notes : nullptr);
    return notes + query + "\n";
}

std::string emit_union(std::span<const TemplateId> templates, const SchemaConfig& schema,
                       const Rational& min_support, const Rational& min_confidence,
                       EmitMode mode) {
    validate_schema(schema);
    validate_threshold(min_support, "min_support");
    validate_threshold(min_confidence, "min_confidence");
    if (templates.empty())
        throw std::invalid_argument("emit_union requires at least one template");

    int max_params = 0;
    for (TemplateId id : templates)
        max_params = std::max(max_params, param_columns(id));

    std::string notes;
    std::string body;
    for (std::size_t i = 0; i < templates.size(); ++i) {
        if (i)
            body += "UNION\n";
        body += render(templates[i], schema, min_support, min_confidence, mode,
                       max_params - param_columns(templates[i]),
                       mode == EmitMode::Corrected ? &notes : nullptr);
        body.push_back('\n');
    }
    return notes + body;
}

std::vector<CorrectionNote> correction_notes(TemplateId id) {
    std::vector<CorrectionNote> notes;
    for (const auto& correction : corrections_for(id))
        notes.push_back({id, std::string(correction.note)});
    return notes;
}

} // namespace declmine
