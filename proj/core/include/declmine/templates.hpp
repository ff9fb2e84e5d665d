#pragma once

#include "declmine/event_log.hpp"
#include "declmine/org_model.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace declmine {

/// The fourteen discoverable constraint templates, in emission order.
enum class TemplateId : int {
    Response,
    AlternateResponse,
    ChainResponse,
    Precedence,
    AlternatePrecedence,
    ChainPrecedence,
    RespondedExistence,
    NotSuccession,
    DirectAllocation,
    RoleBasedAllocation,
    BindingOfDuties,
    SeparationOfDuties,
    RoleBasedResponse,
    RoleBasedPrecedence,
};

inline constexpr std::array<TemplateId, 14> kAllTemplates = {
    TemplateId::Response,          TemplateId::AlternateResponse,
    TemplateId::ChainResponse,     TemplateId::Precedence,
    TemplateId::AlternatePrecedence, TemplateId::ChainPrecedence,
    TemplateId::RespondedExistence, TemplateId::NotSuccession,
    TemplateId::DirectAllocation,  TemplateId::RoleBasedAllocation,
    TemplateId::BindingOfDuties,   TemplateId::SeparationOfDuties,
    TemplateId::RoleBasedResponse, TemplateId::RoleBasedPrecedence,
};

/// Parameter shape of a template.
enum class ParamKind {
    ActivityPair,      // (task_a, task_b)
    ActivityIdentity,  // (task_a, identity)
    ActivityGroup,     // (task_a, group)
    ActivityPairGroup, // (task_a, task_b, group)
};

ParamKind param_kind(TemplateId id);
std::string_view template_name(TemplateId id);
std::optional<TemplateId> template_from_name(std::string_view name);

/// True for templates whose evaluation consults the organizational model.
bool needs_org_model(TemplateId id);

/// Relation type all role-based templates resolve group membership under.
inline constexpr std::string_view kRoleRelationType = "role";

/// Parameter values for one candidate; exactly the fields required by the
/// template's ParamKind are set.
struct ParamBinding {
    std::optional<std::string> task_a;
    std::optional<std::string> task_b;
    std::optional<std::string> identity;
    std::optional<std::string> group;

    bool operator==(const ParamBinding&) const = default;

    static ParamBinding activity_pair(std::string a, std::string b);
    static ParamBinding activity_identity(std::string a, std::string identity);
    static ParamBinding activity_group(std::string a, std::string group);
    static ParamBinding activity_pair_group(std::string a, std::string b, std::string group);
};

/// Throws std::invalid_argument if the binding does not match the
/// template's arity (missing/extra fields, or task_a == task_b).
void validate_binding(TemplateId id, const ParamBinding& binding);

/// Positions of the activation (condition) events of the template within
/// one trace. Activations are:
///   response family, NotSuccession, RespondedExistence, allocations: task_a events;
///   precedence family: task_b events;
///   BindingOfDuties/SeparationOfDuties: task_a events, only in traces that
///     also contain task_b;
///   RoleBasedResponse: task_a events performed by a member of the group;
///   RoleBasedPrecedence: task_b events performed by a member of the group.
std::vector<std::size_t> activations(TemplateId id, const ParamBinding& binding,
                                     const Trace& trace, const OrgModel& org);

/// Whether the constraint's consequent holds for the activation at
/// `activation_pos`. Pure; inspects only the given trace and model.
bool is_fulfilled(TemplateId id, const ParamBinding& binding, std::size_t activation_pos,
                  const Trace& trace, const OrgModel& org);

/// Fulfilment under the published queries' own quantification, which for
/// AlternateResponse/AlternatePrecedence is stricter than the worded
/// semantics (the in-between check ranges over every witness instead of
/// the nearest one). Identical to is_fulfilled for all other templates.
/// Used by `validate --listing-deltas` to report the divergence.
bool is_fulfilled_listing(TemplateId id, const ParamBinding& binding,
                          std::size_t activation_pos, const Trace& trace, const OrgModel& org);

/// True when the trace contains at least one condition occurrence of the
/// template (the per-trace ingredient of the confidence fraction):
/// task_a for the response family and allocations, task_b for the
/// precedence family, both activities for duty templates, a role-qualified
/// condition event for the cross-perspective templates.
bool condition_holds(TemplateId id, const ParamBinding& binding, const Trace& trace,
                     const OrgModel& org);

} // namespace declmine
