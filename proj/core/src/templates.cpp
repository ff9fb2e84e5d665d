#include "declmine/templates.hpp"

#include <stdexcept>

namespace declmine {

namespace {

struct TemplateInfo {
    TemplateId id;
    std::string_view name;
    ParamKind kind;
};

constexpr std::array<TemplateInfo, 14> kTemplateInfo = {{
    {TemplateId::Response, "Response", ParamKind::ActivityPair},
    {TemplateId::AlternateResponse, "AlternateResponse", ParamKind::ActivityPair},
    {TemplateId::ChainResponse, "ChainResponse", ParamKind::ActivityPair},
    {TemplateId::Precedence, "Precedence", ParamKind::ActivityPair},
    {TemplateId::AlternatePrecedence, "AlternatePrecedence", ParamKind::ActivityPair},
    {TemplateId::ChainPrecedence, "ChainPrecedence", ParamKind::ActivityPair},
    {TemplateId::RespondedExistence, "RespondedExistence", ParamKind::ActivityPair},
    {TemplateId::NotSuccession, "NotSuccession", ParamKind::ActivityPair},
    {TemplateId::DirectAllocation, "DirectAllocation", ParamKind::ActivityIdentity},
    {TemplateId::RoleBasedAllocation, "RoleBasedAllocation", ParamKind::ActivityGroup},
    {TemplateId::BindingOfDuties, "BindingOfDuties", ParamKind::ActivityPair},
    {TemplateId::SeparationOfDuties, "SeparationOfDuties", ParamKind::ActivityPair},
    {TemplateId::RoleBasedResponse, "RoleBasedResponse", ParamKind::ActivityPairGroup},
    {TemplateId::RoleBasedPrecedence, "RoleBasedPrecedence", ParamKind::ActivityPairGroup},
}};

const TemplateInfo& info(TemplateId id) {
    return kTemplateInfo[static_cast<std::size_t>(id)];
}

bool in_role(const OrgModel& org, const std::string& resource, const std::string& group) {
    return org.has_role(resource, kRoleRelationType, group);
}

} // namespace

ParamKind param_kind(TemplateId id) {
    return info(id).kind;
}

std::string_view template_name(TemplateId id) {
    return info(id).name;
}

std::optional<TemplateId> template_from_name(std::string_view name) {
    for (const auto& entry : kTemplateInfo) {
        if (entry.name == name)
            return entry.id;
    }
    return std::nullopt;
}

bool needs_org_model(TemplateId id) {
    switch (id) {
    case TemplateId::RoleBasedAllocation:
    case TemplateId::RoleBasedResponse:
    case TemplateId::RoleBasedPrecedence:
        return true;
    default:
        return false;
    }
}

ParamBinding ParamBinding::activity_pair(std::string a, std::string b) {
    ParamBinding binding;
    binding.task_a = std::move(a);
    binding.task_b = std::move(b);
    return binding;
}

ParamBinding ParamBinding::activity_identity(std::string a, std::string identity) {
    ParamBinding binding;
    binding.task_a = std::move(a);
    binding.identity = std::move(identity);
    return binding;
}

ParamBinding ParamBinding::activity_group(std::string a, std::string group) {
    ParamBinding binding;
    binding.task_a = std::move(a);
    binding.group = std::move(group);
    return binding;
}

ParamBinding ParamBinding::activity_pair_group(std::string a, std::string b, std::string group) {
    ParamBinding binding;
    binding.task_a = std::move(a);
    binding.task_b = std::move(b);
    binding.group = std::move(group);
    return binding;
}

void validate_binding(TemplateId id, const ParamBinding& binding) {
    bool want_b = false, want_identity = false, want_group = false;
    switch (param_kind(id)) {
    case ParamKind::ActivityPair:
        want_b = true;
        break;
    case ParamKind::ActivityIdentity:
        want_identity = true;
        break;
    case ParamKind::ActivityGroup:
        want_group = true;
        break;
    case ParamKind::ActivityPairGroup:
        want_b = want_group = true;
        break;
    }
    auto check = [&](const std::optional<std::string>& field, bool wanted, const char* name) {
        if (wanted && !field)
            throw std::invalid_argument(std::string(template_name(id)) + " requires " + name);
        if (!wanted && field)
            throw std::invalid_argument(std::string(template_name(id)) + " does not take " + name);
        if (wanted && field->empty())
            throw std::invalid_argument(std::string(template_name(id)) + ": empty " + name);
    };
    check(binding.task_a, true, "task_a");
    check(binding.task_b, want_b, "task_b");
    check(binding.identity, want_identity, "identity");
    check(binding.group, want_group, "group");
    if (want_b && *binding.task_a == *binding.task_b)
        throw std::invalid_argument(std::string(template_name(id)) + ": task_a must differ from task_b");
}

std::vector<std::size_t> activations(TemplateId id, const ParamBinding& binding,
                                     const Trace& trace, const OrgModel& org) {
    validate_binding(id, binding);
    const auto& events = trace.events();
    std::vector<std::size_t> out;

    auto collect = [&](const std::string& activity) {
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (events[i].activity == activity)
                out.push_back(i);
        }
    };
    auto contains = [&](const std::string& activity) {
        for (const auto& e : events) {
            if (e.activity == activity)
                return true;
        }
        return false;
    };

    switch (id) {
    case TemplateId::Response:
    case TemplateId::AlternateResponse:
    case TemplateId::ChainResponse:
    case TemplateId::RespondedExistence:
    case TemplateId::NotSuccession:
    case TemplateId::DirectAllocation:
    case TemplateId::RoleBasedAllocation:
        collect(*binding.task_a);
        break;
    case TemplateId::Precedence:
    case TemplateId::AlternatePrecedence:
    case TemplateId::ChainPrecedence:
        collect(*binding.task_b);
        break;
    case TemplateId::BindingOfDuties:
    case TemplateId::SeparationOfDuties:
        if (contains(*binding.task_b))
            collect(*binding.task_a);
        break;
    case TemplateId::RoleBasedResponse:
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (events[i].activity == *binding.task_a && in_role(org, events[i].resource, *binding.group))
                out.push_back(i);
        }
        break;
    case TemplateId::RoleBasedPrecedence:
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (events[i].activity == *binding.task_b && in_role(org, events[i].resource, *binding.group))
                out.push_back(i);
        }
        break;
    }
    return out;
}

bool is_fulfilled(TemplateId id, const ParamBinding& binding, std::size_t activation_pos,
                  const Trace& trace, const OrgModel& org) {
    const auto& events = trace.events();
    const std::size_t n = events.size();

    auto any_after = [&](const std::string& activity) {
        for (std::size_t i = activation_pos + 1; i < n; ++i) {
            if (events[i].activity == activity)
                return true;
        }
        return false;
    };
    auto any_before = [&](const std::string& activity) {
        for (std::size_t i = 0; i < activation_pos; ++i) {
            if (events[i].activity == activity)
                return true;
        }
        return false;
    };

    switch (id) {
    case TemplateId::Response:
    case TemplateId::RoleBasedResponse:
        return any_after(*binding.task_b);
    case TemplateId::AlternateResponse: {
        // Judge against the first task_b after the activation.
        for (std::size_t i = activation_pos + 1; i < n; ++i) {
            if (events[i].activity == *binding.task_b)
                return true;
            if (events[i].activity == *binding.task_a)
                return false;
        }
        return false;
    }
    case TemplateId::ChainResponse:
        return activation_pos + 1 < n && events[activation_pos + 1].activity == *binding.task_b;
    case TemplateId::Precedence:
    case TemplateId::RoleBasedPrecedence:
        return any_before(*binding.task_a);
    case TemplateId::AlternatePrecedence: {
        // Judge against the last task_a before the activation.
        for (std::size_t i = activation_pos; i-- > 0;) {
            if (events[i].activity == *binding.task_a)
                return true;
            if (events[i].activity == *binding.task_b)
                return false;
        }
        return false;
    }
    case TemplateId::ChainPrecedence:
        return activation_pos > 0 && events[activation_pos - 1].activity == *binding.task_a;
    case TemplateId::RespondedExistence:
        for (const auto& e : events) {
            if (e.activity == *binding.task_b)
                return true;
        }
        return false;
    case TemplateId::NotSuccession:
        return !any_after(*binding.task_b);
    case TemplateId::DirectAllocation:
        return events[activation_pos].resource == *binding.identity;
    case TemplateId::RoleBasedAllocation:
        return in_role(org, events[activation_pos].resource, *binding.group);
    case TemplateId::BindingOfDuties:
        for (const auto& e : events) {
            if (e.activity == *binding.task_b && e.resource != events[activation_pos].resource)
                return false;
        }
        return true;
    case TemplateId::SeparationOfDuties:
        for (const auto& e : events) {
            if (e.activity == *binding.task_b && e.resource == events[activation_pos].resource)
                return false;
        }
        return true;
    }
    throw std::logic_error("unhandled template");
}

bool is_fulfilled_listing(TemplateId id, const ParamBinding& binding,
                          std::size_t activation_pos, const Trace& trace, const OrgModel& org) {
    const auto& events = trace.events();
    const std::size_t n = events.size();

    switch (id) {
    case TemplateId::AlternateResponse: {
        // No task_a may fall between the activation and ANY later task_b.
        std::size_t last_b = n;
        for (std::size_t i = activation_pos + 1; i < n; ++i) {
            if (events[i].activity == *binding.task_b)
                last_b = i;
        }
        if (last_b == n)
            return false;
        for (std::size_t i = activation_pos + 1; i < last_b; ++i) {
            if (events[i].activity == *binding.task_a)
                return false;
        }
        return true;
    }
    case TemplateId::AlternatePrecedence: {
        // No task_b may fall between ANY earlier task_a and the activation.
        std::size_t first_a = n;
        for (std::size_t i = 0; i < activation_pos; ++i) {
            if (events[i].activity == *binding.task_a && first_a == n)
                first_a = i;
        }
        if (first_a == n)
            return false;
        for (std::size_t i = first_a + 1; i < activation_pos; ++i) {
            if (events[i].activity == *binding.task_b)
                return false;
        }
        return true;
    }
    default:
        return is_fulfilled(id, binding, activation_pos, trace, org);
    }
}

bool condition_holds(TemplateId id, const ParamBinding& binding, const Trace& trace,
                     const OrgModel& org) {
    const auto& events = trace.events();
    auto contains = [&](const std::string& activity) {
        for (const auto& e : events) {
            if (e.activity == activity)
                return true;
        }
        return false;
    };

    switch (id) {
    case TemplateId::Response:
    case TemplateId::AlternateResponse:
    case TemplateId::ChainResponse:
    case TemplateId::RespondedExistence:
    case TemplateId::NotSuccession:
    case TemplateId::DirectAllocation:
    case TemplateId::RoleBasedAllocation:
        return contains(*binding.task_a);
    case TemplateId::Precedence:
    case TemplateId::AlternatePrecedence:
    case TemplateId::ChainPrecedence:
        return contains(*binding.task_b);
    case TemplateId::BindingOfDuties:
    case TemplateId::SeparationOfDuties:
        return contains(*binding.task_a) && contains(*binding.task_b);
    case TemplateId::RoleBasedResponse:
        for (const auto& e : events) {
            if (e.activity == *binding.task_a && in_role(org, e.resource, *binding.group))
                return true;
        }
        return false;
    case TemplateId::RoleBasedPrecedence:
        for (const auto& e : events) {
            if (e.activity == *binding.task_b && in_role(org, e.resource, *binding.group))
                return true;
        }
        return false;
    }
    throw std::logic_error("unhandled template");
}

} // namespace declmine
