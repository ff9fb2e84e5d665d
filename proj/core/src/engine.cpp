#include "declmine/engine.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <thread>

namespace declmine {

namespace {

using PosSpan = std::span<const std::uint32_t>;

std::int64_t count_less_than(PosSpan positions, std::uint32_t bound) {
    return std::lower_bound(positions.begin(), positions.end(), bound) - positions.begin();
}

std::int64_t count_greater_than(PosSpan positions, std::uint32_t bound) {
    return positions.end() - std::upper_bound(positions.begin(), positions.end(), bound);
}

bool contains_position(PosSpan positions, std::uint32_t value) {
    return std::binary_search(positions.begin(), positions.end(), value);
}

/// Group membership per interned resource id, precomputed once per candidate.
std::vector<char> role_membership(const EventLog& log, const OrgModel& org,
                                  const std::string& group) {
    std::vector<char> member(log.identities().size(), 0);
    for (std::size_t i = 0; i < log.identities().size(); ++i)
        member[i] = org.has_role(log.identities()[i], kRoleRelationType, group) ? 1 : 0;
    return member;
}

} // namespace

std::vector<ConstraintCandidate> generate_candidates(std::span<const std::string> alphabet,
                                                     std::span<const std::string> identities,
                                                     const OrgModel& org,
                                                     std::span<const TemplateId> templates) {
    std::vector<ConstraintCandidate> out;
    std::vector<std::string> role_groups = org.groups(kRoleRelationType);

    for (TemplateId id : templates) {
        switch (param_kind(id)) {
        case ParamKind::ActivityPair:
            for (const auto& a : alphabet) {
                for (const auto& b : alphabet) {
                    if (a != b)
                        out.push_back({id, ParamBinding::activity_pair(a, b)});
                }
            }
            break;
        case ParamKind::ActivityIdentity:
            for (const auto& a : alphabet) {
                for (const auto& identity : identities)
                    out.push_back({id, ParamBinding::activity_identity(a, identity)});
            }
            break;
        case ParamKind::ActivityGroup:
            for (const auto& a : alphabet) {
                for (const auto& group : role_groups)
                    out.push_back({id, ParamBinding::activity_group(a, group)});
            }
            break;
        case ParamKind::ActivityPairGroup:
            for (const auto& a : alphabet) {
                for (const auto& b : alphabet) {
                    if (a == b)
                        continue;
                    for (const auto& group : role_groups)
                        out.push_back({id, ParamBinding::activity_pair_group(a, b, group)});
                }
            }
            break;
        }
    }
    return out;
}

std::vector<ConstraintCandidate> generate_candidates(const EventLog& log, const OrgModel& org,
                                                     std::span<const TemplateId> templates) {
    return generate_candidates(log.alphabet(), log.identities(), org, templates);
}

ConstraintMetrics evaluate_candidate(const ConstraintCandidate& candidate, const EventLog& log,
                                     const OrgModel& org, const OccurrenceIndex& index) {
    validate_binding(candidate.template_id, candidate.binding);

    const TemplateId id = candidate.template_id;
    const ParamBinding& binding = candidate.binding;
    ConstraintMetrics metrics;
    metrics.trace_count = static_cast<std::int64_t>(log.traces().size());

    // Interned parameter ids; a parameter absent from the log means zero
    // occurrences everywhere rather than an error.
    const auto a_id = binding.task_a ? log.activity_id(*binding.task_a) : std::nullopt;
    const auto b_id = binding.task_b ? log.activity_id(*binding.task_b) : std::nullopt;
    const auto identity_id = binding.identity ? log.resource_id(*binding.identity) : std::nullopt;

    std::vector<char> member;
    if (binding.group)
        member = role_membership(log, org, *binding.group);

    const std::size_t trace_total = log.traces().size();
    for (std::size_t t = 0; t < trace_total; ++t) {
        const PosSpan pa = a_id ? index.positions(t, *a_id) : PosSpan{};
        const PosSpan pb = b_id ? index.positions(t, *b_id) : PosSpan{};
        const auto& events = log.traces()[t].events();

        switch (id) {
        case TemplateId::Response:
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            if (!pb.empty())
                metrics.fulfilment_count += count_less_than(pa, pb.back());
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        case TemplateId::AlternateResponse: {
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            std::size_t j = 0;
            for (std::size_t i = 0; i < pa.size(); ++i) {
                while (j < pb.size() && pb[j] < pa[i])
                    ++j;
                if (j == pb.size())
                    break; // no witness for this or any later activation
                // Fulfilled unless the next task_a comes before the witness.
                if (i + 1 == pa.size() || pa[i + 1] > pb[j])
                    ++metrics.fulfilment_count;
            }
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        }
        case TemplateId::ChainResponse:
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            for (std::uint32_t p : pa) {
                if (contains_position(pb, p + 1))
                    ++metrics.fulfilment_count;
            }
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        case TemplateId::Precedence:
            metrics.activation_count += static_cast<std::int64_t>(pb.size());
            if (!pa.empty())
                metrics.fulfilment_count += count_greater_than(pb, pa.front());
            if (!pb.empty())
                ++metrics.condition_trace_count;
            break;
        case TemplateId::AlternatePrecedence: {
            metrics.activation_count += static_cast<std::int64_t>(pb.size());
            for (std::size_t i = 0; i < pb.size(); ++i) {
                auto it = std::lower_bound(pa.begin(), pa.end(), pb[i]);
                if (it == pa.begin())
                    continue; // no task_a before this activation
                std::uint32_t last_a = *std::prev(it);
                if (i == 0 || pb[i - 1] < last_a)
                    ++metrics.fulfilment_count;
            }
            if (!pb.empty())
                ++metrics.condition_trace_count;
            break;
        }
        case TemplateId::ChainPrecedence:
            metrics.activation_count += static_cast<std::int64_t>(pb.size());
            for (std::uint32_t p : pb) {
                if (p > 0 && contains_position(pa, p - 1))
                    ++metrics.fulfilment_count;
            }
            if (!pb.empty())
                ++metrics.condition_trace_count;
            break;
        case TemplateId::RespondedExistence:
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            if (!pb.empty())
                metrics.fulfilment_count += static_cast<std::int64_t>(pa.size());
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        case TemplateId::NotSuccession:
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            if (pb.empty())
                metrics.fulfilment_count += static_cast<std::int64_t>(pa.size());
            else
                metrics.fulfilment_count += count_greater_than(pa, pb.back());
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        case TemplateId::DirectAllocation:
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            if (identity_id) {
                for (std::uint32_t p : pa) {
                    if (events[p].resource_id == *identity_id)
                        ++metrics.fulfilment_count;
                }
            }
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        case TemplateId::RoleBasedAllocation:
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            for (std::uint32_t p : pa) {
                if (member[events[p].resource_id])
                    ++metrics.fulfilment_count;
            }
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        case TemplateId::BindingOfDuties: {
            if (pb.empty())
                break;
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            bool all_same = true;
            const std::uint32_t common = events[pb.front()].resource_id;
            for (std::uint32_t q : pb) {
                if (events[q].resource_id != common) {
                    all_same = false;
                    break;
                }
            }
            if (all_same) {
                for (std::uint32_t p : pa) {
                    if (events[p].resource_id == common)
                        ++metrics.fulfilment_count;
                }
            }
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        }
        case TemplateId::SeparationOfDuties: {
            if (pb.empty())
                break;
            metrics.activation_count += static_cast<std::int64_t>(pa.size());
            std::vector<std::uint32_t> b_resources;
            b_resources.reserve(pb.size());
            for (std::uint32_t q : pb)
                b_resources.push_back(events[q].resource_id);
            std::sort(b_resources.begin(), b_resources.end());
            for (std::uint32_t p : pa) {
                if (!std::binary_search(b_resources.begin(), b_resources.end(),
                                        events[p].resource_id))
                    ++metrics.fulfilment_count;
            }
            if (!pa.empty())
                ++metrics.condition_trace_count;
            break;
        }
        case TemplateId::RoleBasedResponse: {
            bool any_qualified = false;
            for (std::uint32_t p : pa) {
                if (!member[events[p].resource_id])
                    continue;
                any_qualified = true;
                ++metrics.activation_count;
                if (!pb.empty() && pb.back() > p)
                    ++metrics.fulfilment_count;
            }
            if (any_qualified)
                ++metrics.condition_trace_count;
            break;
        }
        case TemplateId::RoleBasedPrecedence: {
            bool any_qualified = false;
            for (std::uint32_t p : pb) {
                if (!member[events[p].resource_id])
                    continue;
                any_qualified = true;
                ++metrics.activation_count;
                if (!pa.empty() && pa.front() < p)
                    ++metrics.fulfilment_count;
            }
            if (any_qualified)
                ++metrics.condition_trace_count;
            break;
        }
        }
    }
    return metrics;
}

ConstraintMetrics naive_oracle(const ConstraintCandidate& candidate, const EventLog& log,
                               const OrgModel& org) {
    ConstraintMetrics metrics;
    metrics.trace_count = static_cast<std::int64_t>(log.traces().size());
    for (const auto& trace : log.traces()) {
        auto positions = activations(candidate.template_id, candidate.binding, trace, org);
        metrics.activation_count += static_cast<std::int64_t>(positions.size());
        for (std::size_t pos : positions) {
            if (is_fulfilled(candidate.template_id, candidate.binding, pos, trace, org))
                ++metrics.fulfilment_count;
        }
        if (condition_holds(candidate.template_id, candidate.binding, trace, org))
            ++metrics.condition_trace_count;
    }
    return metrics;
}

void validate_config(const DiscoveryConfig& config) {
    if (config.min_support < Rational(0) || config.min_support > Rational(1))
        throw std::invalid_argument("min_support must be in [0,1]");
    if (config.min_confidence < Rational(0) || config.min_confidence > Rational(1))
        throw std::invalid_argument("min_confidence must be in [0,1]");
    if (config.templates.empty())
        throw std::invalid_argument("template set must be non-empty");
    if (config.jobs < 1)
        throw std::invalid_argument("jobs must be >= 1");
}

std::vector<EvaluatedCandidate> evaluate_all(const EventLog& log, const OrgModel& org,
                                             const OccurrenceIndex& index,
                                             const DiscoveryConfig& config) {
    validate_config(config);
    // Canonical result order is (template, binding) no matter how the
    // template set was written down.
    std::vector<TemplateId> templates = config.templates;
    std::sort(templates.begin(), templates.end());
    templates.erase(std::unique(templates.begin(), templates.end()), templates.end());
    auto candidates = generate_candidates(log, org, templates);

    std::vector<EvaluatedCandidate> results(candidates.size());
    auto evaluate_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            results[i].candidate = candidates[i];
            results[i].metrics = evaluate_candidate(candidates[i], log, org, index);
            results[i].passed = results[i].metrics.support() > config.min_support &&
                                results[i].metrics.confidence() > config.min_confidence;
        }
    };

    const std::size_t jobs =
        std::min<std::size_t>(static_cast<std::size_t>(config.jobs), std::max<std::size_t>(candidates.size(), 1));
    if (jobs <= 1) {
        evaluate_range(0, candidates.size());
        return results;
    }

    // Static partition: each worker owns a contiguous slice, results land in
    // candidate order regardless of scheduling.
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    const std::size_t chunk = (candidates.size() + jobs - 1) / jobs;
    for (std::size_t w = 0; w < jobs; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(candidates.size(), begin + chunk);
        if (begin >= end)
            break;
        workers.emplace_back(evaluate_range, begin, end);
    }
    for (auto& worker : workers)
        worker.join();
    return results;
}

std::vector<EvaluatedCandidate> discover(const EventLog& log, const OrgModel& org,
                                         const DiscoveryConfig& config) {
    auto index = build_occurrence_index(log);
    auto results = evaluate_all(log, org, index, config);
    std::vector<EvaluatedCandidate> passed;
    for (auto& result : results) {
        if (result.passed)
            passed.push_back(std::move(result));
    }
    return passed;
}

} // namespace declmine
