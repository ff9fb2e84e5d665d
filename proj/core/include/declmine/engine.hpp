#pragma once

#include "declmine/event_log.hpp"
#include "declmine/org_model.hpp"
#include "declmine/rational.hpp"
#include "declmine/templates.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace declmine {

struct ConstraintCandidate {
    TemplateId template_id;
    ParamBinding binding;

    bool operator==(const ConstraintCandidate&) const = default;
};

/// Raw evaluation counts plus the derived metrics. Counts are kept exact
/// for auditing; support/confidence are computed on demand as rationals so
/// threshold comparison is never subject to rounding.
struct ConstraintMetrics {
    std::int64_t activation_count = 0;
    std::int64_t fulfilment_count = 0;
    std::int64_t condition_trace_count = 0;
    std::int64_t trace_count = 0;

    Rational support() const {
        if (activation_count == 0)
            return Rational(0);
        return Rational(fulfilment_count, activation_count);
    }
    Rational condition_trace_fraction() const {
        if (trace_count == 0)
            return Rational(0);
        return Rational(condition_trace_count, trace_count);
    }
    Rational confidence() const { return support() * condition_trace_fraction(); }

    bool operator==(const ConstraintMetrics&) const = default;
};

struct DiscoveryConfig {
    Rational min_support{7, 10};
    Rational min_confidence{1, 2};
    std::vector<TemplateId> templates{kAllTemplates.begin(), kAllTemplates.end()};
    int jobs = 1;
};

struct EvaluatedCandidate {
    ConstraintCandidate candidate;
    ConstraintMetrics metrics;
    bool passed = false;
};

/// Instantiates every template over the observed symbols: ordered activity
/// pairs (a != b) for pair templates, alphabet x identities for
/// DirectAllocation, alphabet x role groups for RoleBasedAllocation,
/// ordered pairs x role groups for the cross-perspective templates.
/// Output order is deterministic: template order, then lexicographic
/// parameters.
std::vector<ConstraintCandidate> generate_candidates(std::span<const std::string> alphabet,
                                                     std::span<const std::string> identities,
                                                     const OrgModel& org,
                                                     std::span<const TemplateId> templates);

std::vector<ConstraintCandidate> generate_candidates(const EventLog& log, const OrgModel& org,
                                                     std::span<const TemplateId> templates);

/// Index-accelerated evaluation of one candidate over the whole log.
ConstraintMetrics evaluate_candidate(const ConstraintCandidate& candidate, const EventLog& log,
                                     const OrgModel& org, const OccurrenceIndex& index);

/// Evaluates every candidate for the configured templates and marks which
/// pass the strict thresholds (support > min_support AND
/// confidence > min_confidence). `config.jobs` > 1 evaluates candidates
/// concurrently; the result is identical to sequential evaluation.
std::vector<EvaluatedCandidate> evaluate_all(const EventLog& log, const OrgModel& org,
                                             const OccurrenceIndex& index,
                                             const DiscoveryConfig& config);

/// evaluate_all filtered down to the passing candidates.
std::vector<EvaluatedCandidate> discover(const EventLog& log, const OrgModel& org,
                                         const DiscoveryConfig& config);

/// Brute-force re-evaluation: sums the per-trace activation/fulfilment
/// predicates by plain trace scans, never touching the occurrence index or
/// the counting arithmetic of evaluate_candidate. Differential-testing
/// oracle; contract identical to evaluate_candidate.
ConstraintMetrics naive_oracle(const ConstraintCandidate& candidate, const EventLog& log,
                               const OrgModel& org);

/// Throws std::invalid_argument when thresholds leave [0,1] or the template
/// set is empty.
void validate_config(const DiscoveryConfig& config);

} // namespace declmine
