#include "declmine/engine.hpp"
#include "declmine/generator.hpp"

#include <benchmark/benchmark.h>

using namespace declmine;

namespace {

std::string benchmark_csv(std::size_t traces, std::size_t trace_len) {
    GeneratorConfig config;
    config.seed = 42;
    config.trace_count = traces;
    config.alphabet_size = 16;
    config.resource_count = 10;
    config.min_trace_length = trace_len;
    config.max_trace_length = trace_len;
    return generate_log(config).csv;
}

OrgModel benchmark_org() {
    std::vector<Relation> relations;
    for (std::size_t i = 1; i <= 10; ++i)
        relations.push_back({"i" + std::to_string(i), "role", i % 2 ? "G1" : "G2"});
    return OrgModel::from_relations(std::move(relations));
}

void BM_parse_event_log(benchmark::State& state) {
    const std::string csv = benchmark_csv(static_cast<std::size_t>(state.range(0)), 50);
    for (auto _ : state) {
        EventLog log = parse_event_log(csv);
        benchmark::DoNotOptimize(log.event_count());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 50);
}
BENCHMARK(BM_parse_event_log)->Arg(100)->Arg(500);

void BM_build_index(benchmark::State& state) {
    EventLog log = parse_event_log(benchmark_csv(static_cast<std::size_t>(state.range(0)), 50));
    for (auto _ : state) {
        auto index = build_occurrence_index(log);
        benchmark::DoNotOptimize(index.total_positions());
    }
    state.SetItemsProcessed(state.iterations() * log.event_count());
}
BENCHMARK(BM_build_index)->Arg(100)->Arg(1000);

void BM_evaluate_response_family(benchmark::State& state) {
    EventLog log = parse_event_log(benchmark_csv(200, 50));
    OrgModel org;
    auto index = build_occurrence_index(log);
    auto candidates = generate_candidates(
        log, org,
        std::array{TemplateId::Response, TemplateId::AlternateResponse, TemplateId::ChainResponse,
                   TemplateId::NotSuccession});
    for (auto _ : state) {
        std::int64_t total = 0;
        for (const auto& candidate : candidates)
            total += evaluate_candidate(candidate, log, org, index).fulfilment_count;
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(state.iterations() * candidates.size());
}
BENCHMARK(BM_evaluate_response_family);

void BM_discover_all_templates(benchmark::State& state) {
    EventLog log = parse_event_log(benchmark_csv(static_cast<std::size_t>(state.range(0)), 40));
    OrgModel org = benchmark_org();
    DiscoveryConfig config;
    for (auto _ : state) {
        auto results = discover(log, org, config);
        benchmark::DoNotOptimize(results.size());
    }
}
BENCHMARK(BM_discover_all_templates)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_naive_oracle_response(benchmark::State& state) {
    EventLog log = parse_event_log(benchmark_csv(100, 40));
    OrgModel org;
    ConstraintCandidate candidate{TemplateId::Response, ParamBinding::activity_pair("a", "b")};
    for (auto _ : state) {
        auto metrics = naive_oracle(candidate, log, org);
        benchmark::DoNotOptimize(metrics.fulfilment_count);
    }
}
BENCHMARK(BM_naive_oracle_response);

} // namespace

BENCHMARK_MAIN();
