#include "declmine/generator.hpp"

#include "declmine/engine.hpp"

#include <doctest.h>

#include "testing_support.hpp"

using namespace declmine;
namespace ts = testing_support;

TEST_SUITE("generator") {

TEST_CASE("a fixed seed gives a byte-identical log") {
    GeneratorConfig config;
    config.seed = 1234;
    config.trace_count = 20;
    auto first = generate_log(config);
    auto second = generate_log(config);
    CHECK(first.csv == second.csv);
    CHECK(first.bookkeeping.event_count == second.bookkeeping.event_count);

    config.seed = 1235;
    CHECK(generate_log(config).csv != first.csv);
}

TEST_CASE("generated logs parse and match their bookkeeping") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorConfig config;
        config.seed = seed;
        config.trace_count = 15;
        config.alphabet_size = 4 + seed % 4;
        config.resource_count = 3;
        config.max_trace_length = 9;
        auto generated = generate_log(config);
        EventLog log = parse_event_log(generated.csv);
        CHECK(log.traces().size() == static_cast<std::size_t>(generated.bookkeeping.trace_count));
        CHECK(log.event_count() == static_cast<std::size_t>(generated.bookkeeping.event_count));
        CHECK(log.alphabet().size() ==
              static_cast<std::size_t>(generated.bookkeeping.distinct_activities));
    }
}

TEST_CASE("planted Response counts are exact ground truth") {
    GeneratorConfig config;
    config.seed = 99;
    config.trace_count = 50;
    config.alphabet_size = 6;
    config.resource_count = 4;
    config.min_trace_length = 3;
    config.max_trace_length = 10;
    config.plant = true;
    config.plant_template = TemplateId::Response;
    config.plant_rate = 1.0;

    auto generated = generate_log(config);
    EventLog log = parse_event_log(generated.csv);
    OrgModel org;
    ConstraintCandidate planted{TemplateId::Response, ParamBinding::activity_pair("a", "b")};
    auto metrics = naive_oracle(planted, log, org);

    CHECK(metrics.activation_count == generated.bookkeeping.activation_count);
    CHECK(metrics.fulfilment_count == generated.bookkeeping.fulfilment_count);
    CHECK(metrics.condition_trace_count == generated.bookkeeping.traces_with_condition);
    CHECK(metrics.support() == Rational(1));

    // discover must return it with support 1.0 and confidence equal to the
    // recorded condition-trace fraction.
    DiscoveryConfig discovery;
    discovery.templates = {TemplateId::Response};
    auto results = discover(log, org, discovery);
    bool found = false;
    for (const auto& result : results) {
        if (result.candidate.binding == planted.binding) {
            found = true;
            CHECK(result.metrics.support() == Rational(1));
            CHECK(result.metrics.confidence() ==
                  Rational(generated.bookkeeping.traces_with_condition,
                           generated.bookkeeping.trace_count));
        }
    }
    CHECK(found);
}

TEST_CASE("planted rates below one track the bookkeeping exactly") {
    GeneratorConfig config;
    config.seed = 7;
    config.trace_count = 400;
    config.alphabet_size = 5;
    config.resource_count = 3;
    config.min_trace_length = 4;
    config.max_trace_length = 12;
    config.plant = true;
    config.plant_template = TemplateId::Response;
    config.plant_rate = 0.6;

    auto generated = generate_log(config);
    EventLog log = parse_event_log(generated.csv);
    auto metrics = naive_oracle({TemplateId::Response, ParamBinding::activity_pair("a", "b")},
                                log, OrgModel{});
    CHECK(metrics.activation_count == generated.bookkeeping.activation_count);
    CHECK(metrics.fulfilment_count == generated.bookkeeping.fulfilment_count);

    const double support = declmine::to_double(metrics.support());
    CHECK(support > 0.5);
    CHECK(support < 0.7);
}

TEST_CASE("planted ChainResponse also matches its bookkeeping") {
    GeneratorConfig config;
    config.seed = 21;
    config.trace_count = 120;
    config.alphabet_size = 5;
    config.resource_count = 3;
    config.min_trace_length = 2;
    config.max_trace_length = 10;
    config.plant = true;
    config.plant_template = TemplateId::ChainResponse;
    config.plant_rate = 0.5;

    auto generated = generate_log(config);
    EventLog log = parse_event_log(generated.csv);
    auto metrics = naive_oracle({TemplateId::ChainResponse, ParamBinding::activity_pair("a", "b")},
                                log, OrgModel{});
    CHECK(metrics.activation_count == generated.bookkeeping.activation_count);
    CHECK(metrics.fulfilment_count == generated.bookkeeping.fulfilment_count);
}

TEST_CASE("ChainResponse planting works without filler activities") {
    GeneratorConfig config;
    config.seed = 5;
    config.trace_count = 60;
    config.alphabet_size = 2; // only the planted pair
    config.resource_count = 2;
    config.min_trace_length = 2;
    config.max_trace_length = 6;
    config.plant = true;
    config.plant_template = TemplateId::ChainResponse;
    config.plant_rate = 0.7;

    auto generated = generate_log(config);
    EventLog log = parse_event_log(generated.csv);
    auto metrics = naive_oracle({TemplateId::ChainResponse, ParamBinding::activity_pair("a", "b")},
                                log, OrgModel{});
    CHECK(metrics.activation_count == generated.bookkeeping.activation_count);
    CHECK(metrics.fulfilment_count == generated.bookkeeping.fulfilment_count);
}

TEST_CASE("contradictory plant parameters are rejected") {
    GeneratorConfig config;
    config.plant = true;
    config.plant_template = TemplateId::ChainResponse;
    config.plant_rate = 1.0;
    config.min_trace_length = 1;
    config.max_trace_length = 1; // no room for activation plus witness
    CHECK_THROWS_AS(generate_log(config), std::invalid_argument);

    config.max_trace_length = 10;
    config.plant_template = TemplateId::Precedence; // unsupported plant
    CHECK_THROWS_AS(generate_log(config), std::invalid_argument);

    config.plant_template = TemplateId::Response;
    config.plant_rate = 1.5;
    CHECK_THROWS_AS(generate_log(config), std::invalid_argument);

    config.plant_rate = 1.0;
    config.plant_task_b = "zz"; // outside the alphabet
    CHECK_THROWS_AS(generate_log(config), std::invalid_argument);
}

TEST_CASE("size parameters are validated") {
    GeneratorConfig config;
    config.trace_count = 0;
    CHECK_THROWS_AS(generate_log(config), std::invalid_argument);
    config = GeneratorConfig{};
    config.min_trace_length = 9;
    config.max_trace_length = 3;
    CHECK_THROWS_AS(generate_log(config), std::invalid_argument);
}

} // TEST_SUITE
