#include "declmine/generator.hpp"

#include "declmine/csv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace declmine {

namespace {

// mt19937_64 raw draws only; std distributions vary across standard
// libraries and would break byte-identical output.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

bool rand_bernoulli(std::mt19937_64& rng, double rate) {
    // 53-bit threshold comparison keeps the draw deterministic.
    const auto threshold = static_cast<std::uint64_t>(std::llround(rate * 9007199254740992.0));
    return (rng() >> 11) < threshold;
}

struct PendingEvent {
    std::size_t activity; // index into the generated alphabet
};

} // namespace

std::string generator_activity_name(std::size_t i) {
    if (i < 26)
        return std::string(1, static_cast<char>('a' + i));
    return "act" + std::to_string(i);
}

GeneratedLog generate_log(const GeneratorConfig& config) {
    if (config.trace_count == 0)
        throw std::invalid_argument("trace_count must be positive");
    if (config.alphabet_size == 0)
        throw std::invalid_argument("alphabet_size must be positive");
    if (config.resource_count == 0)
        throw std::invalid_argument("resource_count must be positive");
    if (config.min_trace_length == 0)
        throw std::invalid_argument("min_trace_length must be positive");
    if (config.min_trace_length > config.max_trace_length)
        throw std::invalid_argument("min_trace_length exceeds max_trace_length");

    std::vector<std::string> alphabet(config.alphabet_size);
    for (std::size_t i = 0; i < config.alphabet_size; ++i)
        alphabet[i] = generator_activity_name(i);

    std::size_t plant_a = 0, plant_b = 0;
    if (config.plant) {
        if (config.plant_template != TemplateId::Response &&
            config.plant_template != TemplateId::ChainResponse)
            throw std::invalid_argument("planting supports Response and ChainResponse only");
        if (config.plant_rate < 0.0 || config.plant_rate > 1.0)
            throw std::invalid_argument("plant_rate must be in [0,1]");
        if (config.plant_task_a == config.plant_task_b)
            throw std::invalid_argument("planted activities must differ");
        if (config.max_trace_length < 2)
            throw std::invalid_argument(
                "planting needs max_trace_length >= 2 (an activation plus its witness)");
        auto find = [&](const std::string& name) {
            auto it = std::find(alphabet.begin(), alphabet.end(), name);
            if (it == alphabet.end())
                throw std::invalid_argument("planted activity '" + name +
                                            "' is outside the generated alphabet");
            return static_cast<std::size_t>(it - alphabet.begin());
        };
        plant_a = find(config.plant_task_a);
        plant_b = find(config.plant_task_b);
    }

    // Filler never uses the planted activities, so planted counts stay exact.
    std::vector<std::size_t> filler;
    for (std::size_t i = 0; i < config.alphabet_size; ++i) {
        if (!config.plant || (i != plant_a && i != plant_b))
            filler.push_back(i);
    }

    std::mt19937_64 rng(config.seed);
    GeneratedLog out;
    out.bookkeeping.trace_count = static_cast<std::int64_t>(config.trace_count);

    std::string& csv = out.csv;
    csv = "event_id,trace_id,activity,timestamp,resource\n";
    std::int64_t next_event = 1;
    std::set<std::size_t> seen_activities;
    constexpr std::int64_t kBaseSeconds = 1577836800; // 2020-01-01T00:00:00Z

    for (std::size_t t = 0; t < config.trace_count; ++t) {
        const std::size_t span = config.max_trace_length - config.min_trace_length + 1;
        const std::size_t target_len = config.min_trace_length + rand_below(rng, span);

        std::vector<PendingEvent> events;
        if (!config.plant) {
            for (std::size_t k = 0; k < target_len; ++k)
                events.push_back({static_cast<std::size_t>(rand_below(rng, config.alphabet_size))});
        } else {
            // One trace in five carries no activation at all so the
            // condition-trace fraction is itself informative.
            std::size_t activations = 0;
            if (rand_below(rng, 5) != 0)
                activations = 1 + rand_below(rng, 3);

            std::size_t fulfilled = 0;
            for (std::size_t k = 0; k < activations; ++k) {
                if (rand_bernoulli(rng, config.plant_rate))
                    ++fulfilled;
            }

            if (config.plant_template == TemplateId::Response) {
                // Layout: fulfilled activations, one witness, then the
                // unfulfilled tail that no witness may follow.
                for (std::size_t k = 0; k < fulfilled; ++k)
                    events.push_back({plant_a});
                if (fulfilled > 0)
                    events.push_back({plant_b});
                for (std::size_t k = 0; k < activations - fulfilled; ++k)
                    events.push_back({plant_a});
                // Pad with filler anywhere: filler excludes both activities.
                while (!filler.empty() && events.size() < target_len) {
                    std::size_t slot = rand_below(rng, events.size() + 1);
                    events.insert(events.begin() + slot,
                                  {filler[rand_below(rng, filler.size())]});
                }
            } else { // ChainResponse
                // Blocks: (a b) fulfilled, (a filler) unfulfilled, or a
                // trailing bare a when no filler activity exists.
                std::vector<std::vector<PendingEvent>> blocks;
                for (std::size_t k = 0; k < fulfilled; ++k)
                    blocks.push_back({{plant_a}, {plant_b}});
                std::size_t trailing = 0;
                for (std::size_t k = 0; k < activations - fulfilled; ++k) {
                    if (filler.empty())
                        ++trailing;
                    else
                        blocks.push_back({{plant_a},
                                          {filler[rand_below(rng, filler.size())]}});
                }
                std::size_t used = trailing;
                for (const auto& block : blocks)
                    used += block.size();
                while (!filler.empty() && used < target_len) {
                    blocks.push_back({{filler[rand_below(rng, filler.size())]}});
                    ++used;
                }
                // Deterministic shuffle of the block order.
                for (std::size_t k = blocks.size(); k > 1; --k)
                    std::swap(blocks[k - 1], blocks[rand_below(rng, k)]);
                for (const auto& block : blocks)
                    for (const auto& e : block)
                        events.push_back(e);
                for (std::size_t k = 0; k < trailing; ++k)
                    events.push_back({plant_a});
            }

            out.bookkeeping.activation_count += static_cast<std::int64_t>(activations);
            out.bookkeeping.fulfilment_count += static_cast<std::int64_t>(fulfilled);
            if (activations > 0)
                ++out.bookkeeping.traces_with_condition;

            // A trace must hold at least one event; a bare witness is
            // harmless when the alphabet leaves no filler.
            if (events.empty())
                events.push_back({filler.empty() ? plant_b
                                                 : filler[rand_below(rng, filler.size())]});
        }

        for (std::size_t k = 0; k < events.size(); ++k) {
            const std::size_t activity = events[k].activity;
            seen_activities.insert(activity);
            const std::size_t resource = rand_below(rng, config.resource_count);
            const std::int64_t seconds =
                kBaseSeconds + static_cast<std::int64_t>(t) * 86400 + static_cast<std::int64_t>(k) * 60;
            std::array<std::string, 5> row = {
                "e" + std::to_string(next_event++),
                "t" + std::to_string(t + 1),
                alphabet[activity],
                std::to_string(seconds),
                "i" + std::to_string(resource + 1),
            };
            append_csv_row(csv, row);
            ++out.bookkeeping.event_count;
        }
    }

    out.bookkeeping.distinct_activities = static_cast<std::int64_t>(seen_activities.size());
    return out;
}

} // namespace declmine
