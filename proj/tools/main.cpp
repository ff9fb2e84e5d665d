#include "declmine/engine.hpp"
#include "declmine/errors.hpp"
#include "declmine/generator.hpp"
#include "declmine/results_io.hpp"
#include "declmine/sql_emitter.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace declmine;

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write '" + path + "'");
    out << content;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

Rational parse_threshold(const std::string& text, const char* name) {
    Rational value;
    try {
        value = parse_decimal(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(name) + " is not a decimal literal: '" + text + "'");
    }
    if (value < Rational(0) || value > Rational(1))
        throw UsageError(std::string(name) + " must be in [0,1], got " + text);
    return value;
}

std::vector<TemplateId> parse_template_list(const std::string& spec, bool have_relations) {
    std::vector<TemplateId> templates;
    if (spec.empty() || spec == "all") {
        for (TemplateId id : kAllTemplates) {
            if (spec == "all" || have_relations || !needs_org_model(id))
                templates.push_back(id);
        }
        return templates;
    }
    std::stringstream stream(spec);
    std::string name;
    while (std::getline(stream, name, ',')) {
        auto id = template_from_name(name);
        if (!id)
            throw UsageError("unknown template '" + name + "'");
        templates.push_back(*id);
    }
    if (templates.empty())
        throw UsageError("template list is empty");
    return templates;
}

LogCsvSchema parse_log_columns(const std::string& spec) {
    LogCsvSchema schema;
    if (spec.empty())
        return schema;
    std::vector<std::string> names;
    std::stringstream stream(spec);
    std::string name;
    while (std::getline(stream, name, ','))
        names.push_back(name);
    if (names.size() != 5)
        throw UsageError("--log-columns needs 5 comma-separated names "
                         "(event_id,trace_id,activity,timestamp,resource)");
    schema.event_id = names[0];
    schema.trace_id = names[1];
    schema.activity = names[2];
    schema.timestamp = names[3];
    schema.resource = names[4];
    return schema;
}

void require_relations_for(const std::vector<TemplateId>& templates, bool have_relations) {
    if (have_relations)
        return;
    for (TemplateId id : templates) {
        if (needs_org_model(id))
            throw UsageError(std::string(template_name(id)) +
                             " needs an organizational model; pass --relations");
    }
}

// Options shared by discover/validate/stats.
struct InputOptions {
    std::string log_path;
    std::string relations_path;
    std::string log_columns;
    std::string templates = "";
    std::string min_support = "0.7";
    std::string min_confidence = "0.5";
    int jobs = 1;
};

void add_input_options(CLI::App* cmd, InputOptions& opts, bool with_thresholds = true) {
    cmd->add_option("--log", opts.log_path, "Event log CSV")->required();
    cmd->add_option("--relations", opts.relations_path, "Relations CSV (identity,relation type,group)");
    cmd->add_option("--log-columns", opts.log_columns,
                    "Remap the log header: event_id,trace_id,activity,timestamp,resource");
    cmd->add_option("--templates", opts.templates,
                    "Comma-separated template names, or 'all' (default: all templates "
                    "evaluable with the given inputs)");
    if (with_thresholds) {
        cmd->add_option("--min-support", opts.min_support, "Strict support threshold (default 0.7)");
        cmd->add_option("--min-confidence", opts.min_confidence,
                        "Strict confidence threshold (default 0.5)");
        cmd->add_option("--jobs", opts.jobs, "Evaluate candidates with N threads (default 1)");
    }
}

struct LoadedInputs {
    EventLog log;
    OrgModel org;
    bool have_relations = false;
    std::string log_digest;
    std::string relations_digest;
};

LoadedInputs load_inputs(const InputOptions& opts) {
    LoadedInputs inputs;
    const std::string log_text = read_file(opts.log_path);
    inputs.log_digest = hex64(fnv1a64(log_text));
    inputs.log = parse_event_log(log_text, parse_log_columns(opts.log_columns));
    if (!opts.relations_path.empty()) {
        const std::string relations_text = read_file(opts.relations_path);
        inputs.relations_digest = hex64(fnv1a64(relations_text));
        inputs.org = parse_relations(relations_text);
        inputs.have_relations = true;
    }
    return inputs;
}

nlohmann::ordered_json report_skeleton(const InputOptions& opts, const LoadedInputs& inputs) {
    nlohmann::ordered_json report;
    report["inputs"]["log"] = {{"path", opts.log_path}, {"fnv1a64", inputs.log_digest}};
    if (inputs.have_relations)
        report["inputs"]["relations"] = {{"path", opts.relations_path},
                                         {"fnv1a64", inputs.relations_digest}};
    else
        report["inputs"]["relations"] = nullptr;
    return report;
}

int cmd_discover(const InputOptions& opts, const std::string& format, const std::string& out_path,
                 bool audit, const std::string& report_path) {
    const auto started = std::chrono::steady_clock::now();

    auto inputs = load_inputs(opts);
    DiscoveryConfig config;
    config.min_support = parse_threshold(opts.min_support, "--min-support");
    config.min_confidence = parse_threshold(opts.min_confidence, "--min-confidence");
    config.templates = parse_template_list(opts.templates, inputs.have_relations);
    config.jobs = opts.jobs;
    require_relations_for(config.templates, inputs.have_relations);

    auto index = build_occurrence_index(inputs.log);
    auto all = evaluate_all(inputs.log, inputs.org, index, config);

    std::vector<EvaluatedCandidate> output;
    if (audit) {
        output = all;
    } else {
        for (const auto& result : all) {
            if (result.passed)
                output.push_back(result);
        }
    }

    write_output(out_path, format == "json" ? results_to_json(output, audit)
                                            : results_to_csv(output, audit));

    if (!report_path.empty()) {
        std::size_t passed = 0;
        for (const auto& result : all)
            passed += result.passed ? 1 : 0;
        auto report = report_skeleton(opts, inputs);
        report["config"] = {{"min_support", to_decimal_string(config.min_support)},
                            {"min_confidence", to_decimal_string(config.min_confidence)},
                            {"jobs", config.jobs},
                            {"audit", audit}};
        nlohmann::ordered_json names = nlohmann::ordered_json::array();
        for (TemplateId id : config.templates)
            names.push_back(std::string(template_name(id)));
        report["config"]["templates"] = names;
        report["counts"] = {{"traces", inputs.log.traces().size()},
                            {"events", inputs.log.event_count()},
                            {"candidates", all.size()},
                            {"results", passed}};
        report["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - started)
                                    .count();
        write_output(report_path, report.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_validate(const InputOptions& opts, bool corrupt_index, bool listing_deltas,
                 const std::string& report_path) {
    const auto started = std::chrono::steady_clock::now();

    auto inputs = load_inputs(opts);
    DiscoveryConfig config;
    config.min_support = parse_threshold(opts.min_support, "--min-support");
    config.min_confidence = parse_threshold(opts.min_confidence, "--min-confidence");
    config.templates = parse_template_list(opts.templates, inputs.have_relations);
    config.jobs = opts.jobs;
    require_relations_for(config.templates, inputs.have_relations);

    auto index = build_occurrence_index(inputs.log);
    if (corrupt_index)
        index.corrupt_for_testing();

    auto candidates = generate_candidates(inputs.log, inputs.org, config.templates);
    std::size_t mismatches = 0;
    for (const auto& candidate : candidates) {
        const auto indexed = evaluate_candidate(candidate, inputs.log, inputs.org, index);
        const auto oracle = naive_oracle(candidate, inputs.log, inputs.org);
        if (indexed != oracle) {
            ++mismatches;
            std::cout << "MISMATCH " << template_name(candidate.template_id);
            auto show = [](const std::optional<std::string>& v) { return v ? *v : std::string("-"); };
            std::cout << "(" << show(candidate.binding.task_a) << ","
                      << show(candidate.binding.task_b) << ","
                      << show(candidate.binding.identity) << ","
                      << show(candidate.binding.group) << ")"
                      << " engine=" << indexed.activation_count << "/" << indexed.fulfilment_count
                      << "/" << indexed.condition_trace_count
                      << " oracle=" << oracle.activation_count << "/" << oracle.fulfilment_count
                      << "/" << oracle.condition_trace_count << "\n";
        }
    }

    if (listing_deltas) {
        // The published AlternateResponse/AlternatePrecedence queries
        // quantify the in-between check over every witness; report how far
        // that drifts from the worded semantics on this log.
        for (TemplateId id : {TemplateId::AlternateResponse, TemplateId::AlternatePrecedence}) {
            std::int64_t prose_total = 0;
            std::int64_t listing_total = 0;
            for (const auto& candidate : candidates) {
                if (candidate.template_id != id)
                    continue;
                for (const auto& trace : inputs.log.traces()) {
                    for (std::size_t pos : activations(id, candidate.binding, trace, inputs.org)) {
                        prose_total += is_fulfilled(id, candidate.binding, pos, trace, inputs.org);
                        listing_total +=
                            is_fulfilled_listing(id, candidate.binding, pos, trace, inputs.org);
                    }
                }
            }
            std::cout << "LISTING-DELTA " << template_name(id) << " fulfilments prose="
                      << prose_total << " listing=" << listing_total << "\n";
        }
    }

    if (!report_path.empty()) {
        auto report = report_skeleton(opts, inputs);
        report["counts"] = {{"traces", inputs.log.traces().size()},
                            {"events", inputs.log.event_count()},
                            {"candidates", candidates.size()},
                            {"mismatches", mismatches}};
        report["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - started)
                                    .count();
        write_output(report_path, report.dump(2) + "\n");
    }

    if (mismatches) {
        std::cout << mismatches << " candidate(s) diverged\n";
        return kExitDataError;
    }
    std::cout << "validated " << candidates.size() << " candidates: engine and oracle agree\n";
    return kExitOk;
}

int cmd_stats(const InputOptions& opts, const std::string& format, const std::string& out_path) {
    auto inputs = load_inputs(opts);
    const auto& log = inputs.log;

    std::size_t min_len = SIZE_MAX, max_len = 0;
    for (const auto& trace : log.traces()) {
        min_len = std::min(min_len, trace.size());
        max_len = std::max(max_len, trace.size());
    }

    if (format == "json") {
        nlohmann::ordered_json stats;
        stats["traces"] = log.traces().size();
        stats["events"] = log.event_count();
        stats["activities"] = log.alphabet();
        stats["identities"] = log.identities();
        stats["min_trace_length"] = min_len;
        stats["max_trace_length"] = max_len;
        if (inputs.have_relations) {
            stats["relations"] = inputs.org.relations().size();
            stats["role_groups"] = inputs.org.groups(kRoleRelationType);
        }
        write_output(out_path, stats.dump(2) + "\n");
        return kExitOk;
    }

    std::ostringstream out;
    out << "traces:      " << log.traces().size() << "\n";
    out << "events:      " << log.event_count() << "\n";
    out << "activities:  " << log.alphabet().size() << " (";
    for (std::size_t i = 0; i < log.alphabet().size(); ++i)
        out << (i ? ", " : "") << log.alphabet()[i];
    out << ")\n";
    out << "identities:  " << log.identities().size() << "\n";
    out << "trace length: " << min_len << ".." << max_len << "\n";
    if (inputs.have_relations) {
        out << "relations:   " << inputs.org.relations().size() << "\n";
        auto groups = inputs.org.groups(kRoleRelationType);
        out << "role groups: " << groups.size() << " (";
        for (std::size_t i = 0; i < groups.size(); ++i)
            out << (i ? ", " : "") << groups[i];
        out << ")\n";
    }
    write_output(out_path, out.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Declarative constraint discovery over relational event logs"};
    app.require_subcommand(1);

    // discover
    InputOptions discover_opts;
    std::string discover_format = "csv";
    std::string discover_out;
    std::string discover_report;
    bool discover_audit = false;
    auto* discover_cmd =
        app.add_subcommand("discover", "Mine constraints that pass the support/confidence gates");
    add_input_options(discover_cmd, discover_opts);
    discover_cmd->add_option("--format", discover_format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    discover_cmd->add_option("--out", discover_out, "Result file (default stdout)");
    discover_cmd->add_flag("--audit", discover_audit,
                           "Emit every candidate with raw counts and a passed column");
    discover_cmd->add_option("--report", discover_report, "Write a JSON run report here");

    // validate
    InputOptions validate_opts;
    bool corrupt_index = false;
    bool listing_deltas = false;
    std::string validate_report;
    auto* validate_cmd = app.add_subcommand(
        "validate", "Differential check: indexed engine vs. brute-force oracle");
    add_input_options(validate_cmd, validate_opts);
    validate_cmd->add_flag("--corrupt-index", corrupt_index,
                           "Fault-injection hook: perturb the index before checking");
    validate_cmd->add_flag("--listing-deltas", listing_deltas,
                           "Also report prose-vs-published-query fulfilment deltas");
    validate_cmd->add_option("--report", validate_report, "Write a JSON run report here");

    // stats
    InputOptions stats_opts;
    std::string stats_format = "text";
    std::string stats_out;
    auto* stats_cmd = app.add_subcommand("stats", "Summarize an event log");
    add_input_options(stats_cmd, stats_opts, /*with_thresholds=*/false);
    stats_cmd->add_option("--format", stats_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    stats_cmd->add_option("--out", stats_out, "Output file (default stdout)");

    // emit-sql
    std::string emit_template;
    bool emit_all = false;
    bool emit_union_flag = false;
    std::string emit_mode = "corrected";
    std::string emit_min_support = "0.7";
    std::string emit_min_confidence = "0.5";
    std::string emit_out;
    SchemaConfig schema;
    auto* emit_cmd = app.add_subcommand("emit-sql", "Regenerate the discovery queries as SQL text");
    emit_cmd->add_option("--template", emit_template, "Template name (Response, ChainPrecedence, ...)");
    emit_cmd->add_flag("--all", emit_all, "Emit every template");
    emit_cmd->add_flag("--union", emit_union_flag, "Join the selected queries with UNION");
    emit_cmd->add_option("--mode", emit_mode, "verbatim or corrected (default corrected)")
        ->check(CLI::IsMember({"verbatim", "corrected"}));
    emit_cmd->add_option("--min-support", emit_min_support, "Support literal (default 0.7)");
    emit_cmd->add_option("--min-confidence", emit_min_confidence, "Confidence literal (default 0.5)");
    emit_cmd->add_option("--out", emit_out, "Output file (default stdout)");
    emit_cmd->add_option("--table", schema.log_table, "Log table name (default Log)");
    emit_cmd->add_option("--col-task", schema.task_column, "Activity column (default Task)");
    emit_cmd->add_option("--col-instance", schema.instance_column, "Trace column (default Instance)");
    emit_cmd->add_option("--col-time", schema.time_column, "Timestamp column (default Time)");
    emit_cmd->add_option("--col-resource", schema.resource_column, "Resource column (default Resource)");
    emit_cmd->add_option("--relation-table", schema.relation_table, "Relations table (default Relation)");
    emit_cmd->add_option("--col-rel-resource", schema.relation_resource_column,
                         "Relation resource column (default Resource)");
    emit_cmd->add_option("--col-rel-type", schema.relation_type_column,
                         "Relation type column (default RelationType)");
    emit_cmd->add_option("--col-rel-group", schema.relation_group_column,
                         "Relation group column (default Group)");

    // generate
    GeneratorConfig gen_config;
    std::string gen_out;
    std::string gen_bookkeeping;
    std::string gen_plant_template;
    double gen_plant_rate = 1.0;
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic event log");
    generate_cmd->add_option("--out", gen_out, "Log file to write")->required();
    generate_cmd->add_option("--traces", gen_config.trace_count, "Trace count (default 10)");
    generate_cmd->add_option("--alphabet", gen_config.alphabet_size, "Alphabet size (default 6)");
    generate_cmd->add_option("--resources", gen_config.resource_count, "Resource pool size (default 3)");
    generate_cmd->add_option("--min-length", gen_config.min_trace_length, "Min trace length (default 1)");
    generate_cmd->add_option("--max-length", gen_config.max_trace_length, "Max trace length (default 10)");
    generate_cmd->add_option("--seed", gen_config.seed, "RNG seed (default 1)");
    generate_cmd->add_option("--plant-template", gen_plant_template,
                             "Plant a constraint: Response or ChainResponse");
    generate_cmd->add_option("--plant-a", gen_config.plant_task_a, "Planted activation activity (default a)");
    generate_cmd->add_option("--plant-b", gen_config.plant_task_b, "Planted witness activity (default b)");
    generate_cmd->add_option("--plant-rate", gen_plant_rate,
                             "Target per-activation satisfaction rate (default 1.0)");
    generate_cmd->add_option("--bookkeeping", gen_bookkeeping,
                             "Write the generator's exact ground truth JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsageError;
    }

    try {
        if (discover_cmd->parsed())
            return cmd_discover(discover_opts, discover_format, discover_out, discover_audit,
                                discover_report);
        if (validate_cmd->parsed())
            return cmd_validate(validate_opts, corrupt_index, listing_deltas, validate_report);
        if (stats_cmd->parsed())
            return cmd_stats(stats_opts, stats_format, stats_out);

        if (emit_cmd->parsed()) {
            const Rational min_support = parse_threshold(emit_min_support, "--min-support");
            const Rational min_confidence = parse_threshold(emit_min_confidence, "--min-confidence");
            const EmitMode mode = emit_mode == "verbatim" ? EmitMode::Verbatim : EmitMode::Corrected;

            std::vector<TemplateId> templates;
            if (emit_all) {
                templates.assign(kAllTemplates.begin(), kAllTemplates.end());
            } else if (!emit_template.empty()) {
                auto id = template_from_name(emit_template);
                if (!id)
                    throw UsageError("unknown template '" + emit_template + "'");
                templates.push_back(*id);
            } else {
                throw UsageError("emit-sql needs --template <name> or --all");
            }

            std::string text;
            if (emit_union_flag) {
                text = emit_union(templates, schema, min_support, min_confidence, mode);
            } else {
                for (std::size_t i = 0; i < templates.size(); ++i) {
                    if (i)
                        text += "\n";
                    text += emit_sql(templates[i], schema, min_support, min_confidence, mode);
                }
            }
            write_output(emit_out, text);
            return kExitOk;
        }

        if (generate_cmd->parsed()) {
            if (!gen_plant_template.empty()) {
                auto id = template_from_name(gen_plant_template);
                if (!id)
                    throw UsageError("unknown template '" + gen_plant_template + "'");
                gen_config.plant = true;
                gen_config.plant_template = *id;
                gen_config.plant_rate = gen_plant_rate;
            }
            auto generated = generate_log(gen_config);
            write_output(gen_out, generated.csv);
            if (!gen_bookkeeping.empty()) {
                nlohmann::ordered_json truth;
                truth["trace_count"] = generated.bookkeeping.trace_count;
                truth["event_count"] = generated.bookkeeping.event_count;
                truth["distinct_activities"] = generated.bookkeeping.distinct_activities;
                if (gen_config.plant) {
                    truth["planted"] = {
                        {"template", std::string(template_name(gen_config.plant_template))},
                        {"task_a", gen_config.plant_task_a},
                        {"task_b", gen_config.plant_task_b},
                        {"rate", gen_plant_rate},
                        {"activation_count", generated.bookkeeping.activation_count},
                        {"fulfilment_count", generated.bookkeeping.fulfilment_count},
                        {"traces_with_condition", generated.bookkeeping.traces_with_condition},
                    };
                } else {
                    truth["planted"] = nullptr;
                }
                write_output(gen_bookkeeping, truth.dump(2) + "\n");
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const ValidationError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}
