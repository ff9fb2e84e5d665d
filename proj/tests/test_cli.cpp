#include <doctest.h>

#include "testing_support.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
namespace ts = testing_support;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout only
};

/// Runs the CLI with stderr routed to a scratch file; asserting on exit
/// codes and stdout is what the contract cares about.
RunResult run_cli(const std::string& args) {
    const fs::path out_path = fs::temp_directory_path() / "declmine_cli_out.txt";
    const std::string command = std::string(DECLMINE_CLI_PATH) + " " + args + " >" +
                                out_path.string() + " 2>" + out_path.string() + ".err";
    const int status = std::system(command.c_str());
    RunResult result;
#ifdef _WIN32
    result.exit_code = status;
#else
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
    std::ifstream in(out_path, std::ios::binary);
    result.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("declmine_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string sample_log_arg() {
    return "--log " + ts::data_path("sample_log.csv");
}

std::string sample_args() {
    return sample_log_arg() + " --relations " + ts::data_path("sample_relations.csv");
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("discover finds the worked example with default thresholds") {
    auto result = run_cli("discover " + sample_args() + " --templates all");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("Response,a,b,,,4,3,0.75,0.75,0.5625") != std::string::npos);
}

TEST_CASE("zero results still exits 0") {
    auto result = run_cli("discover " + sample_log_arg() +
                          " --templates Response --min-support 0.99 --min-confidence 0.99");
    CHECK(result.exit_code == 0);
    // Header only.
    CHECK(result.output.find("Response,a,b") == std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("discover " + sample_log_arg() + " --templates Response --min-support 1.1")
              .exit_code == 2);
    CHECK(run_cli("discover " + sample_log_arg() + " --templates NoSuchTemplate").exit_code == 2);
    CHECK(run_cli("discover " + sample_log_arg() + " --templates RoleBasedAllocation")
              .exit_code == 2); // role template without --relations
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
    CHECK(run_cli("emit-sql").exit_code == 2); // neither --template nor --all
}

TEST_CASE("data errors exit 1") {
    TempDir dir;
    {
        std::ofstream bad(dir.file("bad.csv"));
        bad << "event_id,trace_id,activity,timestamp,resource\n";
        bad << "e1,t1,a,not-a-time,i1\n";
    }
    auto result = run_cli("discover --log " + dir.file("bad.csv") + " --templates Response");
    CHECK(result.exit_code == 1);
    CHECK(run_cli("discover --log " + dir.file("missing.csv") + " --templates Response")
              .exit_code == 1);
}

TEST_CASE("audit output contains every candidate and agrees with the filtered view") {
    auto audit = run_cli("discover " + sample_args() + " --templates all --audit");
    auto filtered = run_cli("discover " + sample_args() + " --templates all");
    REQUIRE(audit.exit_code == 0);
    REQUIRE(filtered.exit_code == 0);

    // Reconstruct the filtered view from the audit rows.
    std::istringstream audit_stream(audit.output);
    std::string line;
    std::string reconstructed;
    bool first = true;
    while (std::getline(audit_stream, line)) {
        if (first) {
            first = false;
            continue;
        }
        const auto last_comma = line.rfind(',');
        REQUIRE(last_comma != std::string::npos);
        if (line.substr(last_comma + 1) == "true")
            reconstructed += line.substr(0, last_comma) + "\n";
    }
    std::string expected = filtered.output;
    expected.erase(0, expected.find('\n') + 1); // drop header
    CHECK(reconstructed == expected);
}

TEST_CASE("json output is well-formed and schema-stable") {
    auto result = run_cli("discover " + sample_args() + " --templates all --format json");
    REQUIRE(result.exit_code == 0);
    auto parsed = nlohmann::json::parse(result.output);
    REQUIRE(parsed.is_array());
    REQUIRE_FALSE(parsed.empty());
    for (const auto& entry : parsed) {
        CHECK(entry.contains("template"));
        CHECK(entry.contains("task_a"));
        CHECK(entry.contains("identity")); // explicit null when unused
        CHECK(entry.contains("support"));
    }
}

TEST_CASE("jobs do not change the bytes") {
    TempDir dir;
    auto one = run_cli("discover " + sample_args() + " --templates all --jobs 1 --out " +
                       dir.file("one.csv"));
    auto eight = run_cli("discover " + sample_args() + " --templates all --jobs 8 --out " +
                         dir.file("eight.csv"));
    REQUIRE(one.exit_code == 0);
    REQUIRE(eight.exit_code == 0);
    CHECK(ts::read_file(dir.file("one.csv")) == ts::read_file(dir.file("eight.csv")));
}

TEST_CASE("validate agrees on the sample and fails under fault injection") {
    CHECK(run_cli("validate " + sample_args()).exit_code == 0);

    auto corrupted = run_cli("validate " + sample_args() + " --corrupt-index");
    CHECK(corrupted.exit_code == 1);
    CHECK(corrupted.output.find("MISMATCH") != std::string::npos);
}

TEST_CASE("validate exits 0 across a 100-seed random-log sweep") {
    TempDir dir;
    {
        std::ofstream relations(dir.file("relations.csv"));
        relations << "resource,relation_type,group\n";
        relations << "i1,role,G1\ni2,role,G2\ni3,role,G1\ni4,role,G3\ni5,role,G2\n";
    }
    for (int seed = 1; seed <= 100; ++seed) {
        const std::string log_file = dir.file("sweep.csv");
        auto generated = run_cli("generate --out " + log_file + " --seed " +
                                 std::to_string(seed) + " --traces " +
                                 std::to_string(2 + seed % 9) + " --alphabet " +
                                 std::to_string(2 + seed % 7) + " --resources " +
                                 std::to_string(1 + seed % 5) + " --max-length " +
                                 std::to_string(2 + seed % 11));
        REQUIRE(generated.exit_code == 0);
        auto validated = run_cli("validate --log " + log_file + " --relations " +
                                 dir.file("relations.csv") + " --templates all");
        REQUIRE_MESSAGE(validated.exit_code == 0, "seed ", seed, ": ", validated.output);
    }
}

TEST_CASE("run report counts match the result file") {
    TempDir dir;
    auto result = run_cli("discover " + sample_args() + " --templates all --out " +
                          dir.file("results.csv") + " --report " + dir.file("report.json"));
    REQUIRE(result.exit_code == 0);

    auto report = nlohmann::json::parse(ts::read_file(dir.file("report.json")));
    CHECK(report["counts"]["traces"] == 4);
    CHECK(report["counts"]["events"] == 12);

    std::string results_csv = ts::read_file(dir.file("results.csv"));
    std::size_t rows = 0;
    for (char c : results_csv)
        rows += c == '\n' ? 1 : 0;
    CHECK(report["counts"]["results"] == rows - 1); // minus header
    CHECK(report["inputs"]["log"]["fnv1a64"].is_string());
}

TEST_CASE("generate then discover recovers the planted constraint") {
    TempDir dir;
    auto generate = run_cli("generate --out " + dir.file("log.csv") +
                            " --traces 50 --alphabet 6 --resources 4 --min-length 3 "
                            "--max-length 9 --seed 11 --plant-template Response "
                            "--plant-rate 1.0 --bookkeeping " +
                            dir.file("truth.json"));
    REQUIRE(generate.exit_code == 0);

    auto truth = nlohmann::json::parse(ts::read_file(dir.file("truth.json")));
    CHECK(truth["planted"]["fulfilment_count"] == truth["planted"]["activation_count"]);

    auto discovered = run_cli("discover --log " + dir.file("log.csv") + " --templates Response");
    REQUIRE(discovered.exit_code == 0);
    CHECK(discovered.output.find("Response,a,b,") != std::string::npos);

    // Determinism: the same seed regenerates the same bytes.
    auto again = run_cli("generate --out " + dir.file("log2.csv") +
                         " --traces 50 --alphabet 6 --resources 4 --min-length 3 "
                         "--max-length 9 --seed 11 --plant-template Response --plant-rate 1.0");
    REQUIRE(again.exit_code == 0);
    CHECK(ts::read_file(dir.file("log.csv")) == ts::read_file(dir.file("log2.csv")));
}

TEST_CASE("generate rejects contradictory plants with a usage error") {
    TempDir dir;
    CHECK(run_cli("generate --out " + dir.file("x.csv") +
                  " --max-length 1 --plant-template ChainResponse --plant-rate 1.0")
              .exit_code == 2);
}

TEST_CASE("stats summarizes the log") {
    auto text = run_cli("stats " + sample_args());
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("traces:      4") != std::string::npos);

    auto json = run_cli("stats " + sample_args() + " --format json");
    REQUIRE(json.exit_code == 0);
    auto parsed = nlohmann::json::parse(json.output);
    CHECK(parsed["events"] == 12);
    CHECK(parsed["activities"].size() == 4);
}

TEST_CASE("emit-sql writes golden-identical text through the CLI") {
    TempDir dir;
    auto result = run_cli("emit-sql --template Response --mode verbatim --out " +
                          dir.file("response.sql"));
    REQUIRE(result.exit_code == 0);
    CHECK(ts::read_file(dir.file("response.sql")) ==
          ts::read_file(ts::golden_path("response.verbatim.sql")));

    auto union_result = run_cli("emit-sql --all --union --mode corrected");
    CHECK(union_result.exit_code == 0);
}

} // TEST_SUITE
