#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end tests of the installed binary: exit codes, output contracts and
// the byte-determinism guarantee. TRADEQ_CLI comes from the build system.

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef TRADEQ_CLI
#error "TRADEQ_CLI must point at the tradeq binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string temp_path(const std::string& stem) {
    return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/tradeq_test_" +
           stem;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

RunResult run_cli(const std::string& args, const std::string& stem) {
    const std::string out_path = temp_path(stem + ".out");
    const std::string cmd =
        std::string(TRADEQ_CLI) + " " + args + " > " + out_path + " 2> " + out_path + ".err";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = read_file(out_path);
    return result;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("solve on a bundled instance emits the result document") {
    const auto run = run_cli("solve --fixture ideal_2x2", "solve_ideal");
    CHECK(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["converged"] == true);
    CHECK(doc["degeneracy"] == 0);
    CHECK(doc.contains("recession_level_proxy"));
}

TEST_CASE("shares csv carries the published China row") {
    const auto run = run_cli("shares --fixture fig1_2020 --format csv", "shares_fig1");
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("2020,China,country_supply_share,0.28\n") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("solve --year 2020", "usage_no_input").exit_code == 2);
    CHECK(run_cli("solve --fixture ideal_2x2 --frobnicate", "usage_unknown_flag").exit_code == 2);
    CHECK(run_cli("transmogrify", "usage_unknown_cmd").exit_code == 2);
    CHECK(run_cli("solve --fixture ideal_2x2 --format yaml", "usage_bad_format").exit_code == 2);
    CHECK(run_cli("solve --fixture ideal_2x2 --gamma 7", "usage_bad_gamma").exit_code == 2);
    CHECK(run_cli("dynamics --fixture fig1_2020", "usage_single_dynamics").exit_code == 2);
}

TEST_CASE("domain errors exit with code 1") {
    CHECK(run_cli("shares --fixture nope", "domain_unknown_fixture").exit_code == 1);
    CHECK(run_cli("solve --input /nonexistent.csv --year 2020", "domain_missing_file")
              .exit_code == 1);
    CHECK(run_cli("solve --fixture fig1_2020", "domain_caption_solve").exit_code == 1);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help", "help").exit_code == 0);
    CHECK(run_cli("solve --help", "help_solve").exit_code == 0);
}

TEST_CASE("report output is byte-identical across runs") {
    const auto a = run_cli("report --fixture degenerate_2x2", "determinism_a");
    const auto b = run_cli("report --fixture degenerate_2x2", "determinism_b");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(!a.output.empty());
    CHECK(a.output == b.output);
}

TEST_CASE("file ingestion end to end") {
    const std::string csv_path = temp_path("flows.csv");
    write_file(csv_path, "year,reporter,partner,product,direction,value_usd\n"
                         "2020,K1,K2,G1,import,1\n"
                         "2020,K2,K1,G2,import,1\n"
                         "2020,K1,K2,G2,export,1\n"
                         "2020,K2,K1,G1,export,1\n");
    const std::string countries_path = temp_path("countries.txt");
    write_file(countries_path, "K1\nK2\n");
    const std::string goods_path = temp_path("goods.txt");
    write_file(goods_path, "G1\nG2\n");
    const std::string common = " --input " + csv_path + " --countries " + countries_path +
                               " --goods " + goods_path;

    SUBCASE("ingest-check summarizes the file") {
        const auto run = run_cli("ingest-check" + common, "ingest_check");
        CHECK(run.exit_code == 0);
        const auto doc = nlohmann::json::parse(run.output);
        CHECK(doc["records"] == 4);
        CHECK(doc["years"][0] == 2020);
        CHECK(doc["unknown_label_records"] == 0);
    }
    SUBCASE("solve on the balanced file converges at ones") {
        const auto run = run_cli("solve --year 2020" + common, "solve_file");
        CHECK(run.exit_code == 0);
        const auto doc = nlohmann::json::parse(run.output);
        CHECK(doc["converged"] == true);
        CHECK(doc["p0"][0] == 1.0);
        CHECK(doc["p0"][1] == 1.0);
        CHECK(doc["year"] == 2020);
    }
    SUBCASE("strict mode reports unknown labels") {
        write_file(csv_path, "year,reporter,partner,product,direction,value_usd\n"
                             "2020,K1,K9,G1,import,1\n");
        CHECK(run_cli("ingest-check" + common, "ingest_unknown").exit_code == 1);
        const auto lenient = run_cli("ingest-check --lenient" + common, "ingest_lenient");
        CHECK(lenient.exit_code == 0);
        CHECK(nlohmann::json::parse(lenient.output)["unknown_label_records"] == 1);
    }
    SUBCASE("malformed file names the offending row") {
        write_file(csv_path, "year,reporter,partner,product,direction,value_usd\n"
                             "2020,K1,K1,G1,import,1\n");
        const auto run = run_cli("ingest-check" + common, "ingest_selfflow");
        CHECK(run.exit_code == 1);
    }
}

TEST_CASE("dynamics over published fixtures") {
    const auto run = run_cli(
        "dynamics --fixture fig1_2020 --fixture fig2_2021 --fixture fig3_2022 --format csv",
        "dynamics_fixtures");
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("2021,China,country_supply_share_delta,0.011\n") != std::string::npos);
}

TEST_CASE("multiple input files merge additively") {
    const std::string a_path = temp_path("merge_a.csv");
    const std::string b_path = temp_path("merge_b.csv");
    write_file(a_path, "year,reporter,partner,product,direction,value_usd\n"
                       "2020,K1,K2,G1,import,2\n");
    write_file(b_path, "year,reporter,partner,product,direction,value_usd\n"
                       "2020,K1,K2,G1,import,3\n"
                       "2020,K2,K1,G1,export,5\n");
    const std::string countries_path = temp_path("merge_countries.txt");
    write_file(countries_path, "K1\nK2\n");
    const std::string goods_path = temp_path("merge_goods.txt");
    write_file(goods_path, "G1\n");
    const auto run = run_cli("shares --year 2020 --input " + a_path + " --input " + b_path +
                                 " --countries " + countries_path + " --goods " + goods_path,
                             "merge_inputs");
    CHECK(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["country_demand_shares"]["K1"] == 1.0); // 2 + 3 from both files
    CHECK(doc["country_supply_shares"]["K2"] == 1.0);
}

TEST_CASE("multiple share reports are wrapped in one document") {
    const auto run =
        run_cli("shares --fixture fig1_2020 --fixture fig2_2021", "shares_multi");
    CHECK(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    REQUIRE(doc.contains("reports"));
    CHECK(doc["reports"].size() == 2);
    CHECK(doc["reports"][1]["year"] == 2021);
}

TEST_CASE("multi-year file runs order results by year") {
    const std::string csv_path = temp_path("multi.csv");
    write_file(csv_path, "year,reporter,partner,product,direction,value_usd\n"
                         "2021,K1,K2,G1,import,2\n"
                         "2021,K2,K1,G1,export,2\n"
                         "2021,K2,K1,G1,import,2\n"
                         "2021,K1,K2,G1,export,2\n"
                         "2020,K1,K2,G1,import,1\n"
                         "2020,K2,K1,G1,export,1\n"
                         "2020,K2,K1,G1,import,1\n"
                         "2020,K1,K2,G1,export,1\n");
    const std::string countries_path = temp_path("multi_countries.txt");
    write_file(countries_path, "K1\nK2\n");
    const std::string goods_path = temp_path("multi_goods.txt");
    write_file(goods_path, "G1\n");
    const auto run = run_cli("solve --year 2021 --year 2020 --input " + csv_path +
                                 " --countries " + countries_path + " --goods " + goods_path,
                             "multi_year");
    CHECK(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    REQUIRE(doc.contains("results"));
    CHECK(doc["results"].size() == 2);
    CHECK(doc["results"][0]["year"] == 2020);
    CHECK(doc["results"][1]["year"] == 2021);
}
