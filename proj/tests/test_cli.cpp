// End-to-end checks of the command-line tool: exit codes, stream
// separation, CSV/JSON shape and reproducibility. Runs the built binary.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream file(path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout.tmp";
    const std::string err_path = "cli_stderr.tmp";
    std::string command = std::string(NOONSIM_CLI_PATH) + " " + args + " > " + out_path +
                          " 2> " + err_path;
    int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_CASE("noon4 --pnr prints the headline probability and exact amplitudes") {
    RunResult r = run_cli("noon4 --pnr");
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.find("success_prob,,,0.1875,0") != std::string::npos);
    CHECK(r.out.find("amplitude") != std::string::npos);

    auto rows = parse_csv(r.out);
    REQUIRE(!rows.empty());
    CHECK(rows[0] == std::vector<std::string>{"record", "name", "occupation", "re", "im"});
    for (const auto& row : rows) CHECK(row.size() == 5);
}

TEST_CASE("threshold prints a crossing near 0.519") {
    RunResult r = run_cli("threshold");
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    double eta = std::stod(rows[1][1]);
    CHECK(eta > 0.517);
    CHECK(eta < 0.521);
}

TEST_CASE("a bad script exits with code 3 and reports the line") {
    const std::string path = "bad_circuit.tmp.cir";
    {
        std::ofstream file(path);
        file << "paths a b\nbs a b 0.8 0.8\n";
    }
    RunResult r = run_cli("run " + path);
    std::remove(path.c_str());
    CHECK(r.exit_code == 3);
    CHECK(r.out.empty());
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("teleport").exit_code == 2);
    CHECK(run_cli("noon4 --t2 nonsense").exit_code == 2);
    CHECK(run_cli("metrology --eta-grid 1:0:-1").exit_code == 2);
    CHECK(run_cli("metrology --eta-grid 0.9:0.1:0.1").exit_code == 2);
    CHECK(run_cli("run does_not_exist.cir").exit_code == 2);
}

TEST_CASE("domain errors exit with code 4") {
    const std::string path = "occupied_mode.tmp.cir";
    {
        std::ofstream file(path);
        file << "paths a\nphoton a H\nphoton a H\n";
    }
    RunResult r = run_cli("run " + path);
    std::remove(path.c_str());
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("json output parses and mirrors the csv headline") {
    RunResult r = run_cli("noon4 --pnr --format json");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["success_prob"].get<double>() == doctest::Approx(0.1875).epsilon(1e-12));
    CHECK(doc["register"].size() == 2);
    CHECK(doc["branches"].size() == 1);
}

TEST_CASE("fig4 rows pin the ideal point and bracket the shot-noise crossing") {
    RunResult r = run_cli("fig4");
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() >= 100);
    CHECK(rows[0] == std::vector<std::string>{"eta", "delta_phi", "fidelity", "shot_noise"});

    double at_051 = 0, at_052 = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double eta = std::stod(rows[i][0]);
        double delta_phi = std::stod(rows[i][1]);
        if (std::abs(eta - 0.51) < 1e-9) at_051 = delta_phi;
        if (std::abs(eta - 0.52) < 1e-9) at_052 = delta_phi;
        if (std::abs(eta - 1.0) < 1e-9) {
            CHECK(delta_phi == doctest::Approx(0.25).epsilon(1e-10));
            CHECK(std::stod(rows[i][2]) == doctest::Approx(1.0).epsilon(1e-10));
        }
        CHECK(std::stod(rows[i][3]) == 0.5);
    }
    CHECK(at_051 > 0.5);
    CHECK(at_052 < 0.5);
}

TEST_CASE("fig2 keeps high fidelity at eta close to 1 for n = 4") {
    RunResult r = run_cli("fig2 --eta-grid 0.95:1:0.05");
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    bool seen_n4 = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] == "4" && std::stod(rows[i][1]) == 1.0) {
            seen_n4 = true;
            CHECK(std::stod(rows[i][3]) >= 0.99);
        }
    }
    CHECK(seen_n4);
}

TEST_CASE("identical invocations produce byte-identical data") {
    RunResult first = run_cli("metrology --eta-grid 0.5:1:0.25 --phi-grid 0.1:0.5:0.2");
    RunResult second = run_cli("metrology --eta-grid 0.5:1:0.25 --phi-grid 0.1:0.5:0.2");
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(!first.out.empty());
}

TEST_CASE("--output writes the data stream to a file") {
    const std::string path = "cli_data.tmp.csv";
    RunResult r = run_cli("hom lr --output " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::string data = slurp(path);
    std::remove(path.c_str());
    CHECK(data.find("success_prob,,,1,0") != std::string::npos);
}

TEST_CASE("the shipped example scripts run to the documented numbers") {
    RunResult noon8 = run_cli(std::string("run ") + NOONSIM_DOCS_DIR + "/circuits/noon8.cir");
    CHECK(noon8.exit_code == 0);
    CHECK(noon8.out.find("success_prob,,,0.00480651855469,0") != std::string::npos);

    RunResult hom = run_cli(std::string("run ") + NOONSIM_DOCS_DIR + "/circuits/hom_da.cir");
    CHECK(hom.exit_code == 0);
    CHECK(hom.out.find("success_prob,,,1,0") != std::string::npos);

    RunResult noon4 = run_cli(std::string("run ") + NOONSIM_DOCS_DIR + "/circuits/noon4.cir");
    CHECK(noon4.exit_code == 0);
    CHECK(noon4.out.find("success_prob,,,0.1875,0") != std::string::npos);
}
