#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout only
};

RunResult run_cli(const std::string& args, const std::string& stdout_path) {
    const std::string command =
        std::string(HOSC_CLI_PATH) + " " + args + " >" + stdout_path + " 2>/dev/null";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    std::ifstream in(stdout_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "hosc_cli_tests";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("spectrum command") {
    const auto out = (temp_dir() / "spectrum.csv").string();

    auto result = run_cli("spectrum --ratio 3:2 --omega 1 --emax 3", out);
    CHECK(result.exit_code == 0);
    auto lines = data_lines(result.output);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "energy,degeneracy,lambda1,lambda2,members");
    const auto first = split(lines[1]);
    CHECK(std::stod(first[0]) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
    CHECK(first[1] == "1");
    CHECK(first[2] == "0");
    CHECK(first[3] == "0");

    result = run_cli("spectrum --omega1 1 --omega2 1 --emax 3.5", out);
    CHECK(result.exit_code == 0);
    lines = data_lines(result.output);
    REQUIRE(lines.size() == 4);
    for (int n = 1; n <= 3; ++n) {
        const auto row = split(lines[n]);
        CHECK(std::stod(row[0]) == doctest::Approx(static_cast<double>(n)));
        CHECK(row[1] == std::to_string(n));
        CHECK(row[2] == ""); // no irrep label outside the commensurate regime
    }

    // --emax 0: header only
    result = run_cli("spectrum --ratio 3:2 --emax 0", out);
    CHECK(result.exit_code == 0);
    CHECK(data_lines(result.output).size() == 1);
}

TEST_CASE("dos command compares semiclassics with the exact spectrum") {
    const auto out = (temp_dir() / "dos.json").string();
    const auto result = run_cli(
        "dos --ratio 3:2 --omega 1 --mode both --sigma 0.02 --grid 0.05:5:500 --format json",
        out);
    CHECK(result.exit_code == 0);
    const json root = json::parse(result.output);
    CHECK(root["meta"]["max_rel_discrepancy"].get<double>() < 1e-5);
    CHECK(root["data"]["E"].size() == 500);
    CHECK(root["data"]["total_sc"].size() == 500);
    CHECK(root["data"]["family"].size() == 500);
    CHECK(root["data"]["isolated"].size() == 500);

    // incommensurate golden ratio window
    const auto golden = run_cli("dos --omega1 1 --omega2 1.6180339887 --incommensurate "
                                "--mode both --sigma 0.05 --grid 0.5:15:400 --format json",
                                out);
    CHECK(golden.exit_code == 0);
    const json groot = json::parse(golden.output);
    CHECK(groot["meta"]["max_rel_discrepancy"].get<double>() < 1e-5);
    CHECK(!groot["data"].contains("family"));

    // nonpositive grid start is a usage error
    CHECK(run_cli("dos --ratio 3:2 --grid -1:5:100", out).exit_code == 2);

    // undeclared rational ratios are refused rather than silently classified
    CHECK(run_cli("dos --omega1 2 --omega2 3 --grid 0.5:5:100", out).exit_code == 2);
}

TEST_CASE("reduced-dos command") {
    const auto out = (temp_dir() / "reduced.json").string();
    const auto result = run_cli(
        "reduced-dos --ratio 3:2 --lambda1 0 --lambda2 0 --sigma 0.02 --grid 0.05:3:1200 "
        "--format json",
        out);
    CHECK(result.exit_code == 0);
    const json root = json::parse(result.output);
    const auto& energies = root["data"]["E"];
    const auto& exact = root["data"]["exact_reduced_smoothed"];
    // the filtered spectrum peaks at 5/12, 17/12, 29/12
    double best_energy = 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (exact[i].get<double>() > best) {
            best = exact[i].get<double>();
            best_energy = energies[i].get<double>();
        }
    }
    CHECK(std::abs(best_energy - 29.0 / 12.0) < 0.01);

    CHECK(run_cli("reduced-dos --ratio 3:2 --lambda1 3 --lambda2 0", out).exit_code == 2);
    CHECK(run_cli("reduced-dos --omega1 1 --omega2 1.618 --incommensurate --lambda1 0 --lambda2 0",
                  out)
              .exit_code == 2);
}

TEST_CASE("figure3 command emits three panels") {
    const auto dir = temp_dir();
    const auto prefix = (dir / "fig").string();
    const auto out = (dir / "fig_log.txt").string();
    const auto result =
        run_cli("figure3 --grid 0.02:3:1500 --sigma 0.02 --out " + prefix, out);
    CHECK(result.exit_code == 0);
    REQUIRE(fs::exists(prefix + "_a.csv"));
    REQUIRE(fs::exists(prefix + "_b.csv"));
    REQUIRE(fs::exists(prefix + "_c.csv"));

    std::ifstream a_file(prefix + "_a.csv");
    std::stringstream a_text;
    a_text << a_file.rdbuf();
    const auto a_lines = data_lines(a_text.str());
    REQUIRE(!a_lines.empty());
    // six labeled irrep series plus E and the panel sum
    const auto header = split(a_lines[0]);
    int irrep_columns = 0;
    for (const auto& name : header) {
        if (name.rfind("irrep_", 0) == 0) ++irrep_columns;
    }
    CHECK(irrep_columns == 6);
    CHECK(header.back() == "family_plus_classical");

    // panel b: the first isolated contributions sit under the first two
    // panel-a peaks (1/12 and 1/4) with opposite sign
    std::ifstream b_file(prefix + "_b.csv");
    std::stringstream b_text;
    b_text << b_file.rdbuf();
    const auto b_lines = data_lines(b_text.str());
    std::ifstream c_file(prefix + "_c.csv");
    std::stringstream c_text;
    c_text << c_file.rdbuf();
    const auto c_lines = data_lines(c_text.str());
    REQUIRE(b_lines.size() == c_lines.size());
    double worst_cancel = 0.0;
    for (std::size_t i = 1; i < b_lines.size(); ++i) {
        const auto b_row = split(b_lines[i]);
        const double e = std::stod(b_row[0]);
        if (std::abs(e - 1.0 / 12.0) < 0.02 || std::abs(e - 0.25) < 0.02) {
            const auto a_row = split(a_lines[i]);
            const double family_side = std::stod(a_row.back());
            const double isolated = std::stod(b_row[3]);
            worst_cancel = std::max(worst_cancel, std::abs(family_side + isolated));
        }
    }
    CHECK(worst_cancel < 1e-8);
}

TEST_CASE("trajectory command") {
    const auto out = (temp_dir() / "trajectory.csv").string();
    auto result = run_cli(
        "trajectory --ratio 3:2 --q1 0.4 --p1 0.3 --q2 -0.2 --p2 0.5 "
        "--tmax 37.699111843077517 --samples 600 --segments",
        out);
    CHECK(result.exit_code == 0);
    auto lines = data_lines(result.output);
    REQUIRE(lines.size() == 601);
    CHECK(split(lines[0])
          == std::vector<std::string>{"t", "q1", "p1", "q2", "p2", "theta1", "theta2",
                                      "cell_lambda1", "cell_lambda2"});
    std::set<std::pair<std::string, std::string>> cells;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split(lines[i]);
        cells.insert({row[7], row[8]});
    }
    CHECK(cells.size() == 6); // one label per elementary cell over one period

    // a normal-mode start keeps q2 = p2 = 0 (no --segments: angles undefined)
    result = run_cli("trajectory --ratio 3:2 --q1 1 --p1 0 --tmax 10 --samples 100", out);
    CHECK(result.exit_code == 0);
    lines = data_lines(result.output);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split(lines[i]);
        CHECK(std::stod(row[3]) == 0.0);
        CHECK(std::stod(row[4]) == 0.0);
    }

    // 5:4 yields 20 segments per period
    result = run_cli("trajectory --ratio 5:4 --q1 0.4 --p1 0.3 --q2 -0.2 --p2 0.5 "
                     "--tmax 125.66370614359172 --samples 4000 --segments",
                     out);
    CHECK(result.exit_code == 0);
    lines = data_lines(result.output);
    cells.clear();
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split(lines[i]);
        cells.insert({row[7], row[8]});
    }
    CHECK(cells.size() == 20);

    // zero-energy initial state cannot be labeled with cells
    CHECK(run_cli("trajectory --ratio 3:2 --q1 1 --p1 0 --segments --tmax 5 --samples 10", out)
              .exit_code == 2);
}

TEST_CASE("bloch command") {
    const auto out = (temp_dir() / "bloch.csv").string();
    const auto result = run_cli("bloch --omega 1 --q1 1", out);
    CHECK(result.exit_code == 0);
    const auto lines = data_lines(result.output);
    REQUIRE(lines.size() == 2);
    const auto row = split(lines[1]);
    CHECK(std::stod(row[4]) == doctest::Approx(0.0).scale(1.0));
    CHECK(std::stod(row[6]) == doctest::Approx(1.0).epsilon(1e-14)); // north pole

    CHECK(run_cli("bloch --omega 1", out).exit_code == 2); // zero energy
}

TEST_CASE("verify command") {
    const auto out = (temp_dir() / "verify.json").string();
    const auto result = run_cli("verify --suite identities", out);
    CHECK(result.exit_code == 0);
    const json root = json::parse(result.output);
    CHECK(root["pass"].get<bool>());
    CHECK(root["checks"].size() >= 10);
    for (const auto& check : root["checks"]) CHECK(check["pass"].get<bool>());

    // an impossible tolerance fails with exit code 1
    CHECK(run_cli("verify --suite dos --tol 1e-16", out).exit_code == 1);

    CHECK(run_cli("verify --suite nonsense", out).exit_code == 2);
}

TEST_CASE("deterministic output and CSV/JSON numeric equality") {
    const auto dir = temp_dir();
    const auto first = (dir / "run1.csv").string();
    const auto second = (dir / "run2.csv").string();
    const std::string flags = "dos --ratio 3:2 --mode both --sigma 0.02 --grid 0.05:5:400";

    const auto a = run_cli(flags, first);
    const auto b = run_cli(flags, second);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.output == b.output); // byte-identical reruns

    const auto js = run_cli(flags + " --format json", (dir / "run.json").string());
    const json root = json::parse(js.output);
    const auto lines = data_lines(a.output);
    const auto header = split(lines[0]);
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto cells = split(lines[row]);
        for (std::size_t col = 0; col < header.size(); ++col) {
            const double from_csv = std::stod(cells[col]);
            const double from_json = root["data"][header[col]][row - 1].get<double>();
            CHECK(from_csv == from_json); // bit-identical after parsing
        }
    }
}
