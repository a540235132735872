// Process-level tests of the installed CLI; the binary path arrives in the
// Q2P_BIN environment variable set by CTest.

#include "q2p/tables.hpp"

#include <nlohmann/json.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string temp_path(const std::string& tag) {
    const char* dir = std::getenv("TMPDIR");
    static int counter = 0;
    return std::string(dir ? dir : "/tmp") + "/q2p_test_" + tag + "_" +
           std::to_string(++counter) + ".txt";
}

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("Q2P_BIN");
    REQUIRE(bin != nullptr);
    std::string out_path = temp_path("out"), err_path = temp_path("err");
    std::string cmd = std::string(bin) + " " + args + " > " + out_path + " 2> " + err_path;
    int status = std::system(cmd.c_str());
    RunResult r{WEXITSTATUS(status), slurp(out_path), slurp(err_path)};
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

} // namespace

TEST_CASE("classify") {
    RunResult ok = run_cli("classify 113");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("H8PLUS") != std::string::npos);
    CHECK(ok.out.find("(11, 2)") != std::string::npos);

    CHECK(run_cli("classify 15").exit_code == 2);
    CHECK(run_cli("classify 7").exit_code == 2);

    RunResult note = run_cli("classify 29");  // 29 ≡ 5 (mod 8)
    CHECK(note.exit_code == 2);
    CHECK(note.err.find("genus field") != std::string::npos);

    RunResult h2 = run_cli("classify 97");
    CHECK(h2.exit_code == 0);
    CHECK(h2.out.find("H2_NPLUS") != std::string::npos);
    CHECK(h2.out.find("(-13, 6)") != std::string::npos);

    CHECK(run_cli("classify notanumber").exit_code == 2);
}

TEST_CASE("construct") {
    RunResult r = run_cli("construct 2593");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["case"] == "H8PLUS");
    CHECK(q2p::squash_display(j["octic_generator"].get<std::string>()) ==
          q2p::squash_display(q2p::kOcticGenerator2593));
    CHECK(j["eps"] == "(1+sqrt2)");
    CHECK(j["scale"] == 3);

    RunResult quartic = run_cli("construct 17");
    CHECK(quartic.exit_code == 0);
    auto jq = nlohmann::json::parse(quartic.out);
    CHECK(jq["case"] == "H2_NPLUS");
    CHECK(jq["K_totally_real"] == false);
    CHECK(jq["u"].is_null());

    RunResult h4 = run_cli("construct 41");
    CHECK(h4.exit_code == 0);
    auto jh = nlohmann::json::parse(h4.out);
    CHECK(jh["case"] == "H4_NMINUS");
    CHECK(jh["solved"] == false);

    CHECK(run_cli("construct 113 --u-limit 3").exit_code == 3);
    CHECK(run_cli("construct 15").exit_code == 2);

    std::string path = temp_path("construct");
    CHECK(run_cli("construct 113 --output " + path).exit_code == 0);
    auto jf = nlohmann::json::parse(slurp(path));
    CHECK(jf["p"] == 113);
    std::remove(path.c_str());
}

TEST_CASE("survey") {
    RunResult csv = run_cli("survey 8 200");
    CHECK(csv.exit_code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == q2p::kSurveyCsvHeader);
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 8);

    RunResult empty = run_cli("survey 18 22");
    CHECK(empty.exit_code == 0);

    CHECK(run_cli("survey 200 8").exit_code == 2);
    CHECK(run_cli("survey 8 200 --format yaml").exit_code == 2);
    CHECK(run_cli("survey 8 200 --output /nonexistent-dir/x.csv").exit_code == 4);

    RunResult j1 = run_cli("survey 8 200 --format json");
    CHECK(j1.exit_code == 0);
    auto arr = nlohmann::json::parse(j1.out);
    CHECK(arr.size() == 8);

    // byte-identical across runs and job counts
    RunResult j4 = run_cli("survey 8 200 --format json --jobs 4");
    CHECK(j4.out == j1.out);
    RunResult csv2 = run_cli("survey 8 200 --jobs 3");
    CHECK(csv2.out == csv.out);
}

TEST_CASE("survey covers the second reference table") {
    RunResult r = run_cli("survey 8 2200 --format json --jobs 2");
    CHECK(r.exit_code == 0);
    auto arr = nlohmann::json::parse(r.out);
    for (const auto& ref : q2p::reference_table2()) {
        bool found = false;
        for (const auto& row : arr) {
            if (row["p"] != ref.p) continue;
            found = true;
            CHECK(row["solved"] == true);
            CHECK(row["e"] == ref.e);
            CHECK(row["f"] == ref.f);
        }
        CHECK(found);
    }
}

TEST_CASE("verify-paper") {
    RunResult r = run_cli("verify-paper");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);

    RunResult again = run_cli("verify-paper");
    CHECK(again.out == r.out);  // deterministic
}

TEST_CASE("oracle") {
    RunResult r = run_cli("oracle 17");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("cycle") != std::string::npos);
    CHECK(r.out.find("h⁺ = 4") != std::string::npos);
    CHECK(run_cli("oracle 16").exit_code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate 17").exit_code == 2);
}
