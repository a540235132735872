#include "q2p/survey.hpp"
#include "q2p/tables.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace q2p;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

TEST_CASE("survey_primes") {
    auto ps = survey_primes(8, 200);
    std::vector<Int> expected = {17, 41, 73, 89, 97, 113, 137, 193};
    CHECK(ps == expected);
    CHECK(survey_primes(18, 22).empty());
    CHECK(survey_primes(113, 113) == std::vector<Int>{113});
}

TEST_CASE("construct_report pipeline") {
    FieldReport r = construct_report(2593);
    REQUIRE(r.solved);
    CHECK(r.octic_generator.has_value());
    CHECK(squash_display(*r.octic_generator) == squash_display(kOcticGenerator2593));
    CHECK(r.eps_str == "(1+sqrt2)");
    CHECK(r.eps_code == 1);
    CHECK(*r.mod4_square);

    FieldReport q = construct_report(17);
    CHECK_FALSE(q.solved);
    CHECK(q.case_label == CaseLabel::H2_NPLUS);

    FieldReport h4 = construct_report(41);
    CHECK_FALSE(h4.solved);
    CHECK(h4.case_label == CaseLabel::H4_NMINUS);
    CHECK(h4.K_totally_real);

    CHECK_THROWS_AS(construct_report(113, 3), search_exhausted_error);
    CHECK_THROWS_AS(construct_report(15), std::domain_error);
    CHECK_THROWS_AS(construct_report(13), std::domain_error);
}

TEST_CASE("survey rows for the first reference table") {
    auto rows = run_survey(8, 200);
    REQUIRE(rows.size() == 8);
    for (const auto& ref : reference_table1()) {
        if (ref.p > 200) continue;
        bool found = false;
        for (const auto& row : rows) {
            if (row.p != ref.p) continue;
            found = true;
            CHECK(row.e == ref.e);
            CHECK(row.f == ref.f);
            CHECK(row.h2 == two_part(Int(ref.h)));
            CHECK(row.h2_plus == two_part(Int(ref.h_plus)));
        }
        CHECK(found);
    }
    // only the H8PLUS rows may be solved
    for (const auto& row : rows)
        CHECK(row.solved == (row.case_label == CaseLabel::H8PLUS));
}

TEST_CASE("survey output is deterministic and job-count independent") {
    auto rows1 = run_survey(8, 400, kDefaultULimit, 1);
    auto rows4 = run_survey(8, 400, kDefaultULimit, 4);
    CHECK(survey_csv(rows1) == survey_csv(rows4));
    CHECK(survey_json(rows1) == survey_json(rows4));
    auto again = run_survey(8, 400, kDefaultULimit, 1);
    CHECK(survey_csv(rows1) == survey_csv(again));
}

TEST_CASE("csv and json encodings agree field by field") {
    auto rows = run_survey(8, 500);
    std::istringstream csv(survey_csv(rows));
    std::string header;
    std::getline(csv, header);
    CHECK(header == kSurveyCsvHeader);
    auto cols = split(header, ',');
    REQUIRE(cols.size() == 17);

    json arr = survey_json(rows);
    REQUIRE(arr.size() == rows.size());
    size_t i = 0;
    std::string line;
    while (std::getline(csv, line)) {
        REQUIRE(i < arr.size());
        auto cells = split(line, ',');
        REQUIRE(cells.size() == cols.size());
        const json& j = arr[i];
        for (size_t c = 0; c < cols.size(); ++c) {
            const json& v = j.at(cols[c]);
            std::string cell = cells[c];
            if (v.is_null()) {
                CHECK(cell.empty());
            } else if (v.is_boolean()) {
                CHECK(cell == (v.get<bool>() ? "true" : "false"));
            } else if (v.is_string()) {
                CHECK(cell == v.get<std::string>());
            } else {
                CHECK(json::parse(cell) == v);
            }
        }
        ++i;
    }
    CHECK(i == rows.size());
}

TEST_CASE("report json carries the pinned keys") {
    json j = report_json(construct_report(113));
    for (const char* key : {"p", "e", "f", "case", "h", "h_plus", "norm_eps", "u", "t", "s",
                            "r", "scale", "eps", "K_minpoly", "octic_generator", "mod4_square"})
        CHECK(j.contains(key));
    CHECK(j["p"] == 113);
    CHECK(j["case"] == "H8PLUS");
    CHECK(j["K_minpoly"] == json::array({1, 0, -22, 0, 113}));
    CHECK(j["u"] == 5);
    CHECK(j["t"] == 7);
    CHECK(j["s"] == -1);
    CHECK(j["r"] == 1);
    CHECK(j["scale"] == 1);

    json q = report_json(construct_report(89));
    CHECK(q["case"] == "H2_NPLUS");
    CHECK(q["u"].is_null());
    CHECK(q["octic_generator"].is_null());
    CHECK(q["solved"] == false);
}

TEST_CASE("reference fixtures all pass") {
    auto results = run_paper_fixtures();
    CHECK(all_passed(results));
    for (const auto& r : results) {
        INFO(r.name << " " << r.detail);
        CHECK(r.pass);
    }
}
