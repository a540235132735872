#pragma once

#include "q2p/arith.hpp"
#include "q2p/classgroup.hpp"
#include "q2p/dioph.hpp"
#include "q2p/represent.hpp"
#include "q2p/survey.hpp"
#include "q2p/tower.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace q2p {

/// Published reference row for small p: normalized representation and class
/// numbers (the published h, h⁺ are powers of two for every listed prime).
struct RefRow1 {
    long p, e, f, h, h_plus;
};

/// Reference rows for fields with 8 | h⁺: representation, class data, and a
/// solution of eu² = t² + 2ps² with its integral r.
struct RefRow2 {
    long p, h;
    int norm_eps;
    long e, f, u, t, s, r;
};

/// First reference table. The published row for p = 97 prints e = 13, but
/// only e = -13 satisfies the normalization e ≡ 3 (mod 4) (and the h = 2
/// column itself forces e < 0), so the corrected sign is stored here.
inline const std::vector<RefRow1>& reference_table1() {
    static const std::vector<RefRow1> rows = {
        {17, -5, 2, 2, 4},   {73, -9, 2, 2, 4},   {89, -17, 10, 2, 4},
        {97, -13, 6, 2, 4},  {193, -29, 18, 2, 4}, {41, 7, 2, 4, 4},
        {113, 11, 2, 8, 8},  {137, 23, 14, 4, 4}, {257, 35, 22, 4, 8},
        {313, 31, 18, 4, 4},
    };
    return rows;
}

/// Second reference table (all rows have 8 | h⁺).
inline const std::vector<RefRow2>& reference_table2() {
    static const std::vector<RefRow2> rows = {
        {113, 8, -1, 11, 2, 5, 7, -1, 1},
        {257, 4, 1, 35, 22, 11, 61, -1, 3},
        {337, 4, 1, 27, 14, 5, 1, 1, -1},
        {353, 4, 1, 19, 2, 7, 15, -1, 1},
        {1201, 8, -1, 43, 18, 37, 193, -3, 7},
        {1217, 8, 1, 35, 2, 19, 101, -1, 3},
        {1601, 8, -1, 67, 38, 7, 9, 1, -1},
        {1777, 8, -1, 43, 6, 47, 251, 3, 5},
        {2113, 8, -1, 99, 62, 7, 25, 1, -1},
    };
    return rows;
}

/// Expected rendering of the octic generator for p = 2593.
inline const char* kOcticGenerator2593 =
    "[57√2 + (7 - 3√2)√(51 + 2√2)](1 + √2)";

/// Strips whitespace and maps U+2212 to '-' so displays can be compared
/// independently of spacing and minus-sign style.
inline std::string squash_display(std::string_view s) {
    std::string out;
    for (size_t i = 0; i < s.size();) {
        if (s.substr(i, 3) == "−") {
            out += '-';
            i += 3;
        } else if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        } else {
            out += s[i++];
        }
    }
    return out;
}

struct FixtureResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Runs every reference-table regression fixture. Used by the CLI
/// `verify-paper` command and by the acceptance suite.
inline std::vector<FixtureResult> run_paper_fixtures() {
    std::vector<FixtureResult> results;
    auto check = [&](const std::string& name, bool pass, std::string detail = "") {
        results.push_back({name, pass, std::move(detail)});
    };
    auto guarded = [&](const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& ex) {
            check(name + " [exception]", false, ex.what());
        }
    };

    guarded("primality of listed primes", [&] {
        check("is_prime(113)", is_prime(113));
        check("is_prime(2593)", is_prime(2593));
        check("is_prime(1) is false", !is_prime(1));
    });

    guarded("ring fixtures", [&] {
        check("norm(11 + 2√2) = 113", norm(Z2Elem{11, 2}) == 113);
        check("norm(35 + 22√2) = 257", norm(Z2Elem{35, 22}) == 257);
        check("(3+2√2)(3-2√2) = 1", Z2Elem{3, 2} * Z2Elem{3, -2} == Z2Elem{1, 0});
        check("(1+√2)² = 3 + 2√2", unit_power(2) == Z2Elem{3, 2});
    });

    // table 1: representation + 2-parts of (h, h⁺)
    for (const auto& row : reference_table1()) {
        guarded("table1 p=" + std::to_string(row.p), [&] {
            Representation rep = represent(row.p);
            std::string name = "table1 p=" + std::to_string(row.p);
            std::string note;
            if (row.p == 97)
                note = " (published row prints e = 13; e ≡ 3 mod 4 forces -13)";
            check(name + " (e, f)", rep.e == row.e && rep.f == row.f,
                  "got e=" + rep.e.str() + " f=" + rep.f.str() + note);
            Classification cls = class_data(row.p);
            check(name + " 2-parts of (h, h⁺)",
                  cls.h2 == two_part(Int(row.h)) && cls.h2_plus == two_part(Int(row.h_plus)),
                  "got h2=" + cls.h2.str() + " h2+=" + cls.h2_plus.str());
        });
    }

    // table 2: representation, class data (full h and Nε), published tuple
    for (const auto& row : reference_table2()) {
        guarded("table2 p=" + std::to_string(row.p), [&] {
            std::string name = "table2 p=" + std::to_string(row.p);
            Representation rep = represent(row.p);
            check(name + " (e, f)", rep.e == row.e && rep.f == row.f,
                  "got e=" + rep.e.str() + " f=" + rep.f.str());
            Classification cls = class_data(row.p);
            check(name + " h and Nε", cls.h == row.h && cls.norm_eps == row.norm_eps,
                  "got h=" + cls.h.str() + " Nε=" + std::to_string(cls.norm_eps));
            DiophSolution published{row.u, row.t, row.s, row.r, 1};
            check(name + " published (u,t,s,r) solves the equation",
                  check_solution(rep, published));
            auto prim = first_primitive(rep, kDefaultULimit);
            check(name + " solver finds a solution", prim.has_value());
            if (prim)
                check(name + " solver solution is integral",
                      check_solution(rep, make_integral(*prim, rep)));
        });
    }

    guarded("oracle fixtures", [&] {
        check("narrow_class_number(136) = 4", narrow_class_number(136) == 4);
        Classification c17 = class_data(17);
        check("class_data(17): h=2, h⁺=4, Nε=+1",
              c17.h == 2 && c17.h_plus == 4 && c17.norm_eps == 1);
        Classification c257 = class_data(257);
        check("class_data(257): h=4, h⁺=8", c257.h == 4 && c257.h_plus == 8);
        Classification c1201 = class_data(1201);
        check("class_data(1201): h2=8, Nε=-1", c1201.h2 == 8 && c1201.norm_eps == -1);
    });

    // the worked example p = 2593
    guarded("worked example p=2593", [&] {
        Representation rep = represent(2593);
        check("p=2593 (e, f) = (51, 2)", rep.e == 51 && rep.f == 2);
        auto prim = first_primitive(rep, 10000);
        check("p=2593 first primitive triple = (19, 115, 1)",
              prim && prim->u == 19 && prim->t == 115 && prim->s == 1);
        if (!prim) return;
        using boost::multiprecision::gcd;
        Int gm = gcd(Int(115 - 2 * 2 * 1), Int(51));
        Int gp = gcd(Int(115 + 2 * 2 * 1), Int(51));
        check("p=2593 gcd(t - 2fs, e) = 3 and gcd(t + 2fs, e) = 17", gm == 3 && gp == 17);
        DiophSolution sol = make_integral(*prim, rep);
        check("p=2593 integral solution (57, 345, -3, 7) with scale 3",
              sol.u == 57 && sol.t == 345 && sol.s == -3 && sol.r == 7 && sol.scale == 3);
        TowerData tower = build_tower(rep, sol);
        check("p=2593 B = 7 - 3√2", tower.B == Z2Elem{7, -3});
        tower.eps = find_unit(tower);
        check("p=2593 unit is 1 + √2", tower.eps && *tower.eps == Z2Elem{1, 1});
        if (tower.eps)
            check("p=2593 octic generator display",
                  squash_display(octic_generator_string(tower)) ==
                      squash_display(kOcticGenerator2593),
                  octic_generator_string(tower));
    });

    // the second solution printed alongside the worked example satisfies the
    // equation but no sign choice makes r integral (gcds 3 and 17 again), so
    // as an unscaled tuple it must fail check_solution for every r
    guarded("p=2593 second solution", [&] {
        Representation rep = represent(2593);
        Int lhs = rep.e * 353 * 353;
        Int rhs = Int(47) * 47 + 2 * rep.p * 35 * 35;
        check("p=2593 (353, 47, 35) satisfies the equation", lhs == rhs,
              lhs.str() + " vs " + rhs.str());
        check("p=2593 (353, 47, 35): e divides neither t - 2fs nor t + 2fs",
              (Int(47) - 2 * rep.f * 35) % rep.e != 0 &&
                  (Int(47) + 2 * rep.f * 35) % rep.e != 0);
        bool any_r_accepted = false;
        for (Int r = -200; r <= 200; ++r)
            if (check_solution(rep, {353, 47, 35, r, 1})) any_r_accepted = true;
        check("p=2593 (353, 47, 35) fails check_solution for every r", !any_r_accepted);
    });

    // classification examples
    guarded("classification fixtures", [&] {
        check("classify p=17 -> H2_NPLUS", classify_by_e(represent(17)) == CaseLabel::H2_NPLUS);
        check("classify p=41 -> H4_NMINUS", classify_by_e(represent(41)) == CaseLabel::H4_NMINUS);
        check("classify p=113 -> H8PLUS", classify_by_e(represent(113)) == CaseLabel::H8PLUS);
        check("classify p=97 -> H2_NPLUS", classify_by_e(represent(97)) == CaseLabel::H2_NPLUS);
    });

    return results;
}

inline bool all_passed(const std::vector<FixtureResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace q2p
