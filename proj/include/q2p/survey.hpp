#pragma once

#include "q2p/arith.hpp"
#include "q2p/classgroup.hpp"
#include "q2p/dioph.hpp"
#include "q2p/represent.hpp"
#include "q2p/tower.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace q2p {

using json = nlohmann::json;

/// Default ceiling for the odd-u search in eu² = t² + 2ps².
inline const Int kDefaultULimit = 10000;

/// Full pipeline for one prime: classify, represent, and (for H8PLUS) solve
/// the ternary equation and build the tower. Throws search_exhausted_error
/// when the case calls for an octic step but no solution exists below
/// u_limit and `throw_on_exhausted` is set.
inline FieldReport construct_report(const Int& p, const Int& u_limit = kDefaultULimit,
                                    bool throw_on_exhausted = true) {
    if (!is_prime(p)) throw std::domain_error("construct_report: p must be prime");
    if (mod8(p) != 1) throw std::domain_error("construct_report: need p ≡ 1 (mod 8)");
    Classification cls = class_data(p);
    Representation rep = represent(p);
    CaseLabel label = classify_by_e(rep);
    std::optional<DiophSolution> sol;
    std::optional<TowerData> tower;
    if (label == CaseLabel::H8PLUS) {
        if (auto prim = first_primitive(rep, u_limit)) {
            sol = make_integral(*prim, rep);
            TowerData tw = build_tower(rep, *sol);
            tw.eps = find_unit(tw);
            tower = tw;
        } else if (throw_on_exhausted) {
            throw search_exhausted_error("no solution of eu² = t² + 2ps² with u ≤ " +
                                         u_limit.str());
        }
    }
    return describe_fields(rep, cls, sol, tower);
}

/// One line of a range survey; the trailing fields are present only when the
/// case is H8PLUS and a solution was found below the limit.
struct SurveyRow {
    Int p;
    Int e;
    Int f;
    CaseLabel case_label;
    Int h;
    Int h_plus;
    Int h2;
    Int h2_plus;
    int norm_eps;
    bool solved;
    std::optional<DiophSolution> sol;
    std::optional<int> eps_code;
    std::optional<bool> mod4_square;
};

inline SurveyRow survey_row(const Int& p, const Int& u_limit = kDefaultULimit) {
    FieldReport rpt = construct_report(p, u_limit, /*throw_on_exhausted=*/false);
    return {rpt.p,  rpt.e,        rpt.f,        rpt.case_label, rpt.h,
            rpt.h_plus, rpt.h2,   rpt.h2_plus,  rpt.norm_eps,   rpt.solved,
            rpt.sol, rpt.eps_code, rpt.mod4_square};
}

/// Primes p ≡ 1 (mod 8) in [pmin, pmax].
inline std::vector<Int> survey_primes(const Int& pmin, const Int& pmax) {
    std::vector<Int> primes;
    Int start = pmin < 17 ? Int(17) : pmin;
    Int p = start + mod_pos(1 - start, 8);  // smallest ≥ start that is ≡ 1 (mod 8)
    for (; p <= pmax; p += 8)
        if (is_prime(p)) primes.push_back(p);
    return primes;
}

/// Range survey with a bounded worker pool. Rows are ordered by p and their
/// content is deterministic regardless of the number of jobs.
inline std::vector<SurveyRow> run_survey(const Int& pmin, const Int& pmax,
                                         const Int& u_limit = kDefaultULimit,
                                         unsigned jobs = 1) {
    std::vector<Int> primes = survey_primes(pmin, pmax);
    std::vector<SurveyRow> rows(primes.size());
    if (jobs == 0) jobs = 1;
    if (jobs == 1) {
        for (size_t i = 0; i < primes.size(); ++i) rows[i] = survey_row(primes[i], u_limit);
        return rows;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < primes.size(); i = next.fetch_add(1))
            rows[i] = survey_row(primes[i], u_limit);
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return rows;
}

// ---------------------------------------------------------------------------
// Serialization: fixed column order, empty CSV cells / JSON nulls for absent
// solution data.
// ---------------------------------------------------------------------------

inline const char* kSurveyCsvHeader =
    "p,e,f,case,h,h_plus,h2,h2_plus,norm_eps,solved,u,t,s,r,scale,eps_exponent,mod4_square";

inline std::string survey_csv(const std::vector<SurveyRow>& rows) {
    std::ostringstream os;
    os << kSurveyCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.p << ',' << r.e << ',' << r.f << ',' << to_string(r.case_label) << ','
           << r.h << ',' << r.h_plus << ',' << r.h2 << ',' << r.h2_plus << ','
           << r.norm_eps << ',' << (r.solved ? "true" : "false") << ',';
        if (r.solved) {
            os << r.sol->u << ',' << r.sol->t << ',' << r.sol->s << ',' << r.sol->r << ','
               << r.sol->scale << ',';
            if (r.eps_code)
                os << *r.eps_code;
            os << ',' << (*r.mod4_square ? "true" : "false");
        } else {
            os << ",,,,,,";
        }
        os << '\n';
    }
    return os.str();
}

namespace detail {
inline json int_json(const Int& n) {
    // survey values fit comfortably in 64 bits; guard just in case
    if (n > Int(std::numeric_limits<long long>::max()) ||
        n < Int(std::numeric_limits<long long>::min()))
        return n.str();
    return n.convert_to<long long>();
}
} // namespace detail

inline json survey_row_json(const SurveyRow& r) {
    json j;
    j["p"] = detail::int_json(r.p);
    j["e"] = detail::int_json(r.e);
    j["f"] = detail::int_json(r.f);
    j["case"] = to_string(r.case_label);
    j["h"] = detail::int_json(r.h);
    j["h_plus"] = detail::int_json(r.h_plus);
    j["h2"] = detail::int_json(r.h2);
    j["h2_plus"] = detail::int_json(r.h2_plus);
    j["norm_eps"] = r.norm_eps;
    j["solved"] = r.solved;
    if (r.solved) {
        j["u"] = detail::int_json(r.sol->u);
        j["t"] = detail::int_json(r.sol->t);
        j["s"] = detail::int_json(r.sol->s);
        j["r"] = detail::int_json(r.sol->r);
        j["scale"] = detail::int_json(r.sol->scale);
        j["eps_exponent"] = r.eps_code ? json(*r.eps_code) : json(nullptr);
        j["mod4_square"] = *r.mod4_square;
    } else {
        for (const char* k : {"u", "t", "s", "r", "scale", "eps_exponent", "mod4_square"})
            j[k] = nullptr;
    }
    return j;
}

inline json survey_json(const std::vector<SurveyRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(survey_row_json(r));
    return arr;
}

inline json report_json(const FieldReport& r) {
    json j;
    j["p"] = detail::int_json(r.p);
    j["e"] = detail::int_json(r.e);
    j["f"] = detail::int_json(r.f);
    j["case"] = to_string(r.case_label);
    j["h"] = detail::int_json(r.h);
    j["h_plus"] = detail::int_json(r.h_plus);
    j["h2"] = detail::int_json(r.h2);
    j["h2_plus"] = detail::int_json(r.h2_plus);
    j["norm_eps"] = r.norm_eps;
    j["K_totally_real"] = r.K_totally_real;
    j["genus_field"] = r.genus_field;
    json kpoly = json::array();
    for (const auto& c : r.k_minpoly) kpoly.push_back(detail::int_json(c));
    j["k_minpoly"] = kpoly;
    json Kpoly = json::array();
    for (const auto& c : r.K_minpoly) Kpoly.push_back(detail::int_json(c));
    j["K_minpoly"] = Kpoly;
    j["solved"] = r.solved;
    if (r.solved) {
        j["u"] = detail::int_json(r.sol->u);
        j["t"] = detail::int_json(r.sol->t);
        j["s"] = detail::int_json(r.sol->s);
        j["r"] = detail::int_json(r.sol->r);
        j["scale"] = detail::int_json(r.sol->scale);
        j["eps"] = r.eps_str ? json(*r.eps_str) : json(nullptr);
        j["eps_exponent"] = r.eps_code ? json(*r.eps_code) : json(nullptr);
        j["octic_generator"] = r.octic_generator ? json(*r.octic_generator) : json(nullptr);
        j["mod4_square"] = r.mod4_square ? json(*r.mod4_square) : json(nullptr);
    } else {
        for (const char* k :
             {"u", "t", "s", "r", "scale", "eps", "eps_exponent", "octic_generator", "mod4_square"})
            j[k] = nullptr;
    }
    return j;
}

} // namespace q2p
