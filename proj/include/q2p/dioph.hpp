#pragma once

#include "q2p/arith.hpp"
#include "q2p/represent.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace q2p {

/// The solvability hypotheses of eu² = t² + 2ps² fail (e < 0 or e ≡ 7 mod 8).
struct unsolvable_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// No solution below the search limit (distinct from unsolvable_error).
struct search_exhausted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Primitive solution of eu² = t² + 2ps²: u, t, s odd, u, t, s > 0,
/// gcd(u, t, s) = 1.
struct DiophTriple {
    Int u;
    Int t;
    Int s;
};

/// Integralized solution: r = (t - 2fs)/e is an integer, s carries the sign
/// chosen for that, and scale is the odd multiplier applied to the primitive
/// triple.
struct DiophSolution {
    Int u;
    Int t;
    Int s;
    Int r;
    Int scale;
};

namespace detail {

inline void require_solvable(const Representation& rep) {
    if (!(rep.e > 0 && mod8(rep.e) == 3))
        throw unsolvable_error(
            "eu² = t² + 2ps² has no odd solutions unless e > 0 and e ≡ 3 (mod 8)");
}

// Visits all triples (u, t, s), odd and positive, with u <= u_limit and
// e u² = t² + 2 p s², ordered by (u, s). Return false from the visitor to
// stop early.
template <typename Visitor>
inline void visit_solutions(const Representation& rep, const Int& u_limit, Visitor&& visit) {
    require_solvable(rep);
    const Int two_p = 2 * rep.p;
    for (Int u = 1; u <= u_limit; u += 2) {
        Int eu2 = rep.e * u * u;
        for (Int s = 1; 2 * rep.p * s * s <= eu2; s += 2) {
            Int t2 = eu2 - two_p * s * s;
            if (auto t = is_perfect_square(t2)) {
                if (!is_odd(*t))
                    throw std::logic_error("visit_solutions: even t from odd e, u");
                if (!visit(u, *t, s)) return;
            }
        }
    }
}

inline Int gcd3(const Int& a, const Int& b, const Int& c) {
    using boost::multiprecision::gcd;
    return gcd(gcd(abs_int(a), abs_int(b)), abs_int(c));
}

} // namespace detail

/// All primitive triples with odd u ≤ u_limit, ordered by (u, s) ascending.
/// Triples with a common (necessarily odd) factor reduce to a primitive
/// triple with smaller u, already listed, so they are skipped.
inline std::vector<DiophTriple> enumerate_primitive(const Representation& rep,
                                                    const Int& u_limit) {
    std::vector<DiophTriple> out;
    detail::visit_solutions(rep, u_limit, [&](const Int& u, const Int& t, const Int& s) {
        if (detail::gcd3(u, t, s) == 1) out.push_back({u, t, s});
        return true;
    });
    return out;
}

/// First primitive triple in (u, s) order, or absent if none below u_limit.
inline std::optional<DiophTriple> first_primitive(const Representation& rep,
                                                  const Int& u_limit) {
    std::optional<DiophTriple> found;
    detail::visit_solutions(rep, u_limit, [&](const Int& u, const Int& t, const Int& s) {
        if (detail::gcd3(u, t, s) != 1) return true;
        found = DiophTriple{u, t, s};
        return false;
    });
    return found;
}

/// Picks the sign of s and the odd scale m = e / gcd(t - 2fσs, e) that make
/// r = (t - 2fs)/e integral. The sign with the larger gcd is chosen (ties go
/// to +1), which gives the smallest scale.
inline DiophSolution make_integral(const DiophTriple& prim, const Representation& rep) {
    using boost::multiprecision::gcd;
    const Int e = rep.e, f = rep.f;
    Int g_plus = gcd(abs_int(prim.t - 2 * f * prim.s), abs_int(e));
    Int g_minus = gcd(abs_int(prim.t + 2 * f * prim.s), abs_int(e));
    int sigma = (g_plus >= g_minus) ? 1 : -1;
    Int g = (sigma == 1) ? g_plus : g_minus;
    Int m = abs_int(e) / g;
    Int u = m * prim.u;
    Int t = m * prim.t;
    Int s = m * sigma * prim.s;
    Int num = t - 2 * f * s;
    if (num % e != 0)
        throw std::logic_error("make_integral: e does not divide t - 2fs (gcds " +
                               g_plus.str() + ", " + g_minus.str() + ")");
    return {u, t, s, num / e, m};
}

/// Exact verification of every DiophSolution invariant.
inline bool check_solution(const Representation& rep, const DiophSolution& sol) {
    const Int &e = rep.e, &f = rep.f, &p = rep.p;
    const Int &u = sol.u, &t = sol.t, &s = sol.s, &r = sol.r;
    if (!is_odd(u) || !is_odd(t) || !is_odd(s)) return false;
    if (u <= 0 || t <= 0) return false;
    if (e * u * u != t * t + 2 * p * s * s) return false;
    if (e * r != t - 2 * f * s) return false;
    if (u * u != e * r * r + 4 * r * s * f + 2 * e * s * s) return false;
    return true;
}

} // namespace q2p
