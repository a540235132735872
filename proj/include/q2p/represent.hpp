#pragma once

#include "q2p/arith.hpp"
#include "q2p/zsqrt2.hpp"

#include <stdexcept>
#include <string>

namespace q2p {

/// Normalized solution of p = e² - 2f².
///
/// Invariants: e ≡ 3 (mod 4), f ≡ 2 (mod 4), f > 0, and f is minimal among
/// all pairs satisfying those congruences.
struct Representation {
    Int p;
    Int e;
    Int f;
};

inline Z2Elem alpha_of(const Representation& rep) { return {rep.e, rep.f}; }

/// Field classification by the sign and residue of e.
enum class CaseLabel {
    H2_NPLUS,    // h ≡ 2 (mod 4), Nε = +1          (e < 0)
    H4_NMINUS,   // h ≡ 4 (mod 8), Nε = -1          (e > 0, e ≡ 7 mod 8)
    H8PLUS,      // 8 | h⁺                          (e > 0, e ≡ 3 mod 8)
};

inline const char* to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::H2_NPLUS: return "H2_NPLUS";
        case CaseLabel::H4_NMINUS: return "H4_NMINUS";
        case CaseLabel::H8PLUS: return "H8PLUS";
    }
    throw std::logic_error("to_string(CaseLabel): bad value");
}

/// Finds γ ∈ Z[√2] with norm(γ) = p, for p prime with (2/p) = +1.
///
/// γ is the Z[√2]-gcd of p and x - √2 where x² ≡ 2 (mod p); if that gcd has
/// norm -p it is multiplied by the norm-(-1) unit 1 + √2.
inline Z2Elem solve_norm_equation(const Int& p) {
    if (!is_prime(p)) throw std::domain_error("solve_norm_equation: p must be prime");
    int m = mod8(p);
    if (m != 1 && m != 7)
        throw std::domain_error("solve_norm_equation: 2 is not a square mod p");
    Int x = sqrt_mod(2, p);
    Z2Elem g = gcd(Z2Elem{p, 0}, Z2Elem{x, -1});
    if (norm(g) == -p) g = g * Z2Elem{1, 1};
    if (norm(g) != p)
        throw std::logic_error("solve_norm_equation: gcd does not have norm ±p");
    return g;
}

namespace detail {

// Minimal admissible pair on the ±(3+2√2)^k-orbit of z (norm p > 0):
// e ≡ 3 (mod 4), f ≡ 2 (mod 4), f > 0, f minimal within the orbit.
//
// The admissible elements of one orbit form a one-sided tail starting at the
// sign-change boundary of f, so it suffices to locate that boundary.
inline Z2Elem orbit_minimum(Z2Elem z, const Int& p) {
    const Z2Elem mu{3, 2};        // fundamental totally positive unit (1+√2)²
    const Z2Elem mu2{17, 12};     // mu², preserves (e, f) mod 4
    const Z2Elem mu2_inv{17, -12};

    if (value_sign(z) < 0) z = -z;
    // move to the f ≡ 2 (mod 4) subchain (mu toggles f between 0 and 2 mod 4)
    if (mod4(z.b) != 2) z = z * mu;
    if (mod4(z.b) != 2)
        throw std::logic_error("orbit_minimum: no f ≡ 2 (mod 4) subchain");

    // f is strictly monotone in the real value, so walk to the boundary
    // where f changes sign.
    Z2Elem hi = z;
    if (hi.b > 0) {
        while ((hi * mu2_inv).b > 0) hi = hi * mu2_inv;
    } else {
        while (hi.b < 0) hi = hi * mu2;
    }
    Z2Elem lo = hi * mu2_inv;
    if (!(lo.b < 0 && hi.b > 0))
        throw std::logic_error("orbit_minimum: boundary bracketing failed");

    Z2Elem cand = (mod4(hi.a) == 3) ? hi : -lo;
    if (mod4(cand.a) != 3 || mod4(cand.b) != 2 || cand.b <= 0 || norm(cand) != p)
        throw std::logic_error("orbit_minimum: candidate not admissible");
    return cand;
}

} // namespace detail

/// Normalizes any γ of norm p (p ≡ 1 mod 8) to the canonical Representation.
///
/// Elements of norm p split into the unit orbits of γ and of its conjugate;
/// the minimal admissible f can live on either, so both are walked.
inline Representation normalize(const Z2Elem& gamma, const Int& p) {
    if (mod8(p) != 1) throw std::domain_error("normalize: need p ≡ 1 (mod 8)");
    if (norm(gamma) != p) throw std::domain_error("normalize: norm(gamma) != p");
    Z2Elem a = detail::orbit_minimum(gamma, p);
    Z2Elem b = detail::orbit_minimum(conj(gamma), p);
    Z2Elem best = (a.b <= b.b) ? a : b;
    return {p, best.a, best.b};
}

/// Convenience: canonical representation straight from the prime.
inline Representation represent(const Int& p) {
    return normalize(solve_norm_equation(p), p);
}

/// Classifies by (sign(e), e mod 8), the three admissible branches.
inline CaseLabel classify_by_e(const Representation& rep) {
    if (!is_odd(rep.e) || mod4(rep.e) != 3)
        throw std::logic_error("classify_by_e: representation violates e ≡ 3 (mod 4)");
    if (rep.e < 0) return CaseLabel::H2_NPLUS;
    int m = mod8(rep.e);
    if (m == 7) return CaseLabel::H4_NMINUS;
    if (m == 3) return CaseLabel::H8PLUS;
    throw std::logic_error("classify_by_e: e ≡ ±1 (mod 8) is impossible for a valid representation");
}

} // namespace q2p
