#pragma once

#include "q2p/arith.hpp"
#include "q2p/classgroup.hpp"
#include "q2p/dioph.hpp"
#include "q2p/represent.hpp"
#include "q2p/zsqrt2.hpp"

#include <array>
#include <optional>
#include <string>

namespace q2p {

/// Data of the quartic/octic step over k = Q(√2p):
/// α = e + f√2, the ternary solution (A, B, C) with A = A_coeff·√2,
/// B = r + s√2, C = r - s√2, the optional unit ε, and the minimal polynomial
/// x⁴ - 2e·x² + p of √α over Q.
struct TowerData {
    Z2Elem alpha;
    Int A_coeff;
    Z2Elem B;
    Z2Elem C;
    std::optional<Z2Elem> eps;
    std::array<Int, 5> minpoly_sqrt_alpha;  // coefficients of x⁴..x⁰
};

/// Assembles the tower and verifies A² - αB² = α'C² exactly in Z[√2].
inline TowerData build_tower(const Representation& rep, const DiophSolution& sol) {
    if (!check_solution(rep, sol))
        throw std::domain_error("build_tower: solution fails its invariants");
    Z2Elem alpha = alpha_of(rep);
    TowerData tower{alpha,
                    sol.u,
                    Z2Elem{sol.r, sol.s},
                    Z2Elem{sol.r, -sol.s},
                    std::nullopt,
                    {Int(1), Int(0), -2 * rep.e, Int(0), rep.p}};
    // A² = (u√2)² = 2u²
    Z2Elem lhs = Z2Elem{2 * sol.u * sol.u, 0} - alpha * tower.B * tower.B;
    Z2Elem rhs = conj(alpha) * tower.C * tower.C;
    if (!(lhs == rhs))
        throw std::logic_error("build_tower: A² - αB² = α'C² fails (solver bug)");
    return tower;
}

/// Decides whether δ = dx + dy·√α is a square modulo 4 in the order
/// O = Z[√2][η] with η = ((1+√2) + √α)/2, by exhausting the 256 residues
/// ξ = g + hη (g, h over Z[√2]/4).
///
/// η is integral exactly because α ≡ (1+√2)² (mod 4): it satisfies
/// η² = (1+√2)η + c with c = (α - 3 - 2√2)/4 ∈ Z[√2]. The half-integral
/// elements are essential here: in the smaller ring Z[√2] + Z[√2]√α every
/// square has even √α-coefficient, so μ·ε could never pass. In the basis
/// {1, η}: x + y√α = (x - (1+√2)y) + 2y·η.
inline bool is_square_mod4(const Z2Elem& dx, const Z2Elem& dy, const Z2Elem& alpha) {
    if (!congruent_mod4(alpha, Z2Elem{3, 2}))
        throw std::domain_error("is_square_mod4: need alpha ≡ 3 + 2√2 (mod 4)");
    const Z2Elem lam{1, 1};
    const Z2Elem c{(alpha.a - 3) / 4, (alpha.b - 2) / 4};
    auto reduce = [](const Z2Elem& z) { return Z2Elem{mod4(z.a), mod4(z.b)}; };
    const Z2Elem tx = reduce(dx - lam * dy);
    const Z2Elem ty = reduce(Z2Elem{2} * dy);
    for (int ga = 0; ga < 4; ++ga)
        for (int gb = 0; gb < 4; ++gb)
            for (int ha = 0; ha < 4; ++ha)
                for (int hb = 0; hb < 4; ++hb) {
                    Z2Elem g{ga, gb}, h{ha, hb};
                    // ξ² = (g² + h²c) + (2gh + h²(1+√2))η
                    Z2Elem x = reduce(g * g + h * h * c);
                    Z2Elem y = reduce(Z2Elem{2} * g * h + h * h * lam);
                    if (x == tx && y == ty) return true;
                }
    return false;
}

/// Unit square-class representatives of Z[√2], in the fixed search order.
inline const std::array<Z2Elem, 4>& unit_candidates() {
    static const std::array<Z2Elem, 4> c = {Z2Elem{1, 0}, Z2Elem{-1, 0},
                                            Z2Elem{1, 1}, Z2Elem{-1, -1}};
    return c;
}

/// Searches the four unit square-classes for ε with μ·ε ≡ ξ² (mod 4O),
/// μ = A + B√α. Returns the first hit in the fixed order, or absent.
inline std::optional<Z2Elem> find_unit(const TowerData& tower) {
    Z2Elem A{0, tower.A_coeff};
    for (const Z2Elem& eps : unit_candidates())
        if (is_square_mod4(A * eps, tower.B * eps, tower.alpha)) return eps;
    return std::nullopt;
}

/// Encodes ε = ±(1+√2)^j as j + (sign < 0 ? 2 : 0), so values 0 and 1 are
/// literal exponents and 2, 3 are their negatives.
inline int unit_exponent_code(const Z2Elem& eps) {
    if (eps == Z2Elem{1, 0}) return 0;
    if (eps == Z2Elem{1, 1}) return 1;
    if (eps == Z2Elem{-1, 0}) return 2;
    if (eps == Z2Elem{-1, -1}) return 3;
    throw std::domain_error("unit_exponent_code: not a square-class representative");
}

inline std::string unit_to_string(const Z2Elem& eps, bool ascii = false) {
    const std::string root = ascii ? "(1+sqrt2)" : "(1 + √2)";
    switch (unit_exponent_code(eps)) {
        case 0: return "1";
        case 1: return root;
        case 2: return "-1";
        case 3: return "-" + root;
    }
    throw std::logic_error("unit_to_string: unreachable");
}

/// Rendering of the octic generator (A + B√α)·ε, e.g.
/// "[57√2 + (7 - 3√2)√(51 + 2√2)](1 + √2)".
inline std::string octic_generator_string(const TowerData& tower, bool ascii = false) {
    if (!tower.eps)
        throw std::domain_error("octic_generator_string: tower has no unit");
    const std::string root = ascii ? "sqrt" : "√";
    std::string base = to_string(Z2Elem{0, tower.A_coeff}, ascii) + " + (" +
                       to_string(tower.B, ascii) + ")" + root + "(" +
                       to_string(tower.alpha, ascii) + ")";
    switch (unit_exponent_code(*tower.eps)) {
        case 0: return base;
        case 1: return "[" + base + "]" + unit_to_string(*tower.eps, ascii);
        case 2: return "-[" + base + "]";
        case 3: return "-[" + base + "]" + unit_to_string(Z2Elem{1, 1}, ascii);
    }
    throw std::logic_error("octic_generator_string: unreachable");
}

/// Assembled human/machine readable description of the field tower.
struct FieldReport {
    Int p;
    Int e;
    Int f;
    CaseLabel case_label;
    Int h;
    Int h_plus;
    Int h2;
    Int h2_plus;
    int norm_eps;
    bool K_totally_real;                    // iff e > 0
    std::array<Int, 3> k_minpoly;           // x² - 2p
    std::string genus_field;                // Q(√2, √p)
    std::array<Int, 5> K_minpoly;           // x⁴ - 2e·x² + p
    bool solved;                            // octic data present
    std::optional<DiophSolution> sol;
    std::optional<int> eps_code;
    std::optional<std::string> eps_str;
    std::optional<std::string> octic_generator;
    std::optional<bool> mod4_square;
};

/// Builds the report; sol/tower are absent for the non-H8PLUS cases or when
/// the search was exhausted.
inline FieldReport describe_fields(const Representation& rep, const Classification& cls,
                                   const std::optional<DiophSolution>& sol,
                                   const std::optional<TowerData>& tower) {
    FieldReport rpt;
    rpt.p = rep.p;
    rpt.e = rep.e;
    rpt.f = rep.f;
    rpt.case_label = classify_by_e(rep);
    rpt.h = cls.h;
    rpt.h_plus = cls.h_plus;
    rpt.h2 = cls.h2;
    rpt.h2_plus = cls.h2_plus;
    rpt.norm_eps = cls.norm_eps;
    rpt.K_totally_real = rep.e > 0;
    rpt.k_minpoly = {Int(1), Int(0), -2 * rep.p};
    rpt.genus_field = "Q(√2, √" + rep.p.str() + ")";
    rpt.K_minpoly = {Int(1), Int(0), -2 * rep.e, Int(0), rep.p};
    rpt.solved = sol.has_value() && tower.has_value();
    if (rpt.solved) {
        rpt.sol = sol;
        if (tower->eps) {
            rpt.eps_code = unit_exponent_code(*tower->eps);
            rpt.eps_str = unit_to_string(*tower->eps, true);
            rpt.octic_generator = octic_generator_string(*tower);
            rpt.mod4_square = true;
        } else {
            rpt.mod4_square = false;
        }
    }
    return rpt;
}

} // namespace q2p
