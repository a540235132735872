#pragma once

#include "q2p/arith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace q2p {

/// Binary quadratic form ax² + bxy + cy² of discriminant b² - 4ac.
struct QForm {
    Int a;
    Int b;
    Int c;

    bool operator==(const QForm&) const = default;
    auto operator<=>(const QForm& o) const {
        return std::tie(a, b, c) <=> std::tie(o.a, o.b, o.c);
    }
};

inline Int discriminant(const QForm& f) { return f.b * f.b - 4 * f.a * f.c; }

namespace detail {
inline void require_indefinite_nonsquare(const Int& D, const char* who) {
    if (D <= 0 || (mod4(D) != 0 && mod4(D) != 1) || is_perfect_square(D))
        throw std::domain_error(std::string(who) + ": discriminant must be positive, ≡ 0/1 (mod 4) and non-square");
}
} // namespace detail

/// Reduced test for indefinite forms: 0 < b < √D and √D - b < 2|a| < √D + b,
/// done with exact integer comparisons.
inline bool is_reduced(const QForm& f) {
    Int D = discriminant(f);
    if (D <= 0) return false;
    if (f.b <= 0 || f.b * f.b >= D) return false;
    Int ta = 2 * abs_int(f.a);
    if ((ta + f.b) * (ta + f.b) <= D) return false;        // √D - b < 2|a|
    if (ta > f.b && (ta - f.b) * (ta - f.b) >= D) return false;  // 2|a| < √D + b
    return true;
}

/// One reduction step ρ(a,b,c) = (c, b', c'), where b' ≡ -b (mod 2|c|) is
/// taken in the standard window: b' ≤ √D if |c| ≤ √D, else b' ≤ |c|.
/// On reduced forms ρ is the cycle step.
inline QForm reduce_step(const QForm& f) {
    Int D = discriminant(f);
    detail::require_indefinite_nonsquare(D, "reduce_step");
    if (f.c == 0) throw std::domain_error("reduce_step: degenerate form (c = 0)");
    Int s = isqrt(D);
    Int ac = abs_int(f.c);
    Int two_c = 2 * ac;
    Int upper = (ac > s) ? ac : s;
    Int r = mod_pos(-f.b, two_c);
    Int b2 = r + two_c * floor_div(upper - r, two_c);
    Int c2 = (b2 * b2 - D) / (4 * f.c);
    return {f.c, b2, c2};
}

/// Iterates ρ until the form is reduced.
inline QForm reduce_form(QForm f) {
    detail::require_indefinite_nonsquare(discriminant(f), "reduce_form");
    for (int guard = 0; guard < 100000; ++guard) {
        if (is_reduced(f)) return f;
        f = reduce_step(f);
    }
    throw std::logic_error("reduce_form: reduction did not terminate");
}

/// All reduced primitive forms of discriminant D, sorted.
///
/// Enumeration: b runs over 1..⌊√D⌋ with b ≡ D (mod 2); then
/// -ac = (D - b²)/4 is split over divisor pairs and the window is checked.
inline std::vector<QForm> reduced_forms(const Int& D) {
    detail::require_indefinite_nonsquare(D, "reduced_forms");
    std::vector<QForm> out;
    Int s = isqrt(D);
    for (Int b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        Int n = (D - b * b) / 4;  // = -ac > 0
        for (Int d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            Int co = n / d;
            for (const Int& aa : {d, co}) {
                for (int sign : {1, -1}) {
                    QForm f{sign * aa, b, -sign * (n / aa)};
                    if (!is_reduced(f)) continue;
                    Int g = boost::multiprecision::gcd(
                        boost::multiprecision::gcd(abs_int(f.a), f.b), abs_int(f.c));
                    if (g == 1) out.push_back(f);
                }
                if (d == co) break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Partition of the reduced forms of D into ρ-cycles.
inline std::vector<std::vector<QForm>> form_cycles(const Int& D) {
    auto forms = reduced_forms(D);
    std::map<QForm, bool> visited;
    for (const auto& f : forms) visited[f] = false;
    std::vector<std::vector<QForm>> cycles;
    for (const auto& f : forms) {
        if (visited[f]) continue;
        std::vector<QForm> cycle;
        QForm g = f;
        do {
            auto it = visited.find(g);
            if (it == visited.end() || it->second)
                throw std::logic_error("form_cycles: ρ left the reduced set or revisited a form");
            it->second = true;
            cycle.push_back(g);
            g = reduce_step(g);
        } while (!(g == f));
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

/// Narrow class number of discriminant D = number of ρ-cycles of reduced
/// primitive forms.
inline Int narrow_class_number(const Int& D) {
    return Int(form_cycles(D).size());
}

/// Fundamental solution of x² - m y² = ±1.
struct PellSolution {
    Int x;
    Int y;
    int norm_sign;  // (-1)^(period length)
};

/// Fundamental unit of Z[√m] via the continued fraction of √m, with exact
/// integer recurrences. The period ends at the first Q = 1; the solution is
/// the convergent just before it.
inline PellSolution fundamental_unit(const Int& m) {
    if (m <= 1) throw std::domain_error("fundamental_unit: need m > 1");
    Int a0 = isqrt(m);
    if (a0 * a0 == m) throw std::domain_error("fundamental_unit: m is a perfect square");

    Int p_prev = 0, q_prev = 1, a_prev = a0;
    Int h_im1 = a0, h_im2 = 1;  // numerators h_0, h_{-1}
    Int k_im1 = 1, k_im2 = 0;   // denominators
    unsigned period = 0;
    while (true) {
        Int p = a_prev * q_prev - p_prev;
        Int q = (m - p * p) / q_prev;
        ++period;
        if (q == 1) break;
        Int a = (a0 + p) / q;
        Int h = a * h_im1 + h_im2;
        Int k = a * k_im1 + k_im2;
        h_im2 = h_im1; h_im1 = h;
        k_im2 = k_im1; k_im1 = k;
        p_prev = p; q_prev = q; a_prev = a;
    }
    return {h_im1, k_im1, (period % 2 == 0) ? 1 : -1};
}

/// Class-number data for k = Q(√2p).
struct Classification {
    Int p;
    Int h_plus;    // narrow class number, from the form-cycle count of D = 8p
    Int h;         // ordinary class number: h⁺ if Nε = -1, h⁺/2 if Nε = +1
    Int h2;        // exact power of 2 dividing h
    Int h2_plus;   // exact power of 2 dividing h⁺
    int norm_eps;  // norm of the fundamental unit of Z[√2p]
    Int eps_x;
    Int eps_y;
};

inline Int two_part(Int n) {
    if (n <= 0) throw std::domain_error("two_part: need n > 0");
    Int t = 1;
    while (n % 2 == 0) {
        n >>= 1;
        t <<= 1;
    }
    return t;
}

inline Classification class_data(const Int& p) {
    if (!is_prime(p) || mod8(p) != 1)
        throw std::domain_error("class_data: p must be a prime ≡ 1 (mod 8)");
    Int hp = narrow_class_number(8 * p);
    PellSolution eps = fundamental_unit(2 * p);
    Int h;
    if (eps.norm_sign == -1) {
        h = hp;
    } else {
        if (hp % 2 != 0)
            throw std::logic_error("class_data: Nε = +1 but h⁺ is odd");
        h = hp / 2;
    }
    return {p, hp, h, two_part(h), two_part(hp), eps.norm_sign, eps.x, eps.y};
}

} // namespace q2p
