#pragma once

#include "q2p/arith.hpp"

#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace q2p {

/// Element a + b√2 of the ring Z[√2]. Arithmetic is exact; equality is
/// componentwise.
struct Z2Elem {
    Int a{};
    Int b{};

    Z2Elem() = default;
    Z2Elem(Int a_, Int b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}

    bool operator==(const Z2Elem&) const = default;
};

inline Z2Elem operator+(const Z2Elem& x, const Z2Elem& y) { return {x.a + y.a, x.b + y.b}; }
inline Z2Elem operator-(const Z2Elem& x, const Z2Elem& y) { return {x.a - y.a, x.b - y.b}; }
inline Z2Elem operator-(const Z2Elem& x) { return {-x.a, -x.b}; }

// (a + b√2)(c + d√2) = ac + 2bd + (ad + bc)√2
inline Z2Elem operator*(const Z2Elem& x, const Z2Elem& y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
}

inline Z2Elem conj(const Z2Elem& x) { return {x.a, -x.b}; }

inline Int norm(const Z2Elem& x) { return x.a * x.a - 2 * x.b * x.b; }

inline bool is_zero(const Z2Elem& x) { return x.a == 0 && x.b == 0; }
inline bool is_unit(const Z2Elem& x) { return abs_int(norm(x)) == 1; }

/// Sign of the real number a + b√2 (exact; never 0 unless x = 0).
inline int value_sign(const Z2Elem& x) {
    if (x.a == 0 && x.b == 0) return 0;
    if (x.a >= 0 && x.b >= 0) return 1;
    if (x.a <= 0 && x.b <= 0) return -1;
    // mixed signs: compare a² against 2b²
    bool a_positive = x.a > 0;
    return (a_positive == (norm(x) > 0)) ? 1 : -1;
}

/// (1 + √2)^j for any integer j; 1 + √2 is a unit, so negative j is exact.
inline Z2Elem unit_power(Int j) {
    Z2Elem base = (j >= 0) ? Z2Elem{1, 1} : Z2Elem{-1, 1};
    if (j < 0) j = -j;
    Z2Elem acc{1, 0};
    while (j > 0) {
        if (is_odd(j)) acc = acc * base;
        base = base * base;
        j >>= 1;
    }
    return acc;
}

/// Division with remainder: x = q*y + r with |norm(r)| <= |norm(y)|/2.
/// Both quotient components are rounded to the nearest integer (ties up),
/// which is what makes Z[√2] norm-Euclidean.
inline std::pair<Z2Elem, Z2Elem> divmod(const Z2Elem& x, const Z2Elem& y) {
    Int n = norm(y);
    if (n == 0) throw std::domain_error("divmod: division by zero");
    // x * conj(y) = (na) + (nb)√2, exact quotient is (na/n, nb/n)
    Int na = x.a * y.a - 2 * x.b * y.b;
    Int nb = x.b * y.a - x.a * y.b;
    auto round_nearest = [](Int num, Int den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return floor_div(2 * num + den, 2 * den);
    };
    Z2Elem q{round_nearest(na, n), round_nearest(nb, n)};
    Z2Elem r = x - q * y;
    return {q, r};
}

/// Exact quotient x / y when y divides x in Z[√2], absent otherwise.
inline std::optional<Z2Elem> div_exact(const Z2Elem& x, const Z2Elem& y) {
    Int n = norm(y);
    if (n == 0) return std::nullopt;
    Int na = x.a * y.a - 2 * x.b * y.b;
    Int nb = x.b * y.a - x.a * y.b;
    if (na % n != 0 || nb % n != 0) return std::nullopt;
    return Z2Elem{na / n, nb / n};
}

namespace detail {

// Strict "is A a better canonical representative than B" order used below:
// smaller positive rational part first, then b >= 0 preferred, then |b|.
inline bool canonical_better(const Z2Elem& A, const Z2Elem& B) {
    if (A.a != B.a) return A.a < B.a;
    bool an = A.b < 0, bn = B.b < 0;
    if (an != bn) return !an;
    return abs_int(A.b) < abs_int(B.b);
}

} // namespace detail

/// Canonical associate of x != 0: among all unit multiples ±(1+√2)^k · x
/// with positive rational part, the one with minimal a (ties: b >= 0 first,
/// then minimal |b|).
inline Z2Elem canonical_associate(const Z2Elem& x0) {
    if (is_zero(x0)) throw std::domain_error("canonical_associate: zero has no associate");
    const Z2Elem step{3, 2};        // (1+√2)²
    const Z2Elem step_inv{3, -2};   // (1+√2)⁻²
    auto abs_a = [](const Z2Elem& z) { return abs_int(z.a); };

    std::optional<Z2Elem> best;
    auto offer = [&](const Z2Elem& z) {
        if (z.a == 0) return;
        Z2Elem c = z.a > 0 ? z : -z;
        if (!best || detail::canonical_better(c, *best)) best = c;
    };

    // |a| along each parity chain k -> x·(1+√2)^(2k+parity) is quasi-unimodal,
    // so a descent to the local minimum (plus its two neighbours) covers the
    // global minimum.
    for (int parity = 0; parity < 2; ++parity) {
        Z2Elem z = parity ? x0 * Z2Elem{1, 1} : x0;
        while (abs_a(z * step) < abs_a(z)) z = z * step;
        while (abs_a(z * step_inv) < abs_a(z)) z = z * step_inv;
        offer(z);
        offer(z * step);
        offer(z * step_inv);
    }
    return *best;
}

/// Greatest common divisor in Z[√2] under the Euclidean function |norm|,
/// returned as the canonical associate.
inline Z2Elem gcd(Z2Elem x, Z2Elem y) {
    if (is_zero(x) && is_zero(y))
        throw std::domain_error("gcd: both arguments are zero");
    while (!is_zero(y)) {
        auto [q, r] = divmod(x, y);
        x = y;
        y = r;
    }
    return canonical_associate(x);
}

/// True iff both components of x - y are divisible by 4.
inline bool congruent_mod4(const Z2Elem& x, const Z2Elem& y) {
    return (x.a - y.a) % 4 == 0 && (x.b - y.b) % 4 == 0;
}

/// Renders "a + b√2" ("a + b*sqrt2" in ASCII mode).
inline std::string to_string(const Z2Elem& x, bool ascii = false) {
    const std::string root = ascii ? "sqrt2" : "√2";
    const std::string sep = ascii ? "*" : "";
    if (x.b == 0) return x.a.str();
    std::string root_term;
    Int babs = abs_int(x.b);
    if (babs == 1)
        root_term = root;
    else
        root_term = babs.str() + sep + root;
    if (x.a == 0) return (x.b < 0 ? "-" : "") + root_term;
    return x.a.str() + (x.b < 0 ? " - " : " + ") + root_term;
}

/// Parses the rendering above (both Unicode and ASCII, '*' optional).
inline Z2Elem parse_z2(std::string_view input) {
    // fold whitespace/'*' away and both root spellings to a marker
    std::string s;
    for (size_t i = 0; i < input.size();) {
        if (std::isspace(static_cast<unsigned char>(input[i])) || input[i] == '*') {
            ++i;
        } else if (input.substr(i, 5) == "sqrt2") {
            s += 'R';
            i += 5;
        } else if (input.substr(i, 4) == "√2") {
            s += 'R';
            i += 4;
        } else {
            s += input[i++];
        }
    }
    if (s.empty()) throw std::invalid_argument("parse_z2: empty input");

    size_t pos = 0;
    auto parse_term = [&]() -> std::pair<Int, bool> {
        int sign = 1;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -1;
            ++pos;
        }
        std::string digits;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            digits += s[pos++];
        bool root = pos < s.size() && s[pos] == 'R';
        if (root) ++pos;
        if (digits.empty() && !root)
            throw std::invalid_argument("parse_z2: malformed term");
        Int mag = digits.empty() ? Int(1) : Int(digits);
        return {sign * mag, root};
    };

    Int a = 0, b = 0;
    bool have_a = false, have_b = false;
    while (pos < s.size()) {
        if ((have_a || have_b) && s[pos] != '+' && s[pos] != '-')
            throw std::invalid_argument("parse_z2: expected sign between terms");
        auto [coeff, root] = parse_term();
        if (root) {
            if (have_b) throw std::invalid_argument("parse_z2: duplicate √2 term");
            b = coeff;
            have_b = true;
        } else {
            if (have_a) throw std::invalid_argument("parse_z2: duplicate integer term");
            a = coeff;
            have_a = true;
        }
    }
    return {a, b};
}

inline std::ostream& operator<<(std::ostream& os, const Z2Elem& x) {
    return os << to_string(x);
}

} // namespace q2p
