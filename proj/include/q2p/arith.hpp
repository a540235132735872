#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>

namespace q2p {

/// Exact signed integer used throughout the library.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& n) { return n < 0 ? Int(-n) : n; }

/// Floor division for d > 0 (cpp_int's operator/ truncates toward zero).
inline Int floor_div(const Int& n, const Int& d) {
    Int q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

/// Canonical nonnegative residue n mod m (m > 0).
inline Int mod_pos(const Int& n, const Int& m) {
    Int r = n % m;
    if (r < 0) r += m;
    return r;
}

inline int mod4(const Int& n) { return mod_pos(n, 4).convert_to<int>(); }
inline int mod8(const Int& n) { return mod_pos(n, 8).convert_to<int>(); }

inline bool is_odd(const Int& n) { return n % 2 != 0; }

/// base^exp mod m, exp >= 0, m > 1.
inline Int powmod(const Int& base, const Int& exp, const Int& m) {
    return boost::multiprecision::powm(mod_pos(base, m), exp, m);
}

/// Floor of the square root of n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

namespace detail {
inline bool square_residue_mod64(unsigned r) {
    static const auto table = [] {
        std::array<bool, 64> t{};
        for (unsigned k = 0; k < 64; ++k) t[(k * k) & 63u] = true;
        return t;
    }();
    return table[r & 63u];
}
} // namespace detail

/// Returns sqrt(n) when n is a perfect square >= 0, absent otherwise.
inline std::optional<Int> is_perfect_square(const Int& n) {
    if (n < 0) return std::nullopt;
    if (!detail::square_residue_mod64(mod_pos(n, 64).convert_to<unsigned>()))
        return std::nullopt;
    Int r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

/// Deterministic Miller-Rabin primality test.
///
/// The fixed witness set {2,3,5,7,...,37} is known to be correct for all
/// n < 3.3e24 (Sorenson-Webster), far beyond any input this library is
/// pointed at; it stays deterministic (though heuristic) above that.
inline bool is_prime(const Int& n) {
    static constexpr int witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (int w : witnesses) {
        if (n == w) return true;
        if (n % w == 0) return false;
    }
    Int d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) {
        d >>= 1;
        ++r;
    }
    for (int w : witnesses) {
        Int x = powmod(w, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness_for_compositeness = true;
        for (unsigned i = 1; i < r; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness_for_compositeness = false;
                break;
            }
        }
        if (witness_for_compositeness) return false;
    }
    return true;
}

/// Jacobi symbol (a/n) for odd n > 0; equals the Legendre symbol for prime n.
inline int jacobi(Int a, Int n) {
    if (n <= 0 || n % 2 == 0)
        throw std::domain_error("jacobi: lower argument must be odd and positive");
    a = mod_pos(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a >>= 1;
            int m = mod8(n);
            if (m == 3 || m == 5) result = -result;
        }
        a.swap(n);
        if (mod4(a) == 3 && mod4(n) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

/// Square root of a modulo an odd prime p (Tonelli-Shanks).
/// Canonical choice: the smaller of the two roots.
inline Int sqrt_mod(const Int& a0, const Int& p) {
    Int a = mod_pos(a0, p);
    if (a == 0) return 0;
    if (jacobi(a, p) != 1)
        throw std::domain_error("sqrt_mod: argument is not a quadratic residue");
    Int x;
    if (mod4(p) == 3) {
        x = powmod(a, (p + 1) / 4, p);
    } else {
        Int q = p - 1;
        unsigned s = 0;
        while (q % 2 == 0) {
            q >>= 1;
            ++s;
        }
        Int z = 2;
        while (jacobi(z, p) != -1) ++z;  // deterministic non-residue scan
        unsigned m = s;
        Int c = powmod(z, q, p);
        Int t = powmod(a, q, p);
        Int r = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            unsigned i = 0;
            Int tt = t;
            while (tt != 1) {
                tt = tt * tt % p;
                ++i;
            }
            Int b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        x = r;
    }
    Int other = p - x;
    return x <= other ? x : other;
}

/// Rational quartic residue symbol (2/p)_4 for a prime p ≡ 1 (mod 8):
/// 2^((p-1)/4) mod p, with the residue p-1 mapped to -1 explicitly.
inline int quartic_symbol_2_mod_p(const Int& p) {
    if (mod8(p) != 1)
        throw std::domain_error("quartic_symbol_2_mod_p: need p ≡ 1 (mod 8)");
    Int v = powmod(2, (p - 1) / 4, p);
    if (v == 1) return 1;
    if (v == p - 1) return -1;
    throw std::logic_error("quartic_symbol_2_mod_p: residue is not ±1 (p not prime?)");
}

/// (p/2)_4 for p ≡ 1 (mod 8): +1 when p ≡ 1 (mod 16), -1 when p ≡ 9 (mod 16).
inline int quartic_symbol_p_mod_2(const Int& p) {
    if (mod8(p) != 1)
        throw std::domain_error("quartic_symbol_p_mod_2: need p ≡ 1 (mod 8)");
    return mod_pos(p, 16) == 1 ? 1 : -1;
}

} // namespace q2p
