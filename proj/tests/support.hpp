#pragma once

// Reference routines used only by tests. They deliberately avoid the library's
// recurrences so that agreement means something.

#include <random>
#include <span>
#include <string>
#include <vector>

#include "cfsum/decompose.hpp"

namespace cfsum::testing {

/// [a_1..a_n] evaluated from the tail: x <- 1/(a_i + x).
inline Rational tail_value(const Digits& digits) {
    Rational x(0);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) x = (Rational(*it) + x).inverse();
    return x;
}

/// Canonical digits of x in [0,1] by x <- 1/x - floor(1/x) on exact rationals.
inline Digits floor_invert_digits(Rational x) {
    Digits out;
    while (!x.is_zero()) {
        const Rational inv = x.inverse();
        const BigInt a = inv.floor();
        out.push_back(a);
        x = inv - Rational(a);
    }
    return out;
}

/// Continuant as the top-left entry of prod [[a_i, 1], [1, 0]].
inline BigInt matrix_continuant(const Digits& digits) {
    BigInt m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    for (const auto& a : digits) {
        BigInt n00 = m00 * a + m01;
        BigInt n10 = m10 * a + m11;
        m01 = m00;
        m11 = m10;
        m00 = n00;
        m10 = n10;
    }
    return m00;
}

inline Digits random_digits(std::mt19937_64& rng, std::size_t len, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    Digits out;
    for (std::size_t i = 0; i < len; ++i) out.emplace_back(dist(rng));
    return out;
}

inline Digits digits_of(std::initializer_list<long> list) {
    Digits out;
    for (long d : list) out.emplace_back(d);
    return out;
}

/// Uniform numerator for a uniformly drawn denominator: p/q in (0, upper].
inline Rational random_rational(std::mt19937_64& rng, const Rational& upper, long max_den) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    while (true) {
        const long q = den_dist(rng);
        // largest p with p/q <= upper
        const BigInt p_max = (upper * Rational(q)).floor();
        if (p_max < 1) continue;
        std::uniform_int_distribution<long> num_dist(1, p_max.get_si());
        return Rational(BigInt(num_dist(rng)), BigInt(q));
    }
}

/// Rational strictly inside (lo, hi) with denominator at most max_den.
inline Rational random_rational_between(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                                        long max_den) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    while (true) {
        const long q = den_dist(rng);
        const BigInt first = (lo * Rational(q)).floor() + 1;
        const BigInt last_excl = -((-(hi * Rational(q))).floor());  // ceil(hi q)
        if (first >= last_excl) continue;
        std::uniform_int_distribution<long> num_dist(first.get_si(), BigInt(last_excl - 1).get_si());
        return Rational(BigInt(num_dist(rng)), BigInt(q));
    }
}

/// Why a finished run breaks one of the step inequalities, re-derived from the
/// digits alone; empty when all hold.
inline std::string step_inequality_failure(const DecompositionResult& r) {
    const Digits& c = r.c;
    const Digits& b = r.b;
    if (b.size() > c.size() || c.empty()) return "digit counts";
    for (const auto& d : c) {
        if (d < 2) return "c_i < 2";
    }
    const std::span<const BigInt> cs(c), bs(b);
    for (std::size_t n = 1; n <= b.size(); ++n) {
        if (b[n - 1] < c[n - 1]) return "b_n < c_n at " + std::to_string(n);
        const BigInt q = continuant(cs.first(n));
        const BigInt q1 = continuant(cs.first(n - 1));
        const BigInt t = continuant(bs.first(n));
        const BigInt t1 = continuant(bs.first(n - 1));
        const BigInt t2 = n >= 2 ? continuant(bs.first(n - 2)) : BigInt(0);
        if (!(q * q1 > t1 * (t1 + t2))) return "q_n q_{n-1} bound at " + std::to_string(n);
        if (!(t1 * (t + t1) > q * (q - q1))) return "t_{n-1}(t_n+t_{n-1}) bound at " + std::to_string(n);
    }
    if (c.front() >= 3) {
        const BigInt floor_growth = (c.front() - 1) * (c.front() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) {
            if (c[i] < floor_growth) return "growth bound at " + std::to_string(i + 1);
        }
    }
    return {};
}

}  // namespace cfsum::testing
