#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cfsum/oracle.hpp"
#include "support.hpp"

using namespace cfsum;

namespace {

Rational frac(long p, long q) { return Rational(BigInt(p), BigInt(q)); }

/// Every reduced p/q in [0,1] with q <= q_max whose digits are all >= k.
std::vector<Rational> filter_all_fractions(long k, long q_max) {
    std::vector<Rational> out;
    for (long q = 1; q <= q_max; ++q) {
        for (long p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational x{BigInt(p), BigInt(q)};
            const Digits d = cfsum::testing::floor_invert_digits(x);
            if (std::all_of(d.begin(), d.end(), [k](const BigInt& a) { return a >= k; })) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("enumerate_sk examples") {
    const auto e3 = enumerate_sk(3, 10);
    const std::vector<Rational> expected{Rational(0), frac(1, 10), frac(1, 9), frac(1, 8), frac(1, 7),
                                         frac(1, 6),  frac(1, 5),  frac(1, 4), frac(3, 10), frac(1, 3)};
    CHECK(e3.elements == expected);

    const auto e1 = enumerate_sk(1, 3);
    const std::vector<Rational> all{Rational(0), frac(1, 3), frac(1, 2), frac(2, 3), Rational(1)};
    CHECK(e1.elements == all);

    const auto e10 = enumerate_sk(10, 9);
    CHECK(e10.elements == std::vector<Rational>{Rational(0)});

    CHECK(e3.contains(frac(3, 10)));
    CHECK_FALSE(e3.contains(frac(2, 5)));
    CHECK_THROWS_AS(enumerate_sk(0, 10), DomainError);
    CHECK_THROWS_AS(enumerate_sk(3, 0), DomainError);
}

TEST_CASE("sumset_contains examples") {
    const auto e20 = enumerate_sk(3, 20);
    const auto w1 = sumset_contains(e20, frac(7, 12));
    REQUIRE(w1.has_value());
    CHECK(w1->first == frac(1, 4));
    CHECK(w1->second == frac(1, 3));
    const auto w2 = sumset_contains(e20, frac(3, 5));
    REQUIRE(w2.has_value());
    CHECK(w2->first == frac(3, 10));
    CHECK(w2->second == frac(3, 10));

    const auto e100 = enumerate_sk(3, 100);
    CHECK_FALSE(sumset_contains(e100, frac(59, 100)).has_value());
    CHECK(sumset_contains(e100, frac(2, 3)).has_value());
    CHECK(sumset_contains(e100, Rational(0)).has_value());
    CHECK_FALSE(sumset_contains(e100, frac(3, 4)).has_value());
}

TEST_CASE("gap_interior_empty examples") {
    const auto e3 = enumerate_sk(3, 500);
    CHECK(gap_interior_empty(e3, gap(3, 1)).empty);
    CHECK(gap_interior_empty(e3, gap(3, 2)).empty);
    const auto e4 = enumerate_sk(4, 300);
    CHECK(gap_interior_empty(e4, gap(4, 1)).empty);
    CHECK_THROWS_AS(gap_interior_empty(e4, gap(3, 1)), DomainError);
}

TEST_CASE("gap_interior_empty reports a counterexample for a fake gap") {
    const auto e3 = enumerate_sk(3, 50);
    GapInterval fake = gap(3, 1);
    fake.lo = frac(1, 2);
    fake.hi = frac(3, 5);
    const auto check = gap_interior_empty(e3, fake);
    CHECK_FALSE(check.empty);
    REQUIRE(check.counterexample.has_value());
    const Rational s = check.counterexample->first + check.counterexample->second;
    CHECK(fake.contains(s));
}

TEST_CASE("cross_check_decomposition examples") {
    const auto a = cross_check_decomposition(frac(34, 55), 2, 1000);
    CHECK(a.ok());
    CHECK(a.c == frac(37, 75));
    CHECK(a.b == frac(103, 825));

    const auto b = cross_check_decomposition(frac(1, 2), 3, 10);
    CHECK(b.ok());
    CHECK(b.c == frac(1, 3));
    CHECK(b.b == frac(1, 6));

    const auto c = cross_check_decomposition(frac(1, 4), 5, 20);
    CHECK(c.ok());
    CHECK(c.c == frac(1, 5));
    CHECK(c.b == frac(1, 20));

    CHECK_THROWS_AS(cross_check_decomposition(frac(34, 55), 2, 100), DomainError);
}

TEST_CASE("property: two independent enumerations agree") {
    for (long k = 1; k <= 6; ++k) {
        CAPTURE(k);
        CHECK(enumerate_sk(k, 60).elements == filter_all_fractions(k, 60));
    }
}

TEST_CASE("property: enumerated elements have large digits") {
    for (long k = 2; k <= 5; ++k) {
        const auto e = enumerate_sk(k, 400);
        CHECK(std::is_sorted(e.elements.begin(), e.elements.end()));
        CHECK(std::adjacent_find(e.elements.begin(), e.elements.end()) == e.elements.end());
        for (const auto& x : e.elements) {
            for (const auto& d : cfsum::testing::floor_invert_digits(x)) REQUIRE(d >= k);
            REQUIRE(x.den() <= 400);
        }
    }
}

TEST_CASE("property: nesting and maximum") {
    for (long q = 20; q <= 200; q += 60) {
        for (long k = 1; k <= 6; ++k) {
            const auto big = enumerate_sk(k, q);
            const auto small = enumerate_sk(k + 1, q);
            CHECK(std::includes(big.elements.begin(), big.elements.end(), small.elements.begin(),
                                small.elements.end()));
            CHECK(big.elements.back() == frac(1, k));
            const auto top = sumset_contains(big, frac(2, k));
            REQUIRE(top.has_value());
            CHECK(top->first == frac(1, k));
        }
    }
}

TEST_CASE("property: parallel enumeration is deterministic") {
    const auto serial = enumerate_sk(3, 400, 1);
    for (unsigned threads : {2U, 3U, 8U}) CHECK(enumerate_sk(3, 400, threads).elements == serial.elements);
    CHECK(enumerate_sk(1, 80, 4).elements == enumerate_sk(1, 80, 1).elements);
}

TEST_CASE("property: witnesses are genuine") {
    const auto e = enumerate_sk(3, 120);
    std::mt19937_64 rng(59);
    std::size_t found = 0;
    for (int i = 0; i < 300; ++i) {
        const Rational target = cfsum::testing::random_rational(rng, frac(2, 3), 120);
        const auto w = sumset_contains(e, target);
        if (!w) continue;
        ++found;
        CHECK(w->first <= w->second);
        CHECK(w->first + w->second == target);
        CHECK(e.contains(w->first));
        CHECK(e.contains(w->second));
    }
    CHECK(found > 0);
}
