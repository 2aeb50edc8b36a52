#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cfsum/number_source.hpp"
#include "support.hpp"

using namespace cfsum;
using cfsum::testing::digits_of;

namespace {

Rational frac(long p, long q) { return Rational(BigInt(p), BigInt(q)); }

/// Digits of (a + b sqrt d)/c - shift from a decimal enclosure of sqrt d with
/// `places` digits; only the prefix shared by both ends (minus one) is kept.
Digits decimal_surd_digits(long a, long b, long d, long c, const Rational& shift, unsigned places) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    BigInt s;
    const BigInt radicand = BigInt(d) * scale * scale;
    mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
    const Rational root_lo(s, scale);
    const Rational root_hi(BigInt(s + 1), scale);
    Rational v1 = (Rational(a) + Rational(b) * root_lo) / Rational(c) - shift;
    Rational v2 = (Rational(a) + Rational(b) * root_hi) / Rational(c) - shift;
    const Digits e1 = cfsum::testing::floor_invert_digits(v1);
    const Digits e2 = cfsum::testing::floor_invert_digits(v2);
    Digits common;
    for (std::size_t i = 0; i < e1.size() && i < e2.size() && e1[i] == e2[i]; ++i) common.push_back(e1[i]);
    if (!common.empty()) common.pop_back();
    return common;
}

std::vector<BigInt> quotients(const NumberSource& src, const Rational& shift, std::size_t count) {
    std::vector<BigInt> out;
    for (std::size_t n = 1; n <= count; ++n) {
        const auto pq = partial_quotient(src, shift, n);
        REQUIRE(pq.ok());
        out.push_back(pq.value);
    }
    return out;
}

StreamSource sqrt2_minus_1_stream() {
    return StreamSource([](std::size_t) -> std::optional<BigInt> { return BigInt(2); }, "all twos");
}

}  // namespace

TEST_CASE("construction validates the value range") {
    CHECK_NOTHROW(RationalSource(Rational(1)));
    CHECK_THROWS_AS(RationalSource(Rational(0)), DomainError);
    CHECK_THROWS_AS(RationalSource(frac(3, 2)), DomainError);
    CHECK_NOTHROW(SurdSource(BigInt(-1), BigInt(1), BigInt(2), BigInt(1)));
    CHECK_THROWS_AS(SurdSource(BigInt(0), BigInt(1), BigInt(4), BigInt(3)), DomainError);  // square
    CHECK_THROWS_AS(SurdSource(BigInt(0), BigInt(1), BigInt(2), BigInt(1)), DomainError);  // sqrt 2 > 1
    CHECK_THROWS_AS(SurdSource(BigInt(1), BigInt(0), BigInt(2), BigInt(3)), DomainError);
    CHECK_THROWS_AS(SurdSource(BigInt(1), BigInt(1), BigInt(2), BigInt(0)), DomainError);
    // normalization: (2 - 2 sqrt 2)/(-2) = sqrt 2 - 1
    const SurdSource s(BigInt(2), BigInt(-2), BigInt(2), BigInt(-2));
    CHECK(s.a() == -1);
    CHECK(s.b() == 1);
    CHECK(s.c() == 1);
}

TEST_CASE("partial_quotient examples") {
    const NumberSource one = RationalSource(Rational(1));
    const auto first = partial_quotient(one, frac(1, 2), 1);
    CHECK(first.ok());
    CHECK(first.value == 2);
    CHECK(partial_quotient(one, frac(1, 2), 2).status == QuotientStatus::UndefinedIndex);

    const NumberSource surd = SurdSource(BigInt(-1), BigInt(1), BigInt(2), BigInt(1));
    const auto third = partial_quotient(surd, Rational(0), 3);
    CHECK(third.ok());
    CHECK(third.value == 2);

    // x - shift = 1 expands as [1]
    const auto unit = partial_quotient(one, Rational(0), 1);
    CHECK(unit.value == 1);
    CHECK(partial_quotient(one, Rational(0), 2).status == QuotientStatus::UndefinedIndex);

    CHECK_THROWS_AS(partial_quotient(one, frac(3, 2), 1), DomainError);
    CHECK_THROWS_AS(partial_quotient(one, frac(-1, 2), 1), DomainError);
    CHECK_THROWS_AS(partial_quotient(one, Rational(0), 0), DomainError);
}

TEST_CASE("enclosing_interval examples") {
    const auto e = enclosing_interval(StreamSource::e_minus_2(), 2);
    CHECK(e.lo == frac(2, 3));
    CHECK(e.hi == frac(3, 4));
    CHECK(e.lo_closed);
    CHECK_FALSE(e.hi_closed);

    const auto point = enclosing_interval(RationalSource(frac(34, 55)), 9);
    CHECK(point.is_point());
    CHECK(point.lo == frac(34, 55));
    CHECK(point.contains(frac(34, 55)));

    const auto surd = enclosing_interval(SurdSource(BigInt(-1), BigInt(1), BigInt(2), BigInt(1)), 1);
    CHECK(surd.lo == frac(1, 3));
    CHECK(surd.hi == frac(1, 2));
    CHECK_FALSE(surd.lo_closed);
    CHECK(surd.hi_closed);
}

TEST_CASE("streams report exhaustion instead of guessing") {
    const NumberSource shortstream = StreamSource(digits_of({3, 5, 7}), "three digits");
    CHECK(partial_quotient(shortstream, Rational(0), 3).value == 7);
    CHECK(partial_quotient(shortstream, Rational(0), 4).status == QuotientStatus::Exhausted);
    CHECK_THROWS_AS(enclosing_interval(shortstream, 4), SourceExhausted);
    CHECK_NOTHROW(enclosing_interval(shortstream, 3));
    // shifted digits that need more precision than three quotients give
    CHECK(partial_quotient(shortstream, frac(1, 4), 2).ok());
    CHECK(partial_quotient(shortstream, frac(1, 4), 8).status == QuotientStatus::Exhausted);
    CHECK(describe(shortstream) == "stream: three digits");
}

TEST_CASE("stream from file keeps the provenance line") {
    const auto path = std::filesystem::temp_directory_path() / "cfsum_stream_test.txt";
    {
        std::ofstream out(path);
        out << "# sample\n# provenance: hand written\n2\n2 # inline comment\n\n2\n";
    }
    const StreamSource s = StreamSource::from_file(path);
    CHECK(s.provenance() == "provenance: hand written");
    REQUIRE(s.prefix(3).has_value());
    CHECK(*s.prefix(3) == digits_of({2, 2, 2}));
    CHECK_FALSE(s.prefix(4).has_value());
    std::filesystem::remove(path);

    CHECK_THROWS(StreamSource::from_file("/nonexistent/cfsum/file.txt"));
}

TEST_CASE("pi digits file matches the known expansion") {
    const StreamSource pi = StreamSource::from_file(std::filesystem::path(CFSUM_TEST_DATA_DIR) / "pi_minus_3.txt");
    REQUIRE(pi.prefix(12).has_value());
    CHECK(*pi.prefix(12) == digits_of({7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14}));
    CHECK(pi.prefix(300).has_value());
}

TEST_CASE("surd digits agree with a decimal enclosure oracle") {
    struct Case {
        long a, b, d, c;
    };
    const Case cases[] = {{-1, 1, 2, 1}, {-2, 2, 2, 1}, {-1, 1, 5, 2}, {-3, 1, 13, 2}, {0, 1, 7, 3}, {5, -1, 3, 7},
                          {-4, 1, 19, 1}, {1, 1, 10, 9}};
    for (const auto& cs : cases) {
        CAPTURE(cs.a);
        CAPTURE(cs.d);
        const NumberSource src = SurdSource(BigInt(cs.a), BigInt(cs.b), BigInt(cs.d), BigInt(cs.c));
        const Digits oracle = decimal_surd_digits(cs.a, cs.b, cs.d, cs.c, Rational(0), 200);
        REQUIRE(oracle.size() >= 50);
        CHECK(quotients(src, Rational(0), 50) == Digits(oracle.begin(), oracle.begin() + 50));
    }
}

TEST_CASE("shifted digits agree with the oracle for surds and streams") {
    const NumberSource surd = SurdSource(BigInt(-1), BigInt(1), BigInt(2), BigInt(1));
    const NumberSource stream = sqrt2_minus_1_stream();
    std::mt19937_64 rng(31);
    // sqrt 2 - 1 = 0.41421356...
    const Rational upper = frac(41421, 100000);
    for (int trial = 0; trial < 60; ++trial) {
        const Rational shift = cfsum::testing::random_rational_between(rng, Rational(0), upper, 500);
        const Digits oracle = decimal_surd_digits(-1, 1, 2, 1, shift, 120);
        REQUIRE(oracle.size() >= 15);
        const Digits expected(oracle.begin(), oracle.begin() + 15);
        CHECK(quotients(surd, shift, 15) == expected);
        CHECK(quotients(stream, shift, 15) == expected);
    }
}

TEST_CASE("shifted digits of rationals agree with floor-and-invert") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 500; ++trial) {
        const Rational x = cfsum::testing::random_rational(rng, Rational(1), 5000);
        const Rational shift = cfsum::testing::random_rational_between(rng, Rational(-1), x, 300);
        if (shift >= x || x - shift > Rational(1)) continue;
        const Digits expected = cfsum::testing::floor_invert_digits(x - shift);
        const NumberSource src = RationalSource(x);
        const ShiftedPrefix got = shifted_prefix(src, shift, expected.size() + 1);
        CHECK(got.status == QuotientStatus::UndefinedIndex);
        CHECK(got.digits == expected);
        for (std::size_t n = 1; n <= expected.size(); ++n) {
            CHECK(partial_quotient(src, shift, n).value == expected[n - 1]);
        }
    }
}

TEST_CASE("property: enclosing intervals nest and contain the value") {
    const NumberSource surd = SurdSource(BigInt(-3), BigInt(1), BigInt(13), BigInt(2));
    const NumberSource e = StreamSource::e_minus_2();
    const NumberSource rat = RationalSource(frac(1234, 4567));
    for (const NumberSource* src : {&surd, &e, &rat}) {
        CylinderInterval prev = enclosing_interval(*src, 1);
        for (std::size_t depth = 2; depth <= 30; ++depth) {
            const CylinderInterval cur = enclosing_interval(*src, depth);
            CHECK(cur.subset_of(prev));
            // the value is inside: compare against both ends
            if (!cur.is_point()) {
                CHECK(compare(*src, cur.lo) >= 0);
                CHECK(compare(*src, cur.hi) <= 0);
            }
            prev = cur;
        }
    }
    CHECK(enclosing_interval(rat, 30).is_point());
}

TEST_CASE("property: stream intervals contain the true value") {
    // a stream built from the surd's own digits must enclose the surd
    const SurdSource golden(BigInt(-1), BigInt(1), BigInt(5), BigInt(2));
    const NumberSource stream = StreamSource(digits_of({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
    for (std::size_t depth = 1; depth <= 20; ++depth) {
        const CylinderInterval cyl = enclosing_interval(stream, depth);
        const bool above = cyl.lo_closed ? golden.compare(cyl.lo) >= 0 : golden.compare(cyl.lo) > 0;
        const bool below = cyl.hi_closed ? golden.compare(cyl.hi) <= 0 : golden.compare(cyl.hi) < 0;
        CHECK(above);
        CHECK(below);
    }
}

TEST_CASE("compare and exact values") {
    const NumberSource surd = SurdSource(BigInt(-1), BigInt(1), BigInt(2), BigInt(1));
    CHECK(compare(surd, frac(41421, 100000)) > 0);
    CHECK(compare(surd, frac(41422, 100000)) < 0);
    CHECK(compare(RationalSource(frac(1, 3)), frac(1, 3)) == 0);
    CHECK(exact_value_if_rational(RationalSource(frac(1, 3))) == frac(1, 3));
    CHECK_FALSE(exact_value_if_rational(surd).has_value());
    CHECK(compare(StreamSource::e_minus_2(), frac(718281, 1000000)) > 0);
    // a finite stream cannot decide against its own value
    const NumberSource half = StreamSource(digits_of({2}));
    CHECK_THROWS_AS(compare(half, frac(1, 2)), SourceExhausted);
}
