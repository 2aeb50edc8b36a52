#include "cfsum/gaps.hpp"

#include "cfsum/continued_fraction.hpp"

namespace cfsum {

namespace {

void require_k(long k) {
    if (k < 3) throw DomainError("gap intervals need k >= 3, got " + std::to_string(k));
}

std::string gap_name(std::size_t n) { return "G_" + std::to_string(n); }

}  // namespace

BigInt repeated_continuant(long k, std::size_t n) {
    if (k < 1) throw DomainError("repeated_continuant needs k >= 1");
    return continuant(Digits(n, BigInt(k)));
}

Rational repeated_convergent(long k, std::size_t n) {
    if (k < 1 || n < 1) throw DomainError("M_{k,n} needs k >= 1, n >= 1");
    return evaluate(Digits(n, BigInt(k)));
}

Rational repeated_then_one(long k, std::size_t n) {
    if (k < 1 || n < 1) throw DomainError("m_{k,n} needs k >= 1, n >= 1");
    Digits digits(n, BigInt(k));
    digits.emplace_back(1);
    return evaluate(digits);
}

GapInterval gap(long k, std::size_t n) {
    require_k(k);
    if (n < 1) throw DomainError("gap index must be >= 1");
    Rational sum = repeated_convergent(k, n) + repeated_then_one(k, n);
    Rational twice = Rational(2) * repeated_convergent(k, n + 1);
    if (n % 2 == 1) return {k, n, std::move(sum), std::move(twice)};
    return {k, n, std::move(twice), std::move(sum)};
}

std::strong_ordering metallic_compare(const Rational& x, long k) {
    if (x.sign() < 0) throw DomainError("metallic_compare needs x >= 0");
    if (k < 1) throw DomainError("metallic_compare needs k >= 1");
    const Rational shifted = x + Rational(k);
    const Rational lhs = shifted * shifted;
    const Rational rhs(BigInt(k) * k + 4);
    const auto order = lhs <=> rhs;
    // k^2 < k^2 + 4 < (k+2)^2 and k^2 + 4 = (k+1)^2 has no integer solution
    if (order == 0) throw InvariantViolation("x + k equals sqrt(k^2+4), impossible for rational x");
    return order;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::CoveredByTheorem: return "CoveredByTheorem";
        case Verdict::GapExcluded: return "GapExcluded";
        case Verdict::GapEndpoint: return "GapEndpoint";
        case Verdict::MaxEndpoint: return "MaxEndpoint";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

PointClassification classify(const Rational& x, long k, std::size_t n_max) {
    require_k(k);
    const Rational max_value(BigInt(2), BigInt(k));
    if (x.sign() < 0 || x > max_value) throw DomainError("classify needs 0 <= x <= 2/k, got " + x.str());

    if (x <= Rational(BigInt(1), BigInt(k - 1))) return {Verdict::CoveredByTheorem, std::nullopt, std::nullopt};
    if (x == max_value) {
        const Rational one_over_k(BigInt(1), BigInt(k));
        return {Verdict::MaxEndpoint, std::nullopt, std::make_pair(one_over_k, one_over_k)};
    }

    const bool below = metallic_compare(x, k) < 0;
    // odd gaps increase towards the separator from below, even gaps decrease
    // towards it from above
    for (std::size_t n = below ? 1 : 2; n <= n_max; n += 2) {
        const GapInterval g = gap(k, n);
        if (below ? x < g.lo : x > g.hi) break;
        if (g.contains(x)) return {Verdict::GapExcluded, n, std::nullopt};
        if (x == g.lo || x == g.hi) {
            PointClassification out{Verdict::GapEndpoint, n, std::nullopt};
            if (x == g.sum_endpoint()) {
                out.witness = std::make_pair(repeated_convergent(k, n), repeated_then_one(k, n));
            } else {
                const Rational m = repeated_convergent(k, n + 1);
                out.witness = std::make_pair(m, m);
            }
            return out;
        }
    }
    return {Verdict::Unknown, std::nullopt, std::nullopt};
}

DisjointnessCertificate verify_disjoint(long k, std::size_t n_max) {
    require_k(k);
    DisjointnessCertificate cert;
    std::vector<GapInterval> gaps;
    for (std::size_t n = 1; n <= n_max; ++n) gaps.push_back(gap(k, n));

    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        cert.failures.push_back(msg);
    };

    for (const auto& g : gaps) {
        if (!(g.lo < g.hi)) fail(cert.well_formed, gap_name(g.n) + " is empty");
        const bool odd = g.n % 2 == 1;
        for (const Rational* end : {&g.lo, &g.hi}) {
            const auto side = metallic_compare(*end, k);
            if (odd && side >= 0) fail(cert.odd_below_separator, gap_name(g.n) + " reaches 2/S_k");
            if (!odd && side <= 0) fail(cert.even_above_separator, gap_name(g.n) + " reaches 2/S_k");
        }
    }
    for (std::size_t i = 0; i + 2 < gaps.size(); ++i) {
        const auto& a = gaps[i];
        const auto& b = gaps[i + 2];
        if (a.n % 2 == 1 && !(a.hi < b.lo)) fail(cert.odd_increasing, gap_name(a.n) + " not below " + gap_name(b.n));
        if (a.n % 2 == 0 && !(b.hi < a.lo)) fail(cert.even_decreasing, gap_name(a.n) + " not above " + gap_name(b.n));
    }
    // M_{2j-1}+m_{2j-1} < 2M_{2j} < M_{2j+1}+m_{2j+1}, for odd indices inside the range
    for (std::size_t n = 1; n + 2 <= n_max; n += 2) {
        const Rational left = repeated_convergent(k, n) + repeated_then_one(k, n);
        const Rational mid = Rational(2) * repeated_convergent(k, n + 1);
        const Rational right = repeated_convergent(k, n + 2) + repeated_then_one(k, n + 2);
        if (!(left < mid && mid < right)) fail(cert.ordering_inequalities, "ordering fails at n = " + std::to_string(n));
    }
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        for (std::size_t j = i + 1; j < gaps.size(); ++j) {
            if (gaps[i].lo < gaps[j].hi && gaps[j].lo < gaps[i].hi) {
                fail(cert.pairwise, gap_name(gaps[i].n) + " overlaps " + gap_name(gaps[j].n));
            }
        }
    }
    cert.disjoint = cert.pairwise && cert.odd_increasing && cert.even_decreasing && cert.odd_below_separator &&
                    cert.even_above_separator;
    return cert;
}

std::string separator_decimal(long k, std::size_t places) {
    if (k < 1) throw DomainError("separator needs k >= 1");
    // floor(sqrt((k^2+4) * 10^(2 places))) - k * 10^places
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    const BigInt radicand = (BigInt(k) * k + 4) * scale * scale;
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
    return to_decimal(Rational(BigInt(root - BigInt(k) * scale), scale), places);
}

}  // namespace cfsum
