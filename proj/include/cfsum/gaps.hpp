#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfsum/rational.hpp"

namespace cfsum {

/// M_{k,n} = [k, ..., k] (n digits).
Rational repeated_convergent(long k, std::size_t n);
/// m_{k,n} = [k, ..., k, 1] (n digits k, then 1) = [k, ..., k, k+1].
Rational repeated_then_one(long k, std::size_t n);
/// d_{k,n} = <k, ..., k>, with d_0 = 1 and d_{-1} = 0 (pass n = 0 for d_0).
BigInt repeated_continuant(long k, std::size_t n);

/// Open interval G_{k,n}: (M_n + m_n, 2 M_{n+1}) for odd n, mirrored for even
/// n. Its interior misses S(k) + S(k) while both endpoints belong to it.
struct GapInterval {
    long k = 0;
    std::size_t n = 0;
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo < x && x < hi; }
    /// The endpoint formed as M_{k,n} + m_{k,n}.
    const Rational& sum_endpoint() const { return n % 2 == 1 ? lo : hi; }
    /// The endpoint formed as 2 M_{k,n+1}.
    const Rational& double_endpoint() const { return n % 2 == 1 ? hi : lo; }
};

GapInterval gap(long k, std::size_t n);

/// Compares x >= 0 with 2/S_k = sqrt(k^2+4) - k, where S_k is the positive
/// root of y^2 - k y - 1 = 0, via (x + k)^2 against k^2 + 4.
std::strong_ordering metallic_compare(const Rational& x, long k);

enum class Verdict { CoveredByTheorem, GapExcluded, GapEndpoint, MaxEndpoint, Unknown };

std::string to_string(Verdict v);

struct PointClassification {
    Verdict verdict = Verdict::Unknown;
    /// Gap index for GapExcluded / GapEndpoint.
    std::optional<std::size_t> n;
    /// Two elements of S(k) summing to x, for endpoint verdicts.
    std::optional<std::pair<Rational, Rational>> witness;
};

/// Locates x in [0, 2/k] relative to the known structure of S(k) + S(k):
/// x <= 1/(k-1) is covered; 2/k is the maximum 1/k + 1/k; otherwise the odd
/// gaps (below 2/S_k, increasing) or even gaps (above, decreasing) are scanned
/// until they pass x. n_max caps the scan.
PointClassification classify(const Rational& x, long k, std::size_t n_max = 64);

struct DisjointnessCertificate {
    bool disjoint = true;
    bool well_formed = true;             // lo < hi for every gap
    bool odd_increasing = true;          // G_1 < G_3 < G_5 < ...
    bool even_decreasing = true;         // G_2 > G_4 > ...
    bool odd_below_separator = true;     // every odd gap endpoint < 2/S_k
    bool even_above_separator = true;    // every even gap endpoint > 2/S_k
    bool ordering_inequalities = true;   // M_{2n-1}+m_{2n-1} < 2M_{2n} < M_{2n+1}+m_{2n+1}
    bool pairwise = true;                // direct check over all pairs
    std::vector<std::string> failures;

    bool ok() const {
        return disjoint && well_formed && odd_increasing && even_decreasing && odd_below_separator &&
               even_above_separator && ordering_inequalities && pairwise;
    }
};

DisjointnessCertificate verify_disjoint(long k, std::size_t n_max);

/// Decimal expansion of sqrt(k^2+4) - k truncated to `places` digits.
std::string separator_decimal(long k, std::size_t places);

}  // namespace cfsum
