#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cfsum/gaps.hpp"
#include "cfsum/rational.hpp"

namespace cfsum {

/// Every rational p/q in [0, 1] with q <= q_max whose canonical expansion has
/// all partial quotients >= k, plus 0. Sorted ascending, no duplicates.
struct BoundedSkEnumeration {
    long k = 1;
    long q_max = 1;
    std::vector<Rational> elements;

    bool contains(const Rational& x) const;
};

/// Depth-first search over digit sequences with digits >= k, pruned by the
/// continuant bound. `threads` > 1 partitions the search by first digit;
/// the result does not depend on it.
BoundedSkEnumeration enumerate_sk(long k, long q_max, unsigned threads = 1);

using Witness = std::pair<Rational, Rational>;

/// Some u <= v from the enumeration with u + v = target. A miss only means
/// no witness exists at this denominator bound.
std::optional<Witness> sumset_contains(const BoundedSkEnumeration& e, const Rational& target);

struct GapCheck {
    bool empty = true;
    std::optional<Witness> counterexample;
};

/// True iff no pair of enumerated elements sums strictly inside the gap.
GapCheck gap_interior_empty(const BoundedSkEnumeration& e, const GapInterval& g);

struct AgreementReport {
    Rational x;
    Rational c;
    Rational b;
    bool c_enumerated = false;
    bool b_enumerated = false;
    bool sum_matches = false;

    bool ok() const { return c_enumerated && b_enumerated && sum_matches; }
};

/// Runs decompose_checked(x, k) and confirms both summands appear in
/// enumerate_sk(k, q_max). Throws InvariantViolation on disagreement and
/// DomainError when the run does not end finitely within q_max.
AgreementReport cross_check_decomposition(const Rational& x, long k, long q_max);

}  // namespace cfsum
