#include "cfsum/oracle.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "cfsum/decompose.hpp"

namespace cfsum {

namespace {

// Digit sequences are explored through their convergent recurrences only;
// (p, q) is the current convergent, (p_prev, q_prev) the one before.
void dfs(long k, long q_max, long p, long q, long p_prev, long q_prev, std::vector<Rational>& out) {
    for (long a = std::max(k, 1L);; ++a) {
        const long qn = a * q + q_prev;
        if (qn > q_max) break;
        const long pn = a * p + p_prev;
        // canonical expansions end in a digit >= 2
        if (a >= 2) out.emplace_back(BigInt(pn), BigInt(qn));
        dfs(k, q_max, pn, qn, p, q, out);
    }
}

void sort_unique(std::vector<Rational>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool BoundedSkEnumeration::contains(const Rational& x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
}

BoundedSkEnumeration enumerate_sk(long k, long q_max, unsigned threads) {
    if (k < 1 || q_max < 1) throw DomainError("enumerate_sk needs k >= 1 and q_max >= 1");
    BoundedSkEnumeration out{k, q_max, {Rational(0)}};

    // first digit a gives p/q = 1/a, previous convergent 0/1
    auto branch = [k, q_max](long first, long stride) {
        std::vector<Rational> part;
        for (long a = first; a <= q_max; a += stride) {
            part.emplace_back(BigInt(1), BigInt(a));  // [a], including [1] = 1
            dfs(k, q_max, 1, a, 0, 1, part);
        }
        return part;
    };
    const long first = std::max(k, 1L);
    if (threads <= 1) {
        auto part = branch(first, 1);
        out.elements.insert(out.elements.end(), part.begin(), part.end());
    } else {
        std::vector<std::future<std::vector<Rational>>> jobs;
        for (unsigned t = 0; t < threads; ++t) {
            jobs.push_back(std::async(std::launch::async, branch, first + static_cast<long>(t),
                                      static_cast<long>(threads)));
        }
        for (auto& job : jobs) {
            auto part = job.get();
            out.elements.insert(out.elements.end(), part.begin(), part.end());
        }
    }
    sort_unique(out.elements);
    return out;
}

std::optional<Witness> sumset_contains(const BoundedSkEnumeration& e, const Rational& target) {
    const auto& v = e.elements;
    if (v.empty()) return std::nullopt;
    std::size_t i = 0;
    std::size_t j = v.size() - 1;
    while (i <= j) {
        const Rational sum = v[i] + v[j];
        if (sum == target) return Witness{v[i], v[j]};
        if (sum < target) {
            ++i;
        } else {
            if (j == 0) break;
            --j;
        }
    }
    return std::nullopt;
}

GapCheck gap_interior_empty(const BoundedSkEnumeration& e, const GapInterval& g) {
    if (g.k != e.k) throw DomainError("gap and enumeration use different k");
    const auto& v = e.elements;
    for (auto u = v.begin(); u != v.end(); ++u) {
        // partners w >= u with lo - u < w < hi - u
        const Rational lo = g.lo - *u;
        const Rational hi = g.hi - *u;
        const auto w = std::upper_bound(u, v.end(), lo);
        if (w != v.end() && *w < hi) return {false, Witness{*u, *w}};
    }
    return {};
}

AgreementReport cross_check_decomposition(const Rational& x, long k, long q_max) {
    const DecompositionResult run = decompose_checked(RationalSource(x), k);
    if (run.termination != Termination::ExactFinite) {
        throw DomainError("decomposition of " + x.str() + " did not terminate finitely");
    }
    AgreementReport report{x, run.c_value(), run.b_value()};
    if (report.c.den() > q_max || report.b.den() > q_max) {
        throw DomainError("summand denominators exceed q_max = " + std::to_string(q_max));
    }
    const BoundedSkEnumeration e = enumerate_sk(k, q_max);
    report.c_enumerated = e.contains(report.c);
    report.b_enumerated = e.contains(report.b);
    report.sum_matches = report.c + report.b == x;
    if (!report.ok()) {
        throw InvariantViolation("oracle disagrees with decomposition of " + x.str() + ": " + report.c.str() +
                                 " + " + report.b.str());
    }
    return report;
}

}  // namespace cfsum
