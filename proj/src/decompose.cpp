#include "cfsum/decompose.hpp"

#include <algorithm>

namespace cfsum {

std::string to_string(Termination t) {
    switch (t) {
        case Termination::ExactFinite: return "ExactFinite";
        case Termination::DepthReached: return "DepthReached";
        case Termination::SourceExhausted: return "SourceExhausted";
    }
    return "?";
}

void ConvergentPair::push(const BigInt& digit) {
    BigInt pn = digit * p + p_prev;
    BigInt qn = digit * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(pn);
    q = std::move(qn);
}

Rational error_bound(const DecompositionState& state) {
    if (state.completed_steps() == 0) throw StateError("error_bound needs at least one completed step");
    const BigInt& t = state.st.q;
    const BigInt& t_prev = state.st.q_prev;
    return Rational(BigInt(1), BigInt(t * (t + t_prev)));
}

namespace {

[[noreturn]] void violated(const std::string& what, std::size_t step) {
    throw InvariantViolation("step " + std::to_string(step) + ": " + what, step);
}

bool prefix_matches(const Digits& got, const Digits& expected, std::size_t count) {
    if (got.size() < count || expected.size() < count) return false;
    return std::equal(expected.begin(), expected.begin() + static_cast<std::ptrdiff_t>(count), got.begin());
}

class Runner {
  public:
    Runner(const NumberSource& src, const DecomposeOptions& options)
        : src_(src), options_(options), x_(exact_value_if_rational(src)) {}

    DecompositionResult run() {
        DecompositionResult result;
        auto& state = result.state;

        // c_1 = a_1(x) + 1
        const PartialQuotient a1 = partial_quotient(src_, Rational(0), 1);
        if (a1.status == QuotientStatus::Exhausted) return finish(result, Termination::SourceExhausted);
        if (!a1.ok()) violated("x has no first partial quotient", 1);
        push_c(state, BigInt(a1.value + 1), 1);

        for (std::size_t n = 1;; ++n) {
            // b_n = a_n(x - p_n/q_n)
            const Rational p_over_q = state.pq.value();
            ShiftedPrefix b_pre = shifted_prefix(src_, p_over_q, n);
            if (b_pre.status == QuotientStatus::Exhausted) return finish(result, Termination::SourceExhausted);
            if (options_.check_invariants && !prefix_matches(b_pre.digits, state.b_digits, n - 1)) {
                violated("x - p_n/q_n left the cylinder of b_1..b_{n-1}", n);
            }
            if (b_pre.status == QuotientStatus::UndefinedIndex) {
                require_exact(state, n);
                return finish(result, Termination::ExactFinite);
            }
            push_b(state, b_pre.digits.back(), n);

            if (x_ && state.step_log.back().residual->is_zero()) {
                return finish(result, Termination::ExactFinite);
            }
            if (n == options_.max_steps) return finish(result, Termination::DepthReached);

            // c_{n+1} = a_{n+1}(x - s_n/t_n) + 1
            ShiftedPrefix c_pre = shifted_prefix(src_, state.st.value(), n + 1);
            if (c_pre.status == QuotientStatus::Exhausted) return finish(result, Termination::SourceExhausted);
            if (options_.check_invariants && !prefix_matches(c_pre.digits, state.c_digits, n)) {
                violated("x - s_n/t_n left the cylinder of c_1..c_n", n + 1);
            }
            if (c_pre.status == QuotientStatus::UndefinedIndex) {
                require_exact(state, n + 1);
                return finish(result, Termination::ExactFinite);
            }
            push_c(state, BigInt(c_pre.digits.back() + 1), n + 1);
        }
    }

  private:
    void push_c(DecompositionState& state, BigInt c, std::size_t n) {
        if (options_.check_invariants) {
            if (n >= 2) {
                const auto& diag = state.step_log.back();
                if (!(Rational(c) > diag.ck_lower_bound)) {
                    violated("c_n = " + c.get_str() + " does not exceed its lower bound " +
                                 diag.ck_lower_bound.str(), n);
                }
                const BigInt& c1 = state.c_digits.front();
                if (c1 >= 3 && c < (c1 - 1) * (c1 - 1)) {
                    violated("growth bound c_n >= (c_1-1)^2 failed", n);
                }
            }
            if (options_.min_c && c < *options_.min_c) {
                violated("c_n = " + c.get_str() + " below required minimum " + options_.min_c->get_str(), n);
            }
        }
        state.c_digits.push_back(c);
        state.pq.push(c);
        if (options_.check_invariants) {
            // q_n q_{n-1} > t_{n-1}(t_{n-1} + t_{n-2})
            const BigInt lhs = state.pq.q * state.pq.q_prev;
            const BigInt rhs = state.st.q * (state.st.q + state.st.q_prev);
            if (!(lhs > rhs)) violated("q_n q_{n-1} > t_{n-1}(t_{n-1}+t_{n-2}) failed", n);
        }
    }

    void push_b(DecompositionState& state, const BigInt& b, std::size_t n) {
        const BigInt& q = state.pq.q;
        const BigInt& q_prev = state.pq.q_prev;
        const BigInt t_prev = state.st.q;        // t_{n-1}
        const BigInt t_prev2 = state.st.q_prev;  // t_{n-2}

        StepDiagnostics diag;
        diag.index = n;
        diag.c = state.c_digits.back();
        diag.b = b;
        {
            const Rational ratio(q, t_prev);
            diag.bk_lower_bound = ratio * ratio - Rational(q_prev, t_prev) * ratio - Rational(1) -
                                  Rational(t_prev2, t_prev);
        }

        state.b_digits.push_back(b);
        state.st.push(b);
        const BigInt& t = state.st.q;
        {
            const Rational ratio(t, q);
            diag.ck_lower_bound = ratio * ratio + ratio * Rational(t_prev, q) - Rational(q_prev, q);
        }
        diag.error_bound = error_bound(state);
        if (x_) diag.residual = *x_ - state.pq.value() - state.st.value();

        if (options_.check_invariants) {
            if (b < diag.c) violated("b_n >= c_n failed", n);
            if (!(Rational(b) > diag.bk_lower_bound)) {
                violated("b_n = " + b.get_str() + " does not exceed its lower bound " + diag.bk_lower_bound.str(), n);
            }
            // t_{n-1}(t_n + t_{n-1}) > q_n(q_n - q_{n-1})
            if (!(t_prev * (t + t_prev) > q * (q - q_prev))) {
                violated("t_{n-1}(t_n+t_{n-1}) > q_n(q_n-q_{n-1}) failed", n);
            }
            if (options_.min_b && b < *options_.min_b) {
                violated("b_n = " + b.get_str() + " below required minimum " + options_.min_b->get_str(), n);
            }
            if (diag.residual && !(diag.residual->abs() < diag.error_bound)) {
                violated("residual " + diag.residual->str() + " not below error bound", n);
            }
            if (!state.step_log.empty() && !(diag.error_bound < state.step_log.back().error_bound)) {
                violated("error bound did not decrease", n);
            }
        }
        state.step_log.push_back(std::move(diag));
    }

    // A missing digit is only legitimate when the partial sums already hit x.
    void require_exact(const DecompositionState& state, std::size_t n) const {
        if (!x_) violated("irrational source produced a terminating expansion", n);
        const Rational residual = *x_ - state.pq.value() - state.st.value();
        if (!residual.is_zero()) violated("expansion ended with nonzero residual " + residual.str(), n);
    }

    DecompositionResult& finish(DecompositionResult& result, Termination termination) const {
        auto& state = result.state;
        result.termination = termination;
        result.c = state.c_digits;
        result.b = state.b_digits;
        result.steps = state.completed_steps();
        if (termination == Termination::ExactFinite) {
            result.achieved_error = Rational(0);
            if (x_ && evaluate(result.c) + evaluate(result.b) != *x_) {
                violated("finite decomposition does not sum to x", result.steps);
            }
        } else if (result.steps > 0) {
            result.achieved_error = error_bound(state);
        } else {
            result.achieved_error = Rational(1);
        }
        for (std::size_t i = 0; i < result.c.size(); ++i) {
            if (i > 0 && result.c[i] < result.b[i - 1]) result.merged_nondecreasing = false;
            if (i < result.b.size() && result.b[i] < result.c[i]) result.merged_nondecreasing = false;
        }
        return result;
    }

    const NumberSource& src_;
    const DecomposeOptions& options_;
    std::optional<Rational> x_;
};

void require_in_range(const NumberSource& src, const Rational& upper, const std::string& what) {
    if (compare(src, Rational(0)) <= 0 || compare(src, upper) > 0) {
        throw DomainError("x must lie in (0, " + upper.str() + "] for " + what);
    }
}

}  // namespace

DecompositionResult decompose(const NumberSource& src, const DecomposeOptions& options) {
    if (options.max_steps == 0) throw DomainError("max_steps must be positive");
    return Runner(src, options).run();
}

DecompositionResult decompose(const NumberSource& src, std::size_t max_steps) {
    DecomposeOptions options;
    options.max_steps = max_steps;
    return decompose(src, options);
}

DecompositionResult decompose_checked(const NumberSource& src, long k, std::size_t max_steps,
                                      bool check_invariants) {
    if (k < 2) throw DomainError("decompose_checked needs k >= 2");
    require_in_range(src, Rational(BigInt(1), BigInt(k - 1)), "k = " + std::to_string(k));
    DecomposeOptions options;
    options.max_steps = max_steps;
    options.check_invariants = check_invariants;
    options.min_c = BigInt(k);
    options.min_b = BigInt(k);
    return decompose(src, options);
}

DecompositionResult decompose_mixed(const NumberSource& src, long m, long n, std::size_t max_steps,
                                    bool check_invariants) {
    const bool between = m >= 3 && m < n && n <= (m - 1) * (m - 1);
    const bool square = m >= 2 && n == m * m;
    if (!between && !square) {
        throw DomainError("decompose_mixed needs 3 <= m < n <= (m-1)^2 or n = m^2 (m >= 2)");
    }
    // the two cases never overlap since (m-1)^2 < m^2
    const Rational upper = between ? Rational(BigInt(1), BigInt(m - 1)) : Rational(BigInt(m + 1), BigInt(m * m));
    require_in_range(src, upper, "(m, n) = (" + std::to_string(m) + ", " + std::to_string(n) + ")");
    DecomposeOptions options;
    options.max_steps = max_steps;
    options.check_invariants = check_invariants;
    options.min_c = BigInt(m);
    options.min_b = BigInt(n);
    return decompose(src, options);
}

}  // namespace cfsum
