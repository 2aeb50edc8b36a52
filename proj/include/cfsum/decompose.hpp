#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cfsum/continued_fraction.hpp"
#include "cfsum/number_source.hpp"

namespace cfsum {

enum class Termination { ExactFinite, DepthReached, SourceExhausted };

std::string to_string(Termination t);

/// Per-step record. Step n is complete once c_n and b_n are known.
struct StepDiagnostics {
    std::size_t index = 0;
    BigInt c;
    BigInt b;
    /// Right side of c_{n+1} > (t_n/q_n)^2 + (t_n/q_n)(t_{n-1}/q_n) - q_{n-1}/q_n.
    Rational ck_lower_bound;
    /// Right side of b_n > (q_n/t_{n-1})^2 - (q_{n-1}/t_{n-1})(q_n/t_{n-1}) - 1 - t_{n-2}/t_{n-1}.
    Rational bk_lower_bound;
    /// 1/(t_n(t_n + t_{n-1})), bounds |x - p_n/q_n - s_n/t_n|.
    Rational error_bound;
    /// Exact residual x - p_n/q_n - s_n/t_n when x is rational.
    std::optional<Rational> residual;
};

/// Convergent pair (current, previous) of one of the two expansions.
struct ConvergentPair {
    BigInt p = 0, q = 1;            // index n
    BigInt p_prev = 1, q_prev = 0;  // index n - 1

    void push(const BigInt& digit);
    Rational value() const { return Rational(p, q); }
};

struct DecompositionState {
    Digits c_digits;
    Digits b_digits;
    ConvergentPair pq;  // p_n/q_n of c
    ConvergentPair st;  // s_n/t_n of b
    std::vector<StepDiagnostics> step_log;

    std::size_t completed_steps() const { return b_digits.size(); }
};

struct DecomposeOptions {
    std::size_t max_steps = 64;
    bool check_invariants = true;
    /// Required lower bounds on the produced digits (membership checks).
    std::optional<BigInt> min_c;
    std::optional<BigInt> min_b;
};

struct DecompositionResult {
    Digits c;
    Digits b;
    Termination termination = Termination::DepthReached;
    /// Upper bound on |x - p_n/q_n - s_n/t_n|: 0 for ExactFinite, the
    /// certified error_bound otherwise (1 if no step completed).
    Rational achieved_error;
    std::size_t steps = 0;
    DecompositionState state;
    /// Whether c_1, b_1, c_2, b_2, ... is non-decreasing (logged only).
    bool merged_nondecreasing = true;

    Rational c_value() const { return evaluate(c); }
    Rational b_value() const { return evaluate(b); }
};

/// Splits x = c + b with c = [c_1, c_2, ...], b = [b_1, b_2, ...]:
///   c_1 = a_1(x) + 1,
///   b_n = a_n(x - p_n/q_n),
///   c_{n+1} = a_{n+1}(x - s_n/t_n) + 1.
/// Stops with ExactFinite when a required digit does not exist (or the
/// residual vanishes), DepthReached after max_steps pairs, SourceExhausted
/// when a stream cannot decide a digit.
///
/// With check_invariants every step verifies: b_n >= c_n; q_n q_{n-1} >
/// t_{n-1}(t_{n-1}+t_{n-2}); t_{n-1}(t_n+t_{n-1}) > q_n(q_n - q_{n-1});
/// c_{n+1} >= (c_1-1)^2 when c_1 >= 3; the two digit lower bounds; the
/// cylinder consistency of each shifted value; and, for rational x, that the
/// residual is below error_bound. Any failure throws InvariantViolation.
DecompositionResult decompose(const NumberSource& src, const DecomposeOptions& options = {});
DecompositionResult decompose(const NumberSource& src, std::size_t max_steps);

/// decompose for x in (0, 1/(k-1)], asserting every digit is >= k.
DecompositionResult decompose_checked(const NumberSource& src, long k, std::size_t max_steps = 64,
                                      bool check_invariants = true);

/// decompose asserting c_i >= m and b_i >= n, for 3 <= m < n <= (m-1)^2 with
/// x in (0, 1/(m-1)], or n = m^2 with x in (0, (m+1)/m^2].
DecompositionResult decompose_mixed(const NumberSource& src, long m, long n, std::size_t max_steps = 64,
                                    bool check_invariants = true);

/// 1/(t_n(t_n + t_{n-1})) for the last completed step.
Rational error_bound(const DecompositionState& state);

}  // namespace cfsum
