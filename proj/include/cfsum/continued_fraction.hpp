#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfsum/rational.hpp"

namespace cfsum {

using Digits = std::vector<BigInt>;

/// A convergent p/q of a continued fraction, kept as the raw recurrence pair
/// (not reduced; the recurrence already yields coprime p, q).
struct Convergent {
    BigInt p;
    BigInt q;

    Rational value() const { return Rational(p, q); }
    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Finite continued fraction [a_1, ..., a_n] = 1/(a_1 + 1/(a_2 + ...)) in
/// canonical form: every digit >= 1 and the last digit >= 2, the sole
/// exception being [1] = 1. The empty sequence is 0.
class ContinuedFraction {
  public:
    ContinuedFraction() = default;

    /// Validates the digits and folds a trailing 1 into its predecessor
    /// ([.., a, 1] -> [.., a + 1]).
    explicit ContinuedFraction(Digits digits);

    /// Parses "[a1,a2,...,an]"; "[]" is zero.
    static ContinuedFraction parse(std::string_view text);

    const Digits& digits() const { return digits_; }
    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    const BigInt& operator[](std::size_t i) const { return digits_[i]; }

    /// Convergents p_1/q_1 .. p_n/q_n; computed once at construction.
    const std::vector<Convergent>& convergents() const { return convergents_; }

    Rational value() const;
    std::string str() const;

    friend bool operator==(const ContinuedFraction& a, const ContinuedFraction& b) {
        return a.digits_ == b.digits_;
    }

  private:
    Digits digits_;
    std::vector<Convergent> convergents_;
};

/// Closed/open rational interval; a degenerate closed point is allowed.
struct CylinderInterval {
    Rational lo;
    Rational hi;
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(const Rational& x) const;
    bool is_point() const { return lo == hi; }
    Rational length() const { return hi - lo; }
    /// Set inclusion, respecting endpoint closedness.
    bool subset_of(const CylinderInterval& other) const;
    std::string str() const;
};

ContinuedFraction cf_from_rational(const Rational& x);

/// First `limit` canonical digits of y in [0,1] (all of them when the
/// expansion is shorter). y = 1 yields [1]; y = 0 yields [].
Digits expansion_prefix(const Rational& y, std::size_t limit);

Rational rational_from_cf(const ContinuedFraction& cf);

/// Value of an arbitrary digit sequence (digits >= 1, not necessarily
/// canonical).
Rational evaluate(std::span<const BigInt> digits);

/// <c_1,...,c_n>: q_n = c_n q_{n-1} + q_{n-2}, q_0 = 1, q_{-1} = 0.
BigInt continuant(std::span<const BigInt> digits);

std::vector<Convergent> convergents(std::span<const BigInt> digits);
inline std::vector<Convergent> convergents(const ContinuedFraction& cf) { return cf.convergents(); }

/// I_n(c_1..c_n) with the orientation of its order's parity:
/// even n -> [p_n/q_n, (p_n+p_{n-1})/(q_n+q_{n-1})), odd n -> mirrored.
/// These are exactly the numbers whose canonical expansion starts with the
/// digits, so a trailing 1 (n >= 2) leaves p_n/q_n out as well.
CylinderInterval cylinder(std::span<const BigInt> digits);

/// Lower bound on <b_1..b_n>/<c_1..c_n> for b_i >= c_i, split at index
/// split_k (1 <= split_k <= n-1):
///   1 + (<b..k> - <c..k> + (<b..k-1> - <c..k-1>)/(c_{k+1}+1))
///       / (<c..k> + <c..k-1>/c_{k+1})
Rational continuant_ratio_bound(std::span<const BigInt> b_prefix,
                                std::span<const BigInt> c_prefix, std::size_t split_k);

std::string format_digits(std::span<const BigInt> digits);
Digits parse_digits(std::string_view text);

}  // namespace cfsum
