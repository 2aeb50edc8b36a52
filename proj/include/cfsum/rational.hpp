#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace cfsum {

using BigInt = mpz_class;

/// Raised when an argument lies outside the mathematical domain of an
/// operation (bad digit, value outside [0,1], malformed literal, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when a checked postcondition or proven invariant fails. Seeing one
/// means the implementation is wrong.
class InvariantViolation : public std::logic_error {
  public:
    explicit InvariantViolation(const std::string& what, std::size_t step = 0)
        : std::logic_error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

  private:
    std::size_t step_;
};

class StateError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Exact rational p/q, always reduced with q > 0.
class Rational {
  public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& integer) : value_(integer) {}  // NOLINT
    template <class Expr>
    Rational(const __gmp_expr<mpz_t, Expr>& integer) : value_(BigInt(integer)) {}  // NOLINT
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Accepts "p/q" or a bare integer "p"; surrounding whitespace ignored.
    static Rational parse(std::string_view text);

    BigInt num() const { return value_.get_num(); }
    BigInt den() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    BigInt floor() const;
    Rational abs() const { return Rational(mpq_class(::abs(value_))); }
    Rational inverse() const;

    /// Always "p/q", including integers ("2/1").
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.value_ + b.value_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.value_ - b.value_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.value_ * b.value_));
    }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

  private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Number of decimal digits of |n| (n != 0).
std::size_t decimal_length(const BigInt& n);

/// floor(log10(r)) for r > 0, computed with integer arithmetic only.
long floor_log10(const Rational& r);

/// Truncated decimal expansion with `places` digits after the point, no
/// floating point involved.
std::string to_decimal(const Rational& r, std::size_t places);

BigInt parse_integer(std::string_view text);

}  // namespace cfsum
