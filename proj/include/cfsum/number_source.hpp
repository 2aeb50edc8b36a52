#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "cfsum/continued_fraction.hpp"

namespace cfsum {

/// A stream could not supply enough partial quotients (or exceeded its
/// refinement budget) to decide a requested quantity.
class SourceExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RationalSource {
    Rational value;  // 0 < value <= 1

    explicit RationalSource(Rational v);
};

/// (a + b*sqrt(d)) / c with d > 0 not a perfect square, b != 0, c > 0 and
/// gcd(a, b, c) = 1. The value must lie in (0, 1].
class SurdSource {
  public:
    SurdSource(BigInt a, BigInt b, BigInt d, BigInt c);

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& d() const { return d_; }
    const BigInt& c() const { return c_; }

    /// Sign of (value - r), exact.
    int compare(const Rational& r) const;

  private:
    BigInt a_, b_, d_, c_;
};

/// Partial quotients supplied by a finite list or a pure index -> digit
/// generator. Streams are assumed to describe irrational values.
class StreamSource {
  public:
    /// Returns the digit at 0-based index, or nullopt past the end.
    using Generator = std::function<std::optional<BigInt>(std::size_t)>;

    static constexpr std::size_t default_refinement_limit = 1'000'000;

    StreamSource(Digits digits, std::string provenance = {});
    StreamSource(Generator generator, std::string provenance = {});

    /// One quotient per line, '#' starts a comment. The first comment line
    /// mentioning "provenance" is kept.
    static StreamSource from_file(const std::filesystem::path& path);
    /// e - 2 = [1, 2, 1, 1, 4, 1, 1, 6, ...].
    static StreamSource e_minus_2();

    std::optional<BigInt> digit(std::size_t index) const;
    /// Digits [0, count), or nullopt if the stream is shorter.
    std::optional<Digits> prefix(std::size_t count) const;

    const std::string& provenance() const { return provenance_; }
    std::size_t refinement_limit() const { return refinement_limit_; }
    StreamSource& set_refinement_limit(std::size_t limit) {
        refinement_limit_ = limit;
        return *this;
    }

  private:
    std::shared_ptr<const Digits> digits_;
    Generator generator_;
    std::string provenance_;
    std::size_t refinement_limit_ = default_refinement_limit;
};

using NumberSource = std::variant<RationalSource, SurdSource, StreamSource>;

enum class QuotientStatus { Digit, Exhausted, UndefinedIndex };

struct PartialQuotient {
    QuotientStatus status = QuotientStatus::Digit;
    BigInt value;  // meaningful only for Digit

    bool ok() const { return status == QuotientStatus::Digit; }
};

/// First n canonical digits of (x - shift). `status` is Digit when all n were
/// produced, UndefinedIndex when x - shift is rational with fewer than n
/// digits (then `digits` holds the full expansion), Exhausted when a stream
/// cannot decide them.
struct ShiftedPrefix {
    Digits digits;
    QuotientStatus status = QuotientStatus::Digit;
};

/// a_n(x - shift). x - shift must lie in [0, 1]; the value 1 expands as [1].
PartialQuotient partial_quotient(const NumberSource& src, const Rational& shift, std::size_t n);
ShiftedPrefix shifted_prefix(const NumberSource& src, const Rational& shift, std::size_t n);

/// Cylinder of the source's first `depth` digits; the exact point once a
/// rational source's expansion is shorter than `depth`.
/// Throws SourceExhausted if a stream has fewer than `depth` digits.
CylinderInterval enclosing_interval(const NumberSource& src, std::size_t depth);

std::optional<Rational> exact_value_if_rational(const NumberSource& src);

/// Sign of (x - r). Streams are refined up to their limit; throws
/// SourceExhausted if the comparison cannot be decided.
int compare(const NumberSource& src, const Rational& r);

std::string describe(const NumberSource& src);

}  // namespace cfsum
