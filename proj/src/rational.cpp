#include "cfsum/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace cfsum {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

BigInt parse_integer(std::string_view text) {
    text = trim(text);
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        throw DomainError("not an integer: '" + std::string(text) + "'");
    }
    std::string buf(text);
    if (buf.front() == '+') buf.erase(0, 1);
    return BigInt(buf, 10);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

BigInt Rational::floor() const {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

Rational Rational::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    return Rational(den(), num());
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    return Rational(mpq_class(a.value_ / b.value_));
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::size_t decimal_length(const BigInt& n) {
    // mpz_sizeinbase may overshoot by one for base 10
    BigInt a = ::abs(n);
    if (a == 0) return 1;
    std::size_t len = mpz_sizeinbase(a.get_mpz_t(), 10);
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, len - 1);
    if (a < p) --len;
    return len;
}

long floor_log10(const Rational& r) {
    if (r.sign() <= 0) throw DomainError("floor_log10 of non-positive value");
    const BigInt num = r.num();
    const BigInt den = r.den();
    long e = static_cast<long>(decimal_length(num)) - static_cast<long>(decimal_length(den));
    // 10^e <= num/den < 10^(e+1) or one below that
    BigInt lhs = num;
    BigInt rhs = den;
    BigInt scale;
    if (e >= 0) {
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(e));
        rhs *= scale;
    } else {
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(-e));
        lhs *= scale;
    }
    if (lhs < rhs) --e;
    return e;
}

std::string to_decimal(const Rational& r, std::size_t places) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    const BigInt num = ::abs(r.num()) * scale;
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.den().get_mpz_t());
    std::string digits = q.get_str();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = r.sign() < 0 ? "-" : "";
    out += digits.substr(0, digits.size() - places);
    if (places > 0) {
        out += '.';
        out += digits.substr(digits.size() - places);
    }
    return out;
}

}  // namespace cfsum
