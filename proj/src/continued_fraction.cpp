#include "cfsum/continued_fraction.hpp"

#include <cctype>

namespace cfsum {

namespace {

void require_positive_digits(std::span<const BigInt> digits) {
    for (const auto& d : digits) {
        if (d < 1) throw DomainError("partial quotient must be >= 1, got " + d.get_str());
    }
}

}  // namespace

ContinuedFraction::ContinuedFraction(Digits digits) : digits_(std::move(digits)) {
    require_positive_digits(digits_);
    if (digits_.size() >= 2 && digits_.back() == 1) {
        digits_.pop_back();
        digits_.back() += 1;
    }
    convergents_ = cfsum::convergents(digits_);
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) { return ContinuedFraction(parse_digits(text)); }

Rational ContinuedFraction::value() const {
    if (convergents_.empty()) return Rational{};
    return convergents_.back().value();
}

std::string ContinuedFraction::str() const { return format_digits(digits_); }

bool CylinderInterval::contains(const Rational& x) const {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

bool CylinderInterval::subset_of(const CylinderInterval& other) const {
    const bool lo_ok = lo > other.lo || (lo == other.lo && (other.lo_closed || !lo_closed));
    const bool hi_ok = hi < other.hi || (hi == other.hi && (other.hi_closed || !hi_closed));
    return lo_ok && hi_ok;
}

std::string CylinderInterval::str() const {
    return std::string(lo_closed ? "[" : "(") + lo.str() + ", " + hi.str() + (hi_closed ? "]" : ")");
}

Digits expansion_prefix(const Rational& y, std::size_t limit) {
    if (y.sign() < 0 || y > Rational(1)) throw DomainError("expansion of value outside [0,1]: " + y.str());
    Digits out;
    // y = num/den; repeatedly invert: den/num = a + r/num
    BigInt num = y.num();
    BigInt den = y.den();
    while (num != 0 && out.size() < limit) {
        BigInt a;
        BigInt r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
        out.push_back(std::move(a));
        den = std::move(num);
        num = std::move(r);
    }
    return out;
}

ContinuedFraction cf_from_rational(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw DomainError("cf_from_rational needs 0 <= x <= 1, got " + x.str());
    // Euclid already ends on a digit >= 2 except for x = 1
    return ContinuedFraction(expansion_prefix(x, static_cast<std::size_t>(-1)));
}

Rational rational_from_cf(const ContinuedFraction& cf) { return cf.value(); }

Rational evaluate(std::span<const BigInt> digits) {
    if (digits.empty()) return Rational{};
    const auto conv = convergents(digits);
    return conv.back().value();
}

BigInt continuant(std::span<const BigInt> digits) {
    require_positive_digits(digits);
    BigInt prev = 0;
    BigInt cur = 1;
    for (const auto& d : digits) {
        BigInt next = d * cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<Convergent> convergents(std::span<const BigInt> digits) {
    require_positive_digits(digits);
    std::vector<Convergent> out;
    out.reserve(digits.size());
    // p_0/q_0 = 0/1, p_{-1}/q_{-1} = 1/0
    BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (const auto& d : digits) {
        BigInt pn = d * p + p_prev;
        BigInt qn = d * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = pn;
        q = qn;
        out.push_back({std::move(pn), std::move(qn)});
    }
    return out;
}

CylinderInterval cylinder(std::span<const BigInt> digits) {
    if (digits.empty()) throw DomainError("cylinder of an empty digit sequence");
    const auto conv = convergents(digits);
    const std::size_t n = conv.size();
    const BigInt& pn = conv[n - 1].p;
    const BigInt& qn = conv[n - 1].q;
    const BigInt p_prev = n >= 2 ? conv[n - 2].p : BigInt(0);
    const BigInt q_prev = n >= 2 ? conv[n - 2].q : BigInt(1);
    Rational near(pn, qn);
    Rational far(pn + p_prev, qn + q_prev);
    // p_n/q_n only belongs to the cylinder when its canonical expansion is
    // the prefix itself, which fails for a trailing 1 (except [1] = 1)
    const bool near_closed = n == 1 || digits.back() != 1;
    if (n % 2 == 0) return {std::move(near), std::move(far), near_closed, false};
    return {std::move(far), std::move(near), false, near_closed};
}

Rational continuant_ratio_bound(std::span<const BigInt> b_prefix,
                                std::span<const BigInt> c_prefix, std::size_t split_k) {
    const std::size_t n = c_prefix.size();
    if (b_prefix.size() != n || n < 2) throw DomainError("continuant_ratio_bound needs equal lengths >= 2");
    if (split_k < 1 || split_k > n - 1) throw DomainError("continuant_ratio_bound split index out of range");
    require_positive_digits(b_prefix);
    require_positive_digits(c_prefix);
    for (std::size_t i = 0; i < n; ++i) {
        if (b_prefix[i] < c_prefix[i]) throw DomainError("continuant_ratio_bound needs b_i >= c_i");
    }
    const BigInt bk = continuant(b_prefix.first(split_k));
    const BigInt ck = continuant(c_prefix.first(split_k));
    const BigInt bk1 = continuant(b_prefix.first(split_k - 1));
    const BigInt ck1 = continuant(c_prefix.first(split_k - 1));
    const BigInt& c_next = c_prefix[split_k];
    const Rational numer = Rational(BigInt(bk - ck)) + Rational(BigInt(bk1 - ck1), BigInt(c_next + 1));
    const Rational denom = Rational(ck) + Rational(ck1, c_next);
    return Rational(1) + numer / denom;
}

std::string format_digits(std::span<const BigInt> digits) {
    std::string out = "[";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ',';
        out += digits[i].get_str();
    }
    return out + "]";
}

Digits parse_digits(std::string_view text) {
    auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw DomainError("continued fraction literal must look like [a1,a2,...]");
    }
    text = text.substr(1, text.size() - 2);
    Digits out;
    bool blank = true;
    for (char ch : text) blank = blank && is_space(ch);
    if (blank) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        BigInt d = parse_integer(token);
        if (d < 1) throw DomainError("partial quotient must be >= 1, got " + d.get_str());
        out.push_back(std::move(d));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace cfsum
