#include "cfsum/number_source.hpp"

#include <fstream>
#include <sstream>

namespace cfsum {

namespace {

// (p + q*sqrt(d)) / r with r > 0
struct QuadraticSurd {
    BigInt p, q, r;
    const BigInt* d;

    void normalize() {
        if (r < 0) {
            p = -p;
            q = -q;
            r = -r;
        }
        BigInt g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
        if (g > 1) {
            mpz_divexact(p.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t());
        }
    }
};

// sign of p + q*sqrt(d), d not a perfect square
int surd_sign(const BigInt& p, const BigInt& q, const BigInt& d) {
    const int sp = sgn(p);
    const int sq = sgn(q);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    const BigInt lhs = p * p;
    const BigInt rhs = q * q * d;
    return lhs > rhs ? sp : sq;
}

BigInt surd_floor(const QuadraticSurd& s) {
    BigInt root;
    const BigInt radicand = s.q * s.q * *s.d;
    mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
    // q*sqrt(d) is irrational, so its floor is isqrt or -(isqrt + 1)
    if (s.q < 0) root = -root - 1;
    BigInt num = s.p + root;
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), s.r.get_mpz_t());
    return out;
}

void surd_invert(QuadraticSurd& s) {
    const BigInt denom = s.p * s.p - s.q * s.q * *s.d;
    s.p = s.r * s.p;
    s.q = -s.r * s.q;
    s.r = denom;
    s.normalize();
}

QuadraticSurd surd_minus(const SurdSource& src, const Rational& shift) {
    const BigInt u = shift.num();
    const BigInt v = shift.den();
    QuadraticSurd s{src.a() * v - u * src.c(), src.b() * v, src.c() * v, &src.d()};
    s.normalize();
    return s;
}

void require_unit_range(int sign_low, int sign_high, const std::string& what) {
    // sign_low = sign(y), sign_high = sign(y - 1)
    if (sign_low < 0 || sign_high > 0) throw DomainError(what + " lies outside [0, 1]");
}

Digits surd_prefix(QuadraticSurd s, std::size_t n) {
    Digits out;
    out.reserve(n);
    while (out.size() < n) {
        surd_invert(s);
        BigInt a = surd_floor(s);
        s.p -= a * s.r;
        out.push_back(std::move(a));
    }
    return out;
}

// Canonical digits shared by every point of the open interval (lo, hi), or
// nullopt if the interval is too wide to decide n of them.
std::optional<Digits> decide_prefix(Rational lo, Rational hi, std::size_t n) {
    Digits out;
    out.reserve(n);
    while (out.size() < n) {
        if (lo.sign() <= 0 || hi > Rational(1)) return std::nullopt;
        const Rational inv_lo = hi.inverse();
        const Rational inv_hi = lo.inverse();
        BigInt a = inv_lo.floor();
        if (inv_hi > Rational(BigInt(a + 1))) return std::nullopt;
        lo = inv_lo - Rational(a);
        hi = inv_hi - Rational(a);
        out.push_back(std::move(a));
    }
    return out;
}

CylinderInterval point(const Rational& x) { return {x, x, true, true}; }

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

RationalSource::RationalSource(Rational v) : value(std::move(v)) {
    if (value.sign() <= 0 || value > Rational(1)) {
        throw DomainError("rational source must lie in (0, 1], got " + value.str());
    }
}

SurdSource::SurdSource(BigInt a, BigInt b, BigInt d, BigInt c)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), c_(std::move(c)) {
    if (b_ == 0) throw DomainError("surd coefficient b must be nonzero");
    if (c_ == 0) throw DomainError("surd denominator c must be nonzero");
    if (d_ <= 0 || mpz_perfect_square_p(d_.get_mpz_t())) {
        throw DomainError("surd radicand must be a positive non-square, got " + d_.get_str());
    }
    QuadraticSurd s{a_, b_, c_, &d_};
    s.normalize();
    a_ = s.p;
    b_ = s.q;
    c_ = s.r;
    if (compare(Rational(0)) <= 0 || compare(Rational(1)) > 0) {
        throw DomainError("surd source value must lie in (0, 1]");
    }
}

int SurdSource::compare(const Rational& r) const {
    const QuadraticSurd s = surd_minus(*this, r);
    return surd_sign(s.p, s.q, d_);
}

StreamSource::StreamSource(Digits digits, std::string provenance)
    : digits_(std::make_shared<const Digits>(std::move(digits))), provenance_(std::move(provenance)) {
    if (digits_->empty()) throw DomainError("stream source needs at least one partial quotient");
    for (const auto& a : *digits_) {
        if (a < 1) throw DomainError("stream partial quotient must be >= 1, got " + a.get_str());
    }
}

StreamSource::StreamSource(Generator generator, std::string provenance)
    : generator_(std::move(generator)), provenance_(std::move(provenance)) {
    if (!generator_) throw DomainError("stream source needs a generator");
}

StreamSource StreamSource::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open stream file " + path.string());
    Digits digits;
    std::string provenance;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            const std::string comment = line.substr(hash + 1);
            if (provenance.empty() && comment.find("provenance") != std::string::npos) {
                provenance = comment.substr(comment.find_first_not_of(' '));
            }
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            digits.push_back(parse_integer(line));
        } catch (const DomainError&) {
            throw DomainError(path.string() + ":" + std::to_string(lineno) + ": not a partial quotient");
        }
    }
    if (provenance.empty()) provenance = path.string();
    return StreamSource(std::move(digits), std::move(provenance));
}

StreamSource StreamSource::e_minus_2() {
    return StreamSource(
        [](std::size_t i) -> std::optional<BigInt> {
            if (i == 0) return BigInt(1);
            if ((i - 1) % 3 == 0) return BigInt(2 * ((i - 1) / 3 + 1));
            return BigInt(1);
        },
        "builtin e-2 = [1, 2, 1, 1, 4, 1, 1, 6, ...]");
}

std::optional<BigInt> StreamSource::digit(std::size_t index) const {
    if (digits_) {
        if (index >= digits_->size()) return std::nullopt;
        return (*digits_)[index];
    }
    auto out = generator_(index);
    if (out && *out < 1) throw DomainError("stream generator produced a partial quotient < 1");
    return out;
}

std::optional<Digits> StreamSource::prefix(std::size_t count) const {
    if (digits_) {
        if (count > digits_->size()) return std::nullopt;
        return Digits(digits_->begin(), digits_->begin() + static_cast<std::ptrdiff_t>(count));
    }
    Digits out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto d = digit(i);
        if (!d) return std::nullopt;
        out.push_back(std::move(*d));
    }
    return out;
}

namespace {

ShiftedPrefix rational_prefix(const Rational& x, const Rational& shift, std::size_t n) {
    const Rational y = x - shift;
    require_unit_range(y.sign(), (y - Rational(1)).sign(), "x - shift = " + y.str());
    ShiftedPrefix out{expansion_prefix(y, n), QuotientStatus::Digit};
    if (out.digits.size() < n) out.status = QuotientStatus::UndefinedIndex;
    return out;
}

ShiftedPrefix surd_shifted_prefix(const SurdSource& src, const Rational& shift, std::size_t n) {
    const QuadraticSurd y = surd_minus(src, shift);
    const QuadraticSurd y_minus_one{y.p - y.r, y.q, y.r, y.d};
    require_unit_range(surd_sign(y.p, y.q, *y.d), surd_sign(y_minus_one.p, y_minus_one.q, *y.d),
                       "x - shift");
    return {surd_prefix(y, n), QuotientStatus::Digit};
}

ShiftedPrefix stream_shifted_prefix(const StreamSource& src, const Rational& shift, std::size_t n) {
    std::size_t depth = 1;
    for (std::size_t attempt = 0; attempt < src.refinement_limit(); ++attempt) {
        const auto digits = src.prefix(depth);
        if (!digits) return {{}, QuotientStatus::Exhausted};
        const CylinderInterval cyl = cylinder(*digits);
        const Rational lo = cyl.lo - shift;
        const Rational hi = cyl.hi - shift;
        if (hi.sign() <= 0 || lo >= Rational(1)) throw DomainError("x - shift lies outside [0, 1]");
        if (auto decided = decide_prefix(lo, hi, n)) return {std::move(*decided), QuotientStatus::Digit};
        // grow geometrically once deep; each attempt re-evaluates the prefix
        depth += depth < 16 ? 1 : depth / 8;
    }
    return {{}, QuotientStatus::Exhausted};
}

}  // namespace

ShiftedPrefix shifted_prefix(const NumberSource& src, const Rational& shift, std::size_t n) {
    if (n == 0) throw DomainError("partial quotient index must be >= 1");
    return std::visit(overloaded{
                          [&](const RationalSource& s) { return rational_prefix(s.value, shift, n); },
                          [&](const SurdSource& s) { return surd_shifted_prefix(s, shift, n); },
                          [&](const StreamSource& s) { return stream_shifted_prefix(s, shift, n); },
                      },
                      src);
}

PartialQuotient partial_quotient(const NumberSource& src, const Rational& shift, std::size_t n) {
    ShiftedPrefix pre = shifted_prefix(src, shift, n);
    if (pre.status != QuotientStatus::Digit) return {pre.status, {}};
    return {QuotientStatus::Digit, std::move(pre.digits.back())};
}

CylinderInterval enclosing_interval(const NumberSource& src, std::size_t depth) {
    if (depth == 0) throw DomainError("enclosing interval depth must be >= 1");
    return std::visit(overloaded{
                          [&](const RationalSource& s) {
                              const Digits digits = expansion_prefix(s.value, depth);
                              if (digits.size() < depth) return point(s.value);
                              // a full-length prefix equal to the whole expansion is still the point
                              if (evaluate(digits) == s.value) return point(s.value);
                              return cylinder(digits);
                          },
                          [&](const SurdSource& s) {
                              return cylinder(surd_shifted_prefix(s, Rational(0), depth).digits);
                          },
                          [&](const StreamSource& s) {
                              auto digits = s.prefix(depth);
                              if (!digits) {
                                  throw SourceExhausted("stream has fewer than " + std::to_string(depth) +
                                                        " partial quotients");
                              }
                              return cylinder(*digits);
                          },
                      },
                      src);
}

std::optional<Rational> exact_value_if_rational(const NumberSource& src) {
    if (const auto* r = std::get_if<RationalSource>(&src)) return r->value;
    return std::nullopt;
}

int compare(const NumberSource& src, const Rational& r) {
    return std::visit(overloaded{
                          [&](const RationalSource& s) {
                              const auto c = s.value <=> r;
                              return c < 0 ? -1 : (c > 0 ? 1 : 0);
                          },
                          [&](const SurdSource& s) { return s.compare(r); },
                          [&](const StreamSource& s) {
                              std::size_t depth = 1;
                              for (std::size_t attempt = 0; attempt < s.refinement_limit(); ++attempt) {
                                  const auto digits = s.prefix(depth);
                                  if (!digits) break;
                                  const CylinderInterval cyl = cylinder(*digits);
                                  if (cyl.hi < r) return -1;
                                  if (cyl.lo > r) return 1;
                                  depth += depth < 16 ? 1 : depth / 8;
                              }
                              throw SourceExhausted("stream cannot be compared with " + r.str());
                          },
                      },
                      src);
}

std::string describe(const NumberSource& src) {
    return std::visit(overloaded{
                          [](const RationalSource& s) { return s.value.str(); },
                          [](const SurdSource& s) {
                              std::ostringstream os;
                              os << "(" << s.a() << " + " << s.b() << "*sqrt(" << s.d() << "))/" << s.c();
                              return os.str();
                          },
                          [](const StreamSource& s) { return "stream: " + s.provenance(); },
                      },
                      src);
}

}  // namespace cfsum
