#include "hsurf/real.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace hsurf {

namespace {

// Working ball: radius may be 0 here (exact operand).
struct Ball {
    mpq_class c;
    mpq_class r;
};

constexpr long kMixedFieldBits = 256;


long bitlen_l(const mpz_class& z) {
    if (z == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

mpq_class two_pow(long e) {
    mpq_class out(1);
    if (e >= 0) {
        mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    out.canonicalize();
    return out;
}

mpq_class abs_q(const mpq_class& q) { return q < 0 ? mpq_class(-q) : q; }

mpz_class round_nearest(const mpq_class& q) { return floor_q(q + mpq_class(1, 2)); }

// Rounds a ball so the center and radius stay short, keeping the enclosure valid.
Approx normalize_ball(const mpq_class& c, const mpq_class& r) {
    long e = floor_log2(r);
    long k = std::max(0L, 16 - e);
    mpq_class scale = two_pow(k);
    mpq_class cr(round_nearest(c * scale), 1);
    cr /= scale;
    mpq_class rr = r + abs_q(c - cr);
    long e2 = floor_log2(rr);
    rr = round_up_dyadic(rr, std::max(0L, 8 - e2));
    return Approx{cr, rr};
}

mpz_class squarefree_part(mpz_class d, mpz_class& square_root_factor) {
    square_root_factor = 1;
    if (d < 4) return d;
    // trial division is fine for the moderate radicands this library sees
    for (unsigned long p = 2; mpz_class(p) * p <= d && p < 1000000UL; ++p) {
        mpz_class pp = mpz_class(p) * p;
        while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
            d /= pp;
            square_root_factor *= p;
        }
    }
    if (mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), d.get_mpz_t());
        square_root_factor *= root;
        d = 1;
    }
    return d;
}

Real make_surd(mpq_class a, mpq_class b, const mpz_class& d) {
    a.canonicalize();
    b.canonicalize();
    if (b == 0) return Real(a);
    return Real(Surd{a, b, d});
}

Ball to_ball(const Real& x, long bits) {
    if (x.is_rational()) return Ball{x.rational(), mpq_class(0)};
    Approx a = x.enclose(bits);
    return Ball{a.center, a.radius};
}

long bits_for(const Real& x, const Real& y) {
    long bits = 64;
    for (const Real* v : {&x, &y}) {
        if (v->is_approx()) bits = std::max(bits, 32 - floor_log2(v->approx().radius));
    }
    return bits;
}

Real from_ball(const mpq_class& c, const mpq_class& r) {
    if (r == 0) return Real(c);
    return Real(Approx{c, r});
}

Real ball_add(const Ball& x, const Ball& y) { return from_ball(x.c + y.c, x.r + y.r); }

Real ball_mul(const Ball& x, const Ball& y) {
    mpq_class r = abs_q(x.c) * y.r + abs_q(y.c) * x.r + x.r * y.r;
    return from_ball(x.c * y.c, r);
}

Ball ball_inv(const Ball& y) {
    mpq_class ac = abs_q(y.c);
    if (ac <= y.r) throw PrecisionExhausted("division by an enclosure that contains 0");
    mpq_class c = 1 / y.c;
    mpq_class r = y.r / (ac * (ac - y.r));
    return Ball{c, r};
}

}  // namespace

mpz_class floor_q(const mpq_class& q) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

mpz_class ceil_q(const mpq_class& q) {
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

long floor_log2(const mpq_class& q) {
    if (q <= 0) throw DomainError("floor_log2 of a nonpositive number");
    long e = bitlen_l(q.get_num()) - bitlen_l(q.get_den());
    // 2^e is within a factor 2 of q
    if (q >= two_pow(e)) return e;
    return e - 1;
}

mpq_class pow_q(const mpq_class& q, long n) {
    if (n < 0) {
        if (q == 0) throw DomainError("0 to a negative power");
        return pow_q(1 / q, -n);
    }
    mpq_class out;
    mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(n));
    out.canonicalize();
    return out;
}

mpq_class round_up_dyadic(const mpq_class& r, long frac_bits) {
    mpq_class scale = two_pow(frac_bits);
    mpq_class out(ceil_q(r * scale), 1);
    return out / scale;
}

mpq_class ten_pow(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? mpq_class(p) : mpq_class(1, 1) / mpq_class(p);
}

std::string decimal_q(const mpq_class& q, int digits) {
    mpz_class n = round_nearest(q * ten_pow(digits));
    bool neg = n < 0;
    if (neg) n = -n;
    std::string s = n.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (neg && n != 0) s.insert(0, "-");
    return s;
}

std::string dyadic_decimal(const mpq_class& q) {
    mpz_class den = q.get_den();
    long k = bitlen_l(den) - 1;
    if (mpz_class(1) << static_cast<mp_bitcnt_t>(k) != den) throw DomainError("not a dyadic rational");
    return decimal_q(q, static_cast<int>(k));
}

Real::Real(const mpq_class& v) : v_(v) { std::get<mpq_class>(v_).canonicalize(); }

Real::Real(const Surd& v) {
    mpz_class k;
    mpz_class d = squarefree_part(v.d, k);
    mpq_class a = v.a, b = v.b * k;
    a.canonicalize();
    b.canonicalize();
    if (d < 1) throw DomainError("surd radicand must be positive");
    if (b == 0 || d == 1) {
        v_ = mpq_class(a + b);
    } else {
        v_ = Surd{a, b, d};
    }
}

Real::Real(const Approx& v) {
    if (v.radius < 0) throw DomainError("negative error bound");
    if (v.radius == 0) {
        v_ = v.center;
    } else {
        v_ = normalize_ball(v.center, v.radius);
    }
}

Real Real::frac(long p, long q) {
    if (q == 0) throw DomainError("zero denominator");
    return Real(mpq_class(p, q));
}

Real Real::sqrt(const mpq_class& q) {
    if (q < 0) throw DomainError("square root of a negative number");
    if (q == 0) return Real(0);
    // sqrt(p/r) = sqrt(p*r)/r
    mpz_class pr = q.get_num() * q.get_den();
    return Real(Surd{mpq_class(0), mpq_class(1, 1) / mpq_class(q.get_den()), pr});
}

Real Real::ball(const mpq_class& center, const mpq_class& radius) { return Real(Approx{center, radius}); }

const mpq_class& Real::rational() const {
    if (!is_rational()) throw DomainError("value is not rational: " + str());
    return std::get<mpq_class>(v_);
}

const Surd& Real::surd() const { return std::get<Surd>(v_); }
const Approx& Real::approx() const { return std::get<Approx>(v_); }

Approx Real::enclose(long bits) const {
    if (is_rational()) return Approx{rational(), two_pow(-bits)};
    if (is_approx()) return approx();
    const Surd& s = surd();
    long p = bits + bitlen_l(floor_q(abs_q(s.b)) + 1) + 2;
    mpz_class scaled = s.d << static_cast<mp_bitcnt_t>(2 * p);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    // sqrt(d) in [root, root+1) / 2^p
    mpq_class mid = (mpq_class(root) + mpq_class(1, 2)) / two_pow(p);
    return Approx{s.a + s.b * mid, abs_q(s.b) / two_pow(p + 1)};
}

mpq_class Real::lower(long bits) const {
    if (is_rational()) return rational();
    Approx a = enclose(bits);
    return a.center - a.radius;
}

mpq_class Real::upper(long bits) const {
    if (is_rational()) return rational();
    Approx a = enclose(bits);
    return a.center + a.radius;
}

mpq_class Real::error() const { return is_approx() ? approx().radius : mpq_class(0); }

Real Real::operator-() const {
    if (is_rational()) return Real(mpq_class(-rational()));
    if (is_surd()) {
        const Surd& s = surd();
        return Real(Surd{-s.a, -s.b, s.d});
    }
    return Real(Approx{-approx().center, approx().radius});
}

Real operator+(const Real& x, const Real& y) {
    if (x.is_rational() && y.is_rational()) return Real(mpq_class(x.rational() + y.rational()));
    if (x.is_exact() && y.is_exact()) {
        if (x.is_rational()) return make_surd(x.rational() + y.surd().a, y.surd().b, y.surd().d);
        if (y.is_rational()) return make_surd(x.surd().a + y.rational(), x.surd().b, x.surd().d);
        if (x.surd().d == y.surd().d) return make_surd(x.surd().a + y.surd().a, x.surd().b + y.surd().b, x.surd().d);
        return ball_add(to_ball(x, kMixedFieldBits), to_ball(y, kMixedFieldBits));
    }
    long bits = bits_for(x, y);
    return ball_add(to_ball(x, bits), to_ball(y, bits));
}

Real operator-(const Real& x, const Real& y) { return x + (-y); }

Real operator*(const Real& x, const Real& y) {
    if (x.is_rational() && y.is_rational()) return Real(mpq_class(x.rational() * y.rational()));
    if (x.is_exact() && y.is_exact()) {
        if (x.is_rational()) return make_surd(x.rational() * y.surd().a, x.rational() * y.surd().b, y.surd().d);
        if (y.is_rational()) return make_surd(y.rational() * x.surd().a, y.rational() * x.surd().b, x.surd().d);
        const Surd& p = x.surd();
        const Surd& q = y.surd();
        if (p.d == q.d) {
            return make_surd(p.a * q.a + p.b * q.b * mpq_class(p.d), p.a * q.b + p.b * q.a, p.d);
        }
        return ball_mul(to_ball(x, kMixedFieldBits), to_ball(y, kMixedFieldBits));
    }
    long bits = bits_for(x, y);
    return ball_mul(to_ball(x, bits), to_ball(y, bits));
}

Real operator/(const Real& x, const Real& y) {
    if (y.is_rational()) {
        if (y.rational() == 0) throw DomainError("division by zero");
        return x * Real(mpq_class(1 / y.rational()));
    }
    if (y.is_surd()) {
        const Surd& q = y.surd();
        mpq_class norm = q.a * q.a - q.b * q.b * mpq_class(q.d);
        Real inv = make_surd(q.a / norm, -q.b / norm, q.d);
        return x * inv;
    }
    long bits = bits_for(x, y);
    Ball inv = ball_inv(to_ball(y, bits));
    return ball_mul(to_ball(x, bits), inv);
}

std::optional<int> Real::try_sign() const {
    if (is_rational()) return sgn(rational());
    if (is_surd()) {
        const Surd& s = surd();
        int sa = sgn(s.a), sb = sgn(s.b);
        if (sa >= 0 && sb > 0) return 1;
        if (sa <= 0 && sb < 0) return -1;
        mpq_class a2 = s.a * s.a, b2d = s.b * s.b * mpq_class(s.d);
        // signs differ; the larger magnitude wins (never equal: sqrt(d) irrational)
        if (a2 > b2d) return sa;
        return sb;
    }
    const Approx& a = approx();
    if (a.center - a.radius > 0) return 1;
    if (a.center + a.radius < 0) return -1;
    return std::nullopt;
}

int Real::sign() const {
    auto s = try_sign();
    if (!s) throw PrecisionExhausted("sign of " + str() + " is not certified");
    return *s;
}

mpz_class Real::floor() const {
    if (is_rational()) return floor_q(rational());
    if (is_approx()) {
        const Approx& a = approx();
        mpz_class lo = floor_q(a.center - a.radius);
        mpz_class hi = floor_q(a.center + a.radius);
        if (lo != hi) throw PrecisionExhausted("floor of " + str() + " is not certified");
        return lo;
    }
    Approx e = enclose(64);
    mpz_class n = floor_q(e.center);
    while ((*this - Real(n)).sign() < 0) n -= 1;
    while ((*this - Real(mpz_class(n + 1))).sign() >= 0) n += 1;
    return n;
}

mpz_class Real::ceil() const { return -((-*this).floor()); }

Real Real::pow(long n) const {
    if (n < 0) return (Real(1) / *this).pow(-n);
    if (is_rational()) return Real(pow_q(rational(), n));
    Real result(1), base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

double Real::to_double() const {
    if (is_rational()) return rational().get_d();
    if (is_surd()) return enclose(80).center.get_d();
    return approx().center.get_d();
}

namespace {

std::string surd_text(const Surd& s) {
    mpz_class c;
    mpz_lcm(c.get_mpz_t(), s.a.get_den_mpz_t(), s.b.get_den_mpz_t());
    mpz_class A = s.a.get_num() * (c / s.a.get_den());
    mpz_class B = s.b.get_num() * (c / s.b.get_den());
    std::string num;
    if (A != 0) num = A.get_str();
    mpz_class absB = B < 0 ? mpz_class(-B) : B;
    std::string root = (absB == 1 ? std::string() : absB.get_str()) + "sqrt" + s.d.get_str();
    if (B < 0) {
        num += "-" + root;
    } else {
        num += (A != 0 ? "+" : "") + root;
    }
    if (c == 1) return num;
    if (A != 0) return "(" + num + ")/" + c.get_str();
    return num + "/" + c.get_str();
}

std::string err_text(const mpq_class& r) {
    // two significant digits, rounded up
    double d = r.get_d();
    long e10 = (d > 0 && std::isfinite(d)) ? static_cast<long>(std::floor(std::log10(d)))
                                           : static_cast<long>(std::floor(floor_log2(r) * 0.30103));
    mpq_class scaled = r / ten_pow(e10 - 1);
    while (scaled >= 100) { scaled /= 10; ++e10; }
    while (scaled < 10) { scaled *= 10; --e10; }
    mpz_class m = ceil_q(scaled);
    if (m == 100) { m = 10; ++e10; }
    std::string ms = m.get_str();
    return ms.substr(0, 1) + "." + ms.substr(1) + "e" + std::to_string(e10);
}

}  // namespace

std::string Real::decimal(int digits) const {
    if (is_rational()) return decimal_q(rational(), digits);
    return decimal_q(enclose(digits * 4 + 16).center, digits);
}

std::string Real::str() const {
    if (is_rational()) return rational().get_str();
    if (is_surd()) return surd_text(surd());
    const Approx& a = approx();
    long e = floor_log2(a.radius);
    int digits = static_cast<int>(std::max(0L, (-e) * 3 / 10 + 2));
    mpq_class shown = mpq_class(round_nearest(a.center * ten_pow(digits))) / ten_pow(digits);
    mpq_class err = a.radius + abs_q(shown - a.center);
    return decimal_q(a.center, digits) + "±" + err_text(err);
}

bool Real::same(const Real& o) const {
    if (v_.index() != o.v_.index()) return false;
    if (is_rational()) return rational() == o.rational();
    if (is_surd()) return surd().a == o.surd().a && surd().b == o.surd().b && surd().d == o.surd().d;
    return approx().center == o.approx().center && approx().radius == o.approx().radius;
}

int compare(const Real& x, const Real& y) {
    if (x.is_rational() && y.is_rational()) return cmp(x.rational(), y.rational());
    return (x - y).sign();
}

bool operator<(const Real& x, const Real& y) { return compare(x, y) < 0; }
bool operator>(const Real& x, const Real& y) { return compare(x, y) > 0; }
bool operator<=(const Real& x, const Real& y) { return compare(x, y) <= 0; }
bool operator>=(const Real& x, const Real& y) { return compare(x, y) >= 0; }
bool operator==(const Real& x, const Real& y) { return compare(x, y) == 0; }
bool operator!=(const Real& x, const Real& y) { return compare(x, y) != 0; }

Real min(const Real& x, const Real& y) { return y < x ? y : x; }
Real max(const Real& x, const Real& y) { return y > x ? y : x; }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(const std::string& t) : s_(t) {}

    Real run() {
        Real v = expr();
        skip();
        if (i_ != s_.size()) fail("trailing characters");
        return v;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw DomainError("cannot parse number '" + s_ + "': " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    bool starts(const char* word) {
        skip();
        return s_.compare(i_, std::char_traits<char>::length(word), word) == 0;
    }

    Real expr() {
        Real v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    Real term() {
        Real v = factor();
        for (;;) {
            if (eat('*')) v = v * factor();
            else if (eat('/')) v = v / factor();
            else return v;
        }
    }
    Real factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        Real v = primary();
        // implicit product: 3sqrt5, 2(1+sqrt2)
        while (starts("sqrt") || starts("(")) v = v * primary();
        return v;
    }
    Real primary() {
        skip();
        if (eat('(')) {
            Real v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (starts("sqrt")) {
            i_ += 4;
            Real arg = (starts("(")) ? primary() : number();
            if (!arg.is_rational()) fail("sqrt of a non-rational");
            return Real::sqrt(arg.rational());
        }
        return number();
    }
    Real number() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string whole = s_.substr(b, i_ - b);
        std::string fracpart;
        if (i_ < s_.size() && s_[i_] == '.') {
            ++i_;
            std::size_t fb = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            fracpart = s_.substr(fb, i_ - fb);
        }
        if (whole.empty() && fracpart.empty()) fail("expected a number");
        mpq_class v(mpz_class(whole.empty() ? "0" : whole), 1);
        if (!fracpart.empty()) v += mpq_class(mpz_class(fracpart)) / ten_pow(static_cast<long>(fracpart.size()));
        if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
            ++i_;
            bool neg = false;
            if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
            std::size_t eb = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (eb == i_) fail("bad exponent");
            long e = std::stol(s_.substr(eb, i_ - eb));
            v *= ten_pow(neg ? -e : e);
        }
        return Real(v);
    }
};

}  // namespace

Real Real::parse(const std::string& text) { return Parser(text).run(); }

}  // namespace hsurf
