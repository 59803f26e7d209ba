#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>

#include "hsurf/errors.hpp"

namespace hsurf {

// a + b*sqrt(d), d squarefree >= 2, b != 0
struct Surd {
    mpq_class a;
    mpq_class b;
    mpz_class d;
};

// Ball [center - radius, center + radius]; radius > 0, both dyadic.
struct Approx {
    mpq_class center;
    mpq_class radius;
};

/// Scalar used everywhere: exact rational, exact quadratic surd, or a certified enclosure.
///
/// Comparisons and floor() are certified: when an enclosure straddles the
/// decision point they throw PrecisionExhausted instead of guessing.
class Real {
public:
    Real() : v_(mpq_class(0)) {}
    Real(int v) : v_(mpq_class(v)) {}
    Real(long v) : v_(mpq_class(v)) {}
    Real(const mpz_class& v) : v_(mpq_class(v)) {}
    Real(const mpq_class& v);
    Real(const Surd& v);
    Real(const Approx& v);

    static Real frac(long p, long q);
    static Real sqrt(const mpq_class& q);
    static Real ball(const mpq_class& center, const mpq_class& radius);
    // Parses "3/4", "-2", "0.25", "1e-12", "(sqrt5-1)/2", "1+2sqrt3", ...
    static Real parse(const std::string& text);

    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
    bool is_surd() const { return std::holds_alternative<Surd>(v_); }
    bool is_approx() const { return std::holds_alternative<Approx>(v_); }
    bool is_exact() const { return !is_approx(); }

    const mpq_class& rational() const;
    const Surd& surd() const;
    const Approx& approx() const;

    // Enclosure with absolute error about 2^-bits (exact values get a tiny ball).
    Approx enclose(long bits) const;
    mpq_class lower(long bits = 128) const;
    mpq_class upper(long bits = 128) const;
    // Radius of the enclosure (0 for exact values).
    mpq_class error() const;

    Real operator-() const;
    friend Real operator+(const Real& x, const Real& y);
    friend Real operator-(const Real& x, const Real& y);
    friend Real operator*(const Real& x, const Real& y);
    friend Real operator/(const Real& x, const Real& y);
    Real& operator+=(const Real& y) { return *this = *this + y; }
    Real& operator-=(const Real& y) { return *this = *this - y; }
    Real& operator*=(const Real& y) { return *this = *this * y; }
    Real& operator/=(const Real& y) { return *this = *this / y; }

    std::optional<int> try_sign() const;
    int sign() const;  // throws PrecisionExhausted when undecidable

    mpz_class floor() const;
    mpz_class ceil() const;
    Real fract() const { return *this - Real(floor()); }  // in [0,1)
    Real abs() const { return sign() < 0 ? -*this : *this; }
    Real pow(long n) const;

    double to_double() const;
    // Exact text for exact values ("5/12", "(-1+sqrt5)/2"); "value±err" for Approx.
    std::string str() const;
    std::string decimal(int digits) const;

    // Structural identity (same representation and same numbers).
    bool same(const Real& o) const;

private:
    std::variant<mpq_class, Surd, Approx> v_;
};

int compare(const Real& x, const Real& y);
bool operator<(const Real& x, const Real& y);
bool operator>(const Real& x, const Real& y);
bool operator<=(const Real& x, const Real& y);
bool operator>=(const Real& x, const Real& y);
bool operator==(const Real& x, const Real& y);
bool operator!=(const Real& x, const Real& y);

Real min(const Real& x, const Real& y);
Real max(const Real& x, const Real& y);

// Helpers on plain GMP numbers.
mpz_class floor_q(const mpq_class& q);
mpz_class ceil_q(const mpq_class& q);
long floor_log2(const mpq_class& q);  // q > 0
mpq_class pow_q(const mpq_class& q, long n);
mpq_class round_up_dyadic(const mpq_class& r, long frac_bits);
std::string decimal_q(const mpq_class& q, int digits);
// Exact decimal expansion of a dyadic rational (finite).
std::string dyadic_decimal(const mpq_class& q);
mpq_class ten_pow(long e);

}  // namespace hsurf
