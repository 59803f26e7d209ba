#include "hsurf/arith.hpp"

namespace hsurf {

long totient(long n) {
    if (n < 1) throw DomainError("totient of a nonpositive integer");
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

mpq_class geometric_tail(const mpq_class& r, long N) { return pow_q(r, N + 1) / (1 - r); }

mpq_class koebe_tail(const mpq_class& r, long N) {
    mpq_class one_minus = 1 - r;
    return pow_q(r, N + 1) * (mpq_class(N + 1) - mpq_class(N) * r) / (one_minus * one_minus);
}

void require_unit_interval(const Real& s, const char* what) {
    if (!(s > Real(0) && s < Real(1))) throw DomainError(std::string(what) + " must lie strictly between 0 and 1");
}

ReferenceSums reference_sums(const Real& s, long n_max) {
    require_unit_interval(s, "s");
    if (n_max < 1) throw DomainError("n_max must be positive");
    Real one(1);
    ReferenceSums out;
    out.geometric = s / (one - s);
    out.koebe = s / ((one - s) * (one - s));
    Real partial(0);
    Real sn(1);
    for (long n = 1; n <= n_max; ++n) {
        sn *= s;
        partial += Real(totient(n)) * sn / (one - sn);
    }
    out.lambert_partial = partial;
    // phi(n) s^n/(1-s^n) <= n s^n/(1-s)
    mpq_class hi = s.upper();
    out.lambert_remainder_bound = Real(koebe_tail(hi, n_max) / (1 - hi));
    return out;
}

FloorInequality floor_inequality(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
    if (b <= 0) throw DomainError("floor_inequality needs b > 0");
    mpq_class ab = a / b;
    mpz_class fab = floor_q(ab), fc = floor_q(c), fbc = floor_q(b * c);
    FloorInequality out;
    out.lhs = fab - fc;
    mpz_class inner = floor_q(ab - mpq_class(fbc) / b);
    out.rhs = inner + 1;
    out.slack = (ab - fab) + (b * c - fbc) / b - (c - fc);
    out.holds = out.lhs <= out.rhs;
    out.strict = out.lhs < out.rhs;
    out.equality_form = inner == out.lhs;
    return out;
}

}  // namespace hsurf
