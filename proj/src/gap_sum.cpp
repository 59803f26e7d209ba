#include <boost/multiprecision/mpfr.hpp>

#include "hsurf/arith.hpp"
#include "hsurf/upsilon.hpp"

namespace hsurf {

namespace {

using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<120>>;

constexpr long kWorkingBits = 390;  // 120 decimal digits, rounded down
constexpr long kTrustedBits = 360;  // after accumulated rounding

Big to_big(const mpq_class& q) {
    Big out;
    mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return out;
}

mpq_class to_q(const Big& b) {
    mpq_class out;
    mpfr_get_q(out.get_mpq_t(), b.backend().data());
    return out;
}

// b with a ball covering `ops` roundings of relative size 2^-kTrustedBits.
Real certified(const Big& b, long ops) {
    mpq_class c = to_q(b);
    mpq_class rel = mpq_class(ops + 4) / mpq_class(mpz_class(1) << kTrustedBits);
    mpq_class r = abs(c) * rel + mpq_class(1) / mpq_class(mpz_class(1) << (kWorkingBits + 8));
    return Real::ball(c, r);
}

// Integer exponents keep every term rational, so the report is exact.
GapSumReport exact_gap_sum(GapTarget target, const mpq_class& s, long d, long n_max) {
    GapSumReport rep;
    rep.target = target;
    rep.delta_exponent = d;
    rep.terms = n_max;
    mpq_class sum = 0, sd = pow_q(s, d);
    if (target == GapTarget::K_s_xi) {
        mpq_class lead = pow_q(1 - s, d), term = lead;
        for (long j = 1; j <= n_max; ++j) {
            sum += term;
            term *= sd;
            rep.partial_sums.push_back(sum.get_d());
        }
        rep.partial = Real(sum);
        rep.closed_form = Real(mpq_class(lead / (1 - sd)));
        rep.remainder_bound = Real(mpq_class(lead * pow_q(sd, n_max) / (1 - sd)));
        return rep;
    }
    mpq_class sn = 1;
    for (long n = 1; n <= n_max; ++n) {
        sn *= s;
        mpq_class width = sn / (s * s) * (1 - s) * (1 - s) / (1 - sn);
        sum += totient(n) * pow_q(width, d);
        rep.partial_sums.push_back(sum.get_d());
    }
    rep.partial = Real(sum);
    mpq_class factor = pow_q((1 - s) / s, 2 * d) / pow_q(1 - s, d);
    rep.comparison = Real(mpq_class(factor * sd / ((1 - sd) * (1 - sd))));
    rep.remainder_bound = Real(mpq_class(factor * koebe_tail(sd, n_max)));
    return rep;
}

}  // namespace

GapSumReport gap_sum(GapTarget target, const Real& s, const mpq_class& delta_exponent, long n_max) {
    require_unit_interval(s, "s");
    if (delta_exponent <= 0) throw DomainError("delta exponent must be positive");
    if (n_max < 1) throw DomainError("n_max must be positive");
    if (!s.is_rational()) throw DomainError("gap sums take a rational s");
    const mpq_class sq = s.rational();
    if (delta_exponent.get_den() == 1 && delta_exponent <= 64)
        return exact_gap_sum(target, sq, delta_exponent.get_num().get_si(), n_max);

    Big sb = to_big(sq), d = to_big(delta_exponent), one = 1;
    Big sd = pow(sb, d);  // s^delta
    GapSumReport rep;
    rep.target = target;
    rep.delta_exponent = delta_exponent;
    rep.terms = n_max;

    Big sum = 0, prev = 0;
    if (target == GapTarget::K_s_xi) {
        Big lead = pow(one - sb, d), term = lead;
        for (long j = 1; j <= n_max; ++j) {
            sum += term;
            term *= sd;
            if (sum < prev) rep.monotone = false;
            prev = sum;
            rep.partial_sums.push_back(sum.convert_to<double>());
        }
        rep.partial = certified(sum, 3 * n_max);
        rep.closed_form = certified(lead / (one - sd), 8);
        // geometric tail sum_{j>N} lead * r^(j-1)
        rep.remainder_bound = certified(lead * pow(sd, n_max) / (one - sd), n_max + 8);
        return rep;
    }

    Big sn = 1;
    for (long n = 1; n <= n_max; ++n) {
        sn *= sb;
        Big width = sn / (sb * sb) * (one - sb) * (one - sb) / (one - sn);
        sum += Big(totient(n)) * pow(width, d);
        if (sum < prev) rep.monotone = false;
        prev = sum;
        rep.partial_sums.push_back(sum.convert_to<double>());
    }
    rep.partial = certified(sum, 12 * n_max);
    // phi(n) (s^n/(1-s^n))^delta <= n (s^delta)^n / (1-s)^delta
    Big factor = pow((one - sb) / sb, 2 * d) / pow(one - sb, d);
    rep.comparison = certified(factor * sd / ((one - sd) * (one - sd)), 16);
    mpq_class r_hi = to_q(sd) * (1 + mpq_class(1) / mpq_class(mpz_class(1) << kTrustedBits));
    rep.remainder_bound = certified(factor * to_big(koebe_tail(r_hi, n_max)), 24);
    return rep;
}

}  // namespace hsurf
