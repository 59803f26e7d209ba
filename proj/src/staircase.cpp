#include "hsurf/staircase.hpp"

#include <algorithm>
#include <stdexcept>

#include "hsurf/arith.hpp"
#include "series.hpp"

namespace hsurf {

const char* side_name(Side side) { return side == Side::minus ? "minus" : "plus"; }

Real power_polynomial(const Real& s, const std::vector<mpz_class>& coeffs) {
    if (coeffs.empty()) return Real(0);
    if (s.is_rational()) {
        // sum c_e p^e q^(N-e) / q^N, accumulated left to right
        const mpz_class p = s.rational().get_num(), q = s.rational().get_den();
        mpz_class acc = coeffs[0], pw = 1;
        for (std::size_t e = 1; e < coeffs.size(); ++e) {
            pw *= p;
            acc *= q;
            if (coeffs[e] != 0) acc += coeffs[e] * pw;
        }
        mpz_class den;
        mpz_pow_ui(den.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(coeffs.size() - 1));
        return Real(mpq_class(acc, den));
    }
    Real acc(coeffs.back());
    for (std::size_t e = coeffs.size() - 1; e-- > 0;) acc = acc * s + Real(coeffs[e]);
    return acc;
}

Real with_tail(const Real& partial, const mpq_class& tail) {
    if (tail == 0) return partial;
    if (partial.is_rational()) return Real::ball(partial.rational(), tail);
    long bits = std::max(64L, 8 - floor_log2(tail));
    Approx a = partial.enclose(bits);
    return Real::ball(a.center, a.radius + tail);
}

namespace {

void check_fraction(const mpz_class& k, long n) {
    if (n <= 0) throw DomainError("denominator must be positive");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), mpz_class(n).get_mpz_t());
    if (g != 1) throw NonReducedFraction(k.get_str() + "/" + std::to_string(n) + " is not reduced");
}

[[noreturn]] void disagree(const char* what, const mpz_class& k, long n) {
    throw std::logic_error(std::string("internal: closed forms disagree (") + what + ") at " + k.get_str() + "/" +
                           std::to_string(n));
}

struct Pair {
    Real lower;
    Real upper;
};

// Both endpoints at a reduced k/n with 0 <= k < n, every applicable closed form compared.
Pair endpoints_unit(const Real& s, const mpz_class& k, long n) {
    Pair p{delta_ceiling_sum_form(s, k, n, Side::minus), delta_ceiling_sum_form(s, k, n, Side::plus)};
    if (!s.is_exact()) return p;
    Real one(1);
    if (k == 0) {
        if (p.lower != Real(0) || p.upper != (one - s) / s) disagree("k=0", k, n);
    } else {
        Real l8 = delta_floor_exponent_form(s, k, n, Side::minus);
        Real u8 = l8 + tongue_width(s, n);
        Real l9 = delta_inverse_power_form(s, k, n, Side::minus);
        Real u9 = delta_inverse_power_form(s, k, n, Side::plus);
        if (l8 != p.lower || l9 != p.lower) disagree("lower", k, n);
        if (u8 != p.upper || u9 != p.upper) disagree("upper", k, n);
    }
    if (p.upper - p.lower != tongue_width(s, n)) disagree("width", k, n);
    return p;
}

mpq_class defining_tail(const Real& s, long N) {
    mpq_class lo = s.lower(), hi = s.upper();
    mpq_class f = (1 - lo) / lo;
    // |r| < 1 after translation
    return f * f * (koebe_tail(hi, N) + geometric_tail(hi, N));
}

}  // namespace

Real tongue_width(const Real& s, long n) {
    Real one(1);
    return s.pow(n - 2) * (one - s) * (one - s) / (one - s.pow(n));
}

Real delta_ceiling_sum_form(const Real& s, const mpz_class& k, long n, Side side) {
    check_fraction(k, n);
    Real one(1);
    std::vector<mpz_class> c(static_cast<std::size_t>(n), mpz_class(0));
    for (long r = 1; r < n; ++r) {
        mpq_class v(k * r, n);
        c[static_cast<std::size_t>(r)] = side == Side::minus ? ceil_q(v) : floor_q(v);
    }
    Real sum = power_polynomial(s, c) / (s * s);
    Real sn = s.pow(n);
    Real value = Real(k) * s.pow(n - 2) * (one - s) / (one - sn) + (one - s) * (one - s) / (one - sn) * sum;
    if (side == Side::plus) value += (one - s) / s;
    return value;
}

Real delta_floor_exponent_form(const Real& s, const mpz_class& k, long n, Side side) {
    check_fraction(k, n);
    if (k < 1) throw DomainError("this form needs k >= 1");
    Real one(1);
    std::vector<mpz_class> c(static_cast<std::size_t>(n), mpz_class(0));
    for (mpz_class l = 0; l < k; ++l) {
        mpz_class e = floor_q(mpq_class(l * n, k));
        c[e.get_ui()] += 1;
    }
    // the infinite sum is periodic: l -> l + k raises the exponent by n
    Real lower = (one - s) / s * power_polynomial(s, c) / (one - s.pow(n));
    return side == Side::minus ? lower : lower + tongue_width(s, n);
}

Real delta_inverse_power_form(const Real& s, const mpz_class& k, long n, Side side) {
    check_fraction(k, n);
    if (!(k > 0 && k < n)) throw DomainError("this form needs 0 < k/n < 1");
    Real one(1);
    std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1, mpz_class(0));
    // s^n (1/s)^e = s^(n-e)
    for (mpz_class l = 0; l < k; ++l) {
        mpz_class e = floor_q(mpq_class(l * n, k));
        c[static_cast<std::size_t>(n - e.get_si())] += 1;
    }
    Real sn = s.pow(n);
    Real term = (one - s) / (s * s * (one - sn)) * power_polynomial(s, c);
    if (side == Side::minus) return (s - sn) * (one - s) / (s * s * (one - sn)) + term;
    return (one - s) / s + term;
}

Real delta_defining_series(const StaircaseParams& params, const Real& x, Side side) {
    require_unit_interval(params.s, "s");
    const Real& s = params.s;
    mpz_class t = x.floor();
    Real r = x - Real(t);
    long N = detail::pick_terms([&](long n) -> mpq_class { return defining_tail(s, n); }, params.precision / 2, params.max_terms);
    std::vector<mpz_class> c(static_cast<std::size_t>(N) + 1, mpz_class(0));
    for (long j = 1; j <= N; ++j) {
        Real jr = Real(j) * r;
        c[static_cast<std::size_t>(j)] = side == Side::minus ? jr.ceil() : jr.floor();
    }
    Real one(1);
    Real f = (one - s) / s;
    Real value = f * f * power_polynomial(s, c);
    if (side == Side::plus) value += f;
    value += Real(t) / s;
    return with_tail(value, defining_tail(s, N));
}

Real delta_exponent_series(const StaircaseParams& params, const Real& x) {
    require_unit_interval(params.s, "s");
    if (!(x > Real(0))) throw DomainError("exponent series needs x > 0");
    const Real& s = params.s;
    mpz_class mult = x.floor() + 1;  // each exponent value repeats at most this often
    mpq_class hi = s.upper();
    auto bound = [&](long J) -> mpq_class { return mpq_class(mult) * pow_q(hi, J); };
    long J = detail::pick_terms(bound, params.precision / 2, params.max_terms);
    std::vector<mpz_class> c(static_cast<std::size_t>(J) + 1, mpz_class(0));
    for (long l = 0;; ++l) {
        mpz_class e = (Real(l) / x).floor();
        if (e > J) break;
        c[e.get_ui()] += 1;
    }
    Real one(1);
    Real value = (one - s) / s * power_polynomial(s, c);
    return with_tail(value, bound(J));
}

Real delta(const StaircaseParams& params, const Real& x, Side side) {
    require_unit_interval(params.s, "s");
    const Real& s = params.s;
    if (x.is_rational()) {
        const mpq_class& q = x.rational();
        long n = q.get_den().get_si();
        if (q.get_den() != n) throw DomainError("denominator too large");
        mpz_class t = floor_q(q);
        mpz_class k = q.get_num() - t * n;
        Pair p = endpoints_unit(s, k, n);
        Real value = (side == Side::minus ? p.lower : p.upper) + Real(t) / s;
        // translation cross-check through the exponent form on x itself
        if (s.is_exact() && q > 0 && t <= 64) {
            Real direct = delta_floor_exponent_form(s, q.get_num(), n, side);
            if (direct != value) disagree("translation", q.get_num(), n);
        }
        return value;
    }
    return delta_defining_series(params, x, side);
}

Tongue tongue(const StaircaseParams& params, const mpz_class& k, long n) {
    require_unit_interval(params.s, "s");
    check_fraction(k, n);
    const Real& s = params.s;
    mpz_class t = floor_q(mpq_class(k, n));
    Pair p = endpoints_unit(s, k - t * n, n);
    Real shift = Real(t) / s;
    Tongue out;
    out.k = k;
    out.n = n;
    out.lower = p.lower + shift;
    out.upper = p.upper + shift;
    out.width = tongue_width(s, n);
    return out;
}

TongueSweep tongue_sweep(const StaircaseParams& params, long n_max, const Real& window_lo, const Real& window_hi) {
    require_unit_interval(params.s, "s");
    if (n_max < 1) throw DomainError("n_max must be positive");
    const Real& s = params.s;
    // Delta(x) lies in [floor(x)/s, (floor(x)+1)/s]
    mpz_class x_lo = floor_q(window_lo.lower() * s.lower()) - 1;
    mpz_class x_hi = ceil_q(window_hi.upper() * s.upper()) + 1;
    TongueSweep out;
    for (long n = 1; n <= n_max; ++n) {
        for (mpz_class k = x_lo * n; k <= x_hi * n; ++k) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), mpz_class(n).get_mpz_t());
            if (g != 1) continue;
            Tongue t = tongue(params, k, n);
            if (t.lower <= window_hi && t.upper >= window_lo) out.tongues.push_back(t);
        }
    }
    std::sort(out.tongues.begin(), out.tongues.end(), [](const Tongue& a, const Tongue& b) { return a.lower < b.lower; });
    Real sum(0);
    for (long n = 1; n <= n_max; ++n) sum += Real(totient(n)) * tongue_width(s, n);
    out.period_sum = sum;
    out.defect = Real(1) / s - sum;
    return out;
}

std::vector<StaircaseSample> staircase_samples(const StaircaseParams& params, const std::vector<Real>& grid, Side side) {
    std::vector<StaircaseSample> out;
    out.reserve(grid.size());
    for (const Real& x : grid) out.push_back({x, delta(params, x, side)});
    return out;
}

}  // namespace hsurf
