#pragma once

// Independent reference computations used to freeze expected values.  None
// of these call into the library code they check.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hsurf::oracle {

inline mpq_class q(long a, long b) {
    mpq_class r(a, b);
    r.canonicalize();
    return r;
}
inline mpz_class fl(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}
inline mpz_class ce(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}
inline mpq_class pw(const mpq_class& s, long e) {
    mpq_class r = 1;
    mpq_class b = e < 0 ? mpq_class(1) / s : s;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
    return r;
}

// Defining series of the staircase at k/n summed exactly: the integer parts
// c_j grow by k every n steps, so sum s^j c_j = A/(1-s^n) + k B s^n/(1-s^n)^2.
inline mpq_class staircase(const mpq_class& s, long k, long n, bool plus) {
    mpq_class A = 0, B = 0, sj = 1;
    for (long j = 1; j <= n; ++j) {
        sj *= s;
        mpq_class v = q(j * k, n);
        A += sj * (plus ? fl(v) : ce(v));
        B += sj;
    }
    mpq_class sn = pw(s, n);
    mpq_class S = A / (1 - sn) + mpq_class(k) * B * sn / ((1 - sn) * (1 - sn));
    mpq_class f = (1 - s) / s;
    return (plus ? f : mpq_class(0)) + f * f * S;
}

// Rotation-number functions at rational xi = k/n and rational x, from the
// defining series: the summand is n-periodic in j.
inline mpq_class upsilon(const mpq_class& s, long k, long n, const mpq_class& x, bool plus) {
    mpq_class S = 0, sj = 1;
    for (long j = 1; j <= n; ++j) {
        sj *= s;
        mpq_class frac = q(j * k % n, n);
        S += sj * (plus ? fl(x - frac) : ce(x - frac));
    }
    mpq_class sn = pw(s, n);
    return (plus ? mpq_class(1) : mpq_class(0)) + (1 - s) / s * S / (1 - sn);
}

// Continued fraction by long division.
inline std::vector<mpz_class> cf(mpq_class q) {
    std::vector<mpz_class> out;
    while (true) {
        mpz_class a = fl(q);
        out.push_back(a);
        q -= a;
        if (q == 0) return out;
        q = 1 / q;
    }
}

// floor(j / (xi + 1)) for xi = (sqrt5 - 1)/2: j (sqrt5 - 1)/2 via integer square roots.
inline long golden_a_count(long j) {
    mpz_class t;
    mpz_class sq = 5 * mpz_class(j) * j;
    mpz_sqrt(t.get_mpz_t(), sq.get_mpz_t());
    mpz_class r;
    mpz_fdiv_q_ui(r.get_mpz_t(), mpz_class(t - j).get_mpz_t(), 2);
    return r.get_si();
}
// floor(j / (xi + 1)) for xi = sqrt2 - 1: floor(sqrt(2 j^2) / 2).
inline long silver_a_count(long j) {
    mpz_class t;
    mpz_class sq = 2 * mpz_class(j) * j;
    mpz_sqrt(t.get_mpz_t(), sq.get_mpz_t());
    return mpz_class(t / 2).get_si();
}

template <class ACount>
std::string word_from_counts(ACount a, long length) {
    std::string w;
    long prev = 0;
    for (long j = 1; j <= length; ++j) {
        long c = a(j);
        w += c > prev ? 'A' : 'B';
        prev = c;
    }
    return w;
}

// Corners of the stacked boxes by direct placement: box j has lower-left
// corner (l, b), width s^(1-a), height s^(-a), a = A's so far.
struct Corner {
    mpq_class x, y;
};
inline std::vector<Corner> stack(const std::string& w, const mpq_class& s) {
    std::vector<Corner> out;
    mpq_class l = 1 - s, b = 0, wd = s, ht = 1;
    out.push_back({l + wd, b + ht});
    for (char c : w) {
        if (c == 'A') {
            l += wd;
            wd /= s;
            ht /= s;
        } else {
            b += ht;
        }
        out.push_back({l + wd, b + ht});
    }
    return out;
}

// The contracted rotation y -> {s(y + m)} on exact rationals.
inline mpq_class rot(const mpq_class& s, const mpq_class& m, const mpq_class& y) {
    mpq_class v = s * (y + m);
    return v - fl(v);
}

inline long totient(long n) {
    long r = 0;
    for (long k = 1; k <= n; ++k) {
        long a = k, b = n;
        while (b) {
            long t = a % b;
            a = b;
            b = t;
        }
        if (a == 1) ++r;
    }
    return r;
}

}  // namespace hsurf::oracle
