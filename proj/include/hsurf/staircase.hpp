#pragma once

#include <vector>

#include "hsurf/real.hpp"

namespace hsurf {

enum class Side { minus, plus };

const char* side_name(Side side);

struct StaircaseParams {
    Real s;
    mpq_class precision = mpq_class(1, 1000000000000L);
    std::size_t max_terms = 1000000;
};

struct Tongue {
    mpz_class k;
    long n = 1;
    Real lower;
    Real upper;
    Real width;
};

// The staircase function at x (exact for rational x and exact s).
Real delta(const StaircaseParams& params, const Real& x, Side side);

// Individual closed forms at a reduced k/n; each throws DomainError outside
// its range of validity.  Used for the internal cross-check and by tests.
Real delta_ceiling_sum_form(const Real& s, const mpz_class& k, long n, Side side);  // any k
Real delta_floor_exponent_form(const Real& s, const mpz_class& k, long n, Side side);  // k >= 1
Real delta_inverse_power_form(const Real& s, const mpz_class& k, long n, Side side);  // 0 < k < n

// Defining series sum_j s^j ceil(jx) (or floor), truncated with a certified tail.
Real delta_defining_series(const StaircaseParams& params, const Real& x, Side side);
// ((1-s)/s) sum_{l>=0} s^floor(l/x) for irrational x > 0.
Real delta_exponent_series(const StaircaseParams& params, const Real& x);

Real tongue_width(const Real& s, long n);
Tongue tongue(const StaircaseParams& params, const mpz_class& k, long n);

struct TongueSweep {
    std::vector<Tongue> tongues;  // sorted by lower endpoint
    Real period_sum;              // sum_{n<=n_max} phi(n) width(n)
    Real defect;                  // 1/s - period_sum
};

TongueSweep tongue_sweep(const StaircaseParams& params, long n_max, const Real& window_lo, const Real& window_hi);

struct StaircaseSample {
    Real x;
    Real value;
};

std::vector<StaircaseSample> staircase_samples(const StaircaseParams& params, const std::vector<Real>& grid, Side side);

// Sum_{e=0}^{N} c_e s^e, exact; uses integer arithmetic when s is rational.
Real power_polynomial(const Real& s, const std::vector<mpz_class>& coeffs);

// Attaches a tail bound to an exact partial sum.
Real with_tail(const Real& partial, const mpq_class& tail);

}  // namespace hsurf
