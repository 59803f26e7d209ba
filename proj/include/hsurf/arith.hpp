#pragma once

#include "hsurf/real.hpp"

namespace hsurf {

long totient(long n);

struct ReferenceSums {
    Real geometric;        // s/(1-s)
    Real koebe;            // s/(1-s)^2
    Real lambert_partial;  // sum_{n<=n_max} phi(n) s^n/(1-s^n)
    Real lambert_remainder_bound;
};

ReferenceSums reference_sums(const Real& s, long n_max);

// Upper bounds, in closed form, for the tails sum_{j>N} r^j and sum_{j>N} j r^j.
mpq_class geometric_tail(const mpq_class& r, long N);
mpq_class koebe_tail(const mpq_class& r, long N);

// The floor inequality floor(a/b) - floor(c) <= floor(a/b - floor(bc)/b) + 1
// with its strictness and equality conditions.
struct FloorInequality {
    mpz_class lhs;       // floor(a/b) - floor(c)
    mpz_class rhs;       // floor(a/b - floor(bc)/b) + 1
    mpq_class slack;     // {a/b} + {bc}/b - {c}
    bool holds;          // lhs <= rhs
    bool strict;         // lhs < rhs
    bool equality_form;  // floor(a/b - floor(bc)/b) == floor(a/b) - floor(c)
};

FloorInequality floor_inequality(const mpq_class& a, const mpq_class& b, const mpq_class& c);

void require_unit_interval(const Real& s, const char* what);

}  // namespace hsurf
