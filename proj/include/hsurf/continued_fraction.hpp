#pragma once

#include <optional>
#include <vector>

#include "hsurf/real.hpp"

namespace hsurf {

// a0; a1, a2, ...   For quadratic surds the stored quotients end with one
// full period and `period_start`/`period_length` describe the repetition.
struct ContinuedFraction {
    mpz_class a0;
    std::vector<mpz_class> quotients;  // a1, a2, ...
    bool terminates = false;
    std::optional<std::size_t> period_start;  // index into quotients
    std::size_t period_length = 0;
    std::optional<Real> exact_source;

    bool periodic() const { return period_start.has_value(); }
    // Whether a_i is known (a_0 always is).
    bool has(std::size_t i) const;
    mpz_class a(std::size_t i) const;
    // Last index for a terminating expansion.
    std::size_t last_index() const { return quotients.size(); }
};

struct Convergent {
    long i;
    mpz_class P;
    mpz_class Q;
    mpq_class value() const { return mpq_class(P, Q); }
};

ContinuedFraction cf_expand(const Real& x, std::size_t max_terms);

// Re-folds a terminating expansion.
mpq_class cf_fold(const ContinuedFraction& cf);

// The other finite expansion of a rational ([..., a] <-> [..., a-1, 1]) when
// that flips the parity of the last index; used where a rule needs an even end.
ContinuedFraction cf_with_even_end(const ContinuedFraction& cf);

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t upto);

struct ShiftedRelationRow {
    std::size_t i;
    bool prime_ok;         // P'_i = Q_{i-1}, Q'_i = P_{i-1} + Q_{i-1}
    bool double_prime_ok;  // P''_i = P_i, Q''_i = P_i + Q_i
    bool prime_checked;
    bool double_prime_checked;
};

struct ShiftedRelationReport {
    std::vector<ShiftedRelationRow> rows;
    bool all_pass = true;
};

// Convergents of xi, 1/(xi+1) and xi/(xi+1) and the relations between them.
ShiftedRelationReport shifted_convergent_relations(const Real& xi, std::size_t upto);

struct NearApproach {
    long j;
    Real remainder;  // {j x}
};

struct NearApproachReport {
    std::vector<NearApproach> to_zero;
    std::vector<NearApproach> to_one;
    // Whether the j-values were compared with the intermediate-fraction rule,
    // and whether they matched.
    bool rule_checked = false;
    bool rule_agrees = false;
};

NearApproachReport near_approaches(const Real& x, long j_max);

// Denominators Q_{i-2} + alpha Q_{i-1} predicted for approaches to 0 (even i)
// and to 1 (odd i), restricted to [1, j_max].
std::pair<std::vector<long>, std::vector<long>> predicted_near_approach_indices(const ContinuedFraction& cf, long j_max);

}  // namespace hsurf
