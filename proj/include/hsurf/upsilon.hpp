#pragma once

#include <optional>
#include <vector>

#include "hsurf/real.hpp"
#include "hsurf/staircase.hpp"

namespace hsurf {

struct UpsilonParams {
    Real s;
    Real xi;
    mpq_class precision = mpq_class(1, 1000000000000L);
    std::size_t max_terms = 1000000;
};

// xi as a reduced fraction k/n with 0 <= k < n, if it is rational.
struct RationalXi {
    mpz_class k;
    long n;
};
std::optional<RationalXi> rational_xi(const Real& xi);

Real upsilon(const UpsilonParams& params, const Real& x, Side side);

// Variant of the minus function for rational xi = k/n, x in (0,1] (other x by periodicity).
Real upsilon_under_minus(const UpsilonParams& params, const Real& x);

struct Gap {
    long j;          // gap index; length (1-s) s^(j-1)
    Real at;         // jump point {j xi}
    Real left;       // minus value at the jump point
    Real right;      // plus value at the jump point
    Real length;
};

struct GapCover {
    long stage = 0;
    bool finite = false;       // rational xi: `points` holds the whole image in [0,1)
    std::vector<Gap> gaps;     // sorted by left endpoint
    std::vector<Real> points;  // finite case only, sorted
    Real remainder_measure;    // s^stage (irrational case)
};

GapCover cantor_cover(const UpsilonParams& params, long stage);

// y -> {s(y + m)}
Real contracted_rotation(const Real& s, const Real& m, const Real& y);

// Orbit y0, f(y0), ..., f^steps(y0) with m = Delta^+(xi).
std::vector<Real> contracted_rotation_orbit(const UpsilonParams& params, const Real& y0, long steps);
// Same with an explicit m; aborts when the error bound exceeds 10*precision.
std::vector<Real> contracted_rotation_orbit(const Real& s, const Real& m, const Real& y0, long steps,
                                            const mpq_class& precision);

// Closure of f^N([0,1)) as arcs on the circle, and the gaps between them.
struct Arc {
    Real start;   // in [0,1)
    Real length;
};
struct NestedImage {
    long stage = 0;
    std::vector<Arc> arcs;                        // sorted by start
    std::vector<std::pair<Real, Real>> gaps;      // (lower, upper), sorted, inside (0,1)
};
NestedImage nested_image(const UpsilonParams& params, long stage);

// Largest endpoint discrepancy between the nested image and the gap cover at
// the same stage (irrational xi); exactly 0 means every endpoint matched exactly.
struct NestedCoverComparison {
    bool same_count = false;
    mpq_class max_discrepancy;  // upper bound over all endpoints
};
NestedCoverComparison compare_nested_with_cover(const UpsilonParams& params, long stage);

// Visits of the orbit of 0 to each closed interval left by the stage-N cover,
// counting only iterates beyond N.
std::vector<long> cover_visits(const UpsilonParams& params, long stage, long steps);

// |Upsilon^+(x + xi) - s (Upsilon^+(x) + Delta^+(xi))| for x in [0,1).
Real du_identity_residual(const UpsilonParams& params, const Real& x);

// Inverse of Upsilon^+ extended to be constant across gaps; irrational xi.
Real semiconjugacy_g(const UpsilonParams& params, const Real& y);

enum class GapTarget { K_s, K_s_xi };

struct GapSumReport {
    GapTarget target = GapTarget::K_s_xi;
    mpq_class delta_exponent;
    long terms = 0;
    Real partial;
    std::optional<Real> closed_form;   // K_s_xi
    std::optional<Real> comparison;    // K_s: full comparison-test bound
    Real remainder_bound;              // certified bound on the omitted tail
    bool monotone = true;              // partial sums nondecreasing
    std::vector<double> partial_sums;  // for plotting
};

GapSumReport gap_sum(GapTarget target, const Real& s, const mpq_class& delta_exponent, long n_max);

}  // namespace hsurf
