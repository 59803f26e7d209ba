#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsurf/continued_fraction.hpp"
#include "hsurf/real.hpp"
#include "hsurf/staircase.hpp"
#include "hsurf/surface.hpp"

namespace hsurf {

// Torus cutting word over {A,B}; w_1 = B for xi > 0.
struct CuttingWord {
    std::string letters;
    Real xi;
    bool complete = false;  // rational xi: the whole k+n letter word
    // Number of A's before the i-th B, floor((i-1)/xi), i >= 1.
    long lambda(long i) const;
};

// |w^j|_A = floor(j/(xi+1)).  Rational xi = k/n gives exactly k+n letters.
CuttingWord canonical_word(const Real& xi, long length);
// The k+n letter word of k/n, 0 <= k < n; 0/1 gives "A".
std::string rational_word(const mpz_class& k, long n);

// Count of A's before the i-th B, read off the letters.
long lambda_count(const std::string& w, long i);

struct StackingBox {
    Real x;  // upper right corner
    Real y;
};

struct StackingDiagram {
    std::string word;
    Real s;
    std::vector<StackingBox> boxes;  // R_0 .. R_|w|
};

StackingDiagram stacking_diagram(const std::string& w, const Real& s);
// Same corners by placing boxes one at a time (width 1/s larger to the right on A, stacked on B).
StackingDiagram stacking_diagram_incremental(const std::string& w, const Real& s);

struct CrossingRow {
    long j;
    char next;     // w_{j+1}, or 0 at the final corner of a rational word
    Real x, y;     // corner of R_j
    Real y_minus;  // height of the line from the top of E
    Real y_plus;   // height of the line from the bottom of E
    bool meeting = false;  // rational, j = k+n-1: all three heights coincide
};

struct CrossingReport {
    bool rational = false;
    Real m_minus, m_plus;
    std::vector<CrossingRow> rows;
};

// Throws CrossingAssertion at the first j whose inequality (or meeting condition) fails
// or cannot be certified.
CrossingReport verify_crossings(const Real& s, const Real& xi, long j_max, const mpq_class& precision = mpq_class(1, 1000000000000L) * mpq_class(1, 1000000000000L) * mpq_class(1, 1000000L));

struct ClosedOrbitStart {
    Real y0_short;  // on the short copy of A, in [0, s)
    Real y0_aiet;   // y0_short / s, on J^+
};
ClosedOrbitStart closed_orbit_y0(const Real& s, const mpz_class& k, long n, const Real& m);

enum class VerdictKind { AttractingCycle, SaddleConnection, CantorLamination, Vertical };
const char* verdict_name(VerdictKind v);

struct ClassifiedDirection {
    VerdictKind kind = VerdictKind::Vertical;
    Real s;
    Real slope;             // as given
    NormalizedSlope normal; // slope moved into [0, 1/s)
    // AttractingCycle / SaddleConnection (normalized combinatorics k/n in [0,1))
    mpz_class k;
    long n = 0;
    Real y0;                // AttractingCycle: y0 on the short copy of A
    Real scaling;           // AttractingCycle: s^n
    Side side = Side::minus;  // SaddleConnection: lower (minus) or upper (plus) endpoint
    // CantorLamination: xi in (xi_lo, xi_hi), slope in (slope_lo, slope_hi)
    ContinuedFraction cf_prefix;
    mpq_class xi_lo, xi_hi;
    Real slope_lo, slope_hi;
    long depth = 0;
    std::string certificate;
};

struct DepthExhausted : Error {
    mpq_class xi_lo, xi_hi;
    DepthExhausted(const mpq_class& lo, const mpq_class& hi, const std::string& what)
        : Error("classification undecided between " + lo.get_str() + " and " + hi.get_str() + ": " + what),
          xi_lo(lo),
          xi_hi(hi) {}
};

// Classification with the given chamber parameter s (slope already effective).
ClassifiedDirection classify_slope(const Real& s, const Real& m, long depth);
// Forward verdict (plus chamber); nullopt slope means vertical.
ClassifiedDirection classify_direction(const SurfaceSpec& spec, const std::optional<Real>& m, long depth);
// Backward verdict: minus-chamber s at the slope m - u/s.
ClassifiedDirection classify_backward(const SurfaceSpec& spec, const std::optional<Real>& m, long depth);

struct LaunchComparison {
    std::string launch;
    std::string surface_word;  // A/B letters only
    long offset = -1;          // first index from which the surface word agrees; -1 if never
    bool agrees = false;
    bool precision_exhausted = false;  // the word stops where the enclosure became too coarse
    bool singular = false;             // the trajectory ran into a singular point (finite word)
};

struct CuttingComparison {
    ClassifiedDirection verdict;
    std::string torus_word;
    bool torus_cyclic = false;  // rational: the torus word repeats
    bool undecided = false;     // classifier hit DepthExhausted; bracket in verdict.xi_lo/xi_hi
    std::vector<LaunchComparison> launches;
};

CuttingComparison compare_cutting_sequences(const SurfaceSpec& spec, const Real& m, long horizon, long depth = 25);

}  // namespace hsurf
