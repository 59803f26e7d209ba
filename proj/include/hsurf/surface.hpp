#pragma once

#include <string>
#include <vector>

#include "hsurf/real.hpp"

namespace hsurf {

enum class Chamber { plus, minus };
enum class Edge { A_long, A_short, B, C_long, C_short, D, E };
enum class Direction { forward, backward };

const char* chamber_name(Chamber c);
const char* edge_name(Edge e);
const char* direction_name(Direction d);

// One half of the surface in its E-normalized chart [0,w] x [0,h],
// w = s/(1-s), h = 1/(1-s).
struct ChamberSpec {
    Real s;
    Real twist_u = Real(0);
    Real width() const;
    Real height() const;
};

struct SurfaceSpec {
    ChamberSpec plus;
    ChamberSpec minus;
    static SurfaceSpec untwisted(const Real& s);
    static SurfaceSpec scaled(const Real& s1, const Real& s2);
    static SurfaceSpec twisted(const Real& s, const Real& u);
};

// Position on an edge and a slope.  Coordinates, bottom/left = 0:
//   A_long, C_long   unit-height coordinate in [0,1]
//   A_short          unit-height coordinate in [0,s]
//   C_short          unit-height coordinate in [1-s,1]
//   E                fraction along E in [0,1]
//   B, D             x/w in [0,1]
struct TrajectoryState {
    Chamber chamber = Chamber::plus;
    Edge edge = Edge::A_short;
    Real coord;
    Real slope;
    Direction direction = Direction::forward;
    bool vertical = false;
};

// label is one of 'A'..'E'.  coord: A in A_long units, C in C_long units,
// E as a fraction of E, B and D as x/w.
struct CrossingEvent {
    char label = 'A';
    Real coord;
    long index = 0;
    Chamber chamber = Chamber::plus;
    bool endpoint = false;  // the crossing is at a singular point
};

enum class TraceStatus { MaxReached, HitSingularity, Closed, Vertical };
const char* status_name(TraceStatus t);

struct TraceResult {
    std::vector<CrossingEvent> events;
    TraceStatus status = TraceStatus::MaxReached;
    long period = 0;          // Closed: events per period
    long period_start = 0;    // Closed: index of the first event of the cycle
    std::string word() const; // labels concatenated
};

TraceResult trace(const SurfaceSpec& spec, const TrajectoryState& start, long max_crossings);

// Contracted rotation on J^+ (the first return to A).
Real first_return_plus(const Real& s, const Real& m, const Real& y);

enum class Interval { J_plus, J_minus };
struct FirstReturn {
    Interval side;
    Real y;
};
// First return on J^+ and J^- (the edges A and C, unit coordinates).
FirstReturn full_first_return(const Real& s, const Real& m, const Real& y, Interval side);

enum class Automorphism { rho, phi, psi };
// phi^k: m + k/s; psi: (1-s)/s - m; rho: m (direction reversed).
Real apply_automorphism(Automorphism which, const Real& slope, const Real& s, long power = 1);

struct NormalizedSlope {
    Real slope;             // in [0, 1/s)
    bool used_psi = false;
    long phi_power = 0;     // applied after psi
    std::string word() const;  // e.g. "psi phi^-1", "identity"
};
NormalizedSlope normalize_slope(const Real& s, const Real& m);

}  // namespace hsurf
