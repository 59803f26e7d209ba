#include "hsurf/surface.hpp"

#include <map>

#include "hsurf/arith.hpp"

namespace hsurf {

const char* chamber_name(Chamber c) { return c == Chamber::plus ? "plus" : "minus"; }

const char* edge_name(Edge e) {
    switch (e) {
        case Edge::A_long: return "A_long";
        case Edge::A_short: return "A_short";
        case Edge::B: return "B";
        case Edge::C_long: return "C_long";
        case Edge::C_short: return "C_short";
        case Edge::D: return "D";
        case Edge::E: return "E";
    }
    return "?";
}

const char* direction_name(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

const char* status_name(TraceStatus t) {
    switch (t) {
        case TraceStatus::MaxReached: return "MaxReached";
        case TraceStatus::HitSingularity: return "HitSingularity";
        case TraceStatus::Closed: return "Closed";
        case TraceStatus::Vertical: return "Vertical";
    }
    return "?";
}

Real ChamberSpec::width() const { return s / (Real(1) - s); }
Real ChamberSpec::height() const { return Real(1) / (Real(1) - s); }

SurfaceSpec SurfaceSpec::untwisted(const Real& s) { return SurfaceSpec{{s, Real(0)}, {s, Real(0)}}; }
SurfaceSpec SurfaceSpec::scaled(const Real& s1, const Real& s2) { return SurfaceSpec{{s1, Real(0)}, {s2, Real(0)}}; }
SurfaceSpec SurfaceSpec::twisted(const Real& s, const Real& u) { return SurfaceSpec{{s, Real(0)}, {s, u}}; }

std::string TraceResult::word() const {
    std::string w;
    for (const auto& e : events) w += e.label;
    return w;
}

namespace {

struct ChartChamber {
    Real s, w, h, slope_shift;  // effective slope = m - slope_shift
};

class Tracer {
public:
    Tracer(const SurfaceSpec& spec, const Real& m, long max_crossings) : m_(m), max_(max_crossings) {
        require_unit_interval(spec.plus.s, "plus-chamber s");
        require_unit_interval(spec.minus.s, "minus-chamber s");
        for (int i = 0; i < 2; ++i) {
            const ChamberSpec& c = i == 0 ? spec.plus : spec.minus;
            charts_[i] = {c.s, c.width(), c.height(), c.twist_u / c.s};
        }
        exact_ = m.is_exact() && spec.plus.s.is_exact() && spec.minus.s.is_exact() && spec.plus.twist_u.is_exact() &&
                 spec.minus.twist_u.is_exact();
    }

    TraceResult run(const TrajectoryState& start) {
        Real y, d(0);
        chamber_ = start.chamber;
        dir_ = start.direction;
        const Real& c = start.coord;
        switch (start.edge) {
            case Edge::A_short:
                chamber_ = Chamber::plus;
                y = c * P().h;
                if (dir_ == Direction::backward) y = y / P().s;
                break;
            case Edge::A_long:
                chamber_ = Chamber::plus;
                y = c * P().h;
                if (dir_ == Direction::forward) y = y * P().s;
                break;
            case Edge::E:
                if (dir_ == Direction::forward) {
                    chamber_ = Chamber::plus;
                    y = P().w + c;
                } else {
                    chamber_ = Chamber::minus;
                    y = c;
                }
                break;
            case Edge::C_long:
                chamber_ = Chamber::minus;
                y = c * M().h;
                if (dir_ == Direction::backward) y = Real(1) + M().s * y;
                break;
            case Edge::C_short:
                chamber_ = Chamber::minus;
                y = c * M().h;
                if (dir_ == Direction::forward) y = (y - Real(1)) / M().s;
                break;
            case Edge::B:
            case Edge::D: {
                chamber_ = start.edge == Edge::B ? Chamber::plus : Chamber::minus;
                const ChartChamber& ch = cur();
                Real x = c * ch.w;
                d = dir_ == Direction::forward ? x : ch.w - x;
                int sg = rise().sign();
                if (sg == 0) throw DomainError("a horizontal trajectory cannot start on a horizontal edge");
                y = sg > 0 ? Real(0) : ch.h;
                break;
            }
        }
        while (true) {
            if (exact_) {
                std::string key = std::string(chamber_name(chamber_)) + direction_name(dir_) + y.str() + "|" + d.str();
                auto [it, fresh] = seen_.emplace(key, static_cast<long>(out_.events.size()));
                if (!fresh && static_cast<long>(out_.events.size()) > it->second) {
                    out_.status = TraceStatus::Closed;
                    out_.period_start = it->second;
                    out_.period = static_cast<long>(out_.events.size()) - it->second;
                    return out_;
                }
            }
            if (full()) return out_;
            if (!cross(y, d)) return out_;
            y = next_y_;
            d = Real(0);
        }
    }

private:
    const ChartChamber& P() const { return charts_[0]; }
    const ChartChamber& M() const { return charts_[1]; }
    const ChartChamber& cur() const { return chamber_ == Chamber::plus ? charts_[0] : charts_[1]; }
    // vertical change per unit of horizontal travel
    Real rise() const {
        Real me = m_ - cur().slope_shift;
        return dir_ == Direction::forward ? me : -me;
    }
    bool full() const { return static_cast<long>(out_.events.size()) >= max_; }

    void emit(char label, const Real& coord, bool endpoint) {
        out_.events.push_back({label, coord, static_cast<long>(out_.events.size()), chamber_, endpoint});
    }

    void horizontal(const Real& d, bool endpoint) {
        const ChartChamber& ch = cur();
        Real x = dir_ == Direction::forward ? d : ch.w - d;
        emit(chamber_ == Chamber::plus ? 'B' : 'D', x / ch.w, endpoint);
    }

    bool singular(char label, const Real& coord) {
        emit(label, coord, true);
        out_.status = TraceStatus::HitSingularity;
        return false;
    }

    // Crosses the current chamber from its entry side at height y, already d along.
    // Returns false when the trace ends.
    bool cross(Real y, Real d) {
        const ChartChamber& ch = cur();
        Real v = rise();
        int sg = v.sign();
        Real zero(0);
        // exit height, or the corner reached
        Real y_exit;
        if (sg > 0) {
            if (y == ch.h) {
                horizontal(d, d.sign() == 0);
                if (full()) return false;
                y = zero;
            }
            while (true) {
                Real hit = d + (ch.h - y) / v;
                int c = compare(hit, ch.w);
                if (c < 0) {
                    horizontal(hit, false);
                    if (full()) return false;
                    y = zero;
                    d = hit;
                    continue;
                }
                if (c == 0) return exit_corner(true);
                y_exit = y + v * (ch.w - d);
                break;
            }
        } else if (sg < 0) {
            if (y.sign() == 0) {
                horizontal(d, d.sign() == 0);
                if (full()) return false;
                y = ch.h;
            }
            while (true) {
                Real hit = d + y / (-v);
                int c = compare(hit, ch.w);
                if (c < 0) {
                    horizontal(hit, false);
                    if (full()) return false;
                    y = ch.h;
                    d = hit;
                    continue;
                }
                if (c == 0) return exit_corner(false);
                y_exit = y + v * (ch.w - d);
                break;
            }
        } else {
            // along a horizontal edge: runs straight into the far corner
            if (y.sign() == 0) return exit_corner(false);
            if (y == ch.h) return exit_corner(true);
            y_exit = y;
        }
        return exit_side(y_exit);
    }

    bool exit_corner(bool top) {
        Real c = top ? Real(1) : Real(0);
        if (chamber_ == Chamber::plus) {
            if (dir_ == Direction::forward) return singular('A', c);
            return top ? singular('E', Real(1)) : singular('A', Real(0));
        }
        if (dir_ == Direction::forward) return top ? singular('C', Real(1)) : singular('E', Real(0));
        return singular('C', c);
    }

    bool exit_side(const Real& y) {
        const ChartChamber& ch = cur();
        if (chamber_ == Chamber::plus && dir_ == Direction::forward) {
            emit('A', y / ch.h, false);
            return enter(Chamber::plus, ch.s * y);
        }
        if (chamber_ == Chamber::plus) {
            int c = compare(y, ch.w);
            if (c < 0) {
                Real y_long = y / ch.s;
                emit('A', y_long / ch.h, false);
                return enter(Chamber::plus, y_long);
            }
            if (c == 0) return singular('E', Real(0));
            emit('E', y - ch.w, false);
            return enter(Chamber::minus, y - ch.w);
        }
        if (dir_ == Direction::forward) {
            int c = compare(y, Real(1));
            if (c < 0) {
                emit('E', y, false);
                return enter(Chamber::plus, P().w + y);
            }
            if (c == 0) return singular('E', Real(1));
            Real y_long = (y - Real(1)) / ch.s;
            emit('C', y_long / ch.h, false);
            return enter(Chamber::minus, y_long);
        }
        emit('C', y / ch.h, false);
        return enter(Chamber::minus, Real(1) + ch.s * y);
    }

    bool enter(Chamber c, const Real& y) {
        chamber_ = c;
        next_y_ = y;
        return true;
    }

    Real next_y_;
    Real m_;
    long max_;
    ChartChamber charts_[2];
    bool exact_ = false;
    Chamber chamber_ = Chamber::plus;
    Direction dir_ = Direction::forward;
    std::map<std::string, long> seen_;
    TraceResult out_;
};

}  // namespace

TraceResult trace(const SurfaceSpec& spec, const TrajectoryState& start, long max_crossings) {
    if (start.vertical) {
        TraceResult r;
        r.status = TraceStatus::Vertical;
        return r;
    }
    if (max_crossings < 0) throw DomainError("max_crossings must be nonnegative");
    Tracer t(spec, start.slope, max_crossings);
    return t.run(start);
}

Real first_return_plus(const Real& s, const Real& m, const Real& y) { return (s * (y + m)).fract(); }

FirstReturn full_first_return(const Real& s, const Real& m, const Real& y, Interval side) {
    require_unit_interval(s, "s");
    if (side == Interval::J_plus) return {Interval::J_plus, first_return_plus(s, m, y)};
    Real one(1);
    Real z = (y + s * m).fract();
    if (z < one - s) return {Interval::J_plus, (z + (s * (one + m)).fract()).fract()};
    // through the short copy of C back onto C
    return {Interval::J_minus, (z - (one - s)) / s};
}

Real apply_automorphism(Automorphism which, const Real& slope, const Real& s, long power) {
    require_unit_interval(s, "s");
    switch (which) {
        case Automorphism::rho: return slope;
        case Automorphism::phi: return slope + Real(power) / s;
        case Automorphism::psi: return power % 2 == 0 ? slope : (Real(1) - s) / s - slope;
    }
    return slope;
}

std::string NormalizedSlope::word() const {
    std::string w;
    if (used_psi) w = "psi";
    if (phi_power != 0) {
        if (!w.empty()) w += " ";
        w += phi_power == 1 ? std::string("phi") : "phi^" + std::to_string(phi_power);
    }
    return w.empty() ? "identity" : w;
}

NormalizedSlope normalize_slope(const Real& s, const Real& m) {
    require_unit_interval(s, "s");
    NormalizedSlope out;
    Real v = m;
    if (v.sign() < 0) {
        v = apply_automorphism(Automorphism::psi, v, s);
        out.used_psi = true;
    }
    mpz_class k = -(v * s).floor();
    if (!k.fits_slong_p()) throw DomainError("slope too large to normalize");
    out.phi_power = k.get_si();
    out.slope = apply_automorphism(Automorphism::phi, v, s, out.phi_power);
    return out;
}

}  // namespace hsurf
