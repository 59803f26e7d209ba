#include "hsurf/upsilon.hpp"

#include <algorithm>
#include <stdexcept>

#include "hsurf/arith.hpp"
#include "series.hpp"

namespace hsurf {

namespace {

StaircaseParams staircase_of(const UpsilonParams& p) { return StaircaseParams{p.s, p.precision, p.max_terms}; }

UpsilonParams with_precision(const UpsilonParams& p, const mpq_class& precision) {
    UpsilonParams q = p;
    q.precision = precision;
    return q;
}

void check_params(const UpsilonParams& p) {
    require_unit_interval(p.s, "s");
    if (!(p.xi > Real(0))) throw DomainError("xi must be positive");
}

// {r k / n} for r = 0..n-1
std::vector<mpq_class> rotation_points(const RationalXi& q) {
    // one point per residue; past this the exact path is hopeless (decimals like 0.6180339887 land here)
    if (q.n > 1000000) throw DomainError("rational xi with denominator above 10^6 is not supported; pass a surd instead");
    std::vector<mpq_class> out(static_cast<std::size_t>(q.n));
    for (long r = 0; r < q.n; ++r) {
        mpz_class num = q.k * r;
        mpz_class red;
        mpz_fdiv_r(red.get_mpz_t(), num.get_mpz_t(), mpz_class(q.n).get_mpz_t());
        out[static_cast<std::size_t>(r)] = mpq_class(red, q.n);
    }
    return out;
}

mpz_class floor_diff(const Real& x, const mpq_class& f) {
    if (x.is_rational()) return floor_q(x.rational() - f);
    return (x - Real(f)).floor();
}

mpz_class ceil_diff(const Real& x, const mpq_class& f) {
    if (x.is_rational()) return ceil_q(x.rational() - f);
    return (x - Real(f)).ceil();
}

Real upsilon_rational(const UpsilonParams& p, const RationalXi& q, const Real& x, Side side) {
    const Real& s = p.s;
    Real one(1);
    auto pts = rotation_points(q);
    std::vector<mpz_class> c(static_cast<std::size_t>(q.n), mpz_class(0));
    Real sn = s.pow(q.n);
    if (side == Side::plus) {
        mpz_class t = x.floor();
        Real r = x - Real(t);
        for (long i = 1; i < q.n; ++i) c[static_cast<std::size_t>(i)] = floor_diff(r, pts[static_cast<std::size_t>(i)]);
        return one + (one - s) / s / (one - sn) * power_polynomial(s, c) + Real(t);
    }
    mpz_class t = x.ceil() - 1;
    Real r = x - Real(t);
    for (long i = 0; i < q.n; ++i) c[static_cast<std::size_t>(i)] = ceil_diff(r, pts[static_cast<std::size_t>(i)]);
    return (one - s) / s * (power_polynomial(s, c) / (one - sn) - one) + Real(t);
}

mpq_class upsilon_tail(const Real& s, long N) {
    mpq_class lo = s.lower(), hi = s.upper();
    // ((1-s)/s) sum_{j>N} s^j
    return (1 - lo) / lo * pow_q(hi, N + 1) / (1 - hi);
}

Real upsilon_series(const UpsilonParams& p, const Real& xf, const Real& x, Side side) {
    const Real& s = p.s;
    Real one(1);
    mpz_class t = side == Side::plus ? x.floor() : x.ceil() - 1;
    Real r = x - Real(t);
    // integers are exact: the series collapses to a geometric sum
    if (r.is_exact()) {
        if (side == Side::plus && r.try_sign() == 0) return Real(t);
        if (side == Side::minus && (r - one).try_sign() == 0) return Real(mpz_class(t + 1));
    }
    long N = detail::pick_terms([&](long n) -> mpq_class { return upsilon_tail(s, n); }, p.precision / 2, p.max_terms);
    std::vector<mpz_class> c(static_cast<std::size_t>(N) + 1, mpz_class(0));
    for (long j = 1; j <= N; ++j) {
        Real d = r - (Real(j) * xf).fract();
        c[static_cast<std::size_t>(j)] = side == Side::plus ? d.floor() : d.ceil();
    }
    Real value = (one - s) / s * power_polynomial(s, c);
    if (side == Side::plus) value += one;
    return with_tail(value + Real(t), upsilon_tail(s, N));
}

Real magnitude(const Real& v) {
    if (v.is_exact()) return v.abs();
    Approx a = v.approx();
    return Real::ball(abs(a.center), a.radius);
}

mpq_class distance_bound(const Real& a, const Real& b) {
    Real d = a - b;
    mpq_class lo = d.lower(), hi = d.upper();
    return std::max(abs(lo), abs(hi));
}

}  // namespace

std::optional<RationalXi> rational_xi(const Real& xi) {
    if (!xi.is_rational()) return std::nullopt;
    mpq_class f = xi.rational() - mpq_class(floor_q(xi.rational()));
    if (f.get_den() > mpz_class(1L << 40)) throw DomainError("denominator of xi too large");
    return RationalXi{f.get_num(), f.get_den().get_si()};
}

Real upsilon(const UpsilonParams& params, const Real& x, Side side) {
    check_params(params);
    if (auto q = rational_xi(params.xi)) return upsilon_rational(params, *q, x, side);
    return upsilon_series(params, params.xi.fract(), x, side);
}

Real upsilon_under_minus(const UpsilonParams& params, const Real& x) {
    check_params(params);
    auto q = rational_xi(params.xi);
    if (!q) throw DomainError("the underline variant needs rational xi");
    const Real& s = params.s;
    Real one(1);
    mpz_class t = x.ceil() - 1;
    Real r = x - Real(t);
    auto pts = rotation_points(*q);
    std::vector<mpz_class> c(static_cast<std::size_t>(q->n), mpz_class(0));
    for (long i = 1; i < q->n; ++i) c[static_cast<std::size_t>(i)] = ceil_diff(r, pts[static_cast<std::size_t>(i)]);
    Real sn = s.pow(q->n);
    Real value = (one - s) / (s * (one - sn)) * power_polynomial(s, c);
    if (s.is_exact()) {
        Real expect = (s.pow(q->n - 1) - sn) / (one - sn);
        if (upsilon_rational(params, *q, r, Side::minus) - value != expect)
            throw std::logic_error("internal: underline offset mismatch");
    }
    // extended to all x by unit periodicity, like the minus function itself
    return value + Real(t);
}

GapCover cantor_cover(const UpsilonParams& params, long stage) {
    check_params(params);
    if (stage < 0) throw DomainError("stage must be nonnegative");
    const Real& s = params.s;
    Real one(1);
    GapCover out;
    out.stage = stage;
    if (auto q = rational_xi(params.xi)) {
        out.finite = true;
        for (const mpq_class& x : rotation_points(*q)) out.points.push_back(upsilon(params, Real(x), Side::plus));
        std::sort(out.points.begin(), out.points.end(), [](const Real& a, const Real& b) { return a < b; });
        out.remainder_measure = Real(0);
        return out;
    }
    Real xf = params.xi.fract();
    for (long j = 1; j <= stage; ++j) {
        Gap g;
        g.j = j;
        g.at = (Real(j) * xf).fract();
        g.left = upsilon(params, g.at, Side::minus);
        g.right = upsilon(params, g.at, Side::plus);
        g.length = (one - s) * s.pow(j - 1);
        out.gaps.push_back(g);
    }
    std::sort(out.gaps.begin(), out.gaps.end(), [](const Gap& a, const Gap& b) { return a.at < b.at; });
    out.remainder_measure = s.pow(stage);
    return out;
}

Real contracted_rotation(const Real& s, const Real& m, const Real& y) { return (s * (y + m)).fract(); }

std::vector<Real> contracted_rotation_orbit(const Real& s, const Real& m, const Real& y0, long steps,
                                            const mpq_class& precision) {
    require_unit_interval(s, "s");
    std::vector<Real> orbit{y0};
    orbit.reserve(static_cast<std::size_t>(steps) + 1);
    Real y = y0;
    for (long i = 0; i < steps; ++i) {
        y = contracted_rotation(s, m, y);
        if (y.error() > 10 * precision) throw PrecisionExhausted("orbit error bound exceeded 10*precision");
        orbit.push_back(y);
    }
    return orbit;
}

std::vector<Real> contracted_rotation_orbit(const UpsilonParams& params, const Real& y0, long steps) {
    check_params(params);
    Real m = delta(staircase_of(params), params.xi, Side::plus);
    return contracted_rotation_orbit(params.s, m, y0, steps, params.precision);
}

NestedImage nested_image(const UpsilonParams& params, long stage) {
    check_params(params);
    const Real& s = params.s;
    Real m = delta(staircase_of(params), params.xi, Side::plus);
    Real one(1);
    std::vector<Arc> arcs{{Real(0), one}};
    // pieces of the arcs that do not cross 0
    auto split = [&](const std::vector<Arc>& in) {
        std::vector<Arc> out;
        for (const Arc& a : in) {
            Real end = a.start + a.length;
            if (end > one) {
                out.push_back({a.start, one - a.start});
                out.push_back({Real(0), end - one});
            } else {
                out.push_back(a);
            }
        }
        return out;
    };
    for (long N = 0; N < stage; ++N) {
        std::vector<Arc> next;
        for (const Arc& a : split(arcs)) next.push_back({contracted_rotation(s, m, a.start), s * a.length});
        arcs = std::move(next);
    }
    NestedImage out;
    out.stage = stage;
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
    out.arcs = arcs;
    std::vector<Arc> pieces = split(arcs);
    std::sort(pieces.begin(), pieces.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        Real end = pieces[i].start + pieces[i].length;
        if (end < pieces[i + 1].start) out.gaps.push_back({end, pieces[i + 1].start});
    }
    return out;
}

NestedCoverComparison compare_nested_with_cover(const UpsilonParams& params, long stage) {
    if (rational_xi(params.xi)) throw DomainError("cover comparison needs irrational xi");
    GapCover cover = cantor_cover(params, stage);
    NestedImage img = nested_image(params, stage);
    NestedCoverComparison out;
    out.same_count = cover.gaps.size() == img.gaps.size();
    if (!out.same_count) return out;
    out.max_discrepancy = 0;
    for (std::size_t i = 0; i < cover.gaps.size(); ++i) {
        out.max_discrepancy = std::max(out.max_discrepancy, distance_bound(cover.gaps[i].left, img.gaps[i].first));
        out.max_discrepancy = std::max(out.max_discrepancy, distance_bound(cover.gaps[i].right, img.gaps[i].second));
    }
    return out;
}

std::vector<long> cover_visits(const UpsilonParams& params, long stage, long steps) {
    GapCover cover = cantor_cover(params, stage);
    if (cover.finite) throw DomainError("cover visits need irrational xi");
    const Real& s = params.s;
    Real m = delta(staircase_of(params), params.xi, Side::plus);
    Real xf = params.xi.fract();
    std::vector<long> visits(cover.gaps.size() + 1, 0);
    // The orbit of 0 sits at Upsilon^+({N xi}), which can lie closer to an integer
    // than any fixed precision resolves.  When the floor is undecidable, the side
    // of the circle is read off the rotation {N xi} tracked alongside.
    Real y(0), x(0);
    for (long N = 1; N <= steps; ++N) {
        Real v = s * (y + m);
        x = (x + xf).fract();
        mpz_class k;
        try {
            k = v.floor();
        } catch (const PrecisionExhausted&) {
            mpz_class near = floor_q(v.upper());
            k = x < Real::frac(1, 2) ? near : mpz_class(near - 1);
        }
        y = v - Real(k);
        if (y.error() > 10 * params.precision) throw PrecisionExhausted("orbit error bound exceeded 10*precision");
        if (N <= stage) continue;
        // interval i lies between gap i-1 and gap i
        // same fallback for endpoints the orbit approaches too closely
        auto beyond = [&](const Gap& g) {
            if (auto sg = (y - g.right).try_sign()) return *sg >= 0;
            return x >= g.at;
        };
        std::size_t i = 0;
        while (i < cover.gaps.size() && beyond(cover.gaps[i])) ++i;
        if (i < cover.gaps.size()) {
            auto sg = (y - cover.gaps[i].left).try_sign();
            if (sg && *sg > 0) throw std::logic_error("internal: orbit point inside a gap");
        }
        ++visits[i];
    }
    return visits;
}

Real du_identity_residual(const UpsilonParams& params, const Real& x) {
    check_params(params);
    if (params.xi.is_exact() && params.xi.fract().try_sign() == 0) throw DomainError("xi must not be an integer");
    if (!(x >= Real(0) && x < Real(1))) throw DomainError("x must lie in [0,1)");
    UpsilonParams sub = with_precision(params, params.precision / 4);
    Real lhs = upsilon(sub, x + params.xi, Side::plus);
    Real rhs = params.s * (upsilon(sub, x, Side::plus) + delta(staircase_of(sub), params.xi, Side::plus));
    return magnitude(lhs - rhs);
}

Real semiconjugacy_g(const UpsilonParams& params, const Real& y) {
    check_params(params);
    if (rational_xi(params.xi)) throw DomainError("semiconjugacy needs irrational xi");
    if (!(y >= Real(0) && y < Real(1))) throw DomainError("y must lie in [0,1)");
    if (y.is_exact() && y.try_sign() == 0) return Real(0);
    UpsilonParams sub = with_precision(params, params.precision / 8);
    // does Upsilon^+(x) stay at or below y?
    auto below = [&](const mpq_class& x) {
        mpq_class prec = sub.precision;
        for (int attempt = 0; attempt < 4; ++attempt) {
            UpsilonParams p = with_precision(sub, prec);
            if (auto sg = (upsilon(p, Real(x), Side::plus) - y).try_sign()) return *sg <= 0;
            prec /= mpq_class(mpz_class(1) << 32);
        }
        return true;
    };
    mpq_class lo = 0, hi = 1;
    while (hi - lo > params.precision) {
        mpq_class mid = (lo + hi) / 2;
        if (below(mid)) lo = mid;
        else hi = mid;
    }
    // y inside one of the larger gaps: the answer is that jump point exactly
    Real xf = params.xi.fract();
    for (long j = 1; j <= 64; ++j) {
        Real at = (Real(j) * xf).fract();
        if (at.upper() < lo - params.precision || at.lower() > hi + params.precision) continue;
        try {
            if (upsilon(sub, at, Side::minus) <= y && y <= upsilon(sub, at, Side::plus)) return at;
        } catch (const PrecisionExhausted&) {
        }
    }
    return Real::ball((lo + hi) / 2, (hi - lo) / 2);
}

}  // namespace hsurf
