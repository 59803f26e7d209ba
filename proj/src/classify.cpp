#include "hsurf/symbolic.hpp"

#include "hsurf/arith.hpp"

namespace hsurf {

const char* verdict_name(VerdictKind v) {
    switch (v) {
        case VerdictKind::AttractingCycle: return "AttractingCycle";
        case VerdictKind::SaddleConnection: return "SaddleConnection";
        case VerdictKind::CantorLamination: return "CantorLamination";
        case VerdictKind::Vertical: return "Vertical";
    }
    return "?";
}

namespace {

std::string frac_str(const mpq_class& q) { return q.get_str(); }

// Longest common CF prefix over both finite expansions of each endpoint.
ContinuedFraction common_prefix(const mpq_class& lo, const mpq_class& hi) {
    auto forms = [](const mpq_class& q) {
        ContinuedFraction cf = cf_expand(Real(q), 4096);
        std::vector<std::vector<mpz_class>> out;
        std::vector<mpz_class> a{cf.a0};
        a.insert(a.end(), cf.quotients.begin(), cf.quotients.end());
        out.push_back(a);
        if (a.size() > 1 || a.back() > 1) {
            std::vector<mpz_class> b = a;
            b.back() -= 1;
            b.push_back(1);
            out.push_back(b);
        }
        return out;
    };
    std::vector<mpz_class> best;
    for (const auto& x : forms(lo))
        for (const auto& y : forms(hi)) {
            std::size_t i = 0;
            while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
            if (i > best.size()) best.assign(x.begin(), x.begin() + static_cast<long>(i));
        }
    ContinuedFraction out;
    if (!best.empty()) {
        out.a0 = best[0];
        out.quotients.assign(best.begin() + 1, best.end());
    }
    return out;
}

}  // namespace

ClassifiedDirection classify_slope(const Real& s, const Real& m, long depth) {
    require_unit_interval(s, "s");
    if (depth < 1) throw DomainError("depth must be at least 1");
    ClassifiedDirection out;
    out.s = s;
    out.slope = m;
    out.normal = normalize_slope(s, m);
    const Real& v = out.normal.slope;
    StaircaseParams params{s};
    mpq_class left(0), right(1);
    std::string cert;
    mpz_class k = 0;
    long n = 1;
    for (long step = 1; step <= depth; ++step) {
        Tongue t = tongue(params, k, n);
        std::string node = k.get_str() + "/" + std::to_string(n);
        int lo, hi;
        try {
            lo = compare(v, t.lower);
            hi = lo <= 0 ? -1 : compare(v, t.upper);
        } catch (const PrecisionExhausted&) {
            throw DepthExhausted(left, right, "slope too close to the " + node + " tongue to decide");
        }
        out.depth = step;
        if (!cert.empty()) cert += "; ";
        if (lo == 0 || hi == 0) {
            out.kind = VerdictKind::SaddleConnection;
            out.k = k;
            out.n = n;
            out.side = lo == 0 ? Side::minus : Side::plus;
            out.certificate = cert + node + ": m = " + (lo == 0 ? "lower " + t.lower.str() : "upper " + t.upper.str());
            return out;
        }
        if (lo > 0 && hi < 0) {
            out.kind = VerdictKind::AttractingCycle;
            out.k = k;
            out.n = n;
            out.y0 = closed_orbit_y0(s, k, n, v).y0_short;
            out.scaling = s.pow(n);
            out.certificate = cert + node + ": " + t.lower.str() + " < m < " + t.upper.str();
            return out;
        }
        mpq_class node_q(k, n);
        if (lo < 0) {
            right = node_q;
            cert += node + ": m < " + t.lower.str();
        } else {
            left = node_q;
            cert += node + ": m > " + t.upper.str();
        }
        // next Stern-Brocot node strictly between left and right (0/1 is the root, then 1/2)
        mpz_class nk = left.get_num() + right.get_num();
        mpz_class nn = left.get_den() + right.get_den();
        k = nk;
        n = nn.get_si();
    }
    out.kind = VerdictKind::CantorLamination;
    out.xi_lo = left;
    out.xi_hi = right;
    out.slope_lo = tongue(params, left.get_num(), left.get_den().get_si()).upper;
    out.slope_hi = tongue(params, right.get_num(), right.get_den().get_si()).lower;
    out.cf_prefix = common_prefix(left, right);
    out.certificate = cert + "; xi in (" + frac_str(left) + ", " + frac_str(right) + ")";
    return out;
}

namespace {

ClassifiedDirection vertical_verdict(const Real& s) {
    ClassifiedDirection out;
    out.kind = VerdictKind::Vertical;
    out.s = s;
    out.certificate = "vertical direction";
    return out;
}

}  // namespace

ClassifiedDirection classify_direction(const SurfaceSpec& spec, const std::optional<Real>& m, long depth) {
    if (!m) return vertical_verdict(spec.plus.s);
    ClassifiedDirection out = classify_slope(spec.plus.s, *m - spec.plus.twist_u / spec.plus.s, depth);
    out.slope = *m;
    return out;
}

ClassifiedDirection classify_backward(const SurfaceSpec& spec, const std::optional<Real>& m, long depth) {
    if (!m) return vertical_verdict(spec.minus.s);
    ClassifiedDirection out = classify_slope(spec.minus.s, *m - spec.minus.twist_u / spec.minus.s, depth);
    out.slope = *m;
    return out;
}

}  // namespace hsurf
