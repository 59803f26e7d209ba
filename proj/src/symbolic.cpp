#include "hsurf/symbolic.hpp"

#include <numeric>

#include "hsurf/arith.hpp"

namespace hsurf {

namespace {

void require_xi(const Real& xi) {
    if (xi.sign() <= 0 || xi >= Real(1)) throw DomainError("xi must lie in (0,1), got " + xi.str());
}

// |w^j|_A for j = 0..len
long a_count(const Real& xi_plus_one, long j) { return (Real(j) / xi_plus_one).floor().get_si(); }

Real inv_pow(const Real& s, long e) { return (Real(1) / s).pow(e); }

}  // namespace

long CuttingWord::lambda(long i) const {
    if (i < 1) throw DomainError("lambda index starts at 1");
    return (Real(i - 1) / xi).floor().get_si();
}

CuttingWord canonical_word(const Real& xi, long length) {
    require_xi(xi);
    if (length < 0) throw DomainError("word length must be nonnegative");
    CuttingWord out;
    out.xi = xi;
    if (xi.is_rational()) {
        const mpq_class& q = xi.rational();
        out.letters = rational_word(q.get_num(), q.get_den().get_si());
        out.complete = true;
        return out;
    }
    Real x1 = xi + Real(1);
    long prev = 0;
    for (long j = 1; j <= length; ++j) {
        long a = a_count(x1, j);
        out.letters += a > prev ? 'A' : 'B';
        prev = a;
    }
    return out;
}

std::string rational_word(const mpz_class& k, long n) {
    if (n < 1 || k < 0 || k >= n) throw DomainError("rational word needs 0 <= k < n");
    if (gcd(k, mpz_class(n)) != 1) throw NonReducedFraction(k.get_str() + "/" + std::to_string(n) + " is not reduced");
    mpz_class total = k + n;
    std::string w;
    mpz_class prev = 0;
    for (mpz_class j = 1; j <= total; ++j) {
        mpz_class a = j * n / total;  // floor(j/(xi+1)) = floor(jn/(k+n))
        w += a > prev ? 'A' : 'B';
        prev = a;
    }
    return w;
}

long lambda_count(const std::string& w, long i) {
    long seen_b = 0, a = 0;
    for (char c : w) {
        if (c == 'A') ++a;
        else if (c == 'B' && ++seen_b == i) return a;
    }
    throw DomainError("word has fewer than " + std::to_string(i) + " B's");
}

static void require_ab(const std::string& w) {
    for (char c : w)
        if (c != 'A' && c != 'B') throw DomainError("stacking diagrams take words over {A,B}");
}

StackingDiagram stacking_diagram(const std::string& w, const Real& s) {
    require_unit_interval(s, "s");
    require_ab(w);
    StackingDiagram out{w, s, {}};
    Real x(1), y_b(0);  // y = s^-a + sum over B's of s^-lambda(i)
    long a = 0;
    out.boxes.push_back({Real(1), Real(1)});
    for (char c : w) {
        if (c == 'A') {
            x += inv_pow(s, a);
            ++a;
        } else {
            y_b += inv_pow(s, a);
        }
        out.boxes.push_back({x, inv_pow(s, a) + y_b});
    }
    return out;
}

StackingDiagram stacking_diagram_incremental(const std::string& w, const Real& s) {
    require_unit_interval(s, "s");
    require_ab(w);
    StackingDiagram out{w, s, {}};
    Real left = Real(1) - s, bottom(0), width = s, height(1);
    out.boxes.push_back({left + width, bottom + height});
    for (char c : w) {
        if (c == 'A') {
            left += width;
            width /= s;
            height /= s;
        } else {
            bottom += height;
        }
        out.boxes.push_back({left + width, bottom + height});
    }
    return out;
}

CrossingReport verify_crossings(const Real& s, const Real& xi, long j_max, const mpq_class& precision) {
    require_unit_interval(s, "s");
    require_xi(xi);
    if (j_max < 0) throw DomainError("j_max must be nonnegative");
    CrossingReport rep;
    StaircaseParams params{s, precision};
    std::string w;
    long last = j_max;
    if (xi.is_rational()) {
        rep.rational = true;
        const mpq_class& q = xi.rational();
        Tongue t = tongue(params, q.get_num(), q.get_den().get_si());
        rep.m_minus = t.lower;
        rep.m_plus = t.upper;
        w = rational_word(q.get_num(), q.get_den().get_si());
        last = std::min<long>(j_max, static_cast<long>(w.size()) - 1);
    } else {
        rep.m_minus = rep.m_plus = delta(params, xi, Side::plus);
        w = canonical_word(xi, j_max + 1).letters;
    }
    StackingDiagram diagram = stacking_diagram(w.substr(0, last), s);
    const Real one(1), base_x = one - s;
    for (long j = 0; j <= last; ++j) {
        CrossingRow row;
        row.j = j;
        row.x = diagram.boxes[j].x;
        row.y = diagram.boxes[j].y;
        row.y_minus = rep.m_minus * (row.x - base_x) + one;
        row.y_plus = rep.m_plus * (row.x - base_x) + s;
        bool meeting = rep.rational && j == static_cast<long>(w.size()) - 1;
        row.next = meeting ? 0 : w[j];
        try {
            if (meeting) {
                row.meeting = true;
                if (row.y_minus != row.y || row.y_plus != row.y)
                    throw CrossingAssertion(j, "lines from both ends of E miss the corner " + row.x.str() + "," + row.y.str());
            } else if (row.next == 'A') {
                if (!(row.y_minus < row.y)) throw CrossingAssertion(j, "y- >= y before an A");
            } else if (!(row.y_plus > row.y)) {
                throw CrossingAssertion(j, "y+ <= y before a B");
            }
        } catch (const PrecisionExhausted& e) {
            throw CrossingAssertion(j, std::string("undecided at this precision: ") + e.what());
        }
        rep.rows.push_back(row);
    }
    return rep;
}

ClosedOrbitStart closed_orbit_y0(const Real& s, const mpz_class& k, long n, const Real& m) {
    require_unit_interval(s, "s");
    if (n < 1 || k < 0 || k >= n) throw DomainError("closed orbits are indexed by 0 <= k/n < 1");
    if (gcd(k, mpz_class(n)) != 1) throw NonReducedFraction(k.get_str() + "/" + std::to_string(n) + " is not reduced");
    Tongue t = tongue(StaircaseParams{s}, k, n);
    if (!(t.lower < m && m < t.upper))
        throw SlopeOutsideTongue("slope " + m.str() + " is not inside the " + k.get_str() + "/" + std::to_string(n) +
                                 " tongue (" + t.lower.str() + ", " + t.upper.str() + ")");
    const Real one(1);
    Real sum(0);
    for (mpz_class l = 1; l <= k; ++l) {
        mpz_class e = (l - 1) * n / k;
        sum += inv_pow(s, e.get_si());
    }
    Real sn = s.pow(n);
    ClosedOrbitStart out;
    out.y0_short = s * s * m / (one - s) - sn / (one - sn) * sum;
    out.y0_aiet = out.y0_short / s;
    return out;
}

namespace {

std::string ab_only(const TraceResult& r) {
    std::string w;
    for (const auto& e : r.events)
        if (e.label == 'A' || e.label == 'B') w += e.label;
    return w;
}

// Letters of the torus word forced for every xi in the open interval (lo, hi).
std::string forced_prefix(const mpq_class& lo, const mpq_class& hi, long length) {
    std::string w;
    mpz_class prev = 0;
    for (long j = 1; j <= length; ++j) {
        mpz_class most = ceil_q(mpq_class(j) / (lo + 1)) - 1;
        mpz_class least = floor_q(mpq_class(j) / (hi + 1));
        if (most != least) break;
        w += least > prev ? 'A' : 'B';
        prev = least;
    }
    return w;
}

long cyclic_offset(const std::string& s, const std::string& w) {
    for (std::size_t o = 0; o + w.size() <= s.size(); ++o) {
        bool ok = true;
        for (std::size_t i = o; i < s.size() && ok; ++i) ok = s[i] == w[(i - o) % w.size()];
        if (ok) return static_cast<long>(o);
    }
    return -1;
}

}  // namespace

CuttingComparison compare_cutting_sequences(const SurfaceSpec& spec, const Real& m, long horizon, long depth) {
    if (horizon < 1) throw DomainError("horizon must be positive");
    CuttingComparison out;
    const Real& s = spec.plus.s;
    try {
        out.verdict = classify_direction(spec, m, depth);
    } catch (const DepthExhausted& e) {
        // an enclosure too coarse to finish the descent still pins a word prefix
        out.undecided = true;
        out.verdict.kind = VerdictKind::CantorLamination;
        out.verdict.s = s;
        out.verdict.slope = m;
        out.verdict.normal = normalize_slope(s, m - spec.plus.twist_u / s);
        out.verdict.xi_lo = e.xi_lo;
        out.verdict.xi_hi = e.xi_hi;
        out.verdict.certificate = e.what();
        StaircaseParams params{s};
        out.verdict.slope_lo = tongue(params, e.xi_lo.get_num(), e.xi_lo.get_den().get_si()).upper;
        out.verdict.slope_hi = tongue(params, e.xi_hi.get_num(), e.xi_hi.get_den().get_si()).lower;
    }
    const ClassifiedDirection& v = out.verdict;
    // trace in the normalized direction so the torus word applies
    Real slope = v.normal.slope + spec.plus.twist_u / s;

    std::vector<std::pair<std::string, TrajectoryState>> starts;
    auto add = [&](const std::string& name, Edge e, const Real& c) {
        TrajectoryState st;
        st.chamber = Chamber::plus;
        st.edge = e;
        st.coord = c;
        st.slope = slope;
        starts.emplace_back(name, st);
    };
    add("E:0", Edge::E, Real(0));
    add("E:1", Edge::E, Real(1));
    add("A:0", Edge::A_long, Real(0));
    for (int i = 1; i <= 3; ++i) add("A:" + std::to_string(i) + "/4", Edge::A_long, Real::frac(i, 4));
    if (v.kind == VerdictKind::AttractingCycle) add("A_short:y0", Edge::A_short, v.y0);

    if (v.kind == VerdictKind::CantorLamination) {
        out.torus_word = forced_prefix(v.xi_lo, v.xi_hi, horizon * 8);
    } else {
        out.torus_word = rational_word(v.k, v.n);
        out.torus_cyclic = true;
    }

    for (const auto& [name, st] : starts) {
        LaunchComparison lc;
        lc.launch = name;
        TraceResult r;
        for (long cap = horizon;; cap *= 2) {
            try {
                r = trace(spec, st, cap);
            } catch (const PrecisionExhausted&) {
                lc.precision_exhausted = true;
                break;
            }
            if (r.status != TraceStatus::MaxReached || static_cast<long>(ab_only(r).size()) >= horizon) break;
        }
        lc.surface_word = ab_only(r).substr(0, static_cast<std::size_t>(horizon));
        lc.singular = r.status == TraceStatus::HitSingularity;
        const std::string& sw = lc.surface_word;
        bool from_e = name[0] == 'E';
        if (out.torus_cyclic) {
            if (lc.singular) {
                // a finite word only has to occur somewhere in the periodic torus word
                std::string rep;
                while (rep.size() < sw.size() + out.torus_word.size()) rep += out.torus_word;
                lc.offset = rep.find(sw) != std::string::npos ? 0 : -1;
            } else {
                lc.offset = cyclic_offset(sw, out.torus_word);
            }
        } else if (from_e) {
            std::size_t len = std::min(sw.size(), out.torus_word.size());
            lc.offset = sw.compare(0, len, out.torus_word, 0, len) == 0 ? 0 : -1;
        } else {
            // a Sturmian tail is a factor of the characteristic word
            for (std::size_t o = 0; 2 * (sw.size() - o) >= sw.size() && o < sw.size(); ++o)
                if (out.torus_word.find(sw.substr(o)) != std::string::npos) {
                    lc.offset = static_cast<long>(o);
                    break;
                }
        }
        lc.agrees = lc.offset >= 0;
        out.launches.push_back(lc);
    }
    return out;
}

}  // namespace hsurf
