#include "hsurf/continued_fraction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hsurf {

namespace {

constexpr std::size_t kPeriodSearchCap = 20000;

// (P_i, Q_i) with the i = -1 seed.
std::pair<mpz_class, mpz_class> pq(const std::vector<Convergent>& cs, long i) {
    if (i == -1) return {mpz_class(1), mpz_class(0)};
    return {cs.at(static_cast<std::size_t>(i)).P, cs.at(static_cast<std::size_t>(i)).Q};
}

long available_index(const ContinuedFraction& cf, long want) {
    if (cf.periodic() || !cf.terminates) {
        long have = static_cast<long>(cf.quotients.size());
        return cf.periodic() ? want : std::min(want, have);
    }
    return std::min(want, static_cast<long>(cf.last_index()));
}

}  // namespace

bool ContinuedFraction::has(std::size_t i) const {
    if (i == 0 || i <= quotients.size()) return true;
    return periodic();
}

mpz_class ContinuedFraction::a(std::size_t i) const {
    if (i == 0) return a0;
    std::size_t idx = i - 1;
    if (idx < quotients.size()) return quotients[idx];
    if (!periodic()) throw DomainError("continued fraction index beyond available quotients");
    std::size_t ps = *period_start;
    return quotients[ps + (idx - ps) % period_length];
}

ContinuedFraction cf_expand(const Real& x, std::size_t max_terms) {
    ContinuedFraction cf;
    if (x.is_exact()) cf.exact_source = x;
    cf.a0 = x.floor();
    Real r = x - Real(cf.a0);

    if (x.is_rational()) {
        while (r.rational() != 0 && cf.quotients.size() < max_terms) {
            Real cur = Real(1) / r;
            mpz_class a = cur.floor();
            cf.quotients.push_back(a);
            r = cur - Real(a);
        }
        cf.terminates = r.rational() == 0;
        return cf;
    }

    if (x.is_surd()) {
        std::map<std::string, std::size_t> seen;  // complete quotient -> its index i >= 1
        std::size_t cap = std::max(max_terms, kPeriodSearchCap);
        for (std::size_t i = 1; i <= cap; ++i) {
            Real cur = Real(1) / r;
            std::string key = cur.str();
            auto it = seen.find(key);
            if (it != seen.end()) {
                cf.period_start = it->second - 1;
                cf.period_length = i - it->second;
                return cf;
            }
            seen.emplace(key, i);
            mpz_class a = cur.floor();
            cf.quotients.push_back(a);
            r = cur - Real(a);
        }
        return cf;
    }

    // Certified expansion of an enclosure: floor() throws when undecidable.
    while (cf.quotients.size() < max_terms) {
        Real cur = Real(1) / r;
        mpz_class a = cur.floor();
        cf.quotients.push_back(a);
        r = cur - Real(a);
    }
    return cf;
}

mpq_class cf_fold(const ContinuedFraction& cf) {
    if (!cf.terminates) throw DomainError("cf_fold needs a terminating expansion");
    if (cf.quotients.empty()) return mpq_class(cf.a0);
    mpq_class v(cf.quotients.back());
    for (std::size_t k = cf.quotients.size() - 1; k-- > 0;) v = mpq_class(cf.quotients[k]) + 1 / v;
    return mpq_class(cf.a0) + 1 / v;
}

ContinuedFraction cf_with_even_end(const ContinuedFraction& cf) {
    if (!cf.terminates || cf.last_index() % 2 == 0) return cf;
    ContinuedFraction out = cf;
    mpz_class last = out.quotients.back();
    if (last >= 2) {
        out.quotients.back() = last - 1;
        out.quotients.push_back(mpz_class(1));
    } else {
        // trailing 1 folds into its predecessor
        out.quotients.pop_back();
        if (out.quotients.empty()) {
            out.a0 += 1;
        } else {
            out.quotients.back() += 1;
        }
    }
    return out;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t upto) {
    std::vector<Convergent> out;
    mpz_class Pm1 = 1, Qm1 = 0;
    mpz_class P = cf.a0, Q = 1;
    out.push_back({0, P, Q});
    for (std::size_t i = 1; i <= upto; ++i) {
        if (!cf.has(i)) throw DomainError("convergent index " + std::to_string(i) + " beyond available quotients");
        mpz_class a = cf.a(i);
        mpz_class Pn = a * P + Pm1, Qn = a * Q + Qm1;
        Pm1 = P;
        Qm1 = Q;
        P = Pn;
        Q = Qn;
        out.push_back({static_cast<long>(i), P, Q});
    }
    return out;
}

ShiftedRelationReport shifted_convergent_relations(const Real& xi, std::size_t upto) {
    if (!(xi > Real(0) && xi < Real(1))) throw DomainError("shifted_convergent_relations needs 0 < xi < 1");
    ContinuedFraction c0 = cf_expand(xi, upto + 3);
    ContinuedFraction c1 = cf_expand(Real(1) / (xi + Real(1)), upto + 3);
    ContinuedFraction c2 = cf_expand(xi / (xi + Real(1)), upto + 3);
    long want = static_cast<long>(upto);
    long n0 = available_index(c0, want), n1 = available_index(c1, want), n2 = available_index(c2, want);
    auto v0 = convergents(c0, static_cast<std::size_t>(n0));
    auto v1 = convergents(c1, static_cast<std::size_t>(n1));
    auto v2 = convergents(c2, static_cast<std::size_t>(n2));

    ShiftedRelationReport rep;
    for (long i = 0; i <= want; ++i) {
        ShiftedRelationRow row{static_cast<std::size_t>(i), true, true, false, false};
        if (i <= n1 && i - 1 <= n0) {
            auto [Pp, Qp] = pq(v1, i);
            auto [P, Q] = pq(v0, i - 1);
            row.prime_checked = true;
            row.prime_ok = (Pp == Q) && (Qp == P + Q);
        }
        if (i <= n2 && i <= n0) {
            auto [Ppp, Qpp] = pq(v2, i);
            auto [P, Q] = pq(v0, i);
            row.double_prime_checked = true;
            row.double_prime_ok = (Ppp == P) && (Qpp == P + Q);
        }
        if (!row.prime_checked && !row.double_prime_checked) continue;
        rep.all_pass = rep.all_pass && row.prime_ok && row.double_prime_ok;
        rep.rows.push_back(row);
    }
    return rep;
}

std::pair<std::vector<long>, std::vector<long>> predicted_near_approach_indices(const ContinuedFraction& cf, long j_max) {
    std::set<long> zero{1}, one{1};
    mpz_class Qm2 = 1, Qm1 = 0;  // Q_{-2}, Q_{-1}
    for (std::size_t i = 0; cf.has(i) && Qm2 <= j_max; ++i) {
        mpz_class a = cf.a(i);
        std::set<long>& dst = (i % 2 == 0) ? zero : one;
        if (Qm1 == 0) {
            if (Qm2 >= 1 && Qm2 <= j_max) dst.insert(Qm2.get_si());
        } else {
            for (mpz_class alpha = 0; alpha <= a; ++alpha) {
                mpz_class j = Qm2 + alpha * Qm1;
                if (j > j_max) break;
                if (j >= 1) dst.insert(j.get_si());
            }
        }
        mpz_class Qi = a * Qm1 + Qm2;
        Qm2 = Qm1;
        Qm1 = Qi;
        if (i > 0 && Qm2 > j_max) break;
    }
    return {std::vector<long>(zero.begin(), zero.end()), std::vector<long>(one.begin(), one.end())};
}

NearApproachReport near_approaches(const Real& x, long j_max) {
    if (!(x > Real(0))) throw DomainError("near_approaches needs x > 0");
    NearApproachReport rep;
    Real lo, hi;
    for (long j = 1; j <= j_max; ++j) {
        Real r = (Real(j) * x).fract();
        if (j == 1 || r < lo) {
            rep.to_zero.push_back({j, r});
            lo = r;
        }
        if (j == 1 || r > hi) {
            rep.to_one.push_back({j, r});
            hi = r;
        }
    }

    try {
        ContinuedFraction cf = cf_expand(x, 200);
        if (cf.terminates) cf = cf_with_even_end(cf);
        bool enough = cf.terminates || cf.periodic();
        if (!enough) enough = convergents(cf, cf.quotients.size()).back().Q > j_max;
        if (enough) {
            auto [z, o] = predicted_near_approach_indices(cf, j_max);
            std::vector<long> gz, go;
            for (auto& e : rep.to_zero) gz.push_back(e.j);
            for (auto& e : rep.to_one) go.push_back(e.j);
            rep.rule_checked = true;
            rep.rule_agrees = (gz == z) && (go == o);
        }
    } catch (const PrecisionExhausted&) {
        rep.rule_checked = false;
    }
    return rep;
}

}  // namespace hsurf
