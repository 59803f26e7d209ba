#include <doctest.h>

#include <numeric>

#include "hsurf/arith.hpp"
#include "hsurf/staircase.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace hsurf;
namespace oracle = hsurf::oracle;

namespace {

StaircaseParams P(long p, long q) { return StaircaseParams{Real::frac(p, q)}; }
Real golden() { return (Real::sqrt(5) - 1) / 2; }

// Both enclosures hold the true value, so their centers differ by at most the radii.
bool within(const Real& a, const Real& b, const mpq_class& tol) {
    Approx x = a.enclose(200), y = b.enclose(200);
    return abs(x.center - y.center) <= tol && abs(x.center - y.center) <= x.radius + y.radius;
}

}  // namespace

TEST_CASE("delta examples at s=1/2") {
    auto p = P(1, 2);
    CHECK(delta(p, Real(0), Side::minus).str() == "0");
    CHECK(delta(p, Real(0), Side::plus).str() == "1");
    CHECK(delta(p, Real::frac(1, 2), Side::minus).str() == "4/3");
    CHECK(delta(p, Real::frac(1, 2), Side::plus).str() == "5/3");
    CHECK(delta(p, Real(1), Side::minus).str() == "2");
    CHECK(delta(p, Real(1), Side::plus).str() == "3");
}

TEST_CASE("tongue examples") {
    auto t = tongue(P(1, 2), 1, 2);
    CHECK(t.lower.str() == "4/3");
    CHECK(t.upper.str() == "5/3");
    CHECK(t.width.str() == "1/3");
    t = tongue(P(1, 2), 2, 3);
    CHECK(t.lower.str() == "12/7");
    CHECK(t.upper.str() == "13/7");
    CHECK(t.width.str() == "1/7");
    t = tongue(P(1, 2), 0, 1);
    CHECK(t.lower.str() == "0");
    CHECK(t.upper.str() == "1");
    CHECK_THROWS_AS(tongue(P(1, 2), 2, 4), NonReducedFraction);
}

TEST_CASE("oracle: exact values against the summed defining series") {
    for (auto [sp, sq] : {std::pair{1L, 3L}, {1L, 2L}, {2L, 3L}, {9L, 10L}, {3L, 7L}}) {
        mpq_class s(sp, sq);
        for (long n = 1; n <= 12; ++n)
            for (long k = -n; k <= 2 * n; ++k) {
                if (std::gcd(k, n) != 1) continue;
                for (bool plus : {false, true}) {
                    Side side = plus ? Side::plus : Side::minus;
                    mpq_class want = oracle::staircase(s, k, n, plus);
                    Real got = delta(StaircaseParams{Real(s)}, Real(mpq_class(k, n)), side);
                    REQUIRE(got.is_rational());
                    CHECK(got.rational() == want);
                    if (k >= 0) CHECK(delta_ceiling_sum_form(Real(s), k, n, side).rational() == want);
                    if (k >= 1) CHECK(delta_floor_exponent_form(Real(s), k, n, side).rational() == want);
                    if (k > 0 && k < n) CHECK(delta_inverse_power_form(Real(s), k, n, side).rational() == want);
                }
            }
    }
}

TEST_CASE("closed forms reject arguments outside their range") {
    CHECK_THROWS_AS(delta_floor_exponent_form(Real::frac(1, 2), 0, 1, Side::minus), DomainError);
    CHECK_THROWS_AS(delta_inverse_power_form(Real::frac(1, 2), 1, 1, Side::minus), DomainError);
    CHECK_THROWS_AS(delta(StaircaseParams{Real(1)}, Real(0), Side::minus), DomainError);
}

TEST_CASE("gap law holds exactly") {
    for (auto s : {mpq_class(1, 3), mpq_class(1, 2), mpq_class(2, 3), mpq_class(9, 10)}) {
        for (long n = 1; n <= 12; ++n) {
            mpq_class want = oracle::pw(s, n - 2) * (1 - s) * (1 - s) / (1 - oracle::pw(s, n));
            CHECK(tongue_width(Real(s), n).rational() == want);
            for (long k = 0; k < n; ++k) {
                if (std::gcd(k, n) != 1) continue;
                auto t = tongue(StaircaseParams{Real(s)}, k, n);
                CHECK((t.upper - t.lower).rational() == want);
            }
        }
    }
}

TEST_CASE("tongues are disjoint and ordered like their fractions") {
    auto sw = tongue_sweep(P(2, 3), 9, Real(0), Real::frac(3, 2));
    for (std::size_t i = 1; i < sw.tongues.size(); ++i) {
        const auto& a = sw.tongues[i - 1];
        const auto& b = sw.tongues[i];
        CHECK(a.upper < b.lower);
        CHECK(mpq_class(a.k, a.n) < mpq_class(b.k, b.n));
    }
}

TEST_CASE("tongue_sweep examples") {
    auto sw = tongue_sweep(P(1, 2), 2, Real(0), Real(2));
    std::vector<std::string> got;
    for (auto& t : sw.tongues) got.push_back(t.k.get_str() + "/" + std::to_string(t.n));
    CHECK(got == std::vector<std::string>{"0/1", "1/2", "1/1"});

    auto one = tongue_sweep(P(1, 2), 1, Real(0), Real(2));
    CHECK(one.period_sum.str() == "1");
    CHECK(one.defect.str() == "1");

    auto forty = tongue_sweep(P(1, 2), 40, Real(0), Real(2));
    CHECK(forty.defect > Real(0));
    CHECK(forty.defect < Real(mpq_class(1, 1000000000)));
}

TEST_CASE("measure: partial width sums increase toward 1/s from below") {
    for (auto s : {mpq_class(1, 2), mpq_class(2, 3), mpq_class(1, 3)}) {
        mpq_class sum = 0, prev = -1;
        for (long n = 1; n <= 30; ++n) {
            sum += oracle::totient(n) * oracle::pw(s, n - 2) * (1 - s) * (1 - s) / (1 - oracle::pw(s, n));
            auto sw = tongue_sweep(StaircaseParams{Real(s)}, n, Real(0), Real(0));
            CHECK(sw.period_sum.rational() == sum);
            CHECK(sum > prev);
            CHECK(sum < 1 / s);
            prev = sum;
        }
    }
}

TEST_CASE("staircase_samples examples") {
    auto a = staircase_samples(P(2, 3), {Real(0)}, Side::minus);
    REQUIRE(a.size() == 1);
    CHECK(a[0].value.str() == "0");
    auto b = staircase_samples(P(1, 2), {Real::frac(1, 2), Real::frac(2, 3)}, Side::minus);
    CHECK(b[0].value.str() == "4/3");
    CHECK(b[1].value.str() == "12/7");
    Real near = (delta(P(9, 10), Real::frac(1, 2), Side::minus) - Real::frac(1, 2)).abs();
    Real far = (delta(P(1, 2), Real::frac(1, 2), Side::minus) - Real::frac(1, 2)).abs();
    CHECK(near < far);
}

TEST_CASE("limit: |delta(x) - x| shrinks as s -> 1") {
    for (auto x : {Real::frac(1, 2), Real::frac(2, 7), Real(-3), Real::frac(13, 5)}) {
        for (Side side : {Side::minus, Side::plus}) {
            Real prev;
            bool first = true;
            for (auto s : {Real::frac(9, 10), Real::frac(99, 100), Real::frac(999, 1000)}) {
                Real d = (delta(StaircaseParams{s}, x, side) - x).abs();
                if (!first) CHECK(d < prev);
                prev = d;
                first = false;
            }
        }
    }
}

TEST_CASE("property: strict monotonicity on 1000 random pairs") {
    testing::Gen g(201);
    for (int i = 0; i < 1000; ++i) {
        Real s(g.unit_rational(12));
        mpq_class x = g.rational(-3, 3, 40), y = g.rational(-3, 3, 40);
        if (x == y) y += mpq_class(1, 97);
        if (y < x) std::swap(x, y);
        for (Side side : {Side::minus, Side::plus})
            CHECK(delta(StaircaseParams{s}, Real(x), side) < delta(StaircaseParams{s}, Real(y), side));
        // and the jump at a rational sits between the sides
        CHECK(delta(StaircaseParams{s}, Real(x), Side::minus) < delta(StaircaseParams{s}, Real(x), Side::plus));
    }
}

TEST_CASE("property: translation by one adds 1/s exactly") {
    testing::Gen g(202);
    for (int i = 0; i < 300; ++i) {
        Real s(g.unit_rational(15));
        Real x(g.rational(-4, 4, 30));
        for (Side side : {Side::minus, Side::plus}) {
            Real a = delta(StaircaseParams{s}, x + 1, side);
            Real b = delta(StaircaseParams{s}, x, side) + 1 / s;
            CHECK(a.same(b));
        }
    }
    // surd s stays exact too
    Real s = golden();
    Real a = delta(StaircaseParams{s}, Real::frac(4, 3), Side::plus);
    Real b = delta(StaircaseParams{s}, Real::frac(1, 3), Side::plus) + 1 / s;
    CHECK(a.is_exact());
    CHECK(a == b);
}

TEST_CASE("irrational arguments: two series agree within twice the precision") {
    mpq_class prec(1, 1000000000000L);
    for (auto x : {golden(), Real::sqrt(2) - 1, Real::sqrt(3), (Real::sqrt(7) + 1) / 3}) {
        for (auto s : {Real::frac(1, 2), Real::frac(2, 3), Real::frac(1, 3)}) {
            StaircaseParams p{s, prec};
            Real a = delta_defining_series(p, x, Side::plus);
            Real b = delta_exponent_series(p, x);
            CHECK(a.error() <= prec);
            CHECK(within(a, b, 2 * prec));
            Real d = delta(p, x, Side::minus);
            CHECK(d.error() <= prec);
            CHECK(within(d, a, 2 * prec));
        }
    }
}

TEST_CASE("irrational values sit between neighbouring convergent tongues") {
    StaircaseParams p{Real::frac(1, 2), mpq_class(1, 1000000000000L)};
    Real v = delta(p, golden(), Side::plus);
    CHECK(v > tongue(p, 3, 5).upper);
    CHECK(v < tongue(p, 5, 8).lower);
    CHECK(v > tongue(p, 8, 13).upper);
}

TEST_CASE("power_polynomial and with_tail") {
    CHECK(power_polynomial(Real::frac(1, 2), {1, 2, 3}).str() == "11/4");
    Real t = with_tail(Real::frac(1, 3), mpq_class(1, 1000));
    CHECK(t.is_approx());
    CHECK(t.error() >= mpq_class(1, 1000));
    CHECK(t > Real::frac(33, 100));
}
