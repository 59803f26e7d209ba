#include <doctest.h>

#include "hsurf/real.hpp"
#include "support/gen.hpp"

using hsurf::Approx;
using hsurf::Real;
using hsurf::Surd;

TEST_CASE("rationals are stored in lowest terms") {
    Real x(mpq_class(6, -8));
    REQUIRE(x.is_rational());
    CHECK(x.rational().get_num() == -3);
    CHECK(x.rational().get_den() == 4);
    CHECK(x.str() == "-3/4");
    CHECK(Real::frac(10, 5).str() == "2");
    CHECK_THROWS_AS(Real::frac(1, 0), hsurf::DomainError);
}

TEST_CASE("surd normalization") {
    CHECK(Real(Surd{mpq_class(1), mpq_class(0), mpz_class(5)}).is_rational());
    // sqrt(12) = 2 sqrt 3
    Real r = Real::sqrt(12);
    REQUIRE(r.is_surd());
    CHECK(r.surd().d == 3);
    CHECK(r.surd().b == 2);
    CHECK(Real::sqrt(mpq_class(9, 4)).str() == "3/2");
    CHECK_THROWS_AS(Real::sqrt(-1), hsurf::DomainError);
}

TEST_CASE("golden ratio identities are exact") {
    Real g = (Real::sqrt(5) - 1) / 2;
    CHECK(g.is_surd());
    CHECK((g * g + g).str() == "1");
    CHECK((1 / g - g).str() == "1");
    CHECK(g.floor() == 0);
    CHECK((g * 100).floor() == 61);
    CHECK((-g).floor() == -1);
    CHECK((-g).fract() == 1 - g);
    CHECK(g < Real::frac(5, 8));
    CHECK(g > Real::frac(8, 13));
}

TEST_CASE("mixing radicands demotes to an enclosure") {
    Real x = Real::sqrt(2) + Real::sqrt(3);
    REQUIRE(x.is_approx());
    CHECK(x.error() > 0);
    CHECK(x.error() < mpq_class(1, 1000000000));
    mpq_class truth_lo("3146264369/1000000000"), truth_hi("3146264370/1000000000");
    CHECK(x > Real(truth_lo));
    CHECK(x < Real(truth_hi));
}

TEST_CASE("undecidable comparisons throw") {
    Real b = Real::ball(mpq_class(1, 2), mpq_class(1, 1024));
    CHECK_THROWS_AS((void)(b < Real::frac(1, 2)), hsurf::PrecisionExhausted);
    CHECK_THROWS_AS((void)Real::ball(1, mpq_class(1, 16)).floor(), hsurf::PrecisionExhausted);
    CHECK(b < Real(1));
    CHECK(b.floor() == 0);
    CHECK_THROWS_AS(Real(1) / Real::ball(0, mpq_class(1, 8)), hsurf::PrecisionExhausted);
}

TEST_CASE("fractional part convention for negatives") {
    CHECK(Real::frac(-1, 3).fract().str() == "2/3");
    CHECK(Real(-2).fract().str() == "0");
}

TEST_CASE("parsing") {
    CHECK(Real::parse("3/4").str() == "3/4");
    CHECK(Real::parse("-2").str() == "-2");
    CHECK(Real::parse("0.25").str() == "1/4");
    CHECK(Real::parse("1e-3").str() == "1/1000");
    CHECK(Real::parse("(sqrt5-1)/2") == (Real::sqrt(5) - 1) / 2);
    CHECK(Real::parse("1+2sqrt3") == 1 + 2 * Real::sqrt(3));
    CHECK(Real::parse("sqrt(8)") == 2 * Real::sqrt(2));
    CHECK_THROWS_AS(Real::parse("1/"), hsurf::DomainError);
    CHECK_THROWS_AS(Real::parse("abc"), hsurf::DomainError);
}

TEST_CASE("exact text round-trips through the parser") {
    hsurf::testing::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        Real a(g.rational(-5, 5, 50));
        Real x = a + Real(g.rational(-3, 3, 20)) * Real::sqrt(g.integer(2, 30));
        CHECK(Real::parse(x.str()).same(x));
    }
}

TEST_CASE("decimal rendering") {
    CHECK(Real::frac(1, 3).decimal(5) == "0.33333");
    CHECK(Real::frac(-2, 3).decimal(3) == "-0.667");
    CHECK(hsurf::dyadic_decimal(mpq_class(3, 8)) == "0.375");
    CHECK_THROWS_AS(hsurf::dyadic_decimal(mpq_class(1, 3)), hsurf::DomainError);
}

TEST_CASE("floor_log2 and pow") {
    CHECK(hsurf::floor_log2(mpq_class(1, 3)) == -2);
    CHECK(hsurf::floor_log2(mpq_class(8)) == 3);
    CHECK(hsurf::floor_log2(mpq_class(7)) == 2);
    CHECK(Real::frac(2, 3).pow(-3).str() == "27/8");
    CHECK(Real::sqrt(2).pow(6).str() == "8");
}

// Enclosures must contain the exact result of the same computation.
TEST_CASE("property: ball arithmetic encloses exact arithmetic") {
    hsurf::testing::Gen g(7);
    for (int i = 0; i < 500; ++i) {
        mpq_class a = g.rational(-4, 4, 60), b = g.rational(-4, 4, 60);
        if (b == 0) b = 1;
        mpq_class ra(1, 1L << g.integer(20, 60)), rb(1, 1L << g.integer(20, 60));
        Real A = Real::ball(a, ra), B = Real::ball(b, rb);
        mpq_class exact[4] = {a + b, a - b, a * b, a / b};
        Real got[4] = {A + B, A - B, A * B, A / B};
        for (int k = 0; k < 4; ++k) {
            const Approx& e = got[k].approx();
            CHECK(abs(e.center - exact[k]) <= e.radius);
        }
    }
}

TEST_CASE("property: surd field operations agree with enclosures") {
    hsurf::testing::Gen g(8);
    for (int i = 0; i < 300; ++i) {
        static const long ds[] = {2, 3, 5, 6, 7, 10, 11, 13};
        long d = ds[g.integer(0, 7)];
        Real x = Real(g.rational(-3, 3, 30)) + Real(g.rational(-3, 3, 30)) * Real::sqrt(d);
        Real y = Real(g.rational(-3, 3, 30)) + Real(g.rational(1, 3, 30)) * Real::sqrt(d);
        Approx ex = x.enclose(100), ey = y.enclose(100);
        Real bx = Real::ball(ex.center, ex.radius + mpq_class(1, 1) / (mpz_class(1) << 100));
        Real by = Real::ball(ey.center, ey.radius + mpq_class(1, 1) / (mpz_class(1) << 100));
        for (auto [exact, approx] : {std::pair{x + y, bx + by}, std::pair{x * y, bx * by}, std::pair{x / y, bx / by}}) {
            REQUIRE(exact.is_exact());
            Approx e = exact.enclose(100);
            CHECK(abs(e.center - approx.approx().center) <= e.radius + approx.approx().radius);
        }
    }
}
