#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "replikit/eta_catalog.hpp"
#include "replikit/faber.hpp"

using namespace replikit;
using replikit::testing::Gen;

TEST_CASE("low degree polynomials")
{
    QSeries f = catalog_series("2A", 20);
    FaberPoly p1 = faber_poly(f, 1);
    CHECK(p1.b == std::vector<Rational>{1, 0});
    FaberPoly p2 = faber_poly(f, 2);
    CHECK(p2.b == std::vector<Rational>{1, 0, -8744});
    // P_3 = t^3 - 3 a_1 t - 3 a_2
    FaberPoly p3 = faber_poly(f, 3);
    CHECK(p3.b == std::vector<Rational>{1, 0, -3 * 4372, -3 * 96256});
}

TEST_CASE("P_n(f) = q^-n + O(q)")
{
    for (const auto& e : catalog()) {
        QSeries f = catalog_series(e.label, 20);
        for (long n = 1; n <= 8; ++n) {
            QSeries v = faber_apply(faber_poly(f, n), f);
            CHECK(v.coeff(-n) == 1);
            for (long k = -n + 1; k <= 0; ++k)
                CHECK(v.coeff(k) == 0);
        }
    }
}

TEST_CASE("elimination agrees with the recurrence")
{
    Gen gen(11);
    for (int trial = 0; trial < 10; ++trial) {
        QSeries f = gen.normalized(20);
        auto all = faber_polys(f, 10);
        for (long n = 1; n <= 10; ++n) {
            CHECK(all[n] == faber_poly(f, n));
            CHECK(faber_poly_recurrence(f, n) == all[n]);
        }
    }
}

TEST_CASE("half conjugate: P_{n,g}(g) = (-1)^n P_{n,f}(f(z+1/2))")
{
    Gen gen(12);
    for (int trial = 0; trial < 10; ++trial) {
        QSeries f = gen.normalized(20);
        QSeries g = q_twist(f, Twist::half_conjugate);
        QSeries shifted = q_twist(f, Twist::shift_half);
        for (long n = 1; n <= 6; ++n) {
            QSeries a = faber_apply(faber_poly(g, n), g);
            QSeries b = faber_apply(faber_poly(f, n), shifted);
            if (n % 2)
                b = -b;
            CHECK_FALSE(first_difference(a, b, -n, std::min(a.prec(), b.prec())));
        }
    }
}

TEST_CASE("preconditions")
{
    QSeries f = Rational(2) * QSeries::normalized_from({0, 1, 2, 3});
    CHECK_THROWS_AS(faber_poly(f, 2), PreconditionError);
    QSeries g = QSeries::normalized_from({0, 1, 2});
    CHECK_THROWS_AS(faber_poly(g, 5), PrecisionExceeded);
}
