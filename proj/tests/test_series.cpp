#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "replikit/qseries.hpp"
#include "replikit/report.hpp"

using namespace replikit;
using replikit::testing::Gen;

namespace {

bool agree(const QSeries& a, const QSeries& b, long lo, long hi) { return !first_difference(a, b, lo, hi); }

} // namespace

TEST_CASE("construction and precision")
{
    QSeries f = QSeries::normalized_from({0, 4372, 96256});
    CHECK(f.floor() == -1);
    CHECK(f.prec() == 3);
    CHECK(f.coeff(-1) == 1);
    CHECK(f.coeff(0) == 0);
    CHECK(f.coeff(2) == 96256);
    CHECK_THROWS_AS(f.coeff(3), PrecisionExceeded);
    CHECK(f.normalized());

    QSeries z = QSeries::zero(10);
    CHECK(z.is_zero());
    CHECK(z.floor() == 10);
    CHECK(QSeries::constant(5).coeff(1000) == 0);
    CHECK_THROWS_AS(f.truncated(5), PrecisionExceeded);
}

TEST_CASE("product precision is min(P_f + l_g, P_g + l_f)")
{
    QSeries f = QSeries::normalized_from({0, 1, 2, 3, 4}); // floor -1, prec 5
    QSeries g = QSeries::monomial(2, 1, 8) + QSeries::monomial(3, 1, 8);
    QSeries h = f * g;
    CHECK(h.prec() == std::min(5 + 2, 8 - 1));
    CHECK(h.coeff(1) == 1);
    CHECK(h.coeff(2) == 1);
}

TEST_CASE("ring laws on random series")
{
    Gen gen(1);
    for (int trial = 0; trial < 25; ++trial) {
        QSeries a = gen.series(), b = gen.series(), c = gen.series();
        QSeries ab_c = (a * b) * c, a_bc = a * (b * c);
        long hi = std::min(ab_c.prec(), a_bc.prec());
        CHECK(agree(ab_c, a_bc, -6, hi));
        QSeries ab = a * b, ba = b * a;
        CHECK(agree(ab, ba, -4, ab.prec()));
        QSeries lhs = a * (b + c), rhs = a * b + a * c;
        CHECK(agree(lhs, rhs, -4, std::min(lhs.prec(), rhs.prec())));
        QSeries zero = a - a;
        CHECK(zero.is_zero());
    }
}

TEST_CASE("inverse")
{
    Gen gen(2);
    for (int trial = 0; trial < 10; ++trial) {
        QSeries f = gen.series(15);
        QSeries one = f * inverse(f);
        CHECK(agree(one, QSeries::constant(1), 0, one.prec()));
    }
    CHECK_THROWS(inverse(QSeries::zero(10)));
}

TEST_CASE("U and V operators")
{
    Gen gen(3);
    for (int trial = 0; trial < 20; ++trial) {
        QSeries f = gen.series(20);
        long a = gen.integer(1, 5);
        QSeries back = u_operator(v_operator(f, a), a);
        CHECK(back.prec() == f.prec());
        CHECK(agree(back, f, f.floor(), f.prec()));
    }
    QSeries f = QSeries::normalized_from({0, 1, 2, 3, 4, 5, 6, 7});
    QSeries u = u_operator(f, 2);
    CHECK(u.prec() == 4);
    CHECK(u.coeff(1) == 2);
    CHECK(u.coeff(3) == 6);
    QSeries v = v_operator(f, 3);
    CHECK(v.prec() == 24);
    CHECK(v.coeff(-3) == 1);
    CHECK(v.coeff(6) == 2);
    CHECK(v.coeff(4) == 0);
}

TEST_CASE("residue average: sum over b of f((a tau + b)/d)")
{
    Gen gen(4);
    QSeries f = gen.normalized(30);
    // f(tau/2) + f((tau+1)/2) keeps the even coefficients twice
    QSeries r = residue_avg(f, 1, 2);
    for (long k = 0; k < r.prec(); ++k)
        CHECK(r.coeff(k) == 2 * f.coeff(2 * k));
    QSeries s = residue_avg(f, 2, 1);
    CHECK(agree(s, v_operator(f, 2), -2, s.prec()));
}

TEST_CASE("twists")
{
    Gen gen(5);
    QSeries f = gen.normalized(20);
    QSeries h = q_twist(f, Twist::half_conjugate);
    CHECK(h.coeff(-1) == 1);
    // -f(z + 1/2): c_k -> (-1)^{k+1} c_k
    CHECK(h.coeff(1) == f.coeff(1));
    CHECK(h.coeff(2) == -f.coeff(2));
    CHECK(q_twist(f, Twist::shift_half).coeff(-1) == -1);
    CHECK(q_twist(q_twist(f, Twist::negate_q), Twist::negate_q) == f);
    QSeries half(0, {Rational(1)}, 4, 2);
    CHECK_THROWS_AS(q_twist(half, Twist::shift_half), GridError);
}

TEST_CASE("root substitution")
{
    Gen gen(6);
    QSeries f = gen.normalized(30);
    QSeries r = root_substitution(f, 2, false);
    CHECK(r.grid() == 2);
    CHECK(r.coeff(-1) == 1);
    QSeries back = v_operator(r, 2).compressed();
    CHECK(back.grid() == 1);
    CHECK(agree(back, f, -1, f.prec()));
    // f(q^{1/2}) + f(-q^{1/2}) = 2 U_2 f
    QSeries sum = (r + root_substitution(f, 2, true)).compressed();
    CHECK(sum.grid() == 1);
    QSeries two_u = Rational(2) * u_operator(f, 2);
    CHECK(agree(sum, two_u, -1, std::min(sum.prec(), two_u.prec())));
}

TEST_CASE("grid alignment in sums")
{
    QSeries a = QSeries::monomial(1, 1, 10, 2); // q^{1/2}
    QSeries b = QSeries::monomial(1, 1, 10, 1); // q
    QSeries c = a + b;
    CHECK(c.grid() == 2);
    CHECK(c.coeff(1) == 1);
    CHECK(c.coeff(2) == 1);
    CHECK(c.prec() == 10);
}

TEST_CASE("rational strings")
{
    CHECK(rational_to_string(Rational(3)) == "3/1");
    CHECK(rational_to_string(frac(-4, 6)) == "-2/3");
    CHECK(rational_from_string("-2/3") == frac(-2, 3));
    CHECK(rational_from_string("17") == 17);
    CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rational_from_string("x"), ParseError);
}

TEST_CASE("JSON round trip")
{
    Gen gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        QSeries f = gen.series(12, -3, trial % 2 ? 2 : 1);
        QSeries g = qseries_from_json_string(to_json_string(f));
        CHECK(g == f);
        CHECK(g.prec() == f.prec());
        CHECK(g.grid() == f.grid());
    }
    CHECK_THROWS_AS(qseries_from_json_string(R"({"M":1,"floor":0,"prec":3,"coeffs":{},"extra":1})"), ParseError);
}

TEST_CASE("report JSON round trip")
{
    Report r{"demo", {}, 0.5};
    r.add(Check{"ok", true, "", {}});
    QSeries a = QSeries::normalized_from({0, 1, 2, 3});
    QSeries b = QSeries::normalized_from({0, 1, 5, 3});
    r.add(compare_series("differs", a, b, -1, 4, 2));
    CHECK_FALSE(r.passed());
    CHECK(r.checks[1].mismatches.size() == 1);
    CHECK(r.checks[1].mismatches[0].exponent == 2);
    Report back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
    CHECK(back == r);
}
