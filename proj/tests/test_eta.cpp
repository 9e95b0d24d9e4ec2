#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "replikit/eta_catalog.hpp"

using namespace replikit;

namespace {

// prod (1 - q^{dn})^r by repeated multiplication, as plain integer vectors.
std::vector<Integer> naive_product(const std::vector<EtaFactor>& terms, long n)
{
    std::vector<Integer> c(n, 0);
    c[0] = 1;
    for (const auto& t : terms)
        for (long step = t.d; step < n; step += t.d)
            for (long rep = 0; rep < std::abs(t.r); ++rep) {
                if (t.r > 0) {
                    for (long k = n - 1; k >= step; --k)
                        c[k] -= c[k - step];
                } else {
                    for (long k = step; k < n; ++k)
                        c[k] += c[k - step];
                }
            }
    return c;
}

// c * d truncated to n terms
std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b, long n)
{
    std::vector<Integer> c(n, 0);
    for (long i = 0; i < n; ++i)
        for (long j = 0; i + j < n; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

} // namespace

TEST_CASE("eta expansion matches the pentagonal number theorem")
{
    const long n = 200;
    QSeries e = eta_expansion(n);
    std::vector<Integer> want(n, 0);
    for (long k = -20; k <= 20; ++k) {
        long p = k * (3 * k - 1) / 2;
        if (p < n)
            want[p] += (k % 2 == 0) ? 1 : -1;
    }
    for (long k = 0; k < n; ++k)
        CHECK(e.coeff(k) == Rational(want[k]));
}

TEST_CASE("eta products against repeated multiplication")
{
    const long n = 60;
    std::vector<std::vector<EtaFactor>> cases = {
        {{1, 24}}, {{1, -24}}, {{1, 24}, {2, -24}}, {{1, 8}, {4, -8}}, {{2, 12}, {4, -12}}, {{1, -3}, {3, 5}}};
    for (const auto& terms : cases) {
        QSeries got = eta_product(terms, n);
        auto want = naive_product(terms, n);
        for (long k = 0; k < n; ++k)
            CHECK(got.coeff(k) == Rational(want[k]));
    }
}

TEST_CASE("delta and E4")
{
    QSeries d = delta(6);
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == -24);
    CHECK(d.coeff(3) == 252);
    CHECK(d.coeff(4) == -1472);
    QSeries e4 = eisenstein_e4(4);
    CHECK(e4.coeff(0) == 1);
    CHECK(e4.coeff(1) == 240);
    CHECK(e4.coeff(2) == 2160);
    CHECK(e4.coeff(3) == 6720);
}

TEST_CASE("1A = j - 744")
{
    // E4^3 / Delta from naive divisor sums and product expansion
    const long n = 40;
    std::vector<Integer> e4(n + 1, 0);
    e4[0] = 1;
    for (long k = 1; k <= n; ++k) {
        Integer s = 0;
        for (long d = 1; d <= k; ++d)
            if (k % d == 0)
                s += Integer(d) * d * d;
        e4[k] = 240 * s;
    }
    auto cube = mul(mul(e4, e4, n + 1), e4, n + 1);
    auto inv = naive_product({{1, -24}}, n + 1);
    auto jq = mul(cube, inv, n + 1); // q j(q)
    QSeries f = catalog_series("1A", n);
    CHECK(f.coeff(-1) == 1);
    CHECK(f.coeff(0) == 0);
    for (long k = 1; k < n; ++k)
        CHECK(f.coeff(k) == Rational(jq[k + 1]));
    CHECK(f.coeff(1) == 196884);
    CHECK(f.coeff(2) == 21493760);
    CHECK(f.coeff(3) == 864299970);
    CHECK(f.coeff(4) == Rational("20245856256"));
    CHECK(f.coeff(5) == Rational("333202640600"));
}

TEST_CASE("2A = u + 24 + 4096/u")
{
    QSeries f = catalog_series("2A", 8);
    std::vector<long> want = {4372, 96256, 1240002, 10698752, 74428120, 431529984};
    for (long k = 1; k <= 6; ++k)
        CHECK(f.coeff(k) == want[k - 1]);
    // independent route: u = q^-1 prod (1-q^n)^24/(1-q^{2n})^24
    const long n = 50;
    auto u = naive_product({{1, 24}, {2, -24}}, n + 2);
    auto inv = naive_product({{1, -24}, {2, 24}}, n + 2);
    QSeries g = catalog_series("2A", n);
    for (long k = 1; k < n; ++k) {
        Integer want_k = u[k + 1] + 4096 * inv[k - 1];
        CHECK(g.coeff(k) == Rational(want_k));
    }
}

TEST_CASE("other catalog entries")
{
    QSeries a = catalog_series("4A", 4);
    CHECK(a.coeff(1) == 276);
    CHECK(a.coeff(2) == 2048);
    CHECK(a.coeff(3) == 11202);
    QSeries c = catalog_series("4C", 6);
    CHECK(c.coeff(1) == 20);
    CHECK(c.coeff(2) == 0);
    CHECK(c.coeff(3) == -62);
    CHECK(c.coeff(5) == 216);
    QSeries d = catalog_series("4D", 6);
    CHECK(d.coeff(1) == -12);
    CHECK(d.coeff(3) == 66);
    CHECK(d.coeff(5) == -232);
    QSeries b = catalog_series("2B", 3);
    CHECK(b.coeff(1) == 276);
    CHECK(b.coeff(2) == -2048);
    for (const auto& e : catalog()) {
        QSeries f = catalog_series(e.label, 30);
        CHECK(f.normalized());
        CHECK(f.integral());
        CHECK(f.prec() == 30);
    }
}

TEST_CASE("unknown labels")
{
    CHECK_FALSE(in_catalog("3A"));
    CHECK_THROWS_AS(catalog_series("3A", 10), UnknownLabel);
}
