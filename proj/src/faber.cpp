#include "replikit/faber.hpp"

#include <sstream>

namespace replikit {

static void require(const QSeries& f, long n)
{
    if (!f.normalized())
        throw PreconditionError("Faber polynomials need a normalized series");
    if (n < 0)
        throw PreconditionError("Faber degree must be nonnegative");
    if (f.prec() <= n)
        throw PrecisionExceeded("Faber polynomial of degree " + std::to_string(n) + " needs prec > " +
                                std::to_string(n) + ", have " + std::to_string(f.prec()));
}

std::vector<FaberPoly> faber_polys(const QSeries& f0, long n)
{
    require(f0, n);
    // Only exponents <= 0 of the powers matter.
    QSeries f = f0.truncated(n + 1);
    std::vector<QSeries> powers{QSeries::constant(1)};
    for (long j = 1; j <= n; ++j)
        powers.push_back(powers.back() * f);

    std::vector<FaberPoly> out{FaberPoly{{1}}};
    for (long k = 1; k <= n; ++k) {
        std::vector<Rational> b(k + 1);
        b[0] = 1;
        QSeries r = powers[k];
        for (long e = -k + 1; e <= 0; ++e) {
            Rational c = r.coeff(e);
            if (c == 0)
                continue;
            // f^{-e} has leading term q^e with coefficient 1.
            r -= c * powers[-e];
            b[k + e] -= c;
        }
        out.push_back(FaberPoly{std::move(b)});
    }
    return out;
}

FaberPoly faber_poly(const QSeries& f, long n)
{
    if (n < 1)
        throw PreconditionError("faber_poly needs n >= 1");
    return faber_polys(f, n).back();
}

FaberPoly faber_poly_recurrence(const QSeries& f, long n)
{
    require(f, n);
    if (n < 1)
        throw PreconditionError("faber_poly needs n >= 1");
    // Coefficient vectors indexed by power of t.
    std::vector<std::vector<Rational>> P(n + 1);
    P[0] = {1};
    P[1] = {0, 1};
    for (long k = 2; k <= n; ++k) {
        std::vector<Rational> p(k + 1);
        for (size_t i = 0; i < P[k - 1].size(); ++i)
            p[i + 1] += P[k - 1][i];
        for (long s = 1; s <= k - 2; ++s) {
            Rational x = f.coeff(s);
            for (size_t i = 0; i < P[k - s - 1].size(); ++i)
                p[i] -= x * P[k - s - 1][i];
        }
        p[0] -= Rational(k) * f.coeff(k - 1);
        P[k] = std::move(p);
    }
    FaberPoly out;
    for (long i = 0; i <= n; ++i)
        out.b.push_back(P[n][n - i]);
    return out;
}

QSeries faber_apply(const FaberPoly& p, const QSeries& f)
{
    QSeries acc = QSeries::constant(p.b.at(0));
    for (size_t i = 1; i < p.b.size(); ++i)
        acc = acc * f + QSeries::constant(p.b[i]);
    return acc;
}

std::string to_string(const FaberPoly& p)
{
    std::ostringstream os;
    long n = p.degree();
    bool first = true;
    for (long i = 0; i <= n; ++i) {
        const Rational& c = p.b[i];
        if (c == 0)
            continue;
        long e = n - i;
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        Rational a = abs(c);
        if (a != 1 || e == 0)
            os << a.get_str();
        if (e > 0)
            os << "t";
        if (e > 1)
            os << "^" << e;
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

} // namespace replikit
