#include "replikit/hecke_cosets.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace replikit {

ScaledMatrix to_matrix(const CosetRep& g) { return {{Rational(g.x), Rational(g.y), 0, Rational(g.z)}, g.scaled}; }

ScaledMatrix fricke() { return {{0, -1, 2, 0}, 1}; }

ScaledMatrix operator*(const ScaledMatrix& g, const ScaledMatrix& h)
{
    const auto& a = g.a;
    const auto& b = h.a;
    ScaledMatrix r{{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                    a[2] * b[1] + a[3] * b[3]},
                   g.s + h.s};
    if (r.s == 2) {
        for (auto& x : r.a)
            x /= 2;
        r.s = 0;
    }
    return r;
}

ScaledMatrix inverse(const ScaledMatrix& g)
{
    const auto& a = g.a;
    Rational det = a[0] * a[3] - a[1] * a[2];
    if (det == 0)
        throw PreconditionError("singular matrix");
    // (2^{-s/2} A)^{-1} = 2^{s/2} A^{-1} = 2^{-s/2} (2^s A^{-1})
    Rational k = Rational(g.s ? 2 : 1) / det;
    return {{a[3] * k, -a[1] * k, -a[2] * k, a[0] * k}, g.s};
}

std::string to_string(CosetKind k)
{
    switch (k) {
    case CosetKind::M1: return "M1";
    case CosetKind::S1: return "S1";
    case CosetKind::S2: return "S2";
    case CosetKind::M2: return "M2";
    case CosetKind::M: return "M";
    }
    return "?";
}

CosetKind coset_kind_from_string(const std::string& s)
{
    for (auto k : {CosetKind::M1, CosetKind::S1, CosetKind::S2, CosetKind::M2, CosetKind::M})
        if (to_string(k) == s)
            return k;
    throw ParseError("unknown coset kind '" + s + "'");
}

std::string to_string(const CosetRep& g)
{
    std::string m = "[[" + std::to_string(g.x) + "," + std::to_string(g.y) + "],[0," + std::to_string(g.z) + "]]";
    return g.scaled ? "2^(-1/2)" + m : m;
}

static std::vector<std::pair<long, int>> factorize(long n)
{
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1)
        f.emplace_back(n, 1);
    return f;
}

long mobius(long n)
{
    long mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1)
            return 0;
        mu = -mu;
    }
    return mu;
}

long euler_phi(long n)
{
    long r = n;
    for (auto [p, e] : factorize(n))
        r = r / p * (p - 1);
    return r;
}

long dedekind_psi(long n)
{
    if (n < 1)
        throw PreconditionError("dedekind_psi needs n >= 1");
    long r = n;
    for (auto [p, e] : factorize(n))
        r = r / p * (p + 1);
    return r;
}

long divisor_sigma(long n)
{
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0)
            s += d;
    return s;
}

long ramanujan_sum(long g, long n)
{
    if (g < 1)
        throw PreconditionError("ramanujan_sum needs g >= 1");
    long h = std::gcd(g, std::labs(n));
    long s = 0;
    for (long d = 1; d <= h; ++d)
        if (h % d == 0)
            s += d * mobius(g / d);
    return s;
}

static void add_primitive(std::vector<CosetRep>& out, long x, long z, bool scaled)
{
    long g = std::gcd(x, z);
    for (long y = 0; y < z; ++y)
        if (std::gcd(g, y) == 1)
            out.push_back({x, y, z, scaled});
}

CosetSet enum_cosets(long m, CosetKind kind)
{
    if (m < 1)
        throw PreconditionError("enum_cosets needs m >= 1");
    bool even = m % 2 == 0;
    if (!even && kind != CosetKind::M)
        throw KindUnavailable("coset kind " + to_string(kind) + " needs even m, got " + std::to_string(m));
    CosetSet s{m, kind, {}};
    bool m1 = kind == CosetKind::M1 || kind == CosetKind::M;
    bool s1 = kind == CosetKind::S1 || kind == CosetKind::M2 || kind == CosetKind::M;
    bool s2 = kind == CosetKind::S2 || kind == CosetKind::M2 || kind == CosetKind::M;
    if (!even) {
        for (long x = 1; x <= m; ++x)
            if (m % x == 0)
                add_primitive(s.reps, x, m / x, false);
    } else {
        for (long x = 1; x <= m; ++x) {
            if (m % x)
                continue;
            long z = m / x;
            if ((m1 && x % 2 == 1) || (s1 && z % 2 == 1))
                add_primitive(s.reps, x, z, false);
        }
        if (s2)
            for (long x = 2; x <= 2 * m; x += 2)
                if ((2 * m) % x == 0 && (2 * m / x) % 2 == 0)
                    add_primitive(s.reps, x, 2 * m / x, true);
    }
    std::sort(s.reps.begin(), s.reps.end(), [](const CosetRep& a, const CosetRep& b) {
        return std::tie(a.scaled, a.x, a.y) < std::tie(b.scaled, b.x, b.y);
    });
    return s;
}

bool in_gamma02plus(const ScaledMatrix& g)
{
    for (const auto& x : g.a)
        if (x.get_den() != 1)
            return false;
    Rational det = g.a[0] * g.a[3] - g.a[1] * g.a[2];
    auto even = [](const Rational& x) { return mpz_even_p(x.get_num_mpz_t()) != 0; };
    if (g.s == 0)
        return det == 1 && even(g.a[2]);
    return det == 2 && even(g.a[0]) && even(g.a[2]) && even(g.a[3]);
}

bool same_left_coset(const ScaledMatrix& g1, const ScaledMatrix& g2) { return in_gamma02plus(g2 * inverse(g1)); }

bool same_left_coset(const CosetRep& g1, const CosetRep& g2)
{
    // g2 g1^{-1} = 2^{-(s2-s1)/2} A2 adj(A1) / det(A1)
    long d = g1.x * g1.z;
    long n00 = g2.x * g1.z, n01 = -g2.x * g1.y + g2.y * g1.x, n11 = g2.z * g1.x;
    int t = static_cast<int>(g2.scaled) - static_cast<int>(g1.scaled);
    if (t == -1) {
        n00 *= 2;
        n01 *= 2;
        n11 *= 2;
    }
    if (n00 % d || n01 % d || n11 % d)
        return false;
    long q00 = n00 / d, q11 = n11 / d;
    long det = q00 * q11; // lower-left entry is 0
    if (t == 0)
        return det == 1;
    return det == 2 && q00 % 2 == 0 && q11 % 2 == 0;
}

QSeries apply_coset_action(const QSeries& f, const CosetSet& s)
{
    if (f.grid() != 1)
        throw GridError("coset action needs an integral exponent grid");
    std::map<std::tuple<long, long, bool>, std::vector<long>> groups;
    for (const auto& g : s.reps)
        groups[{g.x, g.z, g.scaled}].push_back(g.y);

    long prec = QSeries::kExact;
    for (auto& [key, ys] : groups) {
        auto [x, z, scaled] = key;
        long g = std::gcd(x, z);
        std::vector<long> expect;
        for (long y = 0; y < z; ++y)
            if (std::gcd(g, y) == 1)
                expect.push_back(y);
        std::sort(ys.begin(), ys.end());
        if (ys != expect)
            throw IncompleteResidues("y-set for x=" + std::to_string(x) + ", z=" + std::to_string(z) +
                                     " is not the gcd-coprime residue set");
        if (f.prec() < QSeries::kExact)
            prec = std::min(prec, ceil_div(f.prec() * x, z));
    }

    std::map<long, Rational> acc;
    for (const auto& [key, ys] : groups) {
        auto [x, z, scaled] = key;
        long g = std::gcd(x, z), w = z / g;
        for (long k = ceil_div(f.floor(), w) * w; k < f.top(); k += w) {
            Rational c = f.coeff(k);
            if (c == 0)
                continue;
            long e = (k / w) * (x / g);
            if (e >= prec)
                break;
            long r = ramanujan_sum(g, k / w);
            if (r != 0)
                acc[e] += c * Rational(w * r);
        }
    }
    if (acc.empty())
        return QSeries::zero(prec);
    long lo = acc.begin()->first;
    std::vector<Rational> c(acc.rbegin()->first - lo + 1);
    for (auto& [e, v] : acc)
        c[e - lo] = v;
    return QSeries(lo, std::move(c), prec);
}

QSeries hecke_t(const QSeries& f, long m) { return apply_coset_action(f, enum_cosets(m, CosetKind::M)); }

static long v2(long m)
{
    long a = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++a;
    }
    return a;
}

QSeries hecke_t_by_inversion(const QSeries& f, long m)
{
    // S(n) = sum_{r odd, r^2 | n} T_{n/r^2} satisfies T~_n = sum_i S(n/2^i),
    // hence S(n) = T~_n - T~_{n/2}; Moebius over odd squares recovers T_n.
    auto S = [&](long n) {
        QSeries s = apply_ttilde(f, n);
        if (n % 2 == 0)
            s -= apply_ttilde(f, n / 2);
        return s;
    };
    QSeries t = QSeries::zero(QSeries::kExact);
    for (long r = 1; r * r <= m; r += 2) {
        if (m % (r * r))
            continue;
        long mu = mobius(r);
        if (mu != 0)
            t += Rational(mu) * S(m / (r * r));
    }
    return t;
}

QSeries apply_ttilde(const QSeries& f, long m)
{
    QSeries t = QSeries::zero(QSeries::kExact, f.grid());
    for (long x = 1; x <= m; ++x)
        if (m % x == 0)
            t += residue_avg(f, x, m / x);
    if (m % 2 == 0)
        for (long x = 2; x <= 2 * m; x += 2)
            if ((2 * m) % x == 0 && (2 * m / x) % 2 == 0)
                t += residue_avg(f, x, 2 * m / x);
    return t;
}

long ttilde_term_count(long m)
{
    long n = 0;
    for (long x = 1; x <= m; ++x)
        if (m % x == 0)
            n += m / x;
    if (m % 2 == 0)
        for (long x = 2; x <= 2 * m; x += 2)
            if ((2 * m) % x == 0 && (2 * m / x) % 2 == 0)
                n += 2 * m / x;
    return n;
}

static bool rduo_selects(long x, long z, Rduo kind)
{
    switch (kind) {
    case Rduo::R: return true;
    case Rduo::D: return x % 2 == 1;
    case Rduo::U: return z % 2 == 1;
    case Rduo::O: return x % 2 == 0 && z % 2 == 0;
    }
    return false;
}

QSeries apply_rduo(const QSeries& f, long m, Rduo kind)
{
    QSeries t = QSeries::zero(QSeries::kExact, f.grid());
    for (long x = 1; x <= m; ++x) {
        if (m % x)
            continue;
        long z = m / x;
        if (!rduo_selects(x, z, kind))
            continue;
        t += residue_avg(f, x, z);
        // odd y only: drop the even-y terms f(((x/2) tau + y')/(z/2))
        if (kind == Rduo::O)
            t -= residue_avg(f, x / 2, z / 2);
    }
    return t;
}

long rduo_term_count(long m, Rduo kind)
{
    long n = 0;
    for (long x = 1; x <= m; ++x) {
        if (m % x)
            continue;
        long z = m / x;
        if (rduo_selects(x, z, kind))
            n += kind == Rduo::O ? z / 2 : z;
    }
    return n;
}

std::vector<long> hecke_decomposition(long m)
{
    std::vector<long> out;
    for (long r = 1; r * r <= m; r += 2) {
        if (m % (r * r))
            continue;
        long n = m / (r * r);
        for (long i = 0, p = 1; i <= v2(n); ++i, p *= 2)
            out.push_back(n / p);
    }
    return out;
}

long hecke_input_prec(long m, long terms) { return m * (terms + 1) + 1; }

Report verify_hecke_formula(const QSeries& f, long m, long terms)
{
    Report rep{"hecke m=" + std::to_string(m), {}, 0};
    std::vector<long> parts = hecke_decomposition(m);
    QSeries lhs = apply_ttilde(f, m);
    QSeries rhs = QSeries::zero(QSeries::kExact);
    std::string names;
    for (long n : parts) {
        QSeries direct = hecke_t(f, n);
        QSeries inverted = hecke_t_by_inversion(f, n);
        rep.add(compare_series("T_" + std::to_string(n) + " direct vs inversion", direct, inverted, -n, terms, n));
        rhs += direct;
        names += (names.empty() ? "T_" : " + T_") + std::to_string(n);
    }
    Check c = compare_series("T~_" + std::to_string(m) + " = " + names, lhs, rhs, -m, terms, m);
    rep.add(c);
    return rep;
}

} // namespace replikit
