#include "replikit/eta_catalog.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace replikit {

static std::vector<long> divisor_sums(long n, int power)
{
    std::vector<long> s(n + 1, 0);
    for (long d = 1; d <= n; ++d) {
        long dp = 1;
        for (int i = 0; i < power; ++i)
            dp *= d;
        for (long m = d; m <= n; m += d)
            s[m] += dp;
    }
    return s;
}

QSeries eta_product(const std::vector<EtaFactor>& terms, long prec)
{
    if (prec <= 0)
        return QSeries::zero(prec);
    // Logarithmic derivative: q F'/F = sum b_n q^n with b_n = -sum_{d|n} r_d d sigma(n/d),
    // so n F_n = sum_{k=1}^n b_k F_{n-k}.
    std::vector<long> sigma = divisor_sums(prec, 1);
    std::vector<long> b(prec, 0);
    for (const auto& t : terms)
        for (long m = t.d; m < prec; m += t.d)
            b[m] -= t.r * t.d * sigma[m / t.d];
    std::vector<long> nz;
    for (long k = 1; k < prec; ++k)
        if (b[k] != 0)
            nz.push_back(k);
    std::vector<Integer> F(prec);
    F[0] = 1;
    Integer acc;
    for (long n = 1; n < prec; ++n) {
        acc = 0;
        for (long k : nz) {
            if (k > n)
                break;
            if (b[k] > 0)
                mpz_addmul_ui(acc.get_mpz_t(), F[n - k].get_mpz_t(), static_cast<unsigned long>(b[k]));
            else
                mpz_submul_ui(acc.get_mpz_t(), F[n - k].get_mpz_t(), static_cast<unsigned long>(-b[k]));
        }
        mpz_divexact_ui(F[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
    }
    std::vector<Rational> c(prec);
    for (long n = 0; n < prec; ++n)
        c[n] = Rational(F[n]);
    return QSeries(0, std::move(c), prec);
}

QSeries eta_expansion(long prec)
{
    if (prec < 1)
        throw PreconditionError("eta_expansion needs prec >= 1");
    return eta_product({{1, 1}}, prec);
}

static long leading_exponent(const std::vector<EtaFactor>& terms)
{
    long s = 0;
    for (const auto& t : terms)
        s += t.d * t.r;
    if (s % 24 != 0)
        throw PreconditionError("eta quotient with non-integral leading exponent");
    return s / 24;
}

QSeries eta_quotient(const EtaQuotientSpec& spec, long prec)
{
    long s = leading_exponent(spec.terms);
    QSeries f = QSeries(s, eta_product(spec.terms, prec - s).data(), prec);
    if (spec.additive_constant != 0)
        f += QSeries::constant(spec.additive_constant);
    if (spec.plus_inverse) {
        std::vector<EtaFactor> inv = spec.terms;
        for (auto& t : inv)
            t.r = -t.r;
        f += *spec.plus_inverse * QSeries(-s, eta_product(inv, prec + s).data(), prec);
    }
    return f;
}

QSeries eisenstein_e4(long prec)
{
    if (prec < 2)
        throw PreconditionError("eisenstein_e4 needs prec >= 2");
    std::vector<long> s3 = divisor_sums(prec, 3);
    std::vector<Rational> c(prec);
    c[0] = 1;
    for (long n = 1; n < prec; ++n)
        c[n] = Rational(240) * Rational(s3[n]);
    return QSeries(0, std::move(c), prec);
}

QSeries delta(long prec)
{
    if (prec < 2)
        throw PreconditionError("delta needs prec >= 2");
    return QSeries(1, eta_product({{1, 24}}, prec - 1).data(), prec);
}

QSeries j_series(long prec)
{
    if (prec < 2)
        throw PreconditionError("j_series needs prec >= 2");
    // 1/Delta = q^{-1} prod (1-q^n)^{-24}
    QSeries inv_delta(-1, eta_product({{1, -24}}, prec + 1).data(), prec);
    QSeries e4 = eisenstein_e4(prec + 1);
    return pow(e4, 3) * inv_delta;
}

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> entries = {
        {"1A", std::nullopt, "E4^3/Delta - 744", "normalized j-invariant"},
        {"2A", EtaQuotientSpec{{{1, 24}, {2, -24}}, 24, Rational(4096)}, "u + 24 + 4096/u, u = (eta(t)/eta(2t))^24",
         "Hauptmodul of Gamma0(2)+"},
        {"2B", EtaQuotientSpec{{{1, 24}, {2, -24}}, 24, std::nullopt}, "u + 24", "Hauptmodul of Gamma0(2)"},
        {"4A", EtaQuotientSpec{{{2, 48}, {1, -24}, {4, -24}}, -24, std::nullopt},
         "eta(2t)^48 / (eta(t)^24 eta(4t)^24) - 24", "Hauptmodul of Gamma0(4)+"},
        {"4C", EtaQuotientSpec{{{1, 8}, {4, -8}}, 8, std::nullopt}, "eta(t)^8 / eta(4t)^8 + 8",
         "Hauptmodul of Gamma0(4)"},
        {"4D", EtaQuotientSpec{{{2, 12}, {4, -12}}, 0, std::nullopt}, "eta(2t)^12 / eta(4t)^12",
         "Hauptmodul of Gamma0(4)|2, square root of 2B(2t)"},
    };
    return entries;
}

bool in_catalog(const std::string& label)
{
    for (const auto& e : catalog())
        if (e.label == label)
            return true;
    return false;
}

QSeries catalog_series(const std::string& label, long prec)
{
    static std::mutex mu;
    static std::map<std::string, QSeries> cache;

    const CatalogEntry* entry = nullptr;
    for (const auto& e : catalog())
        if (e.label == label)
            entry = &e;
    if (!entry)
        throw UnknownLabel("unknown catalog label '" + label + "'");
    if (prec < 1)
        throw PreconditionError("catalog_series needs prec >= 1");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(label);
        if (it != cache.end() && it->second.prec() >= prec)
            return it->second.truncated(prec);
    }
    QSeries f = entry->eta ? eta_quotient(*entry->eta, prec)
                           : j_series(prec) - QSeries::constant(744);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(label);
    if (it == cache.end() || it->second.prec() < prec)
        cache[label] = f;
    return f;
}

} // namespace replikit
