#pragma once

#include <string>
#include <vector>

#include "replikit/qseries.hpp"

namespace replikit {

// P(t) = t^n + sum_{i=1}^n b[i] t^{n-i}; b[0] = 1.
struct FaberPoly {
    std::vector<Rational> b;

    long degree() const { return static_cast<long>(b.size()) - 1; }
    bool operator==(const FaberPoly& o) const { return b == o.b; }
};

// Greedy elimination of the exponents -n+1 .. 0 from f^n.
FaberPoly faber_poly(const QSeries& f, long n);
// P_1 = t, P_k = t P_{k-1} - sum_{s=1}^{k-2} x_s P_{k-s-1} - k x_{k-1}.
FaberPoly faber_poly_recurrence(const QSeries& f, long n);
// P_1 .. P_n (index 0 holds P_0 = 1).
std::vector<FaberPoly> faber_polys(const QSeries& f, long n);

QSeries faber_apply(const FaberPoly& p, const QSeries& f);

std::string to_string(const FaberPoly& p);

} // namespace replikit
