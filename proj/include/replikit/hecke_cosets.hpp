#pragma once

#include <array>
#include <string>
#include <vector>

#include "replikit/qseries.hpp"
#include "replikit/report.hpp"

namespace replikit {

// [[x,y],[0,z]], times 2^{-1/2} when scaled.
struct CosetRep {
    long x = 1, y = 0, z = 1;
    bool scaled = false;

    bool operator==(const CosetRep& o) const = default;
};

enum class CosetKind { M1, S1, S2, M2, M };

struct CosetSet {
    long m = 1;
    CosetKind kind = CosetKind::M;
    std::vector<CosetRep> reps; // sorted by (scaled, x, y)
};

// 2^{-s/2} [[a00, a01], [a10, a11]]
struct ScaledMatrix {
    std::array<Rational, 4> a;
    int s = 0;
};

ScaledMatrix to_matrix(const CosetRep& g);
ScaledMatrix fricke();
ScaledMatrix operator*(const ScaledMatrix& g, const ScaledMatrix& h);
ScaledMatrix inverse(const ScaledMatrix& g);

std::string to_string(CosetKind k);
CosetKind coset_kind_from_string(const std::string& s);
std::string to_string(const CosetRep& g);

long mobius(long n);
long euler_phi(long n);
long dedekind_psi(long n);
long divisor_sigma(long n);
// c_g(n) = sum_{d | gcd(g, n)} d mu(g/d)
long ramanujan_sum(long g, long n);

CosetSet enum_cosets(long m, CosetKind kind);

bool in_gamma02plus(const ScaledMatrix& g);
// g2 g1^{-1} in Gamma0(2)+
bool same_left_coset(const ScaledMatrix& g1, const ScaledMatrix& g2);
// Integer-only variant for enumeration-sized workloads.
bool same_left_coset(const CosetRep& g1, const CosetRep& g2);

// sum_{g in s} f(g tau), with the y-sums done as Ramanujan sums.
QSeries apply_coset_action(const QSeries& f, const CosetSet& s);
// T_m f
QSeries hecke_t(const QSeries& f, long m);
// T_m recovered from the complete-residue operators by inverting the
// decomposition of T~_m.
QSeries hecke_t_by_inversion(const QSeries& f, long m);

QSeries apply_ttilde(const QSeries& f, long m);
long ttilde_term_count(long m);

enum class Rduo { R, D, U, O };
QSeries apply_rduo(const QSeries& f, long m, Rduo kind);
long rduo_term_count(long m, Rduo kind);

// m / (r^2 2^i) over odd r with r^2 | m and 0 <= i <= v_2(m / r^2), in that order.
std::vector<long> hecke_decomposition(long m);

// T~_m f against the sum of T over the decomposition, compared on exponents
// [-m, terms). Also checks the inversion path for every T used.
Report verify_hecke_formula(const QSeries& f, long m, long terms);

// Precision of f needed so that T~_m f is known below q^terms.
long hecke_input_prec(long m, long terms);

} // namespace replikit
