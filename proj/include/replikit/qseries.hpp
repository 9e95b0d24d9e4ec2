#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "replikit/errors.hpp"

namespace replikit {

using Rational = mpq_class;
using Integer = mpz_class;

// num/den in lowest terms (the two-argument mpq_class constructor does not reduce).
Rational frac(long num, long den);
std::string rational_to_string(const Rational& r); // always "num/den"
Rational rational_from_string(const std::string& s);

long floor_div(long a, long b);
long ceil_div(long a, long b);

// Truncated Laurent series sum c_k q^{k/M}, known exactly for k < prec.
// Coefficients are stored densely from floor() to the last nonzero index;
// everything between that and prec is an exact zero.
class QSeries {
  public:
    // Precision used for exact (polynomial) data such as constants.
    static constexpr long kExact = 1L << 40;

    QSeries() = default;
    QSeries(long first_index, std::vector<Rational> coeffs, long prec, int grid = 1);

    static QSeries zero(long prec, int grid = 1);
    static QSeries constant(const Rational& c, long prec = kExact);
    static QSeries monomial(long k, const Rational& c, long prec = kExact, int grid = 1);
    // q^{-1} + sum_{m>=1} a[m] q^m; a[0] is ignored. Known below a.size().
    static QSeries normalized_from(const std::vector<Rational>& a);

    int grid() const { return grid_; }
    long prec() const { return prec_; }
    // Lowest index with nonzero coefficient; prec() for the zero series.
    long floor() const { return floor_; }
    // One past the highest stored index.
    long top() const { return floor_ + static_cast<long>(c_.size()); }
    bool is_zero() const { return c_.empty(); }
    bool normalized() const;
    bool integral() const;

    Rational coeff(long k) const;
    const std::vector<Rational>& data() const { return c_; }

    QSeries truncated(long p) const;
    QSeries on_grid(int m) const;
    // Rewrites on the smallest grid dividing grid() that holds every nonzero index.
    QSeries compressed() const;

    QSeries operator-() const;
    QSeries& operator+=(const QSeries& g);
    QSeries& operator-=(const QSeries& g);
    QSeries& operator*=(const Rational& s);

    bool operator==(const QSeries& o) const;

    friend QSeries operator*(const QSeries& f, const QSeries& g);

  private:
    void trim();

    int grid_ = 1;
    long floor_ = 0;
    long prec_ = 0;
    std::vector<Rational> c_;
};

QSeries operator+(QSeries f, const QSeries& g);
QSeries operator-(QSeries f, const QSeries& g);
QSeries operator*(const QSeries& f, const QSeries& g);
QSeries operator*(const Rational& s, QSeries f);
QSeries operator*(QSeries f, const Rational& s);

QSeries pow(const QSeries& f, unsigned n);
// 1/f for f with invertible leading coefficient.
QSeries inverse(const QSeries& f);

// c_{dk} -> coefficient of q^k; prec becomes floor(prec/d).
QSeries u_operator(const QSeries& f, long d);
// q -> q^a; prec becomes a*prec.
QSeries v_operator(const QSeries& f, long a);
// sum_{0<=b<d} f((a tau + b)/d) = d * V_a(U_d f)
QSeries residue_avg(const QSeries& f, long a, long d);

enum class Twist { shift_half, negate_q, half_conjugate };
QSeries q_twist(const QSeries& f, Twist kind);

// f(q^{1/d}) on grid d*M, or f(-q^{1/2}) style sign alternation when alternate
// is set (index k picks up (-1)^k).
QSeries root_substitution(const QSeries& f, int d, bool alternate);

// First index in [lo, hi) where a and b differ, both must be known there.
std::optional<long> first_difference(const QSeries& a, const QSeries& b, long lo, long hi);

std::string to_json_string(const QSeries& f);
QSeries qseries_from_json_string(const std::string& s);
std::string pretty(const QSeries& f, long max_terms = 8);

} // namespace replikit
