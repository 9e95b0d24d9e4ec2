#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "replikit/qseries.hpp"
#include "replikit/replication.hpp"
#include "replikit/report.hpp"

namespace replikit {

// 2^{-s/2} [[U, V], [0, Y]]; s = 1 requires U and Y even.
struct SlashMatrix {
    long U = 1, V = 0, Y = 1;
    int s = 0;

    auto operator<=>(const SlashMatrix&) const = default;

    // Index multiplier u of the action: U, or (U/2) sqrt2 when scaled.
    ReplicateIndex index() const;
    // det = U Y / 2^s
    Rational det() const;
    std::string str() const;
};

SlashMatrix operator*(const SlashMatrix& a, const SlashMatrix& b);

// Translation period the members are assumed invariant under. Every family
// member is an integral q-series, so V is only meaningful modulo Y. With a
// period of 2, Psi_p = diag(p, p) has no partner for [[p, p], [0, p]] and
// T_p T_p = T_{p^2} + p Psi_p fails for odd p.
constexpr long kSlashGrid = 1;
// V reduced modulo Y * kSlashGrid.
SlashMatrix canonical(const SlashMatrix& a);

// h^{[index]}(e^{2 pi i theta} q^{rho}) acting on q^e as e^{2 pi i theta e} q^{rho e};
// theta is kept modulo 2 so half-integral exponents stay well defined.
struct SlashTerm {
    ReplicateIndex index;
    Rational theta;
    Rational rho;

    bool operator==(const SlashTerm& o) const
    {
        return index == o.index && theta == o.theta && rho == o.rho;
    }
};

SlashTerm slash_action(const ReplicateIndex& r, const SlashMatrix& a);
SlashTerm slash_action(const SlashTerm& t, const SlashMatrix& a);

struct Generator {
    enum class Kind { T, Psi };
    Kind kind = Kind::T;
    long n = 1;             // T(n)
    ReplicateIndex u;       // Psi(u)
};

// coeff * G_1(G_2(...G_k(h)))
struct OpMonomial {
    Integer coeff = 1;
    std::vector<Generator> gens;
};

struct OpExpr {
    std::vector<OpMonomial> terms;
};

// Grammar: sums and products of integers, T(n), T(a^b), Psi(n), Psi(sqrt2),
// Psi(n sqrt2) and parentheses.
OpExpr parse_op_expr(const std::string& text);
std::string to_string(const OpExpr& e);

// Multiplicities are rational: T_n averages over v mod kSlashGrid*y with
// weight 1/kSlashGrid.
using MatMultiset = std::map<SlashMatrix, Rational>;

std::vector<std::pair<SlashMatrix, Rational>> generator_matrices(const Generator& g);
MatMultiset op_expr_multiset(const OpExpr& e);
Report verify_op_identity(const std::string& lhs, const std::string& rhs);

// Largest 1/rho over the matrices of e (how much precision the action eats).
long op_expr_degree(const OpExpr& e);

// Sum over the multiset of h^{[r u]}(...) with the root-of-unity sums done as
// Ramanujan sums. Throws if some phase multiset is not Galois stable.
QSeries materialize(const MatMultiset& ms, const ReplicateFamily& fam);
// Same operator evaluated by composing U/V operators on the family.
QSeries eval_op_series(const OpExpr& e, const ReplicateFamily& fam);

// T_n on a family: sum_{uy=n} y V_u U_y h^[u] + sum_{uy=n/2} 2y V_{2u} U_{2y} h^[u sqrt2].
QSeries generalized_tn(const ReplicateFamily& fam, long n);

// Q_k = T_2(h^k)
QSeries q_powersum(const ReplicateFamily& fam, unsigned k);
// h^[2](q^2), h^[sqrt2](q), h^[sqrt2](-q), h(q^{1/2}), h(-q^{1/2})
std::array<QSeries, 5> five_series(const ReplicateFamily& fam);
QSeries q_powersum_bruteforce(const ReplicateFamily& fam, unsigned k);

// e_1..e_K from p_1..p_K: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i. Index 0 holds e_0 = 1.
template <typename T> std::vector<T> newton_elementary(const std::vector<T>& p, const T& one)
{
    std::vector<T> e{one};
    for (size_t k = 1; k <= p.size(); ++k) {
        T acc = e[k - 1] * p[0];
        for (size_t i = 2; i <= k; ++i) {
            T term = e[k - i] * p[i - 1];
            if (i % 2 == 0)
                acc = acc - term;
            else
                acc = acc + term;
        }
        e.push_back(acc * frac(1, static_cast<long>(k)));
    }
    return e;
}

Report verify_sigma2(const ReplicateFamily& fam, long terms);
Report verify_prop_rec(const ReplicateFamily& fam, long k, long terms);

} // namespace replikit
