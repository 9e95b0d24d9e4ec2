#include "replikit/family_algebra.hpp"

#include <cctype>
#include <chrono>
#include <numeric>
#include <sstream>

#include "replikit/faber.hpp"
#include "replikit/hecke_cosets.hpp"

namespace replikit {

ReplicateIndex SlashMatrix::index() const
{
    if (s == 0)
        return {static_cast<std::uint64_t>(U), false};
    return {static_cast<std::uint64_t>(U / 2), true};
}

Rational SlashMatrix::det() const { return frac(U * Y, s ? 2 : 1); }

std::string SlashMatrix::str() const
{
    std::string m = "[[" + std::to_string(U) + "," + std::to_string(V) + "],[0," + std::to_string(Y) + "]]";
    return s ? "2^(-1/2)" + m : m;
}

SlashMatrix operator*(const SlashMatrix& a, const SlashMatrix& b)
{
    SlashMatrix r{a.U * b.U, a.U * b.V + a.V * b.Y, a.Y * b.Y, a.s + b.s};
    if (r.s == 2) {
        r.U /= 2;
        r.V /= 2;
        r.Y /= 2;
        r.s = 0;
    }
    return r;
}

SlashMatrix canonical(const SlashMatrix& a)
{
    SlashMatrix r = a;
    long m = kSlashGrid * a.Y;
    r.V = ((a.V % m) + m) % m;
    return r;
}

static Rational mod2(Rational x)
{
    Integer q;
    Rational h = x / 2;
    mpz_fdiv_q(q.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    x -= Rational(q) * 2;
    return x;
}

SlashTerm slash_action(const ReplicateIndex& r, const SlashMatrix& a)
{
    return {r * a.index(), mod2(frac(a.V, a.Y)), frac(a.U, a.Y)};
}

SlashTerm slash_action(const SlashTerm& t, const SlashMatrix& a)
{
    // q -> e^{2 pi i V/Y} q^{U/Y} substituted into e^{2 pi i theta e} q^{rho e}
    return {t.index * a.index(), mod2(t.theta + t.rho * frac(a.V, a.Y)), t.rho * frac(a.U, a.Y)};
}

// ---- expression parsing ----

namespace {

struct Parser {
    std::string s;
    size_t i = 0;

    void skip()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool peek(char c)
    {
        skip();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c)
    {
        if (!peek(c))
            return false;
        ++i;
        return true;
    }
    bool eat_word(const std::string& w)
    {
        skip();
        if (s.compare(i, w.size(), w) != 0)
            return false;
        i += w.size();
        return true;
    }
    [[noreturn]] void fail(const std::string& what)
    {
        throw ParseError("operator expression: " + what + " at position " + std::to_string(i) + " in '" + s + "'");
    }
    void expect(char c)
    {
        if (!eat(c))
            fail(std::string("expected '") + c + "'");
    }
    bool at_digit()
    {
        skip();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
    long number()
    {
        if (!at_digit())
            fail("expected a number");
        long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > (1L << 40))
                fail("number too large");
            ++i;
        }
        return v;
    }
    long power()
    {
        long b = number();
        if (!eat('^'))
            return b;
        long e = number(), v = 1;
        for (long k = 0; k < e; ++k) {
            v *= b;
            if (v > (1L << 40))
                fail("number too large");
        }
        return v;
    }
    long int_expr()
    {
        long v = power();
        while (eat('*'))
            v *= power();
        return v;
    }
    ReplicateIndex index_arg()
    {
        long n = 1;
        bool has_n = at_digit();
        if (has_n)
            n = power();
        eat('*');
        if (eat_word("sqrt2"))
            return {static_cast<std::uint64_t>(n), true};
        if (!has_n)
            fail("expected an index");
        return {static_cast<std::uint64_t>(n), false};
    }

    OpExpr expr()
    {
        OpExpr e = term();
        for (;;) {
            if (eat('+')) {
                for (auto& t : term().terms)
                    e.terms.push_back(t);
            } else if (eat('-')) {
                for (auto t : term().terms) {
                    t.coeff = -t.coeff;
                    e.terms.push_back(t);
                }
            } else {
                return e;
            }
        }
    }
    OpExpr term()
    {
        OpExpr e = factor();
        while (eat('*'))
            e = product(e, factor());
        return e;
    }
    static OpExpr product(const OpExpr& a, const OpExpr& b)
    {
        OpExpr r;
        for (const auto& x : a.terms)
            for (const auto& y : b.terms) {
                OpMonomial m{x.coeff * y.coeff, x.gens};
                m.gens.insert(m.gens.end(), y.gens.begin(), y.gens.end());
                r.terms.push_back(m);
            }
        return r;
    }
    OpExpr factor()
    {
        if (eat('(')) {
            OpExpr e = expr();
            expect(')');
            return e;
        }
        if (eat('-')) {
            OpExpr e = factor();
            for (auto& t : e.terms)
                t.coeff = -t.coeff;
            return e;
        }
        if (at_digit())
            return OpExpr{{OpMonomial{Integer(power()), {}}}};
        if (eat_word("Psi")) {
            expect('(');
            Generator g{Generator::Kind::Psi, 1, index_arg()};
            expect(')');
            return OpExpr{{OpMonomial{1, {g}}}};
        }
        if (eat_word("T")) {
            expect('(');
            long n = int_expr();
            if (n < 1)
                fail("T needs a positive argument");
            expect(')');
            return OpExpr{{OpMonomial{1, {Generator{Generator::Kind::T, n, {}}}}}};
        }
        fail("unexpected input");
    }
};

} // namespace

OpExpr parse_op_expr(const std::string& text)
{
    Parser p{text};
    OpExpr e = p.expr();
    p.skip();
    if (p.i != text.size())
        p.fail("trailing input");
    return e;
}

std::string to_string(const OpExpr& e)
{
    std::ostringstream os;
    for (size_t t = 0; t < e.terms.size(); ++t) {
        const auto& m = e.terms[t];
        if (t > 0)
            os << (m.coeff < 0 ? " - " : " + ");
        else if (m.coeff < 0)
            os << "-";
        Integer c = Integer(abs(m.coeff));
        bool any = false;
        if (c != 1 || m.gens.empty()) {
            os << c.get_str();
            any = true;
        }
        for (const auto& g : m.gens) {
            if (any)
                os << "*";
            if (g.kind == Generator::Kind::T)
                os << "T(" << g.n << ")";
            else
                os << "Psi(" << g.u.str() << ")";
            any = true;
        }
    }
    return os.str();
}

std::vector<std::pair<SlashMatrix, Rational>> generator_matrices(const Generator& g)
{
    std::vector<std::pair<SlashMatrix, Rational>> out;
    if (g.kind == Generator::Kind::Psi) {
        long n = static_cast<long>(g.u.n);
        out.push_back({g.u.half ? SlashMatrix{2 * n, 0, 2 * n, 1} : SlashMatrix{n, 0, n, 0}, 1});
        return out;
    }
    const Rational w = frac(1, kSlashGrid);
    long n = g.n;
    for (long u = 1; u <= n; ++u) {
        if (n % u)
            continue;
        long y = n / u;
        for (long v = 0; v < kSlashGrid * y; ++v)
            out.push_back({{u, v, y, 0}, w});
    }
    if (n % 2 == 0)
        for (long u = 1; u <= n / 2; ++u) {
            if ((n / 2) % u)
                continue;
            long y = n / 2 / u;
            for (long v = 0; v < kSlashGrid * 2 * y; ++v)
                out.push_back({{2 * u, v, 2 * y, 1}, w});
        }
    return out;
}

MatMultiset op_expr_multiset(const OpExpr& e)
{
    MatMultiset acc;
    for (const auto& m : e.terms) {
        // G_1(...G_k(h)) = sum h || (g_k ... g_1)
        std::vector<std::pair<SlashMatrix, Rational>> cur{{SlashMatrix{}, Rational(m.coeff)}};
        for (auto it = m.gens.rbegin(); it != m.gens.rend(); ++it) {
            std::vector<std::pair<SlashMatrix, Rational>> next;
            auto mats = generator_matrices(*it);
            next.reserve(cur.size() * mats.size());
            for (const auto& [c, cw] : cur)
                for (const auto& [g, gw] : mats)
                    next.push_back({c * g, cw * gw});
            cur = std::move(next);
        }
        for (const auto& [a, w] : cur)
            acc[canonical(a)] += w;
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc;
}

Report verify_op_identity(const std::string& lhs, const std::string& rhs)
{
    auto t0 = std::chrono::steady_clock::now();
    OpExpr l = parse_op_expr(lhs), r = parse_op_expr(rhs);
    MatMultiset a = op_expr_multiset(l), b = op_expr_multiset(r);
    Report rep{"operator identity", {}, 0};
    Check c{to_string(l) + " = " + to_string(r), true, "", {}};
    std::ostringstream os;
    long diff = 0;
    Rational total = 0;
    for (const auto& [k, v] : a)
        total += v;
    MatMultiset d = a;
    for (const auto& [k, v] : b)
        d[k] -= v;
    for (const auto& [k, v] : d) {
        if (v == 0)
            continue;
        c.pass = false;
        if (diff < 8)
            os << (diff ? "; " : "symmetric difference: ") << (v > 0 ? "lhs+" : "rhs+") << Rational(abs(v)).get_str() << " "
               << k.str();
        ++diff;
    }
    if (c.pass)
        os << a.size() << " distinct matrices, total multiplicity " << total;
    else if (diff > 8)
        os << "; ... " << diff << " entries in all";
    c.detail = os.str();
    rep.add(c);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

long op_expr_degree(const OpExpr& e)
{
    long best = 1;
    for (const auto& m : e.terms) {
        long d = 1;
        for (const auto& g : m.gens)
            if (g.kind == Generator::Kind::T)
                d *= g.n;
        best = std::max(best, d);
    }
    return best;
}

// ---- materialization ----

static QSeries from_exponent_map(const std::map<Rational, Rational>& acc, const Rational& bound)
{
    long grid = 1;
    for (const auto& [e, v] : acc)
        if (v != 0)
            grid = std::lcm(grid, e.get_den().get_si());
    Rational pb = bound * grid;
    Integer pc;
    mpz_cdiv_q(pc.get_mpz_t(), pb.get_num_mpz_t(), pb.get_den_mpz_t());
    long prec = pc.fits_slong_p() ? std::min(pc.get_si(), QSeries::kExact) : QSeries::kExact;
    std::map<long, Rational> idx;
    for (const auto& [e, v] : acc)
        if (v != 0) {
            Rational k = e * grid;
            idx[k.get_num().get_si()] += v;
        }
    if (idx.empty())
        return QSeries::zero(prec, static_cast<int>(grid));
    long lo = idx.begin()->first;
    std::vector<Rational> c(idx.rbegin()->first - lo + 1);
    for (const auto& [k, v] : idx)
        c[k - lo] = v;
    return QSeries(lo, std::move(c), prec, static_cast<int>(grid));
}

QSeries materialize(const MatMultiset& ms, const ReplicateFamily& fam)
{
    // group by (s, U, Y); the phase data is the multiplicity of V mod Y
    std::map<std::tuple<int, long, long>, std::vector<std::pair<long, Rational>>> groups;
    for (const auto& [a, mult] : ms)
        groups[{a.s, a.U, a.Y}].push_back({a.V, mult});

    std::map<Rational, Rational> acc;
    Rational bound = Rational(QSeries::kExact);
    for (const auto& [key, vs] : groups) {
        auto [s, U, Y] = key;
        SlashMatrix probe{U, 0, Y, s};
        const QSeries& h = fam.series(probe.index());
        if (h.grid() != 1)
            throw GridError("materialize needs integral-grid members");
        std::vector<Rational> m(Y);
        for (const auto& [V, c] : vs)
            m[((V % Y) + Y) % Y] += c;
        // Galois stability: multiplicity depends only on gcd(V, Y)
        std::map<long, Rational> by_gcd;
        for (long V = 0; V < Y; ++V) {
            long g = std::gcd(V, Y);
            auto [it, fresh] = by_gcd.emplace(g, m[V]);
            if (!fresh && it->second != m[V])
                throw PreconditionError("phase multiset for " + probe.str() +
                                        " is not Galois stable; the action is not rational");
        }
        Rational rho = frac(U, Y);
        if (h.prec() < QSeries::kExact)
            bound = std::min(bound, Rational(Rational(h.prec()) * rho));
        for (long k = h.floor(); k < h.top(); ++k) {
            Rational c = h.coeff(k);
            if (c == 0)
                continue;
            Rational e = Rational(k) * rho;
            if (e >= bound && h.prec() < QSeries::kExact)
                break;
            Rational S = 0;
            for (const auto& [g, mg] : by_gcd)
                if (mg != 0)
                    S += mg * ramanujan_sum(Y / g, k);
            if (S != 0)
                acc[e] += c * S;
        }
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->first >= bound ? acc.erase(it) : std::next(it);
    return from_exponent_map(acc, bound).compressed();
}

static QSeries tn_step(long n, const std::function<QSeries(const ReplicateIndex&)>& member)
{
    QSeries acc = QSeries::zero(QSeries::kExact);
    for (long u = 1; u <= n; ++u) {
        if (n % u)
            continue;
        long y = n / u;
        acc += Rational(y) * v_operator(u_operator(member({static_cast<std::uint64_t>(u), false}), y), u);
    }
    if (n % 2 == 0)
        for (long u = 1; u <= n / 2; ++u) {
            if ((n / 2) % u)
                continue;
            long y = n / 2 / u;
            acc += Rational(2 * y) *
                   v_operator(u_operator(member({static_cast<std::uint64_t>(u), true}), 2 * y), 2 * u);
        }
    return acc;
}

QSeries generalized_tn(const ReplicateFamily& fam, long n)
{
    if (n < 1)
        throw PreconditionError("generalized_tn needs n >= 1");
    return tn_step(n, [&](const ReplicateIndex& r) { return fam.series(r); });
}

QSeries eval_op_series(const OpExpr& e, const ReplicateFamily& fam)
{
    QSeries total = QSeries::zero(QSeries::kExact);
    for (const auto& m : e.terms) {
        std::map<std::pair<size_t, ReplicateIndex>, QSeries> memo;
        std::function<QSeries(size_t, const ReplicateIndex&)> eval = [&](size_t i, const ReplicateIndex& r) {
            if (i == m.gens.size())
                return fam.series(r);
            auto key = std::make_pair(i, r);
            if (auto it = memo.find(key); it != memo.end())
                return it->second;
            const Generator& g = m.gens[i];
            QSeries out = g.kind == Generator::Kind::Psi
                              ? eval(i + 1, r * g.u)
                              : tn_step(g.n, [&](const ReplicateIndex& u) { return eval(i + 1, r * u); });
            memo.emplace(key, out);
            return out;
        };
        total += Rational(m.coeff) * eval(0, ReplicateIndex{});
    }
    return total;
}

// ---- power sums ----

QSeries q_powersum(const ReplicateFamily& fam, unsigned k)
{
    if (k == 0)
        return QSeries::constant(5);
    return generalized_tn(fam.mapped([k](const QSeries& h) { return pow(h, k); }), 2);
}

std::array<QSeries, 5> five_series(const ReplicateFamily& fam)
{
    const QSeries& h = fam.root();
    const QSeries& hr = fam.series(ReplicateIndex{1, true});
    const QSeries& h2 = fam.series(ReplicateIndex{2, false});
    return {v_operator(h2, 2), hr, q_twist(hr, Twist::negate_q), root_substitution(h, 2, false),
            root_substitution(h, 2, true)};
}

QSeries q_powersum_bruteforce(const ReplicateFamily& fam, unsigned k)
{
    QSeries acc = QSeries::zero(QSeries::kExact);
    for (const auto& s : five_series(fam))
        acc += pow(s, k);
    return acc.compressed();
}

Report verify_sigma2(const ReplicateFamily& fam, long terms)
{
    auto t0 = std::chrono::steady_clock::now();
    Report rep{"sigma_2 identity", {}, 0};
    const QSeries& f = fam.root();
    const QSeries& fr = fam.series(ReplicateIndex{1, true});
    const QSeries& f2 = fam.series(ReplicateIndex{2, false});

    auto s = five_series(fam);
    QSeries brute = QSeries::zero(QSeries::kExact);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            brute += s[i] * s[j];
    brute = brute.compressed();

    std::vector<QSeries> p{q_powersum(fam, 1), q_powersum(fam, 2)};
    QSeries newton = newton_elementary(p, QSeries::constant(1))[2];

    QSeries rhs = Rational(2) * f.coeff(2) * f - f2 +
                  QSeries::constant(2 * (f.coeff(4) - f.coeff(1)) + 2 * fr.coeff(2)) - fr * fr;
    rep.add(compare_series("five-series sigma_2 = closed form", brute, rhs, -2, terms));
    rep.add(compare_series("(Q_1^2 - Q_2)/2 = closed form", newton, rhs, -2, terms));
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

Report verify_prop_rec(const ReplicateFamily& fam, long k, long terms)
{
    auto t0 = std::chrono::steady_clock::now();
    if (k < 1)
        throw PreconditionError("verify_prop_rec needs k >= 1");
    Report rep{"power-sum recurrence", {}, 0};
    const QSeries& h = fam.root();
    const QSeries& hr = fam.series(ReplicateIndex{1, true});
    const QSeries& h2 = fam.series(ReplicateIndex{2, false});
    FaberPoly b = faber_poly(h, k), br = faber_poly(hr, k), b2 = faber_poly(h2, k);
    auto s = five_series(fam);

    QSeries lhs = q_powersum(fam, static_cast<unsigned>(k));
    for (long i = 1; i <= k; ++i) {
        auto j = static_cast<unsigned>(k - i);
        lhs += b.b[i] * q_powersum(fam, j);
        lhs += (br.b[i] - b.b[i]) * (pow(s[1], j) + pow(s[2], j));
        lhs += (b2.b[i] - b.b[i]) * pow(s[0], j);
    }
    QSeries rhs = faber_apply(faber_poly(h, 2 * k), h);
    std::string form = "P_" + std::to_string(2 * k) + "(h)";
    if (k % 2 == 0) {
        rhs += Rational(2) * generalized_tn(fam.rerooted(ReplicateIndex{1, true}), k);
        rhs += Rational(2) * generalized_tn(fam.rerooted(ReplicateIndex{2, false}), k / 2);
        form += " + 2 T_" + std::to_string(k) + " Psi_sqrt2 h + 2 T_" + std::to_string(k / 2) + " Psi_2 h";
    }
    rep.add(compare_series("k=" + std::to_string(k) + ": " + form, lhs.compressed(), rhs, -2 * k, terms, k));
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace replikit
