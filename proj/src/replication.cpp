#include "replikit/replication.hpp"

#include <chrono>

#include "replikit/eta_catalog.hpp"
#include "replikit/faber.hpp"

namespace replikit {

int ReplicateIndex::two_adic() const
{
    int e = half ? 1 : 0;
    for (std::uint64_t m = n; m % 2 == 0; m /= 2)
        e += 2;
    return e;
}

std::uint64_t ReplicateIndex::odd_part() const
{
    std::uint64_t m = n;
    while (m % 2 == 0)
        m /= 2;
    return m;
}

ReplicateIndex ReplicateIndex::sqrt2_power(int e)
{
    return {std::uint64_t{1} << (e / 2), (e % 2) != 0};
}

std::string ReplicateIndex::str() const
{
    if (!half)
        return std::to_string(n);
    return n == 1 ? "sqrt2" : std::to_string(n) + "sqrt2";
}

ReplicateIndex ReplicateIndex::parse(const std::string& s)
{
    std::string digits = s;
    bool half = false;
    const std::string tag = "sqrt2";
    if (s.size() >= tag.size() && s.compare(s.size() - tag.size(), tag.size(), tag) == 0) {
        half = true;
        digits = s.substr(0, s.size() - tag.size());
        if (!digits.empty() && digits.back() == '*')
            digits.pop_back();
        if (digits.empty())
            digits = "1";
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad replicate index '" + s + "'");
    std::uint64_t n = std::stoull(digits);
    if (n == 0)
        throw ParseError("replicate index must be positive: '" + s + "'");
    return {n, half};
}

ReplicateIndex operator*(const ReplicateIndex& a, const ReplicateIndex& b)
{
    if (a.half && b.half)
        return {2 * a.n * b.n, false};
    return {a.n * b.n, a.half || b.half};
}

std::string to_string(Mode m) { return m == Mode::ordinary ? "ordinary" : "two_plus"; }

ReplicateFamily::ReplicateFamily(Mode mode, std::map<ReplicateIndex, QSeries> members,
                                 std::map<ReplicateIndex, ReplicateIndex> closure,
                                 std::optional<ReplicateIndex> default_target, bool strip_odd)
    : mode_(mode)
{
    if (!members.count(ReplicateIndex{}))
        throw PreconditionError("family has no root member (index 1)");
    auto s = std::make_shared<Store>();
    s->members = std::move(members);
    s->closure = std::move(closure);
    s->default_target = default_target;
    s->strip_odd = strip_odd;
    store_ = std::move(s);
}

ReplicateIndex ReplicateFamily::resolve(const ReplicateIndex& rel) const
{
    ReplicateIndex a = root_ * rel;
    if (mode_ == Mode::ordinary && a.half)
        throw UnresolvedIndex("index " + a.str() + " is a half index in an ordinary family");
    for (int step = 0; step < 64; ++step) {
        if (store_->members.count(a))
            return a;
        if (auto it = store_->closure.find(a); it != store_->closure.end()) {
            a = it->second;
            continue;
        }
        if (store_->strip_odd && a.odd_part() > 1) {
            a = ReplicateIndex::sqrt2_power(a.two_adic());
            continue;
        }
        if (store_->default_target && a != *store_->default_target) {
            a = *store_->default_target;
            continue;
        }
        break;
    }
    throw UnresolvedIndex("index " + (root_ * rel).str() + " does not resolve to a member");
}

const QSeries& ReplicateFamily::series(const ReplicateIndex& i) const { return store_->members.at(resolve(i)); }

ReplicateFamily ReplicateFamily::rerooted(const ReplicateIndex& r) const
{
    ReplicateFamily out = *this;
    out.root_ = root_ * r;
    out.resolve(ReplicateIndex{});
    return out;
}

long ReplicateFamily::min_member_prec() const
{
    long p = QSeries::kExact;
    for (const auto& [k, v] : store_->members)
        p = std::min(p, v.prec());
    return p;
}

QSeries rep_lhs(const ReplicateFamily& fam, long n)
{
    if (n < 1)
        throw PreconditionError("rep_lhs needs n >= 1");
    QSeries acc = QSeries::zero(QSeries::kExact);
    for (long a = 1; a <= n; ++a) {
        if (n % a)
            continue;
        long d = n / a;
        const QSeries& g = fam.series(ReplicateIndex{static_cast<std::uint64_t>(a), false});
        acc += Rational(d) * v_operator(u_operator(g, d), a);
        if (fam.mode() == Mode::two_plus && d % 2 == 0) {
            const QSeries& h = fam.series(ReplicateIndex{static_cast<std::uint64_t>(a), true});
            acc += Rational(d) * v_operator(u_operator(h, d), 2 * a);
        }
    }
    return acc;
}

long replication_member_prec(long n_max, long prec) { return n_max * (prec + 1) + 1; }

Report check_replication(const ReplicateFamily& fam, long n_max, long prec)
{
    auto t0 = std::chrono::steady_clock::now();
    if (prec < 2 * n_max + 5)
        throw PreconditionError("check_replication needs prec >= 2*n_max + 5");
    Report rep{"replication (" + to_string(fam.mode()) + ", root " + fam.root_index().str() + ")", {}, 0};
    const QSeries& f = fam.root();
    if (!f.normalized())
        throw PreconditionError("root " + fam.root_index().str() + " is not a normalized series");
    QSeries ft = f.truncated(prec + n_max);
    std::vector<FaberPoly> P = faber_polys(ft, n_max);
    for (long n = 1; n <= n_max; ++n) {
        QSeries lhs = rep_lhs(fam, n);
        QSeries rhs = faber_apply(P[n], ft);
        rep.add(compare_series("n=" + std::to_string(n), lhs, rhs, -n, prec, n));
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ReplicateFamily ordinary_from_two_plus(const ReplicateFamily& fam, long n_max)
{
    if (fam.mode() != Mode::two_plus)
        throw PreconditionError("ordinary_from_two_plus needs a two_plus family");
    std::map<ReplicateIndex, QSeries> m;
    for (long n = 1; n <= n_max; ++n) {
        auto un = static_cast<std::uint64_t>(n);
        QSeries s = fam.series(ReplicateIndex{un, false});
        if (n % 2 == 0)
            s += Rational(2) * u_operator(fam.series(ReplicateIndex{un / 2, true}), 2);
        m.emplace(ReplicateIndex{un, false}, std::move(s));
    }
    return ReplicateFamily(Mode::ordinary, std::move(m), {}, std::nullopt, false);
}

Report check_complete(const ReplicateFamily& fam, int depth, long n_max, long prec)
{
    auto t0 = std::chrono::steady_clock::now();
    Report rep{"complete replication, depth " + std::to_string(depth), {}, 0};
    std::vector<ReplicateIndex> roots;
    for (int e = 0; e <= depth; ++e)
        roots.push_back(fam.mode() == Mode::two_plus ? ReplicateIndex::sqrt2_power(e)
                                                     : ReplicateIndex{std::uint64_t{1} << e, false});
    for (const auto& r : roots) {
        ReplicateFamily sub = fam.rerooted(r);
        if (!sub.root().normalized())
            throw PreconditionError("re-rooting at " + r.str() + " gives a non-normalized root (zero member?)");
        // (f^[r])^[j] = f^[r j] for the indices the checks touch.
        Check closure{"root=" + r.str() + ": closure", true, "", {}};
        for (long j = 1; j <= n_max; ++j)
            for (bool half : {false, true}) {
                if (half && fam.mode() == Mode::ordinary)
                    continue;
                ReplicateIndex ji{static_cast<std::uint64_t>(j), half};
                if (!(sub.series(ji) == fam.series(r * ji))) {
                    closure.pass = false;
                    closure.detail = "mismatch at j=" + ji.str();
                }
            }
        rep.add(closure);
        rep.merge(check_replication(sub, n_max, prec), "root=" + r.str() + ": ");
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

Report verify_decomp_instance(const QSeries& a, const QSeries& b, const QSeries& c, long prec,
                              const std::string& name)
{
    Report rep{"decomposition", {}, 0};
    QSeries rhs = b + Rational(2) * u_operator(c, 2);
    rep.add(compare_series(name, a, rhs, 1, prec + 1));
    return rep;
}

QSeries labelled_series(const std::string& label, long prec)
{
    const std::string tag = "^1/2";
    if (label.size() > tag.size() && label.compare(label.size() - tag.size(), tag.size(), tag) == 0)
        return q_twist(catalog_series(label.substr(0, label.size() - tag.size()), prec), Twist::half_conjugate);
    return catalog_series(label, prec);
}

Report verify_decomp_instance(const std::string& a, const std::string& b, const std::string& c, long prec)
{
    long p = 2 * prec + 3;
    return verify_decomp_instance(labelled_series(a, p), labelled_series(b, p), labelled_series(c, p), prec,
                                  a + " = " + b + " + 2 U_2(" + c + ")");
}

} // namespace replikit
