#include "replikit/recurrence.hpp"

#include <chrono>
#include <sstream>

namespace replikit {

long FamilyState::known() const
{
    long k = -1;
    for (const auto& [r, a] : coeffs) {
        long n = static_cast<long>(a.size()) - 1;
        k = k < 0 ? n : std::min(k, n);
    }
    return std::max(k, 0L);
}

FamilyState seed_state(const FamilySpec& spec, long seed_count)
{
    if (spec.mode != Mode::two_plus)
        throw PreconditionError("the recurrence needs a two_plus family");
    std::map<ReplicateIndex, QSeries> placeholders;
    for (const auto& [r, src] : spec.members)
        placeholders.emplace(r, QSeries::zero(0));
    FamilyState st{spec.closure,
                   spec.default_target,
                   ReplicateFamily(Mode::two_plus, std::move(placeholders), spec.closure, spec.default_target),
                   {},
                   {},
                   {},
                   {}};
    for (const auto& [r, src] : spec.members) {
        if (src.kind == MemberSource::Kind::zero) {
            st.zero_members.insert(r);
            continue;
        }
        QSeries s = member_series(src, seed_count + 1);
        if (!s.normalized())
            throw PreconditionError("member " + r.str() + " is not of the form q^-1 + O(q)");
        for (long k = 1; k <= seed_count; ++k)
            st.seeds[r][k] = s.coeff(k);
        st.coeffs[r] = {Rational(0)};
    }
    return st;
}

namespace {

struct View {
    const FamilyState& st;
    ReplicateIndex self, two, root2;

    View(const FamilyState& s, const ReplicateIndex& m)
        : st(s), self(s.shape.resolve(m)), two(s.shape.resolve(m * ReplicateIndex{2, false})),
          root2(s.shape.resolve(m * ReplicateIndex{1, true}))
    {
    }

    const Rational& get(const ReplicateIndex& r, long k) const
    {
        static const Rational zero(0);
        if (k == 0 || st.zero_members.count(r))
            return zero;
        const auto& a = st.coeffs.at(r);
        if (k < 0 || k >= static_cast<long>(a.size()))
            throw MissingDependency("coefficient a_" + std::to_string(k) + " of member " + r.str() +
                                    " is not available");
        return a[k];
    }
    const Rational& a(long k) const { return get(self, k); }
    const Rational& b(long k) const { return get(two, k); }   // a^[2]
    const Rational& c(long k) const { return get(root2, k); } // a^[sqrt2]
};

Rational item1(const View& v, long k)
{
    Rational r = v.a(2 * k + 1);
    for (long j = 1; j <= k - 1; ++j)
        r += v.a(j) * v.a(2 * k - j);
    r += (v.a(k) * v.a(k) - v.b(k)) / 2;
    r -= v.c(2 * k);
    return r;
}

Rational item2(const View& v, long k)
{
    Rational r = v.a(2 * k + 3) - v.a(2) * v.a(2 * k);
    for (long j = 1; j <= k; ++j)
        r += v.a(j) * v.a(2 * k + 2 - j);
    for (long j = 1; j <= k - 1; ++j) {
        r += v.b(j) * v.c(2 * k - 2 * j);
        r += 2 * v.a(4 * j) * v.c(2 * k - 2 * j);
        r += v.a(4 * j) * v.b(k - j);
        r += v.c(2 * j) * v.c(2 * k - 2 * j);
    }
    for (long j = 1; j <= 2 * k - 1; ++j) {
        Rational t = v.a(j) * v.a(4 * k - j);
        if (j % 2)
            r -= t;
        else
            r += t;
    }
    r += (v.a(k + 1) * v.a(k + 1) - v.b(k + 1) + v.a(2 * k) * v.a(2 * k) + v.b(2 * k)) / 2;
    return r;
}

Rational item3(const View& v, long k)
{
    Rational r = v.a(2 * k + 2);
    for (long j = 1; j <= k; ++j)
        r += v.a(j) * v.a(2 * k + 1 - j);
    return r;
}

Rational item4(const View& v, long k)
{
    Rational r = v.a(2 * k + 4) - v.a(2) * v.a(2 * k + 1);
    r -= (v.a(2 * k + 1) * v.a(2 * k + 1) - v.b(2 * k + 1)) / 2;
    for (long j = 1; j <= 2 * k; ++j) {
        Rational t = v.a(j) * v.a(4 * k + 2 - j);
        if (j % 2)
            r -= t;
        else
            r += t;
    }
    r += v.c(2 * k + 2);
    for (long j = 1; j <= k; ++j)
        r += v.a(4 * j - 2) * v.b(k + 1 - j);
    for (long j = 1; j <= k + 1; ++j)
        r += v.a(j) * v.a(2 * k + 3 - j);
    for (long j = 1; j <= 2 * k; j += 2)
        r += 2 * v.a(2 * j) * v.c(2 * k + 1 - j);
    for (long j = 1; j <= k; ++j)
        r += v.c(j) * v.c(2 * k + 1 - j);
    return r;
}

} // namespace

Rational next_coeff(const FamilyState& state, const ReplicateIndex& member, long n)
{
    if (n < 4)
        throw PreconditionError("a_" + std::to_string(n) + " is a seed, not derived");
    View v(state, member);
    long k = n / 4;
    switch (n % 4) {
    case 0:
        return item1(v, k);
    case 1:
        return item2(v, k);
    case 2:
        return item3(v, k);
    default:
        return item4(v, k);
    }
}

static const Rational* seed_of(const FamilyState& st, const ReplicateIndex& r, long n)
{
    auto it = st.seeds.find(r);
    if (it == st.seeds.end())
        return nullptr;
    auto jt = it->second.find(n);
    return jt == it->second.end() ? nullptr : &jt->second;
}

FamilyState& extend_family(FamilyState& st, long target_n)
{
    for (long n = st.known() + 1; n <= target_n; ++n) {
        std::map<ReplicateIndex, Rational> next;
        for (const auto& [r, a] : st.coeffs) {
            const Rational* seed = seed_of(st, r, n);
            if (n <= 3 || n == 5) {
                // item 2 at k = 1 is vacuous for a_5, so it is a seed like a_1..a_3
                if (!seed)
                    throw MissingDependency("seed a_" + std::to_string(n) + " of member " + r.str() + " is missing");
                next[r] = *seed;
                st.consumed.insert({r, n});
                continue;
            }
            next[r] = next_coeff(st, r, n);
            if (seed && *seed != next[r])
                throw SeedConflict("member " + r.str() + ": a_" + std::to_string(n) + " derives to " +
                                   next[r].get_str() + " but the seed is " + seed->get_str());
        }
        for (auto& [r, val] : next)
            st.coeffs[r].push_back(val);
        if (n == 5)
            for (const auto& [r, a] : st.coeffs) {
                Rational check = next_coeff(st, r, 5);
                if (check != a[5])
                    throw SeedConflict("member " + r.str() + ": a_5 identity fails on the seeds (" +
                                       check.get_str() + " vs " + a[5].get_str() + ")");
            }
    }
    return st;
}

ReplicateFamily state_family(const FamilyState& st)
{
    std::map<ReplicateIndex, QSeries> m;
    long n = st.known();
    for (const auto& [r, a] : st.coeffs)
        m.emplace(r, QSeries::normalized_from(std::vector<Rational>(a.begin(), a.begin() + n + 1)));
    for (const auto& r : st.zero_members)
        m.emplace(r, QSeries::zero(n + 1));
    return ReplicateFamily(Mode::two_plus, std::move(m), st.closure, st.default_target);
}

Report reconstruct_and_match(const FamilySpec& spec, long target_n, long seed_count)
{
    auto t0 = std::chrono::steady_clock::now();
    Report rep{"reconstruction of " + (spec.name.empty() ? std::string("family") : spec.name), {}, 0};
    const long recheck_n = 10, recheck_prec = 2 * recheck_n + 5;
    long reach = std::max(target_n, replication_member_prec(recheck_n, recheck_prec));

    FamilyState st = seed_state(spec, seed_count);
    extend_family(st, reach);

    std::ostringstream used;
    for (const auto& [r, n] : st.consumed)
        used << (used.tellp() > 0 ? " " : "") << r.str() << ":a" << n;
    rep.add(Check{"seeds consumed", true, used.str(), {}});

    for (const auto& [r, a] : st.coeffs) {
        const MemberSource& src = spec.members.at(r);
        if (src.kind == MemberSource::Kind::coeffs && static_cast<long>(src.coeffs.size()) < target_n) {
            rep.add(Check{"member " + r.str() + " vs oracle", true,
                          "no oracle beyond the " + std::to_string(src.coeffs.size()) + " inline coefficients",
                          {}});
            continue;
        }
        QSeries oracle = member_series(src, target_n + 1);
        QSeries got = QSeries::normalized_from(std::vector<Rational>(a.begin(), a.begin() + target_n + 1));
        rep.add(compare_series("member " + r.str() + " (" + src.str() + ") vs oracle", got, oracle, 1,
                               target_n + 1));
    }
    Report rc = check_replication(state_family(st), recheck_n, recheck_prec);
    rep.merge(rc, "extended family: ");
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace replikit
