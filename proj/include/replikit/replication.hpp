#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "replikit/qseries.hpp"
#include "replikit/report.hpp"

namespace replikit {

// n, or n*sqrt2 when half is set.
struct ReplicateIndex {
    std::uint64_t n = 1;
    bool half = false;

    auto operator<=>(const ReplicateIndex&) const = default;

    // Exponent e with 2-power part sqrt2^e.
    int two_adic() const;
    std::uint64_t odd_part() const;
    // sqrt2^e
    static ReplicateIndex sqrt2_power(int e);
    std::string str() const;
    static ReplicateIndex parse(const std::string& s);
};

ReplicateIndex operator*(const ReplicateIndex& a, const ReplicateIndex& b);

enum class Mode { ordinary, two_plus };
std::string to_string(Mode m);

// Finite member table plus closure rules. Lookup of an absolute index:
// stored member, then explicit closure entry, then (if enabled) the odd part
// is stripped, then the default target.
class ReplicateFamily {
  public:
    ReplicateFamily(Mode mode, std::map<ReplicateIndex, QSeries> members,
                    std::map<ReplicateIndex, ReplicateIndex> closure = {},
                    std::optional<ReplicateIndex> default_target = std::nullopt, bool strip_odd = true);

    Mode mode() const { return mode_; }
    ReplicateIndex root_index() const { return root_; }

    // Stored key that index i (relative to the root) resolves to.
    ReplicateIndex resolve(const ReplicateIndex& i) const;
    const QSeries& series(const ReplicateIndex& i) const;
    const QSeries& series(std::uint64_t n) const { return series(ReplicateIndex{n, false}); }
    const QSeries& root() const { return series(1); }

    // View with (f^[r])^[j] = f^[r j].
    ReplicateFamily rerooted(const ReplicateIndex& r) const;
    // Same structure with every member replaced by fn(member).
    template <typename Fn> ReplicateFamily mapped(Fn fn) const
    {
        std::map<ReplicateIndex, QSeries> m;
        for (const auto& [k, v] : store_->members)
            m.emplace(k, fn(v));
        ReplicateFamily out(mode_, std::move(m), store_->closure, store_->default_target, store_->strip_odd);
        out.root_ = root_;
        return out;
    }

    const std::map<ReplicateIndex, QSeries>& members() const { return store_->members; }
    long min_member_prec() const;

  private:
    struct Store {
        std::map<ReplicateIndex, QSeries> members;
        std::map<ReplicateIndex, ReplicateIndex> closure;
        std::optional<ReplicateIndex> default_target;
        bool strip_odd = true;
    };
    Mode mode_;
    std::shared_ptr<const Store> store_;
    ReplicateIndex root_{};
};

// sum_{ad=n} d V_a U_d f^[a]  (+ sum_{ad=n, d even} d V_{2a} U_d f^[a sqrt2] in two_plus mode)
QSeries rep_lhs(const ReplicateFamily& fam, long n);

// Member precision that lets check_replication reach prec coefficients.
long replication_member_prec(long n_max, long prec);

// Compares rep_lhs with P_n(f) on exponents [-n, prec) for 1 <= n <= n_max.
Report check_replication(const ReplicateFamily& fam, long n_max, long prec);

// f^(n) = f^[n] for odd n, f^[n] + 2 U_2 f^[(n/2) sqrt2] for even n, n <= n_max.
ReplicateFamily ordinary_from_two_plus(const ReplicateFamily& fam, long n_max);

// Re-roots at sqrt2^e for e = 0..depth (2^e in ordinary mode) and re-runs the
// replication check at each root.
Report check_complete(const ReplicateFamily& fam, int depth, long n_max, long prec);

// c_k(A) = c_k(B) + 2 c_{2k}(C) for 1 <= k <= prec.
Report verify_decomp_instance(const QSeries& a, const QSeries& b, const QSeries& c, long prec,
                              const std::string& name = "decomposition");
// Catalog labels; a trailing "^1/2" selects the half conjugate -f(z+1/2).
Report verify_decomp_instance(const std::string& a, const std::string& b, const std::string& c, long prec);
QSeries labelled_series(const std::string& label, long prec);

} // namespace replikit
