#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "replikit/family_spec.hpp"
#include "replikit/replication.hpp"
#include "replikit/report.hpp"

namespace replikit {

// Coefficients a_1, a_2, ... of every non-zero member of a completely
// (2+)-replicable family, grown in lockstep.
struct FamilyState {
    std::map<ReplicateIndex, ReplicateIndex> closure;
    std::optional<ReplicateIndex> default_target;
    ReplicateFamily shape; // resolution only; member series are placeholders
    std::map<ReplicateIndex, std::vector<Rational>> coeffs; // coeffs[r][k] = a_k, slot 0 unused
    std::set<ReplicateIndex> zero_members;
    std::map<ReplicateIndex, std::map<long, Rational>> seeds;
    std::set<std::pair<ReplicateIndex, long>> consumed;

    // Highest index known for every member.
    long known() const;
};

// Seeds a_1..a_{seed_count} of each member from its source (catalog, inline
// coefficients or zero). Only a_1, a_2, a_3, a_5 are needed; the rest are
// cross-checked as the recurrence reaches them.
FamilyState seed_state(const FamilySpec& spec, long seed_count = 5);

// a_n of member r from smaller coefficients. n = 4k uses item 1, 4k+1 item 2,
// 4k+2 item 3, 4k+3 item 4 (with the a_{2j} a^{[sqrt2]} sum over odd j).
Rational next_coeff(const FamilyState& state, const ReplicateIndex& member, long n);

// Grows every member to target_n coefficients.
FamilyState& extend_family(FamilyState& state, long target_n);

// Seeds from the spec, extends to target_n, diffs every member against its
// oracle, and re-runs the replication check for n <= 10 on the extended family.
Report reconstruct_and_match(const FamilySpec& spec, long target_n, long seed_count = 5);

// Extended family as series (prec = known() + 1).
ReplicateFamily state_family(const FamilyState& state);

} // namespace replikit
