#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "replikit/replication.hpp"

namespace replikit {

struct MemberSource {
    enum class Kind { catalog, conj, zero, coeffs };
    Kind kind = Kind::zero;
    std::string label;           // catalog / conj
    std::vector<Rational> coeffs; // a_1, a_2, ... for inline members

    std::string str() const;
};

// JSON form:
// {"mode": "two_plus", "members": {"1": "catalog:1A", "sqrt2": "catalog:2A"},
//  "closure": {"2sqrt2": "sqrt2", "default": "2"}}
// Member values: "catalog:<label>", "conj:<label>" (half conjugate), "zero", or
// an array of coefficients a_1, a_2, ... of q^{-1} + sum a_m q^m.
struct FamilySpec {
    std::string name;
    Mode mode = Mode::two_plus;
    std::map<ReplicateIndex, MemberSource> members;
    std::map<ReplicateIndex, ReplicateIndex> closure;
    std::optional<ReplicateIndex> default_target;
};

FamilySpec parse_family_spec(const std::string& json_text);
FamilySpec load_family_spec(const std::string& path);
std::string to_json_string(const FamilySpec& spec);

// Resolves every member to a series known below q^prec.
ReplicateFamily build_family(const FamilySpec& spec, long prec);
QSeries member_series(const MemberSource& m, long prec);

FamilySpec self_family_spec(const std::string& label);
// 1A with sqrt2- and 2-replicates 2A.
FamilySpec family_1a_spec();
// 1A with every n*sqrt2 replicate zero and every n replicate 1A.
FamilySpec zero_choice_1a_spec();

struct ClassRow {
    std::string cls;     // class of g
    std::string square;  // class of g^2
    std::string t_label; // T_{t,g}
    std::string s_label; // sqrt2-replicate T_{1,gt}
};

const std::vector<ClassRow>& class_table();
// Family {f^[sqrt2^e]} read off the g -> g^2 chain, if every label is in the catalog.
std::optional<FamilySpec> class_family(const ClassRow& row);
std::string class_skip_reason(const ClassRow& row);

} // namespace replikit
