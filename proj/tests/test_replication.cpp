#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "replikit/eta_catalog.hpp"
#include "replikit/faber.hpp"
#include "replikit/family_spec.hpp"
#include "replikit/replication.hpp"

using namespace replikit;

namespace {

const ReplicateIndex one{1, false}, sqrt2{1, true}, two{2, false}, two_sqrt2{2, true};

} // namespace

TEST_CASE("replicate index arithmetic")
{
    CHECK(sqrt2 * sqrt2 == two);
    CHECK(two * sqrt2 == two_sqrt2);
    CHECK((ReplicateIndex{3, true} * ReplicateIndex{5, true}) == ReplicateIndex{30, false});
    CHECK(ReplicateIndex::sqrt2_power(0) == one);
    CHECK(ReplicateIndex::sqrt2_power(3) == two_sqrt2);
    CHECK(two_sqrt2.two_adic() == 3);
    CHECK(ReplicateIndex{12, true}.odd_part() == 3);
    for (std::uint64_t n = 1; n <= 40; ++n)
        for (bool h : {false, true}) {
            ReplicateIndex r{n, h};
            CHECK(ReplicateIndex::parse(r.str()) == r);
        }
    CHECK(sqrt2.str() == "sqrt2");
    CHECK(two_sqrt2.str() == "2sqrt2");
    CHECK_THROWS_AS(ReplicateIndex::parse("x"), ParseError);
    CHECK_THROWS_AS(ReplicateIndex::parse("0"), ParseError);
}

TEST_CASE("resolution order")
{
    std::map<ReplicateIndex, QSeries> m;
    m.emplace(one, QSeries::constant(1));
    m.emplace(sqrt2, QSeries::constant(2));
    m.emplace(two, QSeries::constant(3));
    ReplicateFamily fam(Mode::two_plus, m, {{two_sqrt2, sqrt2}}, two);
    CHECK(fam.resolve(one) == one);
    CHECK(fam.resolve(two_sqrt2) == sqrt2);
    CHECK(fam.resolve(ReplicateIndex{3, false}) == one);          // odd part stripped
    CHECK(fam.resolve(ReplicateIndex{6, true}) == sqrt2);         // 6 sqrt2 -> 2 sqrt2 -> sqrt2
    CHECK(fam.resolve(ReplicateIndex{4, false}) == two);          // default
    CHECK(fam.rerooted(sqrt2).resolve(sqrt2) == two);
    CHECK(fam.rerooted(sqrt2).root().coeff(0) == 2);

    ReplicateFamily bare(Mode::two_plus, m);
    CHECK_THROWS_AS(bare.resolve(ReplicateIndex{4, false}), UnresolvedIndex);
    ReplicateFamily ord(Mode::ordinary, m);
    CHECK_THROWS_AS(ord.resolve(sqrt2), UnresolvedIndex);
}

TEST_CASE("n = 1 is trivial")
{
    ReplicateFamily fam = build_family(self_family_spec("2A"), 30);
    CHECK_FALSE(first_difference(rep_lhs(fam, 1), fam.root(), -1, 30));
}

TEST_CASE("2A self-family replicates")
{
    ReplicateFamily fam = build_family(self_family_spec("2A"), replication_member_prec(8, 40));
    Report r = check_replication(fam, 8, 40);
    CHECK(r.passed());
    CHECK(r.checks.size() == 8);
}

TEST_CASE("1A family and its spot value")
{
    ReplicateFamily fam = build_family(family_1a_spec(), replication_member_prec(10, 40));
    CHECK(check_replication(fam, 10, 40).passed());
    CHECK(rep_lhs(fam, 2).coeff(2) == Rational("40491909396"));
}

TEST_CASE("a perturbed coefficient is detected")
{
    QSeries f = catalog_series("2A", replication_member_prec(6, 30));
    for (long k : {1, 2, 5, 9}) {
        QSeries g = f + QSeries::monomial(k, 1, f.prec());
        ReplicateFamily fam(Mode::two_plus, {{one, g}}, {}, one);
        CHECK_FALSE(check_replication(fam, 6, 30).passed());
    }
}

TEST_CASE("check preconditions")
{
    ReplicateFamily fam = build_family(self_family_spec("2A"), 100);
    CHECK_THROWS_AS(check_replication(fam, 10, 20), PreconditionError);
    ReplicateFamily bad(Mode::two_plus, {{one, Rational(2) * catalog_series("2A", 100)}}, {}, one);
    CHECK_THROWS_AS(check_replication(bad, 2, 20), PreconditionError);
}

TEST_CASE("ordinary replication of j")
{
    // j - 744 with every replicate equal to itself
    ReplicateFamily fam(Mode::ordinary, {{one, catalog_series("1A", replication_member_prec(8, 30))}}, {}, one);
    CHECK(check_replication(fam, 8, 30).passed());
    // same function read off the two_plus family
    ReplicateFamily tp = build_family(family_1a_spec(), replication_member_prec(8, 30) * 2);
    ReplicateFamily ord = ordinary_from_two_plus(tp, 8);
    CHECK(ord.mode() == Mode::ordinary);
    CHECK(check_replication(ord, 8, 30).passed());
}

TEST_CASE("complete replication of a four-member chain")
{
    FamilySpec spec;
    spec.members[one] = MemberSource{MemberSource::Kind::catalog, "4D", {}};
    spec.members[sqrt2] = MemberSource{MemberSource::Kind::catalog, "4C", {}};
    spec.members[two] = MemberSource{MemberSource::Kind::catalog, "2B", {}};
    spec.members[two_sqrt2] = MemberSource{MemberSource::Kind::catalog, "2A", {}};
    spec.default_target = two_sqrt2;
    ReplicateFamily fam = build_family(spec, replication_member_prec(6, 30));
    CHECK(check_complete(fam, 3, 6, 30).passed());
    // swapping two members breaks it
    std::swap(spec.members[sqrt2], spec.members[two]);
    ReplicateFamily swapped = build_family(spec, replication_member_prec(6, 30));
    CHECK_FALSE(check_complete(swapped, 3, 6, 30).passed());
}

TEST_CASE("c_k(1A) = c_k(2A) + 2 c_2k(2A)")
{
    Report r = verify_decomp_instance("1A", "2A", "2A", 60);
    CHECK(r.passed());
    QSeries a = catalog_series("1A", 3), b = catalog_series("2A", 3);
    CHECK(a.coeff(1) == b.coeff(1) + 2 * b.coeff(2));
    CHECK_FALSE(verify_decomp_instance("1A", "2B", "2A", 10).passed());
}

TEST_CASE("family spec parsing")
{
    FamilySpec s = parse_family_spec(R"({"mode":"two_plus","members":{"1":"catalog:1A","sqrt2":"catalog:2A",
        "2":"catalog:2A"},"closure":{"default":"2"}})");
    CHECK(s.members.size() == 3);
    CHECK(s.default_target == two);
    FamilySpec back = parse_family_spec(to_json_string(s));
    CHECK(back.members.size() == 3);
    CHECK(back.default_target == two);
    CHECK_THROWS_AS(parse_family_spec(R"({"members":{"1":"catalog:2A"},"bogus":1})"), ParseError);
    CHECK_THROWS_AS(parse_family_spec(R"({"members":{"2":"catalog:2A"}})"), ParseError);
    CHECK_THROWS_AS(parse_family_spec(R"({"members":{"1":"catalog:9Z"}})"), UnknownLabel);
    CHECK_THROWS_AS(parse_family_spec(R"({"members":{"1":"catalog:2A"},"name":7})"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("[1,2]"), ParseError);
    FamilySpec inl = parse_family_spec(R"({"members":{"1":[4372, "96256", 1240002]}})");
    QSeries f = member_series(inl.members.at(one), 10);
    CHECK(f.prec() == 4);
    CHECK(f.coeff(2) == 96256);
}

TEST_CASE("class table")
{
    CHECK(class_table().size() == 247);
    std::vector<std::string> verified;
    for (const auto& row : class_table()) {
        auto spec = class_family(row);
        if (spec)
            verified.push_back(row.cls);
        else
            CHECK_FALSE(class_skip_reason(row).empty());
    }
    for (const char* need : {"1a", "2c", "2d", "2e", "4d"})
        CHECK(std::find(verified.begin(), verified.end(), need) != verified.end());
}
