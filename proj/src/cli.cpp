#include "replikit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "replikit/eta_catalog.hpp"
#include "replikit/faber.hpp"
#include "replikit/family_algebra.hpp"
#include "replikit/family_spec.hpp"
#include "replikit/hecke_cosets.hpp"
#include "replikit/recurrence.hpp"
#include "replikit/replication.hpp"
#include "replikit/suite.hpp"

namespace replikit {

namespace {

struct UsageError : Error {
    using Error::Error;
};

long default_prec()
{
    if (const char* p = std::getenv("REPLIKIT_PREC")) {
        try {
            size_t used = 0;
            long v = std::stol(p, &used);
            if (used == std::string(p).size() && v > 0)
                return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("REPLIKIT_PREC must be a positive integer, got '") + p + "'");
    }
    return 60;
}

// Path to a spec file, or one of the built-in names.
FamilySpec resolve_family(const std::string& name)
{
    if (name == "1A")
        return family_1a_spec();
    if (name == "1A-zero")
        return zero_choice_1a_spec();
    if (name.rfind("self:", 0) == 0)
        return self_family_spec(name.substr(5));
    if (name.rfind("class:", 0) == 0) {
        std::string cls = name.substr(6);
        for (const auto& row : class_table())
            if (row.cls == cls) {
                if (auto s = class_family(row))
                    return *s;
                throw UsageError("class " + cls + " is skipped: " + class_skip_reason(row));
            }
        throw UsageError("no class " + cls + " in the table");
    }
    return load_family_spec(name);
}

int finish(const Report& rep, bool json, std::ostream& out)
{
    if (json)
        out << to_json(rep).dump(2) << "\n";
    else
        out << render_text(rep);
    return rep.passed() ? 0 : 1;
}

std::vector<long> parse_list(const std::string& s)
{
    std::vector<long> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw UsageError("bad integer list '" + s + "'");
        }
    }
    return v;
}

} // namespace

int cli_run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact q-series toolkit for (2+)-replicable functions"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    // expand
    auto* expand = app.add_subcommand("expand", "q-expansion of a catalog Hauptmodul");
    std::string label;
    long prec = 0;
    expand->add_option("label", label, "catalog label (1A, 2A, 2B, 4A, 4C, 4D)")->required();
    expand->add_option("--prec", prec, "coefficients below q^prec");
    expand->add_flag("--json", json);

    // faber
    auto* faber = app.add_subcommand("faber", "Faber polynomial P_n of a catalog Hauptmodul");
    long n = 1;
    bool check = false;
    faber->add_option("label", label)->required();
    faber->add_option("n", n)->required()->check(CLI::PositiveNumber);
    faber->add_flag("--check", check, "confirm P_n(f) = q^-n + O(q) and the recurrence construction");
    faber->add_flag("--json", json);

    // cosets
    auto* cosets = app.add_subcommand("cosets", "enumerate coset representatives of determinant m");
    long m = 1;
    std::string kind = "M";
    cosets->add_option("m", m)->required()->check(CLI::PositiveNumber);
    cosets->add_option("--kind", kind, "M1, S1, S2, M2 or M");
    cosets->add_flag("--json", json);

    // check
    auto* chk = app.add_subcommand("check", "replication check of a family");
    std::string family;
    long nmax = 10, depth = 0;
    bool complete = false, table = false;
    chk->add_option("--family", family, "spec file, 1A, 1A-zero, self:<label> or class:<cls>");
    chk->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
    chk->add_option("--prec", prec);
    chk->add_flag("--complete", complete, "also re-root at sqrt2^e for e <= depth");
    chk->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    chk->add_flag("--class-table", table, "list the class table with verification status");
    chk->add_flag("--json", json);

    // verify
    auto* verify = app.add_subcommand("verify", "identity checks");
    verify->require_subcommand(1);
    auto* vh = verify->add_subcommand("hecke", "T~_m = sum of T over the decomposition");
    std::string ms = "2,3,4,6,8,12,36";
    long terms = 0;
    label = "2A";
    vh->add_option("--m", ms, "comma-separated list");
    vh->add_option("--label", label);
    vh->add_option("--terms", terms);
    vh->add_flag("--json", json);
    auto* vo = verify->add_subcommand("op-identity", "matrix multiset identity, optionally materialized");
    std::string lhs, rhs;
    vo->add_option("--lhs", lhs)->required();
    vo->add_option("--rhs", rhs)->required();
    vo->add_option("--family", family, "also compare the materialized series on this family");
    vo->add_option("--terms", terms);
    vo->add_flag("--json", json);
    auto* vd = verify->add_subcommand("decomp", "c_k(A) = c_k(B) + 2 c_2k(C)");
    std::string la, lb, lc;
    vd->add_option("--a", la)->required();
    vd->add_option("--b", lb)->required();
    vd->add_option("--c", lc)->required();
    vd->add_option("--terms", terms);
    vd->add_flag("--json", json);
    auto* vs = verify->add_subcommand("sigma2", "second elementary symmetric function of the five series");
    vs->add_option("--family", family)->required();
    vs->add_option("--terms", terms);
    vs->add_flag("--json", json);
    auto* vp = verify->add_subcommand("powersum", "power-sum recurrence for k = 1..kmax");
    long kmax = 4;
    vp->add_option("--family", family)->required();
    vp->add_option("--kmax", kmax)->check(CLI::Range(1, 6));
    vp->add_option("--terms", terms);
    vp->add_flag("--json", json);

    // extend
    auto* ext = app.add_subcommand("extend", "grow a family from seed coefficients");
    long to = 100, seeds = 5;
    bool oracle = false;
    ext->add_option("--family", family)->required();
    ext->add_option("--to", to)->check(CLI::PositiveNumber);
    ext->add_option("--seeds", seeds, "seed coefficients taken from each member")->check(CLI::Range(5, 1000));
    ext->add_flag("--oracle", oracle, "diff against the member sources and re-check replication");
    ext->add_flag("--json", json);

    // suite
    auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
    std::string only;
    suite->add_option("--only", only, "comma-separated criterion ids");
    suite->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, r;
        int code = app.exit(e, o, r);
        out << o.str();
        err << r.str();
        return code == 0 ? 0 : 2;
    }

    try {
        long p = prec > 0 ? prec : default_prec();
        if (*expand) {
            QSeries f = catalog_series(label, p);
            if (json)
                out << to_json(f).dump(2) << "\n";
            else
                out << label << " = " << pretty(f, p + 1) << "\n";
            return 0;
        }
        if (*faber) {
            QSeries f = catalog_series(label, std::max(p, n + 2));
            FaberPoly poly = faber_poly(f, n);
            Report rep{"Faber polynomial", {}, 0};
            if (check) {
                QSeries v = faber_apply(poly, f);
                rep.add(compare_series("P_" + std::to_string(n) + "(f) = q^-" + std::to_string(n) + " + O(q)", v,
                                       QSeries::monomial(-n, 1), -n, 1, n));
                bool same = faber_poly_recurrence(f, n) == poly;
                rep.add(Check{"elimination = recurrence", same, "", {}});
            }
            if (json) {
                nlohmann::ordered_json j;
                j["label"] = label;
                j["n"] = n;
                nlohmann::ordered_json b = nlohmann::ordered_json::array();
                for (const auto& c : poly.b)
                    b.push_back(rational_to_string(c));
                j["coefficients"] = b;
                if (check)
                    j["report"] = to_json(rep);
                out << j.dump(2) << "\n";
            } else {
                out << "P_" << n << "(t) = " << to_string(poly) << "\n";
                if (check)
                    out << render_text(rep);
            }
            return rep.passed() ? 0 : 1;
        }
        if (*cosets) {
            CosetSet s = enum_cosets(m, coset_kind_from_string(kind));
            if (json) {
                nlohmann::ordered_json j;
                j["m"] = m;
                j["kind"] = to_string(s.kind);
                j["reps"] = nlohmann::ordered_json::array();
                for (const auto& g : s.reps)
                    j["reps"].push_back({{"x", g.x}, {"y", g.y}, {"z", g.z}, {"scaled", g.scaled}});
                out << j.dump(2) << "\n";
            } else {
                for (const auto& g : s.reps)
                    out << to_string(g) << "\n";
                out << s.reps.size() << " representatives\n";
            }
            return 0;
        }
        if (*chk) {
            if (table) {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (const auto& row : class_table()) {
                    std::string why = class_skip_reason(row);
                    if (json)
                        j.push_back({{"class", row.cls}, {"square", row.square}, {"t", row.t_label},
                                     {"s", row.s_label}, {"status", why.empty() ? "verifiable" : "skipped"},
                                     {"reason", why}});
                    else
                        out << row.cls << "\t" << row.t_label << "\t" << row.s_label << "\t"
                            << (why.empty() ? "verifiable" : "skipped: " + why) << "\n";
                }
                if (json)
                    out << j.dump(2) << "\n";
                return 0;
            }
            if (family.empty())
                throw UsageError("check needs --family or --class-table");
            FamilySpec spec = resolve_family(family);
            ReplicateFamily fam = build_family(spec, replication_member_prec(nmax, p));
            Report rep = complete ? check_complete(fam, static_cast<int>(depth), nmax, p)
                                  : check_replication(fam, nmax, p);
            return finish(rep, json, out);
        }
        if (*vh) {
            long t = terms > 0 ? terms : 40;
            Report rep{"Hecke decomposition", {}, 0};
            std::vector<long> list = parse_list(ms);
            long top = 1;
            for (long v : list) {
                if (v < 1)
                    throw UsageError("m must be positive");
                top = std::max(top, v);
            }
            QSeries f = catalog_series(label, hecke_input_prec(top, t));
            for (long v : list)
                rep.merge(verify_hecke_formula(f, v, t), "m=" + std::to_string(v) + ": ");
            return finish(rep, json, out);
        }
        if (*vo) {
            Report rep = verify_op_identity(lhs, rhs);
            if (!family.empty()) {
                long t = terms > 0 ? terms : 30;
                OpExpr el = parse_op_expr(lhs), er = parse_op_expr(rhs);
                long deg = std::max(op_expr_degree(el), op_expr_degree(er));
                ReplicateFamily fam = build_family(resolve_family(family), deg * (t + 1) + 1);
                rep.add(compare_series("materialized on " + family, materialize(op_expr_multiset(el), fam),
                                       materialize(op_expr_multiset(er), fam), -deg, t));
            }
            return finish(rep, json, out);
        }
        if (*vd)
            return finish(verify_decomp_instance(la, lb, lc, terms > 0 ? terms : p), json, out);
        if (*vs || *vp) {
            long t = terms > 0 ? terms : 40;
            ReplicateFamily fam = build_family(resolve_family(family), 4 * t + 10 * kmax);
            if (*vs)
                return finish(verify_sigma2(fam, t), json, out);
            Report rep{"power-sum recurrence", {}, 0};
            for (long k = 1; k <= kmax; ++k)
                rep.merge(verify_prop_rec(fam, k, t));
            return finish(rep, json, out);
        }
        if (*ext) {
            FamilySpec spec = resolve_family(family);
            if (oracle)
                return finish(reconstruct_and_match(spec, to, seeds), json, out);
            FamilyState st = seed_state(spec, seeds);
            extend_family(st, to);
            if (json) {
                nlohmann::ordered_json j;
                for (const auto& [r, a] : st.coeffs) {
                    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                    for (long k = 1; k <= to; ++k)
                        arr.push_back(rational_to_string(a[k]));
                    j[r.str()] = arr;
                }
                out << j.dump(2) << "\n";
            } else {
                for (const auto& [r, a] : st.coeffs) {
                    out << "member " << r.str() << "\n";
                    for (long k = 1; k <= to; ++k)
                        out << "  a_" << k << " = " << a[k].get_str() << "\n";
                }
            }
            return 0;
        }
        if (*suite) {
            std::vector<int> ids;
            for (long v : parse_list(only))
                ids.push_back(static_cast<int>(v));
            if (!only.empty() && ids.empty())
                throw UsageError("empty --only list");
            bool all = true;
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (int id : ids)
                if (id < 1 || id > kCriterionCount)
                    throw UsageError("no criterion " + std::to_string(id));
            for (int id = 1; id <= kCriterionCount; ++id) {
                if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end())
                    continue;
                CriterionResult r = run_criterion(id);
                all = all && r.pass;
                if (json)
                    j.push_back(to_json(r));
                else
                    out << render_line(r) << std::endl;
            }
            if (json)
                out << j.dump(2) << "\n";
            return all ? 0 : 1;
        }
    } catch (const SeedConflict& e) {
        err << "mismatch: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int cli_run(int argc, char** argv) { return cli_run(argc, argv, std::cout, std::cerr); }

} // namespace replikit
