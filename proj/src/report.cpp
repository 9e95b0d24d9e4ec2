#include "replikit/report.hpp"

#include <numeric>
#include <sstream>

namespace replikit {

bool Report::passed() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

void Report::merge(const Report& other, const std::string& prefix)
{
    for (auto c : other.checks) {
        c.name = prefix + c.name;
        checks.push_back(std::move(c));
    }
    wall_seconds += other.wall_seconds;
}

Check compare_series(const std::string& name, const QSeries& lhs, const QSeries& rhs, long lo, long hi, long n)
{
    constexpr size_t kCap = 8;
    QSeries a = lhs, b = rhs;
    if (a.grid() != b.grid()) {
        int m = std::lcm(a.grid(), b.grid());
        a = a.on_grid(m);
        b = b.on_grid(m);
    }
    if (a.prec() < hi || b.prec() < hi)
        throw PrecisionExceeded(name + ": comparison up to index " + std::to_string(hi) + " but sides known below " +
                                std::to_string(a.prec()) + " and " + std::to_string(b.prec()));
    Check c{name, true, "", {}};
    long bad = 0;
    for (long k = lo; k < hi; ++k) {
        Rational x = a.coeff(k), y = b.coeff(k);
        if (x != y) {
            c.pass = false;
            ++bad;
            if (c.mismatches.size() < kCap)
                c.mismatches.push_back({n, k, x, y});
        }
    }
    std::ostringstream os;
    os << "indices [" << lo << ", " << hi << ")";
    if (a.grid() != 1)
        os << " on grid " << a.grid();
    if (bad)
        os << ", " << bad << " differ";
    c.detail = os.str();
    return c;
}

nlohmann::ordered_json to_json(const QSeries& f) { return nlohmann::ordered_json::parse(to_json_string(f)); }

QSeries qseries_from_json(const nlohmann::json& j) { return qseries_from_json_string(j.dump()); }

nlohmann::ordered_json to_json(const Report& r)
{
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["pass"] = r.passed();
    j["wall_seconds"] = r.wall_seconds;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        nlohmann::ordered_json ms = nlohmann::ordered_json::array();
        for (const auto& m : c.mismatches)
            ms.push_back({{"n", m.n},
                          {"exponent", m.exponent},
                          {"lhs", rational_to_string(m.lhs)},
                          {"rhs", rational_to_string(m.rhs)}});
        cj["mismatches"] = ms;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    return j;
}

Report report_from_json(const nlohmann::json& j)
{
    Report r;
    r.suite = j.at("suite").get<std::string>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    for (const auto& cj : j.at("checks")) {
        Check c;
        c.name = cj.at("name").get<std::string>();
        c.pass = cj.at("pass").get<bool>();
        c.detail = cj.at("detail").get<std::string>();
        for (const auto& mj : cj.at("mismatches"))
            c.mismatches.push_back({mj.at("n").get<long>(), mj.at("exponent").get<long>(),
                                    rational_from_string(mj.at("lhs").get<std::string>()),
                                    rational_from_string(mj.at("rhs").get<std::string>())});
        r.checks.push_back(std::move(c));
    }
    return r;
}

std::string render_text(const Report& r)
{
    std::ostringstream os;
    size_t passed = 0;
    for (const auto& c : r.checks) {
        passed += c.pass;
        os << (c.pass ? "PASS  " : "FAIL  ") << c.name;
        if (!c.detail.empty())
            os << "  (" << c.detail << ")";
        os << "\n";
        for (const auto& m : c.mismatches)
            os << "      n=" << m.n << " index=" << m.exponent << " lhs=" << m.lhs.get_str()
               << " rhs=" << m.rhs.get_str() << "\n";
    }
    os << r.suite << ": " << passed << "/" << r.checks.size() << " checks passed";
    os << " in " << r.wall_seconds << " s\n";
    return os.str();
}

} // namespace replikit
