#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "replikit/qseries.hpp"

namespace replikit {

struct Mismatch {
    long n = 0;        // operator/replication index the check belongs to
    long exponent = 0; // grid index of the first differing coefficient
    Rational lhs;
    Rational rhs;

    bool operator==(const Mismatch& o) const
    {
        return n == o.n && exponent == o.exponent && lhs == o.lhs && rhs == o.rhs;
    }
};

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
    std::vector<Mismatch> mismatches;

    bool operator==(const Check& o) const
    {
        return name == o.name && pass == o.pass && detail == o.detail && mismatches == o.mismatches;
    }
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    double wall_seconds = 0;

    bool passed() const;
    void add(Check c) { checks.push_back(std::move(c)); }
    void merge(const Report& other, const std::string& prefix = "");
    bool operator==(const Report& o) const { return suite == o.suite && checks == o.checks; }
};

// Compares lhs and rhs exactly on grid indices [lo, hi); records every differing
// index up to a cap. Throws PrecisionExceeded if either side is unknown there.
Check compare_series(const std::string& name, const QSeries& lhs, const QSeries& rhs, long lo, long hi, long n = 0);

nlohmann::ordered_json to_json(const QSeries& f);
QSeries qseries_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

std::string render_text(const Report& r);

} // namespace replikit
