#include "replikit/qseries.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace replikit {

Rational frac(long num, long den)
{
    if (den == 0)
        throw PreconditionError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_from_string(const std::string& s)
{
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw ParseError("not a rational: '" + s + "'");
    r.canonicalize();
    return r;
}

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

static long clamp_prec(long p) { return std::min(p, QSeries::kExact); }

QSeries::QSeries(long first_index, std::vector<Rational> coeffs, long prec, int grid)
    : grid_(grid), floor_(first_index), prec_(clamp_prec(prec)), c_(std::move(coeffs))
{
    if (grid_ < 1)
        throw GridError("grid denominator must be positive");
    long keep = std::clamp(prec_ - floor_, 0L, static_cast<long>(c_.size()));
    c_.resize(keep);
    trim();
}

void QSeries::trim()
{
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0)
        ++lead;
    if (lead == c_.size()) {
        c_.clear();
        floor_ = prec_;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + lead);
        floor_ += static_cast<long>(lead);
    }
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

QSeries QSeries::zero(long prec, int grid) { return QSeries(prec, {}, prec, grid); }

QSeries QSeries::constant(const Rational& c, long prec) { return QSeries(0, {c}, prec); }

QSeries QSeries::monomial(long k, const Rational& c, long prec, int grid)
{
    return QSeries(k, {c}, prec, grid);
}

QSeries QSeries::normalized_from(const std::vector<Rational>& a)
{
    std::vector<Rational> c(a.size() + 1);
    c[0] = 1;
    for (size_t m = 1; m < a.size(); ++m)
        c[m + 1] = a[m];
    return QSeries(-1, std::move(c), static_cast<long>(a.size()));
}

bool QSeries::normalized() const
{
    return grid_ == 1 && floor_ == -1 && prec_ > 0 && c_[0] == 1 && (c_.size() < 2 || c_[1] == 0);
}

bool QSeries::integral() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.get_den() == 1; });
}

Rational QSeries::coeff(long k) const
{
    if (k >= prec_)
        throw PrecisionExceeded("coefficient index " + std::to_string(k) + " requested, series known below " +
                                std::to_string(prec_));
    if (k < floor_ || k >= top())
        return 0;
    return c_[k - floor_];
}

QSeries QSeries::truncated(long p) const
{
    if (p > prec_)
        throw PrecisionExceeded("cannot widen precision from " + std::to_string(prec_) + " to " + std::to_string(p));
    return QSeries(floor_, c_, p, grid_);
}

QSeries QSeries::on_grid(int m) const
{
    if (m % grid_ != 0)
        throw GridError("grid " + std::to_string(m) + " is not a multiple of " + std::to_string(grid_));
    long r = m / grid_;
    if (r == 1)
        return *this;
    std::vector<Rational> c(c_.empty() ? 0 : (c_.size() - 1) * r + 1);
    for (size_t i = 0; i < c_.size(); ++i)
        c[i * r] = c_[i];
    return QSeries(floor_ * r, std::move(c), prec_ >= kExact ? kExact : prec_ * r, m);
}

QSeries QSeries::compressed() const
{
    long g = grid_;
    for (size_t i = 0; i < c_.size() && g > 1; ++i)
        if (c_[i] != 0)
            g = std::gcd(g, floor_ + static_cast<long>(i));
    if (g <= 1)
        return *this;
    std::vector<Rational> c;
    long first = floor_ / g;
    for (size_t i = 0; i < c_.size(); i += g)
        c.push_back(c_[i]);
    long p = prec_ >= kExact ? kExact : ceil_div(prec_, g);
    return QSeries(first, std::move(c), p, grid_ / static_cast<int>(g));
}

QSeries QSeries::operator-() const
{
    QSeries r = *this;
    for (auto& x : r.c_)
        x = -x;
    return r;
}

static void align(QSeries& f, QSeries& g)
{
    if (f.grid() == g.grid())
        return;
    int m = std::lcm(f.grid(), g.grid());
    f = f.on_grid(m);
    g = g.on_grid(m);
}

QSeries& QSeries::operator+=(const QSeries& other)
{
    QSeries g = other;
    align(*this, g);
    long p = std::min(prec_, g.prec_);
    if (c_.empty() && g.c_.empty()) {
        *this = zero(p, grid_);
        return *this;
    }
    long lo = c_.empty() ? g.floor_ : g.c_.empty() ? floor_ : std::min(floor_, g.floor_);
    long hi = std::min(p, std::max(c_.empty() ? lo : top(), g.c_.empty() ? lo : g.top()));
    std::vector<Rational> c(std::max(0L, hi - lo));
    for (long k = lo; k < hi; ++k) {
        Rational& dst = c[k - lo];
        if (k >= floor_ && k < top())
            dst = c_[k - floor_];
        if (k >= g.floor_ && k < g.top())
            dst += g.c_[k - g.floor_];
    }
    *this = QSeries(lo, std::move(c), p, grid_);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& g) { return *this += -g; }

QSeries& QSeries::operator*=(const Rational& s)
{
    if (s == 0) {
        c_.clear();
        floor_ = prec_;
        return *this;
    }
    for (auto& x : c_)
        x *= s;
    return *this;
}

bool QSeries::operator==(const QSeries& o) const
{
    return grid_ == o.grid_ && prec_ == o.prec_ && floor_ == o.floor_ && c_ == o.c_;
}

QSeries operator+(QSeries f, const QSeries& g) { return f += g; }
QSeries operator-(QSeries f, const QSeries& g) { return f -= g; }
QSeries operator*(const Rational& s, QSeries f) { return f *= s; }
QSeries operator*(QSeries f, const Rational& s) { return f *= s; }

QSeries operator*(const QSeries& a, const QSeries& b)
{
    QSeries f = a, g = b;
    align(f, g);
    long p = clamp_prec(std::min(f.prec_ + g.floor_, g.prec_ + f.floor_));
    if (f.c_.empty() || g.c_.empty())
        return QSeries::zero(p, f.grid_);
    long lo = f.floor_ + g.floor_;
    long n = std::min(p, f.top() + g.top() - 1) - lo;
    if (n <= 0)
        return QSeries::zero(p, f.grid_);
    std::vector<Rational> c(n);
    long nf = static_cast<long>(f.c_.size()), ng = static_cast<long>(g.c_.size());
    if (f.integral() && g.integral()) {
        std::vector<Integer> acc(n);
        for (long i = 0; i < nf && i < n; ++i) {
            if (f.c_[i] == 0)
                continue;
            const Integer& fi = f.c_[i].get_num();
            long jmax = std::min(ng, n - i);
            for (long j = 0; j < jmax; ++j)
                mpz_addmul(acc[i + j].get_mpz_t(), fi.get_mpz_t(), g.c_[j].get_num_mpz_t());
        }
        for (long k = 0; k < n; ++k)
            c[k] = Rational(acc[k]);
    } else {
        for (long i = 0; i < nf && i < n; ++i) {
            if (f.c_[i] == 0)
                continue;
            long jmax = std::min(ng, n - i);
            for (long j = 0; j < jmax; ++j)
                c[i + j] += f.c_[i] * g.c_[j];
        }
    }
    return QSeries(lo, std::move(c), p, f.grid_);
}

QSeries pow(const QSeries& f, unsigned n)
{
    QSeries result = QSeries::constant(1);
    result = result.on_grid(f.grid());
    QSeries base = f;
    while (n > 0) {
        if (n & 1)
            result = result * base;
        n >>= 1;
        if (n)
            base = base * base;
    }
    return result;
}

QSeries inverse(const QSeries& f)
{
    if (f.is_zero())
        throw PreconditionError("inverse of a series with no known nonzero coefficient");
    long v = f.floor();
    const auto& a = f.data();
    if (f.prec() >= QSeries::kExact) {
        // Exact polynomials have no natural cut-off; only a monomial inverts exactly.
        if (a.size() != 1)
            throw PrecisionExceeded("inverse of an exact polynomial needs a truncation");
        return QSeries(-v, {1 / a[0]}, QSeries::kExact, f.grid());
    }
    long n = f.prec() - v;
    std::vector<Rational> b(n);
    Rational inv0 = 1 / a[0];
    long na = static_cast<long>(a.size());
    for (long k = 0; k < n; ++k) {
        Rational s = k == 0 ? Rational(1) : Rational(0);
        for (long i = 1; i <= k && i < na; ++i)
            s -= a[i] * b[k - i];
        b[k] = s * inv0;
    }
    return QSeries(-v, std::move(b), n - v, f.grid());
}

QSeries u_operator(const QSeries& f, long d)
{
    if (d < 1)
        throw PreconditionError("u_operator needs d >= 1");
    if (d == 1)
        return f;
    long p = f.prec() >= QSeries::kExact ? QSeries::kExact : floor_div(f.prec(), d);
    long lo = ceil_div(f.floor(), d);
    std::vector<Rational> c;
    for (long k = lo; k * d < f.top() && k < p; ++k)
        c.push_back(f.coeff(k * d));
    return QSeries(lo, std::move(c), p, f.grid());
}

QSeries v_operator(const QSeries& f, long a)
{
    if (a < 1)
        throw PreconditionError("v_operator needs a >= 1");
    if (a == 1)
        return f;
    const auto& src = f.data();
    std::vector<Rational> c(src.empty() ? 0 : (src.size() - 1) * a + 1);
    for (size_t i = 0; i < src.size(); ++i)
        c[i * a] = src[i];
    long p = f.prec() >= QSeries::kExact ? QSeries::kExact : f.prec() * a;
    return QSeries(f.floor() * a, std::move(c), p, f.grid());
}

QSeries residue_avg(const QSeries& f, long a, long d)
{
    return Rational(d) * v_operator(u_operator(f, d), a);
}

QSeries q_twist(const QSeries& f, Twist kind)
{
    if (f.grid() != 1)
        throw GridError("q_twist needs an integral exponent grid");
    std::vector<Rational> c = f.data();
    long base = f.floor();
    for (size_t i = 0; i < c.size(); ++i) {
        bool odd = ((base + static_cast<long>(i)) & 1) != 0;
        bool flip = kind == Twist::half_conjugate ? !odd : odd;
        if (flip)
            c[i] = -c[i];
    }
    return QSeries(base, std::move(c), f.prec(), 1);
}

QSeries root_substitution(const QSeries& f, int d, bool alternate)
{
    if (alternate && d != 2)
        throw GridError("sign alternation is only defined for square roots");
    std::vector<Rational> c = f.data();
    if (alternate)
        for (size_t i = 0; i < c.size(); ++i)
            if (((f.floor() + static_cast<long>(i)) & 1) != 0)
                c[i] = -c[i];
    return QSeries(f.floor(), std::move(c), f.prec(), f.grid() * d);
}

std::optional<long> first_difference(const QSeries& a, const QSeries& b, long lo, long hi)
{
    QSeries x = a, y = b;
    if (x.grid() != y.grid()) {
        int m = std::lcm(x.grid(), y.grid());
        x = x.on_grid(m);
        y = y.on_grid(m);
    }
    for (long k = lo; k < hi; ++k)
        if (x.coeff(k) != y.coeff(k))
            return k;
    return std::nullopt;
}

std::string to_json_string(const QSeries& f)
{
    nlohmann::ordered_json j;
    j["M"] = f.grid();
    j["floor"] = f.floor();
    j["prec"] = f.prec();
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (size_t i = 0; i < f.data().size(); ++i)
        if (f.data()[i] != 0)
            c[std::to_string(f.floor() + static_cast<long>(i))] = rational_to_string(f.data()[i]);
    j["coeffs"] = c;
    return j.dump();
}

QSeries qseries_from_json_string(const std::string& s)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("series JSON: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "M" && it.key() != "floor" && it.key() != "prec" && it.key() != "coeffs")
            throw ParseError("series JSON: unknown key '" + it.key() + "'");
    int m = j.at("M").get<int>();
    long prec = j.at("prec").get<long>();
    std::vector<std::pair<long, Rational>> items;
    for (auto it = j.at("coeffs").begin(); it != j.at("coeffs").end(); ++it)
        items.emplace_back(std::stol(it.key()), rational_from_string(it.value().get<std::string>()));
    if (items.empty())
        return QSeries::zero(prec, m);
    std::sort(items.begin(), items.end(), [](auto& a, auto& b) { return a.first < b.first; });
    long lo = items.front().first;
    std::vector<Rational> c(items.back().first - lo + 1);
    for (auto& [k, v] : items)
        c[k - lo] = v;
    return QSeries(lo, std::move(c), prec, m);
}

std::string pretty(const QSeries& f, long max_terms)
{
    std::ostringstream os;
    long shown = 0;
    for (size_t i = 0; i < f.data().size() && shown < max_terms; ++i) {
        const Rational& c = f.data()[i];
        if (c == 0)
            continue;
        long k = f.floor() + static_cast<long>(i);
        os << (shown == 0 ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        Rational a = abs(c);
        bool unit = a == 1 && k != 0;
        if (!unit)
            os << a.get_str();
        if (k != 0) {
            os << "q";
            if (f.grid() == 1) {
                if (k != 1)
                    os << "^" << k;
            } else {
                os << "^(" << k << "/" << f.grid() << ")";
            }
        }
        ++shown;
    }
    if (shown == 0)
        os << "0";
    if (f.prec() < QSeries::kExact) {
        os << " + O(q^";
        if (f.grid() == 1)
            os << f.prec();
        else
            os << "(" << f.prec() << "/" << f.grid() << ")";
        os << ")";
    }
    return os.str();
}

} // namespace replikit
