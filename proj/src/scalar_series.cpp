#include "equi/scalar_series.hpp"

#include "equi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace equi {

Rational parse_rational(const std::string &text) {
    if (text.empty()) throw ParseError("empty rational");
    auto slash = text.find('/');
    auto valid_int = [](const std::string &s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw ParseError("malformed rational '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational &q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool MonomialLess::operator()(const Monomial &a, const Monomial &b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

// ---------------------------------------------------------------- PolyCoeff

PolyCoeff::PolyCoeff(const Rational &c) {
    if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

PolyCoeff PolyCoeff::symbol(Symbol s, int power) {
    Monomial m{};
    m[static_cast<int>(s)] = power;
    return monomial(m, Rational(1));
}

PolyCoeff PolyCoeff::monomial(const Monomial &m, const Rational &c) {
    PolyCoeff p;
    p.add_term(m, c);
    return p;
}

void PolyCoeff::add_term(const Monomial &m, const Rational &c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

bool PolyCoeff::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

Rational PolyCoeff::constant() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

bool PolyCoeff::contains(Symbol s) const { return degree_in(s) > 0; }

int PolyCoeff::degree_in(Symbol s) const {
    int d = 0;
    for (const auto &[m, c] : terms_) d = std::max(d, m[static_cast<int>(s)]);
    return d;
}

PolyCoeff &PolyCoeff::operator+=(const PolyCoeff &o) {
    for (const auto &[m, c] : o.terms_) add_term(m, c);
    return *this;
}

PolyCoeff &PolyCoeff::operator-=(const PolyCoeff &o) {
    for (const auto &[m, c] : o.terms_) add_term(m, -c);
    return *this;
}

PolyCoeff &PolyCoeff::operator*=(const Rational &c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_) v *= c;
    return *this;
}

PolyCoeff operator*(const PolyCoeff &a, const PolyCoeff &b) {
    PolyCoeff r;
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_) {
            Monomial m;
            for (int i = 0; i < kSymbolCount; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

PolyCoeff PolyCoeff::operator-() const {
    PolyCoeff r = *this;
    for (auto &[m, v] : r.terms_) v = -v;
    return r;
}

PolyCoeff PolyCoeff::substitute_shift(Symbol sym, const PolyCoeff &shift) const {
    if (shift.contains(sym)) throw SelfReference("shift for a symbol may not contain the symbol itself");
    const int idx = static_cast<int>(sym);
    const int maxdeg = degree_in(sym);
    // (sym + shift)^j, j = 0..maxdeg
    std::vector<PolyCoeff> powers{PolyCoeff(1)};
    const PolyCoeff base = PolyCoeff::symbol(sym) + shift;
    for (int j = 1; j <= maxdeg; ++j) powers.push_back(powers.back() * base);
    PolyCoeff r;
    for (const auto &[m, c] : terms_) {
        Monomial rest = m;
        rest[idx] = 0;
        r += PolyCoeff::monomial(rest, c) * powers[m[idx]];
    }
    return r;
}

PolyCoeff PolyCoeff::substitute_value(Symbol sym, const Rational &value) const {
    const int idx = static_cast<int>(sym);
    PolyCoeff r;
    for (const auto &[m, c] : terms_) {
        Monomial rest = m;
        rest[idx] = 0;
        Rational f = c;
        for (int j = 0; j < m[idx]; ++j) f *= value;
        r.add_term(rest, f);
    }
    return r;
}

double PolyCoeff::eval(const std::array<double, kSymbolCount> &values) const {
    double sum = 0.0;
    for (const auto &[m, c] : terms_) {
        double term = c.get_d();
        for (int i = 0; i < kSymbolCount; ++i) term *= std::pow(values[i], m[i]);
        sum += term;
    }
    return sum;
}

std::string PolyCoeff::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::vector<std::string> factors;
        if (m == Monomial{} || c != 1) factors.push_back(c.get_str());
        for (int i = 0; i < kSymbolCount; ++i) {
            if (m[i] == 0) continue;
            std::string f = kSymbolNames[i];
            if (m[i] > 1) f += "^" + std::to_string(m[i]);
            factors.push_back(f);
        }
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

// ------------------------------------------------------------ LaurentSeries

namespace {

int clamp_precision(long long p) {
    return static_cast<int>(std::min<long long>(p, LaurentSeries::kExact));
}

}  // namespace

LaurentSeries::LaurentSeries(const PolyCoeff &c) {
    if (!c.is_zero()) terms_.emplace(0, c);
}

LaurentSeries LaurentSeries::monomial(const PolyCoeff &c, int k) {
    LaurentSeries r;
    if (!c.is_zero()) r.terms_.emplace(k, c);
    return r;
}

LaurentSeries LaurentSeries::from_terms(Terms terms, int precision) {
    LaurentSeries r;
    r.terms_ = std::move(terms);
    r.prec_ = clamp_precision(precision);
    r.normalize();
    return r;
}

void LaurentSeries::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero() || it->first > prec_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

int LaurentSeries::valuation() const {
    if (!terms_.empty()) return terms_.begin()->first;
    return is_exact() ? kExact : prec_ + 1;
}

int LaurentSeries::pole_order() const {
    if (terms_.empty()) return 0;
    return std::max(0, -terms_.begin()->first);
}

PolyCoeff LaurentSeries::coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? PolyCoeff() : it->second;
}

LaurentSeries &LaurentSeries::operator+=(const LaurentSeries &o) {
    prec_ = std::min(prec_, o.prec_);
    for (const auto &[k, c] : o.terms_) {
        if (k > prec_) break;
        terms_[k] += c;
    }
    normalize();
    return *this;
}

LaurentSeries &LaurentSeries::operator-=(const LaurentSeries &o) { return *this += -o; }

LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b) {
    LaurentSeries r;
    long long pa = a.prec_, pb = b.prec_;
    long long prec = std::min(pa + b.valuation(), pb + a.valuation());
    r.prec_ = clamp_precision(prec);
    for (const auto &[ka, ca] : a.terms_) {
        for (const auto &[kb, cb] : b.terms_) {
            if (ka + kb > r.prec_) break;
            r.terms_[ka + kb] += ca * cb;
        }
    }
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto &[k, c] : r.terms_) c = -c;
    return r;
}

bool LaurentSeries::operator==(const LaurentSeries &o) const {
    const int p = std::min(prec_, o.prec_);
    auto trim = [p](const Terms &t) {
        Terms out;
        for (const auto &[k, c] : t)
            if (k <= p) out.emplace(k, c);
        return out;
    };
    return trim(terms_) == trim(o.terms_);
}

LaurentSeries LaurentSeries::truncated(int order) const {
    LaurentSeries r = *this;
    r.prec_ = std::min(prec_, order);
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::with_precision(int precision) const {
    LaurentSeries r = *this;
    r.prec_ = clamp_precision(precision);
    r.normalize();
    return r;
}

bool LaurentSeries::contains(Symbol s) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [s](const auto &kv) { return kv.second.contains(s); });
}

bool LaurentSeries::is_rational_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_constant();
}

std::string LaurentSeries::to_string() const {
    std::ostringstream os;
    if (terms_.empty()) os << "0";
    bool first = true;
    for (const auto &[k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (k != 0) os << "*z^" << k;
    }
    if (!is_exact()) os << " + O(z^" << prec_ + 1 << ")";
    return os.str();
}

// ---------------------------------------------------------------- operations

LaurentSeries series_arith(const LaurentSeries &x, const LaurentSeries &y, SeriesOp kind, int order) {
    switch (kind) {
    case SeriesOp::add: return x + y;
    case SeriesOp::mul: return x * y;
    case SeriesOp::invert: return invert(x, order);
    case SeriesOp::differentiate: return differentiate(x);
    }
    return {};
}

LaurentSeries invert(const LaurentSeries &x, int order) {
    if (x.is_zero()) throw InvertNonUnit("cannot invert the zero series");
    const int v = x.valuation();
    const PolyCoeff lead = x.coeff(v);
    if (!lead.is_constant()) throw InvertNonUnit("leading coefficient is not a pure rational: " + lead.to_string());
    const Rational inv_lead = 1 / lead.constant();
    int prec = order;
    if (!x.is_exact()) prec = std::min<long long>(order, static_cast<long long>(x.precision()) - 2LL * v);
    // y = z^{-v} * sum_n y_n z^n with y_0 = 1/lead
    const int count = prec + v;  // relative orders 0..count
    if (count < 0) throw PrecisionLoss("inverse has no known terms at the requested order");
    std::vector<PolyCoeff> u(static_cast<std::size_t>(count) + 1), y(u.size());
    for (int j = 0; j <= count; ++j) u[j] = x.coeff(v + j);
    y[0] = PolyCoeff(inv_lead);
    for (int n = 1; n <= count; ++n) {
        PolyCoeff acc;
        for (int j = 1; j <= n; ++j) acc += u[j] * y[n - j];
        y[n] = -(acc * inv_lead);
    }
    LaurentSeries::Terms terms;
    for (int n = 0; n <= count; ++n)
        if (!y[n].is_zero()) terms.emplace(n - v, y[n]);
    return LaurentSeries::from_terms(std::move(terms), prec);
}

LaurentSeries differentiate(const LaurentSeries &x) {
    LaurentSeries::Terms terms;
    for (const auto &[k, c] : x.terms())
        if (k != 0) terms.emplace(k - 1, c * Rational(k));
    return LaurentSeries::from_terms(std::move(terms), x.is_exact() ? LaurentSeries::kExact : x.precision() - 1);
}

LaurentSeries integrate(const LaurentSeries &x) {
    LaurentSeries::Terms terms;
    for (const auto &[k, c] : x.terms()) {
        if (k == -1) throw InvertNonUnit("antiderivative of z^-1 is not a Laurent series");
        terms.emplace(k + 1, c * ratio(1, k + 1));
    }
    return LaurentSeries::from_terms(std::move(terms), x.is_exact() ? LaurentSeries::kExact : x.precision() + 1);
}

LaurentSeries pole_part(const LaurentSeries &x) {
    if (x.precision() < -1) throw PrecisionLoss("pole part requested beyond known precision: " + x.to_string());
    LaurentSeries::Terms terms;
    for (const auto &[k, c] : x.terms())
        if (k < 0) terms.emplace(k, c);
    return LaurentSeries::from_terms(std::move(terms));
}

LaurentSeries regular_part(const LaurentSeries &x) {
    LaurentSeries::Terms terms;
    for (const auto &[k, c] : x.terms())
        if (k >= 0) terms.emplace(k, c);
    return LaurentSeries::from_terms(std::move(terms), x.precision());
}

LaurentSeries substitute_symbol_shift(const LaurentSeries &x, Symbol sym, const PolyCoeff &shift) {
    if (shift.contains(sym)) throw SelfReference("shift for a symbol may not contain the symbol itself");
    LaurentSeries::Terms terms;
    for (const auto &[k, c] : x.terms()) terms.emplace(k, c.substitute_shift(sym, shift));
    return LaurentSeries::from_terms(std::move(terms), x.precision());
}

LaurentSeries substitute_symbol_value(const LaurentSeries &x, Symbol sym, const Rational &value) {
    LaurentSeries::Terms terms;
    for (const auto &[k, c] : x.terms()) terms.emplace(k, c.substitute_value(sym, value));
    return LaurentSeries::from_terms(std::move(terms), x.precision());
}

LaurentSeries exp_series(const LaurentSeries &x, int order) {
    if (x.is_zero()) return LaurentSeries(1).with_precision(std::min(order, x.precision()));
    if (x.valuation() < 1) throw BadConstantTerm("exp_series needs an argument vanishing at z = 0");
    LaurentSeries sum(1), term(1);
    for (int j = 1; j <= order; ++j) {
        term = (term * x).truncated(order) * LaurentSeries(Rational(1, j));
        if (term.is_zero()) break;
        sum += term;
    }
    return sum.truncated(std::min(order, x.precision()));
}

LaurentSeries power(const LaurentSeries &x, int n) {
    LaurentSeries r(1);
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

double eval_numeric(const LaurentSeries &x, double z0, const Assignment &values) {
    if (z0 == 0.0 && x.pole_order() > 0) throw ZeroPoint("series with a pole evaluated at z = 0");
    const std::array<double, kSymbolCount> vals{values.L, values.v, values.s, values.t};
    double sum = 0.0;
    for (const auto &[k, c] : x.terms()) sum += c.eval(vals) * std::pow(z0, k);
    return sum;
}

}  // namespace equi
