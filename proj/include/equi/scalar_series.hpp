#pragma once

// Exact truncated Laurent series in z over Q[L, v, s, t].
//
// A series carries the highest power of z it knows exactly (its precision).
// Laurent polynomials built from literals are exact; series produced by
// inversion or exponentiation know their terms up to a requested order, and
// products propagate precision the usual power-series way:
//   prec(xy) = min(prec(x) + val(y), prec(y) + val(x)).

#include <gmpxx.h>

#include <array>
#include <climits>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>

namespace equi {

using Rational = mpq_class;

/// Parses "num/den" or "num"; the result is canonical.
Rational parse_rational(const std::string &text);
/// num/den in canonical form; the two-argument mpq_class constructor does not normalize.
inline Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}
/// Always emits "num/den", with den > 0.
std::string format_rational(const Rational &q);

inline bool is_zero(const Rational &q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

enum class Symbol : int { L = 0, v = 1, s = 2, t = 3 };
inline constexpr int kSymbolCount = 4;
inline constexpr std::array<const char *, kSymbolCount> kSymbolNames{"L", "v", "s", "t"};

/// Exponent vector over (L, v, s, t).
using Monomial = std::array<int, kSymbolCount>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct MonomialLess {
    bool operator()(const Monomial &a, const Monomial &b) const;
};

/// Sparse polynomial in the fixed symbols with rational coefficients.
class PolyCoeff {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    PolyCoeff() = default;
    PolyCoeff(const Rational &c);  // NOLINT: implicit scalar embedding
    PolyCoeff(int c) : PolyCoeff(Rational(c)) {}

    static PolyCoeff symbol(Symbol s, int power = 1);
    static PolyCoeff monomial(const Monomial &m, const Rational &c);

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (coefficient of the empty monomial).
    Rational constant() const;
    bool contains(Symbol s) const;
    int degree_in(Symbol s) const;

    PolyCoeff &operator+=(const PolyCoeff &o);
    PolyCoeff &operator-=(const PolyCoeff &o);
    PolyCoeff &operator*=(const Rational &c);
    friend PolyCoeff operator+(PolyCoeff a, const PolyCoeff &b) { return a += b; }
    friend PolyCoeff operator-(PolyCoeff a, const PolyCoeff &b) { return a -= b; }
    friend PolyCoeff operator*(const PolyCoeff &a, const PolyCoeff &b);
    friend PolyCoeff operator*(PolyCoeff a, const Rational &c) { return a *= c; }
    PolyCoeff operator-() const;
    bool operator==(const PolyCoeff &o) const { return terms_ == o.terms_; }

    /// Replaces `sym` by `sym + shift` and expands binomially.
    PolyCoeff substitute_shift(Symbol sym, const PolyCoeff &shift) const;
    /// Replaces `sym` by the rational `value`.
    PolyCoeff substitute_value(Symbol sym, const Rational &value) const;
    double eval(const std::array<double, kSymbolCount> &values) const;

    std::string to_string() const;

private:
    void add_term(const Monomial &m, const Rational &c);
    Terms terms_;
};

inline bool is_zero(const PolyCoeff &p) { return p.is_zero(); }

class LaurentSeries {
public:
    /// Precision value of a series whose every coefficient is known.
    static constexpr int kExact = INT_MAX / 4;
    static constexpr int kDefaultOrder = 6;

    using Terms = std::map<int, PolyCoeff>;

    LaurentSeries() = default;
    LaurentSeries(const PolyCoeff &c);  // NOLINT: implicit embedding
    LaurentSeries(const Rational &c) : LaurentSeries(PolyCoeff(c)) {}
    LaurentSeries(int c) : LaurentSeries(PolyCoeff(c)) {}

    /// c * z^k, exact.
    static LaurentSeries monomial(const PolyCoeff &c, int k);
    static LaurentSeries z_power(int k) { return monomial(PolyCoeff(1), k); }
    /// Builds a series from explicit terms, known up to z^precision.
    static LaurentSeries from_terms(Terms terms, int precision = kExact);

    const Terms &terms() const { return terms_; }
    /// Highest power of z known exactly.
    int precision() const { return prec_; }
    bool is_exact() const { return prec_ >= kExact; }
    bool is_zero() const { return terms_.empty(); }
    /// Lowest stored power of z; kExact for the zero series.
    int valuation() const;
    /// p such that the leading stored term is z^{-p}; 0 if regular.
    int pole_order() const;
    PolyCoeff coeff(int k) const;

    LaurentSeries &operator+=(const LaurentSeries &o);
    LaurentSeries &operator-=(const LaurentSeries &o);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries &b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries &b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b);
    LaurentSeries &operator*=(const LaurentSeries &o) { return *this = *this * o; }
    LaurentSeries operator-() const;
    /// Equality up to the smaller of the two precisions.
    bool operator==(const LaurentSeries &o) const;

    /// Drops every term above z^order and caps the precision there.
    LaurentSeries truncated(int order) const;
    /// Overrides the recorded precision (used when a closed form is known).
    LaurentSeries with_precision(int precision) const;

    bool contains(Symbol s) const;
    bool is_rational_constant() const;

    std::string to_string() const;

private:
    void normalize();
    Terms terms_;
    int prec_ = kExact;
};

inline bool is_zero(const LaurentSeries &x) { return x.is_zero(); }

enum class SeriesOp { add, mul, invert, differentiate };

/// Exact series arithmetic. `invert` and `differentiate` act on `x` only;
/// `order` bounds the generated terms of an inverse.
LaurentSeries series_arith(const LaurentSeries &x, const LaurentSeries &y, SeriesOp kind,
                           int order = LaurentSeries::kDefaultOrder);

/// 1/x. The leading coefficient must be a nonzero rational.
LaurentSeries invert(const LaurentSeries &x, int order = LaurentSeries::kDefaultOrder);
LaurentSeries differentiate(const LaurentSeries &x);
/// Term-wise antiderivative; the z^{-1} term must vanish.
LaurentSeries integrate(const LaurentSeries &x);

/// Minimal subtraction: the z^{-p} ... z^{-1} portion.
LaurentSeries pole_part(const LaurentSeries &x);
/// x - pole_part(x).
LaurentSeries regular_part(const LaurentSeries &x);

/// Replaces `sym` by `sym + shift` in every coefficient.
LaurentSeries substitute_symbol_shift(const LaurentSeries &x, Symbol sym, const PolyCoeff &shift);
LaurentSeries substitute_symbol_value(const LaurentSeries &x, Symbol sym, const Rational &value);

/// exp(x) for x with positive z-valuation, known up to z^order.
LaurentSeries exp_series(const LaurentSeries &x, int order = LaurentSeries::kDefaultOrder);
/// x^n for n >= 0.
LaurentSeries power(const LaurentSeries &x, int n);

struct Assignment {
    double L = 0.0, v = 0.0, s = 0.0, t = 0.0;
};

/// Floating-point value of the stored (truncated) series at z0.
double eval_numeric(const LaurentSeries &x, double z0, const Assignment &values = {});

}  // namespace equi
