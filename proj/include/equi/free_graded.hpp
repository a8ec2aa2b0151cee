#pragma once

// Truncated noncommutative series on the generators e_{-k} (k >= 1) of the
// free graded Lie algebra, with e_{-k} in degree k.
//
// A word (k1, ..., kn) stands for the product e_{-k1} ... e_{-kn}. Group
// elements are grouplike series; pairing a series with a word (reading off
// its coefficient) identifies it with a character of the shuffle Hopf
// algebra, under which character convolution is the concatenation product.

#include "equi/errors.hpp"
#include "equi/scalar_series.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace equi {

using Word = std::vector<int>;

inline int word_degree(const Word &w) { return std::accumulate(w.begin(), w.end(), 0); }

/// Canonical word order: by degree, then lexicographic.
struct WordLess {
    bool operator()(const Word &a, const Word &b) const {
        const int da = word_degree(a), db = word_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// "(1,2)" style label; the empty word prints as "()".
std::string word_to_string(const Word &w);

/// Every nonempty word of degree <= max_degree, in canonical order.
std::vector<Word> all_words(int max_degree);
/// Every word of degree exactly n (the compositions of n).
std::vector<Word> words_of_degree(int n);

template <class C>
C from_rational(const Rational &q) {
    return C(q);
}
template <>
inline double from_rational<double>(const Rational &q) {
    return q.get_d();
}

template <class C>
class NCSeries {
public:
    using Terms = std::map<Word, C, WordLess>;
    static constexpr int kDefaultTrunc = 6;

    explicit NCSeries(int trunc = kDefaultTrunc) : trunc_(trunc) {}

    static NCSeries unit(int trunc = kDefaultTrunc) { return monomial({}, C(1), trunc); }
    static NCSeries generator(int k, const C &c = C(1), int trunc = kDefaultTrunc) {
        return monomial({k}, c, trunc);
    }
    static NCSeries monomial(const Word &w, const C &c, int trunc = kDefaultTrunc) {
        NCSeries r(trunc);
        r.add(w, c);
        return r;
    }

    int trunc() const { return trunc_; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    C coeff(const Word &w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? C() : it->second;
    }

    /// Adds c to the coefficient of w; words above the truncation degree are dropped.
    void add(const Word &w, const C &c) {
        if (word_degree(w) > trunc_ || equi::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (equi::is_zero(it->second)) terms_.erase(it);
        }
    }

    NCSeries &operator+=(const NCSeries &o) {
        for (const auto &[w, c] : o.terms_) add(w, c);
        return *this;
    }
    NCSeries &operator-=(const NCSeries &o) {
        for (const auto &[w, c] : o.terms_) add(w, -c);
        return *this;
    }
    friend NCSeries operator+(NCSeries a, const NCSeries &b) { return a += b; }
    friend NCSeries operator-(NCSeries a, const NCSeries &b) { return a -= b; }
    NCSeries operator-() const {
        NCSeries r(trunc_);
        for (const auto &[w, c] : terms_) r.add(w, -c);
        return r;
    }

    /// Concatenation product, truncated at the smaller truncation degree.
    friend NCSeries operator*(const NCSeries &x, const NCSeries &y) {
        NCSeries r(std::min(x.trunc_, y.trunc_));
        for (const auto &[u, cu] : x.terms_) {
            const int du = word_degree(u);
            if (du > r.trunc_) break;
            for (const auto &[v, cv] : y.terms_) {
                if (du + word_degree(v) > r.trunc_) break;
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                r.add(w, cu * cv);
            }
        }
        return r;
    }

    /// Coefficient-wise scaling.
    friend NCSeries operator*(const C &c, const NCSeries &x) {
        NCSeries r(x.trunc_);
        for (const auto &[w, cw] : x.terms_) r.add(w, c * cw);
        return r;
    }

    bool operator==(const NCSeries &o) const {
        // coefficient types may compare loosely (series precision), so walk both maps
        for (const auto &[w, c] : terms_)
            if (!(c == o.coeff(w))) return false;
        for (const auto &[w, c] : o.terms_)
            if (!(c == coeff(w))) return false;
        return true;
    }

    /// Homogeneous component of degree n.
    NCSeries component(int n) const {
        NCSeries r(trunc_);
        for (const auto &[w, c] : terms_)
            if (word_degree(w) == n) r.add(w, c);
        return r;
    }

    NCSeries with_trunc(int trunc) const {
        NCSeries r(trunc);
        for (const auto &[w, c] : terms_) r.add(w, c);
        return r;
    }

    template <class F>
    auto map_coeffs(F &&f) const -> NCSeries<decltype(f(std::declval<C>()))> {
        NCSeries<decltype(f(std::declval<C>()))> r(trunc_);
        for (const auto &[w, c] : terms_) r.add(w, f(c));
        return r;
    }

private:
    int trunc_;
    Terms terms_;
};

using Series = NCSeries<LaurentSeries>;
/// Lie-algebra element (primitive series) with Laurent coefficients.
using LieElement = Series;
/// Grouplike series with constant term 1.
using GroupElement = Series;

template <class C>
NCSeries<C> concat_mul(const NCSeries<C> &x, const NCSeries<C> &y) {
    return x * y;
}

template <class C>
NCSeries<C> bracket(const NCSeries<C> &x, const NCSeries<C> &y) {
    return x * y - y * x;
}

/// The grading derivation Y: multiplies the degree-n part by n. This is also
/// the adjoint action of the extra generator Z0, [Z0, X] = Y(X).
template <class C>
NCSeries<C> apply_grading(const NCSeries<C> &x) {
    NCSeries<C> r(x.trunc());
    for (const auto &[w, c] : x.terms()) r.add(w, from_rational<C>(Rational(word_degree(w))) * c);
    return r;
}

/// u^Y: multiplies the degree-n part by u^n.
template <class C>
NCSeries<C> scale_by_grading(const NCSeries<C> &x, const C &u) {
    std::vector<C> powers{C(1)};
    NCSeries<C> r(x.trunc());
    for (const auto &[w, c] : x.terms()) {
        const int d = word_degree(w);
        while (static_cast<int>(powers.size()) <= d) powers.push_back(powers.back() * u);
        r.add(w, powers[d] * c);
    }
    return r;
}

/// theta_e: the degree-n part multiplied by exp(n * exponent), with the
/// exponential expanded up to z^order. `exponent` must vanish at z = 0.
Series theta(const Series &x, const LaurentSeries &exponent, int order = LaurentSeries::kDefaultOrder);

enum class ExpLogMode { exp, log };

template <class C>
NCSeries<C> nc_exp(const NCSeries<C> &x) {
    if (!equi::is_zero(x.coeff({}))) throw BadConstantTerm("exp needs a zero constant term");
    NCSeries<C> sum = NCSeries<C>::unit(x.trunc()), term = NCSeries<C>::unit(x.trunc());
    for (int k = 1; k <= x.trunc(); ++k) {
        term = from_rational<C>(Rational(1, k)) * (term * x);
        if (term.is_zero()) break;
        sum += term;
    }
    return sum;
}

template <class C>
NCSeries<C> nc_log(const NCSeries<C> &x) {
    if (!(x.coeff({}) == C(1))) throw BadConstantTerm("log needs constant term 1");
    NCSeries<C> y = x - NCSeries<C>::unit(x.trunc());
    NCSeries<C> sum(x.trunc()), power = NCSeries<C>::unit(x.trunc());
    for (int k = 1; k <= x.trunc(); ++k) {
        power = power * y;
        if (power.is_zero()) break;
        sum += from_rational<C>(Rational(k % 2 ? 1 : -1, k)) * power;
    }
    return sum;
}

template <class C>
NCSeries<C> exp_log(const NCSeries<C> &x, ExpLogMode mode) {
    return mode == ExpLogMode::exp ? nc_exp(x) : nc_log(x);
}

/// Inverse of a series with constant term 1 (Neumann series).
template <class C>
NCSeries<C> inverse(const NCSeries<C> &x) {
    if (!(x.coeff({}) == C(1))) throw BadConstantTerm("inverse needs constant term 1");
    NCSeries<C> y = NCSeries<C>::unit(x.trunc()) - x;
    NCSeries<C> sum = NCSeries<C>::unit(x.trunc()), power = NCSeries<C>::unit(x.trunc());
    for (int k = 1; k <= x.trunc(); ++k) {
        power = power * y;
        if (power.is_zero()) break;
        sum += power;
    }
    return sum;
}

/// Riffle shuffles of u and w, with multiplicity.
NCSeries<Rational> shuffle(const Word &u, const Word &w);

/// Pairing of x against the shuffle u ш w.
template <class C>
C pair_with_shuffle(const NCSeries<C> &x, const Word &u, const Word &w) {
    C sum{};
    const auto riffles = shuffle(u, w);
    for (const auto &[word, mult] : riffles.terms()) sum += from_rational<C>(mult) * x.coeff(word);
    return sum;
}

/// True iff x(u ш w) = x(u) x(w) for all nonempty u, w with deg u + deg w <= trunc,
/// and x(()) = 1.
template <class C>
bool grouplike_check(const NCSeries<C> &g) {
    if (!(g.coeff({}) == C(1))) return false;
    const auto words = all_words(g.trunc());
    for (const auto &u : words)
        for (const auto &w : words) {
            if (word_degree(u) + word_degree(w) > g.trunc()) continue;
            if (!(pair_with_shuffle(g, u, w) == g.coeff(u) * g.coeff(w))) return false;
        }
    return true;
}

/// True iff x vanishes on the unit and on every nontrivial shuffle (a Lie element).
template <class C>
bool primitive_check(const NCSeries<C> &x) {
    if (!equi::is_zero(x.coeff({}))) return false;
    const auto words = all_words(x.trunc());
    for (const auto &u : words)
        for (const auto &w : words) {
            if (word_degree(u) + word_degree(w) > x.trunc()) continue;
            if (!equi::is_zero(pair_with_shuffle(x, u, w))) return false;
        }
    return true;
}

/// Series-level Birkhoff decomposition x = minus^{-1} * plus, computed degree
/// by degree with minimal subtraction:
///   minus_d = -T(x_d + sum_{0<j<d} minus_j x_{d-j}),  plus_d = (1 - T)(same).
struct SeriesBirkhoff {
    GroupElement minus;
    GroupElement plus;
};
SeriesBirkhoff birkhoff_series(const GroupElement &x);

/// True iff every coefficient is free of the given symbol.
bool free_of(const Series &x, Symbol s);
/// True iff every coefficient is a Laurent series with pole_order 0.
bool is_regular(const Series &x);

/// Embeds a rational series into Laurent coefficients.
Series to_laurent(const NCSeries<Rational> &x);

}  // namespace equi
