#pragma once

// Seeded generators shared by the property tests.

#include "equi/free_graded.hpp"

#include <random>

namespace equi::testing {

inline Rational random_rational(std::mt19937 &rng, int range = 5) {
    std::uniform_int_distribution<int> num(-range, range), den(1, 4);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

/// Random polynomial in the given symbols, at most `terms` monomials of degree <= 2.
inline PolyCoeff random_poly(std::mt19937 &rng, std::initializer_list<Symbol> symbols, int terms = 2) {
    PolyCoeff p = random_rational(rng);
    std::uniform_int_distribution<int> deg(0, 2);
    for (int i = 0; i < terms; ++i)
        for (Symbol s : symbols) p += PolyCoeff::symbol(s, deg(rng)) * random_rational(rng);
    return p;
}

/// Exact Laurent polynomial with z-exponents in [-pole, top].
inline LaurentSeries random_laurent(std::mt19937 &rng, int pole, int top,
                                    std::initializer_list<Symbol> symbols = {}) {
    LaurentSeries::Terms terms;
    for (int k = -pole; k <= top; ++k) {
        PolyCoeff c = symbols.size() ? random_poly(rng, symbols, 1) : PolyCoeff(random_rational(rng));
        if (!c.is_zero()) terms.emplace(k, c);
    }
    return LaurentSeries::from_terms(std::move(terms));
}

/// Random graded Lie element: for each degree n <= max_degree, a rational
/// combination of e_n, [e_i, e_j] (i + j = n) and [[e_i, e_j], e_k].
inline LieElement random_lie(std::mt19937 &rng, int max_degree, int trunc) {
    LieElement beta(trunc);
    auto gen = [trunc](int k) { return Series::generator(k, LaurentSeries(1), trunc); };
    for (int n = 1; n <= max_degree; ++n) {
        beta += LieElement::generator(n, LaurentSeries(random_rational(rng)), trunc);
        for (int i = 1; i < n; ++i) {
            const int j = n - i;
            if (i < j) beta += LaurentSeries(random_rational(rng)) * bracket(gen(i), gen(j));
            for (int a = 1; a < i; ++a)
                if (a < i - a) beta += LaurentSeries(random_rational(rng)) * bracket(bracket(gen(a), gen(i - a)), gen(j));
        }
    }
    return beta;
}

}  // namespace equi::testing
