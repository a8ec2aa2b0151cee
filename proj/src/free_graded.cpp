#include "equi/free_graded.hpp"

#include <algorithm>
#include <sstream>

namespace equi {

std::string word_to_string(const Word &w) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ")";
    return os.str();
}

std::vector<Word> words_of_degree(int n) {
    if (n == 0) return {Word{}};
    std::vector<Word> out;
    for (int first = 1; first <= n; ++first)
        for (auto &tail : words_of_degree(n - first)) {
            Word w{first};
            w.insert(w.end(), tail.begin(), tail.end());
            out.push_back(std::move(w));
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> all_words(int max_degree) {
    std::vector<Word> out;
    for (int n = 1; n <= max_degree; ++n) {
        auto ws = words_of_degree(n);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

Series theta(const Series &x, const LaurentSeries &exponent, int order) {
    Series r(x.trunc());
    std::map<int, LaurentSeries> factors;
    for (const auto &[w, c] : x.terms()) {
        const int d = word_degree(w);
        auto it = factors.find(d);
        if (it == factors.end())
            it = factors.emplace(d, exp_series(exponent * LaurentSeries(Rational(d)), order)).first;
        r.add(w, it->second * c);
    }
    return r;
}

namespace {

void shuffle_into(const Word &u, std::size_t i, const Word &w, std::size_t j, Word &prefix,
                  NCSeries<Rational> &out) {
    if (i == u.size() && j == w.size()) {
        out.add(prefix, Rational(1));
        return;
    }
    if (i < u.size()) {
        prefix.push_back(u[i]);
        shuffle_into(u, i + 1, w, j, prefix, out);
        prefix.pop_back();
    }
    if (j < w.size()) {
        prefix.push_back(w[j]);
        shuffle_into(u, i, w, j + 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

NCSeries<Rational> shuffle(const Word &u, const Word &w) {
    NCSeries<Rational> out(word_degree(u) + word_degree(w));
    Word prefix;
    shuffle_into(u, 0, w, 0, prefix, out);
    return out;
}

SeriesBirkhoff birkhoff_series(const GroupElement &x) {
    const int n = x.trunc();
    if (!(x.coeff({}) == LaurentSeries(1))) throw BadConstantTerm("Birkhoff decomposition needs constant term 1");
    std::vector<Series> minus(static_cast<std::size_t>(n) + 1, Series(n));
    std::vector<Series> parts(minus.size(), Series(n));
    for (int d = 0; d <= n; ++d) parts[d] = x.component(d);
    Series m = Series::unit(n), p = Series::unit(n);
    for (int d = 1; d <= n; ++d) {
        Series arg = parts[d];
        for (int j = 1; j < d; ++j) arg += (minus[j] * parts[d - j]).component(d);
        for (const auto &[w, c] : arg.terms()) {
            minus[d].add(w, -pole_part(c));
            p.add(w, regular_part(c));
        }
        m += minus[d];
    }
    return {m, p};
}

bool free_of(const Series &x, Symbol s) {
    return std::none_of(x.terms().begin(), x.terms().end(), [s](const auto &kv) { return kv.second.contains(s); });
}

bool is_regular(const Series &x) {
    return std::all_of(x.terms().begin(), x.terms().end(),
                       [](const auto &kv) { return kv.second.pole_order() == 0; });
}

Series to_laurent(const NCSeries<Rational> &x) {
    return x.map_coeffs([](const Rational &q) { return LaurentSeries(q); });
}

}  // namespace equi
