#include "equi/expansional.hpp"

#include "equi/errors.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>

namespace equi {

namespace {

// Polynomial in x with Laurent-series coefficients.
using XPoly = std::map<int, LaurentSeries>;

class IteratedIntegrator {
public:
    IteratedIntegrator(LaurentSeries a, LaurentSeries b) : a_(std::move(a)), b_(std::move(b)) {
        memo_.emplace(Word{}, XPoly{{0, LaurentSeries(1)}});
    }

    LaurentSeries operator()(const Word &w) { return evaluate(primitive(w), b_, b_powers_); }

private:
    const XPoly &primitive(const Word &w) {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        const Word head(w.begin(), w.end() - 1);
        const int k = w.back();
        XPoly anti;
        for (const auto &[m, c] : primitive(head)) {
            const int e = m + k;  // integral of x^{m+k-1} is x^{m+k} / (m+k)
            anti[e] += LaurentSeries(Rational(1, e)) * c;
        }
        const LaurentSeries at_a = evaluate(anti, a_, a_powers_);
        anti[0] -= at_a;
        return memo_.emplace(w, std::move(anti)).first->second;
    }

    static LaurentSeries evaluate(const XPoly &p, const LaurentSeries &x, std::vector<LaurentSeries> &powers) {
        if (powers.empty()) powers.push_back(LaurentSeries(1));
        LaurentSeries sum;
        for (const auto &[m, c] : p) {
            if (c.is_zero()) continue;
            while (static_cast<int>(powers.size()) <= m) powers.push_back(powers.back() * x);
            sum += c * powers[m];
        }
        return sum;
    }

    LaurentSeries a_, b_;
    std::vector<LaurentSeries> a_powers_, b_powers_;
    std::map<Word, XPoly> memo_;
};

LaurentSeries theta_coordinate(const Bound &b, int order) {
    if (b.is_infinite()) return LaurentSeries();
    if (b.is_exp_coordinate()) return b.value();
    const LaurentSeries &t = b.value();
    if (t.is_zero()) return LaurentSeries(1);
    if (t.valuation() < 1)
        throw UnrepresentableBound("theta_flow bound " + t.to_string() +
                                   " has a nonzero value at z = 0; pass it as an exp-coordinate instead");
    return exp_series(-t, order);
}

LaurentSeries power_coordinate(const Bound &b) {
    if (b.is_infinite()) throw DivergentBound("power_flow integrals diverge at an infinite bound");
    if (b.is_exp_coordinate()) throw UnrepresentableBound("exp-coordinate bounds only apply to theta_flow kernels");
    return b.value();
}

// Dense index of all words of degree <= trunc with a precomputed
// concatenation table, for the numeric routines.
struct DenseWords {
    explicit DenseWords(int trunc) : trunc(trunc) {
        words.push_back({});
        for (auto &w : all_words(trunc)) words.push_back(w);
        for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = 0; j < words.size(); ++j) {
                if (word_degree(words[i]) + word_degree(words[j]) > trunc) continue;
                Word w = words[i];
                w.insert(w.end(), words[j].begin(), words[j].end());
                table.push_back({i, j, index.at(w)});
            }
    }

    std::vector<double> dense(const NCSeries<double> &x) const {
        std::vector<double> out(words.size(), 0.0);
        for (const auto &[w, c] : x.terms())
            if (auto it = index.find(w); it != index.end()) out[it->second] = c;
        return out;
    }

    NCSeries<double> sparse(const std::vector<double> &x) const {
        NCSeries<double> out(trunc);
        for (std::size_t i = 0; i < words.size(); ++i) out.add(words[i], x[i]);
        return out;
    }

    struct Entry {
        std::size_t left, right, product;
    };
    int trunc;
    std::vector<Word> words;
    std::map<Word, std::size_t, WordLess> index;
    std::vector<Entry> table;
};

double kernel_weight(KernelKind kind, int n, double s) {
    return kind == KernelKind::theta_flow ? std::exp(-n * s) : std::pow(s, n - 1);
}

}  // namespace

LaurentSeries power_iterated_integral(const Word &w, const LaurentSeries &a, const LaurentSeries &b) {
    IteratedIntegrator integ(a, b);
    return integ(w);
}

GroupElement time_ordered_exp(const GradedKernel &kernel, const Bound &lower, const Bound &upper, int order) {
    const int trunc = kernel.beta.trunc();
    LaurentSeries a, b;
    bool flip_sign = false;
    if (kernel.kind == KernelKind::theta_flow) {
        // x = e^{-t} turns e^{-kt} dt into -x^{k-1} dx
        a = theta_coordinate(lower, order);
        b = theta_coordinate(upper, order);
        flip_sign = true;
    } else {
        a = power_coordinate(lower);
        b = power_coordinate(upper);
    }
    std::vector<Series> parts(trunc + 1);
    for (int k = 1; k <= trunc; ++k) parts[k] = kernel.beta.component(k);

    IteratedIntegrator integ(a, b);
    std::map<Word, Series, WordLess> products;
    products.emplace(Word{}, Series::unit(trunc));
    std::vector<LaurentSeries> scalars{LaurentSeries(1)};

    GroupElement result = Series::unit(trunc);
    for (const auto &w : all_words(trunc)) {
        bool active = true;
        for (int k : w) active = active && !parts[k].is_zero();
        if (!active) continue;
        const Word head(w.begin(), w.end() - 1);
        const Series &prod = products.emplace(w, products.at(head) * parts[w.back()]).first->second;
        if (prod.is_zero()) continue;
        const std::size_t n = w.size();
        while (scalars.size() <= n) scalars.push_back(scalars.back() * kernel.prefactor);
        LaurentSeries c = scalars[n] * integ(w);
        if (flip_sign && n % 2 == 1) c = -c;
        result += c * prod;
    }
    return result;
}

UniversalFrame universal_frame(int n) {
    UniversalFrame frame{{}, Series::unit(n)};
    for (const auto &w : all_words(n)) {
        Rational denom = 1;
        int partial = 0;
        for (int k : w) {
            partial += k;
            denom *= partial;
        }
        const Rational coeff = 1 / denom;
        const int v_exp = partial, z_exp = -static_cast<int>(w.size());
        frame.table.push_back({w, coeff, v_exp, z_exp});
        PolyCoeff c = PolyCoeff::monomial(Monomial{0, v_exp, 0, 0}, coeff);
        frame.series.add(w, LaurentSeries::monomial(c, z_exp));
    }
    return frame;
}

GroupElement gamma_minus_from_beta(const LieElement &beta) {
    GradedKernel k{KernelKind::theta_flow, beta, -LaurentSeries::z_power(-1)};
    return time_ordered_exp(k, Bound::at(LaurentSeries()), Bound::infinity());
}

GroupElement gamma_mu(const LieElement &beta, const GroupElement &gamma_reg, int order) {
    for (const auto &[w, c] : gamma_reg.terms())
        if (c.pole_order() > 0) throw NotPolePure("gamma_reg must have regular coefficients");
    const int trunc = std::min(beta.trunc(), gamma_reg.trunc());
    // each letter contributes a z^{-1}; keep enough terms for the poles to cancel
    const int internal = order + 2 * trunc;
    const LaurentSeries zL = LaurentSeries::monomial(PolyCoeff::symbol(Symbol::L), 1);
    GradedKernel k{KernelKind::theta_flow, beta.with_trunc(trunc), -LaurentSeries::z_power(-1)};
    GroupElement te = time_ordered_exp(k, Bound::infinity(), Bound::at(-zL), internal);
    return te * theta(gamma_reg.with_trunc(trunc), zL, internal);
}

LieElement beta_extract(const GroupElement &gamma_minus) {
    if (!grouplike_check(gamma_minus)) throw NotGrouplike("beta_extract needs a grouplike series");
    for (const auto &[w, c] : gamma_minus.terms()) {
        if (w.empty()) continue;
        if (!regular_part(c).is_zero()) throw NotPolePure("coefficient of " + word_to_string(w) + " is not pole-only");
    }
    const Series lg = nc_log(gamma_minus);
    LieElement beta(gamma_minus.trunc());
    for (const auto &[w, c] : lg.terms()) {
        const PolyCoeff residue = c.coeff(-1);
        if (residue.is_zero()) continue;
        beta.add(w, LaurentSeries(residue * Rational(-word_degree(w))));
    }
    return beta;
}

GroupElement rg_flow(const PolyCoeff &t, int trunc) {
    Series x(trunc);
    for (int n = 1; n <= trunc; ++n) x.add({n}, LaurentSeries(t));
    return nc_exp(x);
}

NCSeries<double> evaluate_series(const Series &x, double z, const Assignment &values) {
    return x.map_coeffs([&](const LaurentSeries &c) { return eval_numeric(c, z, values); });
}

NCSeries<double> kernel_value(const GradedKernel &kernel, double s, double z, const Assignment &values) {
    const double pre = eval_numeric(kernel.prefactor, z, values);
    NCSeries<double> out(kernel.beta.trunc());
    for (const auto &[w, c] : kernel.beta.terms())
        out.add(w, pre * kernel_weight(kernel.kind, word_degree(w), s) * eval_numeric(c, z, values));
    return out;
}

std::vector<std::pair<double, NCSeries<double>>> product_integral_path(const GradedKernel &kernel, double lower,
                                                                       double upper, int steps, int stride, double z,
                                                                       const Assignment &values) {
    if (steps < 1) throw std::invalid_argument("product integral needs at least one step");
    const int trunc = kernel.beta.trunc();
    const DenseWords dw(trunc);
    std::vector<std::vector<double>> parts(trunc + 1);
    const double pre = eval_numeric(kernel.prefactor, z, values);
    for (int n = 1; n <= trunc; ++n) {
        parts[n] = dw.dense(evaluate_series(kernel.beta.component(n), z, values));
        for (auto &c : parts[n]) c *= pre;
    }

    std::vector<double> acc(dw.words.size(), 0.0), alpha(dw.words.size()), next;
    acc[0] = 1.0;
    const double h = (upper - lower) / steps;
    std::vector<std::pair<double, NCSeries<double>>> path{{lower, dw.sparse(acc)}};
    for (int i = 0; i < steps; ++i) {
        const double s = lower + (i + 0.5) * h;
        std::fill(alpha.begin(), alpha.end(), 0.0);
        for (int n = 1; n <= trunc; ++n) {
            const double f = kernel_weight(kernel.kind, n, s);
            for (std::size_t j = 0; j < alpha.size(); ++j) alpha[j] += f * parts[n][j];
        }
        next = acc;
        for (const auto &e : dw.table) next[e.product] += h * acc[e.left] * alpha[e.right];
        acc.swap(next);
        if ((i + 1) % stride == 0 || i + 1 == steps) path.emplace_back(lower + (i + 1) * h, dw.sparse(acc));
    }
    return path;
}

NCSeries<double> product_integral_oracle(const GradedKernel &kernel, double lower, double upper, int steps, double z,
                                         const Assignment &values) {
    return product_integral_path(kernel, lower, upper, steps, steps, z, values).back().second;
}

NCSeries<double> scattering_numeric(const LieElement &beta, double t, double z, int max_degree) {
    const DenseWords dw(max_degree);
    const auto b = dw.dense(evaluate_series(beta.with_trunc(max_degree), z));
    const auto dim = static_cast<Eigen::Index>(dw.words.size());
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
    // left multiplication by beta / z, plus the grading
    for (const auto &e : dw.table) gen(e.product, e.right) += b[e.left] / z;
    for (Eigen::Index j = 0; j < dim; ++j) gen(j, j) += word_degree(dw.words[j]);
    const Eigen::MatrixXd evolved = (-t * gen).exp();
    std::vector<double> col(dim);
    for (Eigen::Index i = 0; i < dim; ++i) col[i] = evolved(i, 0);
    return dw.sparse(col);
}

}  // namespace equi
