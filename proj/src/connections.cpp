#include "equi/connections.hpp"

#include "equi/expansional.hpp"

namespace equi {

namespace {

Series map_differentiate(const Series &x) {
    return x.map_coeffs([](const LaurentSeries &c) { return differentiate(c); });
}

Series z0_part(const Series &x) {
    return x.map_coeffs([](const LaurentSeries &c) {
        if (c.precision() < 0) throw PrecisionLoss("constant term of a truncated coefficient is unknown");
        return LaurentSeries(c.coeff(0));
    });
}

}  // namespace

Obstructed::Obstructed(int degree, Word word, PolyCoeff residue)
    : Error("obstructed in degree " + std::to_string(degree) + " at word " + word_to_string(word) +
            ": residue " + residue.to_string()),
      degree_(degree), word_(std::move(word)), residue_(std::move(residue)) {}

Section::Section(LaurentSeries alpha) : alpha_(std::move(alpha)) {
    if (alpha_.pole_order() > 0 || !(alpha_.coeff(0) == PolyCoeff(1)))
        throw BadConstantTerm("a section must be regular with value 1 at z = 0");
}

Section Section::exponential(const PolyCoeff &s, int order) {
    if (s.is_zero()) return Section(LaurentSeries(1));
    return Section(exp_series(LaurentSeries::monomial(s, 1), order));
}

int section_order(int trunc) { return LaurentSeries::kDefaultOrder + 2 * trunc; }

std::vector<Section> default_sections(int trunc) {
    const int order = section_order(trunc);
    return {Section::exponential(PolyCoeff(0), order), Section::exponential(PolyCoeff(1), order),
            Section::exponential(PolyCoeff(2), order), Section(LaurentSeries(1) + LaurentSeries::z_power(2))};
}

InvariantConnection from_beta(const LieElement &beta) {
    GradedKernel k{KernelKind::power_flow, beta, -LaurentSeries::z_power(-1)};
    const GroupElement gamma = time_ordered_exp(k, Bound::at(LaurentSeries()), Bound::at(LaurentSeries(1)));
    const GroupElement inv = inverse(gamma);
    return {inv * map_differentiate(gamma), inv * apply_grading(gamma)};
}

LieElement flatness_check(const InvariantConnection &omega) {
    return map_differentiate(omega.b) - apply_grading(omega.a) + bracket(omega.a, omega.b);
}

bool is_flat(const InvariantConnection &omega) { return flatness_check(omega).is_zero(); }

LieElement restrict_to_section(const InvariantConnection &omega, const Section &sigma) {
    const LaurentSeries &alpha = sigma.alpha();
    const int order = alpha.is_exact() ? section_order(omega.trunc()) : alpha.precision();
    const LaurentSeries log_derivative = differentiate(alpha) * invert(alpha, order);
    return scale_by_grading(omega.a, alpha) + log_derivative * scale_by_grading(omega.b, alpha);
}

GroupElement solve_Df(const LieElement &A) {
    const int n = A.trunc();
    GroupElement f = Series::unit(n);
    for (int d = 1; d <= n; ++d) {
        // f_d' = sum_{j<d} f_j A_{d-j}
        const Series rhs = (f * A).component(d);
        for (const auto &[w, c] : rhs.terms()) {
            const PolyCoeff residue = c.coeff(-1);
            if (c.precision() < -1) throw PrecisionLoss("residue of a truncated coefficient is unknown");
            if (!residue.is_zero()) throw Obstructed(d, w, residue);
        }
        for (const auto &[w, c] : rhs.terms()) f.add(w, integrate(c));
    }
    return f;
}

GroupElement section_solution(const InvariantConnection &omega, const Section &sigma) {
    GradedKernel k{KernelKind::power_flow, omega.b, LaurentSeries(1)};
    return time_ordered_exp(k, Bound::at(LaurentSeries()), Bound::at(sigma.alpha()));
}

InvariantConnection gauge_act(const GroupElement &h, const InvariantConnection &omega) {
    if (!is_regular(h)) throw NotRegular("gauge transformations must have regular coefficients");
    const GroupElement inv = inverse(h);
    return {inv * map_differentiate(h) + inv * omega.a * h, inv * apply_grading(h) + inv * omega.b * h};
}

bool equivalent_negative_parts(const InvariantConnection &w1, const InvariantConnection &w2) {
    const Section unit(LaurentSeries(1));
    return birkhoff_series(section_solution(w1, unit)).minus == birkhoff_series(section_solution(w2, unit)).minus;
}

LieElement classify_beta(const InvariantConnection &omega) {
    if (!is_flat(omega)) throw NotFlat("classification needs a flat connection");
    const GroupElement minus = birkhoff_series(section_solution(omega, Section(LaurentSeries(1)))).minus;
    // the minus part of from_beta(beta) is gamma_minus_from_beta(-beta)
    const LieElement beta = -beta_extract(minus);
    if (!(gamma_minus_from_beta(-beta) == minus))
        throw NotEquisingular("minus part is not generated by a constant beta");
    return beta;
}

bool equisingularity_check(const InvariantConnection &omega, const std::vector<Section> &sections) {
    const std::vector<Section> family = sections.empty() ? default_sections(omega.trunc()) : sections;
    for (const auto &sigma : family) solve_Df(restrict_to_section(omega, sigma));
    if (!is_flat(omega)) throw NotFlat("equisingularity is only defined for flat connections");
    std::optional<GroupElement> reference;
    for (const auto &sigma : family) {
        GroupElement minus = birkhoff_series(section_solution(omega, sigma)).minus;
        if (!reference)
            reference = std::move(minus);
        else if (!(minus == *reference))
            return false;
    }
    return true;
}

RegularValues section_change_regular_value(const LieElement &beta, const Section &sigma1, const Section &sigma2) {
    const InvariantConnection omega = from_beta(beta);
    if (!is_flat(omega)) throw NotFlat("from_beta produced a non-flat connection");
    const GroupElement v1 = z0_part(birkhoff_series(section_solution(omega, sigma1)).plus);
    const GroupElement v2 = z0_part(birkhoff_series(section_solution(omega, sigma2)).plus);
    const PolyCoeff s = sigma2.slope() - sigma1.slope();
    const bool ok = v2 == nc_exp(LaurentSeries(-s) * beta) * v1;
    return {v1, v2, s, ok};
}

}  // namespace equi
