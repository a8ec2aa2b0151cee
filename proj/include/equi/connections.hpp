#pragma once

// G_m-invariant connections on the trivial bundle over the punctured formal
// disk times the multiplicative group,
//     omega(z, u) = u^Y(a(z)) dz + u^Y(b(z)) du/u,
// with a and b truncated Lie-series with Laurent coefficients.
//
// Solutions are normalized along the fibre: the canonical solution is
// Gamma(z, u) = Te_{[0,u]}(v^Y(b(z)) dv/v), which is 1 at u = 0. Restricting
// it to a section u = alpha(z) gives the loop whose Birkhoff parts classify
// the connection.

#include "equi/errors.hpp"
#include "equi/free_graded.hpp"
#include "equi/scalar_series.hpp"

#include <optional>
#include <vector>

namespace equi {

/// Raised when a degree-by-degree solve meets a nonzero residue.
class Obstructed : public Error {
public:
    Obstructed(int degree, Word word, PolyCoeff residue);
    int degree() const { return degree_; }
    const Word &word() const { return word_; }
    const PolyCoeff &residue() const { return residue_; }

private:
    int degree_;
    Word word_;
    PolyCoeff residue_;
};

struct InvariantConnection {
    LieElement a;
    LieElement b;
    int trunc() const { return std::min(a.trunc(), b.trunc()); }
};

/// z -> (z, alpha(z)) with alpha regular and alpha(0) = 1.
class Section {
public:
    explicit Section(LaurentSeries alpha);
    /// alpha(z) = e^{sz}, known up to z^order.
    static Section exponential(const PolyCoeff &s, int order);
    const LaurentSeries &alpha() const { return alpha_; }
    /// The linear coefficient of alpha.
    PolyCoeff slope() const { return alpha_.coeff(1); }

private:
    LaurentSeries alpha_;
};

/// alpha = 1, e^z, e^{2z} and 1 + z^2, expanded far enough for degree `trunc`.
std::vector<Section> default_sections(int trunc);
/// Expansion order used for sections of a degree-`trunc` problem.
int section_order(int trunc);

/// The connection whose canonical solution on the unit section is
/// Te_{[0,1]}(-(1/z) u^Y(beta) du/u).
InvariantConnection from_beta(const LieElement &beta);

/// db/dz - Y(a) + [a, b]; zero iff the connection is flat.
LieElement flatness_check(const InvariantConnection &omega);
bool is_flat(const InvariantConnection &omega);

/// alpha^Y(a) + alpha^Y(b) alpha'/alpha.
LieElement restrict_to_section(const InvariantConnection &omega, const Section &sigma);

/// f with f^{-1} df = A dz, solved degree by degree with vanishing z^0
/// integration constants. Throws Obstructed at the first nonzero residue.
GroupElement solve_Df(const LieElement &A);

/// Gamma(z, alpha(z)) for the canonical solution.
GroupElement section_solution(const InvariantConnection &omega, const Section &sigma);

/// a -> h^{-1}h' + h^{-1} a h,  b -> h^{-1}Y(h) + h^{-1} b h, for regular h.
InvariantConnection gauge_act(const GroupElement &h, const InvariantConnection &omega);

/// Compares the Birkhoff minus parts of the solutions on the unit section.
bool equivalent_negative_parts(const InvariantConnection &w1, const InvariantConnection &w2);

/// The unique beta with omega equivalent to from_beta(beta).
LieElement classify_beta(const InvariantConnection &omega);

/// Restricts to every section (checking for residues), then compares the
/// minus parts of the section solutions. An empty family means default_sections.
bool equisingularity_check(const InvariantConnection &omega, const std::vector<Section> &sections = {});

struct RegularValues {
    GroupElement value1;
    GroupElement value2;
    PolyCoeff s;
    bool verified;
};

/// Regular values at z = 0 of the solutions of from_beta(beta) on two
/// sections, and whether value2 = exp(-s beta) value1 with s the difference
/// of their slopes.
RegularValues section_change_regular_value(const LieElement &beta, const Section &sigma1, const Section &sigma2);

}  // namespace equi
