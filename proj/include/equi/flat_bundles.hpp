#pragma once

// Flat equisingular bundles given by a graded vector space E and a family of
// nilpotent matrices beta_n : E_m -> E_{m+n}. The weight filtration is
// W^{-n}(E) = sum_{m >= n} E_m; each beta_n lowers it strictly.
//
// Bases are ordered by degree, so basis index i carries degree degrees()[i].

#include "equi/connections.hpp"
#include "equi/matrices.hpp"

#include <map>
#include <vector>

namespace equi {

class GradedSpace {
public:
    GradedSpace() = default;
    /// degree -> dimension; zero dimensions are dropped.
    explicit GradedSpace(const std::map<int, int> &dims);

    const std::map<int, int> &dims() const { return dims_; }
    int dim(int degree) const;
    std::size_t total_dim() const { return degrees_.size(); }
    const std::vector<int> &degrees() const { return degrees_; }

    /// dim W^{-n}(E) = sum of dim E_m over m >= n.
    int filtration_dim(int n) const;

    bool operator==(const GradedSpace &o) const { return dims_ == o.dims_; }

private:
    std::map<int, int> dims_;
    std::vector<int> degrees_;
};

GradedSpace direct_sum(const GradedSpace &a, const GradedSpace &b);

struct BundleObject {
    GradedSpace space;
    std::map<int, RationalMatrix> beta;

    /// Sum of all beta_n.
    RationalMatrix total_beta() const;
};

/// Validates that every beta_n maps E_m into E_{m+n} (n >= 1); throws
/// NotFiltrationCompatible otherwise. Zero matrices are dropped.
BundleObject object_from_rep(const GradedSpace &space, const std::map<int, RationalMatrix> &beta);

/// Splits a strictly filtration-lowering matrix into its homogeneous parts.
BundleObject object_from_total(const GradedSpace &space, const RationalMatrix &total);

/// One-dimensional object in degree n with zero beta.
BundleObject qn_object(int n);

BundleObject direct_sum(const BundleObject &a, const BundleObject &b);

/// Degree slots of the fiber functor: omega_n = Gr^W_{-n} = E_n.
GradedSpace fiber_functor(const BundleObject &obj);

/// A morphism T : E -> E' as a dim E' x dim E matrix; its only nonzero
/// entries connect basis vectors of equal degree.
void check_degree_compatible(const BundleObject &source, const BundleObject &target, const RationalMatrix &T);

/// Blocks of T by degree (the induced maps omega_n(T)).
std::map<int, RationalMatrix> morphism_blocks(const BundleObject &source, const BundleObject &target,
                                              const RationalMatrix &T);
RationalMatrix morphism_from_blocks(const BundleObject &source, const BundleObject &target,
                                    const std::map<int, RationalMatrix> &blocks);

/// Decides whether the block connections on E' + E with beta-data
/// [[beta', T beta - beta' T], [0, beta]] and diag(beta', beta) are
/// conjugate by some 1 + N with N strictly filtration-lowering.
bool morphism_check(const BundleObject &source, const BundleObject &target, const RationalMatrix &T);

/// Dimension of the space of T passing morphism_check.
std::size_t hom_dimension(const BundleObject &source, const BundleObject &target);

/// Left multiplication of series by the representation e_{-n} -> beta_n.
LaurentMatrix represent(const BundleObject &obj, const Series &x);

struct MatrixConnection {
    LaurentMatrix a;
    LaurentMatrix b;
};

/// Image of from_beta(sum_n e_{-n}) under the representation.
MatrixConnection matrix_connection(const BundleObject &obj);
/// b' - [D, a] + [a, b] with D the degree operator.
LaurentMatrix matrix_flatness_residual(const BundleObject &obj, const MatrixConnection &c);
/// Te_{[0, alpha]} of u^Y(b) du/u in the matrix group.
LaurentMatrix matrix_section_solution(const BundleObject &obj, const MatrixConnection &c, const Section &sigma);

struct MatrixBirkhoff {
    LaurentMatrix minus;
    LaurentMatrix plus;
};
/// Degree-wise Birkhoff decomposition of a unipotent Laurent matrix.
MatrixBirkhoff matrix_birkhoff(const BundleObject &obj, const LaurentMatrix &m);

/// Minus parts agree across the section family (default family if empty).
bool matrix_equisingular(const BundleObject &obj, const MatrixConnection &c, const std::vector<Section> &sections = {});
/// Recovers the beta matrices from a matrix connection.
std::map<int, RationalMatrix> matrix_classify(const BundleObject &obj, const MatrixConnection &c);

}  // namespace equi
