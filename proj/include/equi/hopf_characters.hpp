#pragma once

// Characters of graded connected Hopf algebras with Laurent-series values.
//
// A HopfPresentation lists a basis up to degree N (index 0 is the unit), the
// reduced coproduct of each basis element, and the product of basis
// elements. Two instances are provided: the shuffle algebra on words (dual
// to the free graded algebra, deconcatenation coproduct) and the rooted-tree
// Hopf algebra on forests (admissible cuts).

#include "equi/free_graded.hpp"
#include "equi/rooted_trees.hpp"
#include "equi/scalar_series.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace equi {

struct CoproductTerm {
    Rational multiplicity;
    std::size_t left;
    std::size_t right;
};

/// Sparse linear combination of basis elements.
using BasisCombination = std::map<std::size_t, Rational>;

class HopfPresentation {
public:
    enum class Kind { shuffle, rooted_trees };

    static std::shared_ptr<const HopfPresentation> shuffle(int trunc);
    static std::shared_ptr<const HopfPresentation> rooted_trees(int trunc);

    Kind kind() const { return kind_; }
    int trunc() const { return trunc_; }
    std::size_t size() const { return keys_.size(); }

    /// Word label "(1,2)" or forest string; the unit has key "" for forests and "()" for words.
    const std::string &key(std::size_t i) const { return keys_.at(i); }
    int degree(std::size_t i) const { return degrees_.at(i); }
    /// Only for shuffle presentations.
    const Word &word(std::size_t i) const { return words_.at(i); }
    /// Only for rooted-tree presentations.
    const Forest &forest(std::size_t i) const { return forests_.at(i); }

    std::optional<std::size_t> index_of_key(const std::string &key) const;
    std::optional<std::size_t> index_of(const Word &w) const;
    std::optional<std::size_t> index_of(const Forest &f) const;

    const std::vector<CoproductTerm> &reduced_coproduct(std::size_t i) const { return coproducts_.at(i); }
    /// Reduced coproduct plus the terms 1 (x) x and x (x) 1.
    std::vector<CoproductTerm> full_coproduct(std::size_t i) const;

    /// Product of two basis elements; terms above degree N are dropped.
    BasisCombination multiply(std::size_t i, std::size_t j) const;
    /// Antipode of a basis element, S(x) = -x - sum S(x') x''.
    BasisCombination antipode(std::size_t i) const;

    /// Checks (Delta (x) id) Delta = (id (x) Delta) Delta on every basis element of degree <= max_degree.
    bool check_coassociativity(int max_degree) const;
    /// Checks m(S (x) id)Delta = m(id (x) S)Delta = unit . counit up to max_degree.
    bool check_antipode(int max_degree) const;

    bool same_as(const HopfPresentation &o) const { return kind_ == o.kind_ && trunc_ == o.trunc_; }
    std::string kind_name() const { return kind_ == Kind::shuffle ? "shuffle" : "rooted_trees"; }

private:
    HopfPresentation(Kind kind, int trunc) : kind_(kind), trunc_(trunc) {}
    void index_basis();

    Kind kind_;
    int trunc_;
    std::vector<std::string> keys_;
    std::vector<int> degrees_;
    std::vector<Word> words_;
    std::vector<Forest> forests_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<CoproductTerm>> coproducts_;
};

using PresentationPtr = std::shared_ptr<const HopfPresentation>;

/// Linear form on a presentation's basis. Characters have value 1 on the
/// unit; infinitesimal characters have value 0 there.
class LinearForm {
public:
    explicit LinearForm(PresentationPtr pres);
    LinearForm(PresentationPtr pres, std::vector<LaurentSeries> values);

    const PresentationPtr &presentation() const { return pres_; }
    const LaurentSeries &value(std::size_t i) const { return values_.at(i); }
    void set_value(std::size_t i, LaurentSeries v) { values_.at(i) = std::move(v); }
    const std::vector<LaurentSeries> &values() const { return values_; }

    bool operator==(const LinearForm &o) const;

protected:
    PresentationPtr pres_;
    std::vector<LaurentSeries> values_;
};

class Character : public LinearForm {
public:
    using LinearForm::LinearForm;
    /// The counit: 1 on the unit, 0 elsewhere.
    static Character counit(PresentationPtr pres);
    /// Extends values on trees multiplicatively to forests (rooted-tree presentations);
    /// on the shuffle presentation the values are taken as given.
    static Character from_generators(PresentationPtr pres, const std::map<std::string, LaurentSeries> &values);

    /// phi(xy) = phi(x) phi(y) for all basis products of degree <= N.
    bool is_multiplicative() const;
};

class InfinitesimalCharacter : public LinearForm {
public:
    using LinearForm::LinearForm;
    /// L(xy) = L(x) e(y) + e(x) L(y) for all basis products of degree <= N.
    bool is_derivation() const;
};

/// Convolution (f * g)(x) = sum f(x_(1)) g(x_(2)) over the full coproduct.
LinearForm convolve_forms(const LinearForm &f, const LinearForm &g);
Character convolve(const Character &phi, const Character &psi);
/// Convolution inverse via the recursive antipode.
Character antipode_inverse(const Character &phi);

struct BirkhoffParts {
    Character minus;
    Character plus;
};
/// phi = antipode_inverse(minus) * plus with minus pole-pure and plus regular.
BirkhoffParts birkhoff(const Character &phi);

/// Reads the coefficients of a series as a character on the shuffle presentation.
Character character_from_series(PresentationPtr shuffle_pres, const Series &x);
Series series_from_character(const Character &phi);

/// Pushes a series forward along e_{-n} -> rho[n] into characters of
/// `target`; each rho[n] must be supported in degree n. Missing n map to zero.
Character rep_to_tree_group(PresentationPtr target, const std::map<int, InfinitesimalCharacter> &rho,
                            const Series &x);

}  // namespace equi
