#include "equi/flat_bundles.hpp"
#include "random_inputs.hpp"

#include <Eigen/Dense>
#include <doctest.h>

using namespace equi;
using equi::testing::random_rational;

namespace {

RationalMatrix rmat(std::size_t r, std::size_t c, std::initializer_list<int> entries) {
    RationalMatrix m(r, c);
    auto it = entries.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

BundleObject rank_two() { return object_from_rep(GradedSpace({{0, 1}, {1, 1}}), {{1, rmat(2, 2, {0, 0, 1, 0})}}); }

BundleObject random_object(std::mt19937 &rng, const std::map<int, int> &dims) {
    const GradedSpace space(dims);
    const auto &deg = space.degrees();
    RationalMatrix total(deg.size(), deg.size());
    for (std::size_t i = 0; i < deg.size(); ++i)
        for (std::size_t j = 0; j < deg.size(); ++j)
            if (deg[i] > deg[j]) total(i, j) = random_rational(rng, 3);
    return object_from_total(space, total);
}

RationalMatrix random_unipotent(std::mt19937 &rng, const GradedSpace &space) {
    const auto &deg = space.degrees();
    RationalMatrix u = RationalMatrix::identity(deg.size());
    for (std::size_t i = 0; i < deg.size(); ++i)
        for (std::size_t j = 0; j < deg.size(); ++j)
            if (deg[i] > deg[j]) u(i, j) = random_rational(rng, 3);
    return u;
}

// Inverse of 1 + N with N nilpotent.
RationalMatrix unipotent_inverse(const RationalMatrix &u) {
    const std::size_t n = u.rows();
    const RationalMatrix nil = u - RationalMatrix::identity(n);
    RationalMatrix inv = RationalMatrix::identity(n), p = RationalMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        p = -(p * nil);
        inv += p;
    }
    return inv;
}

RationalMatrix random_graded_map(std::mt19937 &rng, const BundleObject &src, const BundleObject &dst) {
    const auto &ds = src.space.degrees();
    const auto &dt = dst.space.degrees();
    RationalMatrix t(dt.size(), ds.size());
    for (std::size_t i = 0; i < dt.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j)
            if (dt[i] == ds[j]) t(i, j) = random_rational(rng, 3);
    return t;
}

// Floating-point oracle: some strictly raising X : E -> E' with
// X B - B' X = B' T - T B, decided by comparing ranks.
bool oracle_morphism(const BundleObject &src, const BundleObject &dst, const RationalMatrix &T) {
    const RationalMatrix B = src.total_beta(), Bp = dst.total_beta();
    const auto &ds = src.space.degrees();
    const auto &dt = dst.space.degrees();
    const RationalMatrix rhs = Bp * T - T * B;
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    for (std::size_t i = 0; i < dt.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j)
            if (dt[i] > ds[j]) vars.emplace_back(i, j);
    const std::size_t eqs = dt.size() * ds.size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(eqs, vars.size() + 1);
    for (std::size_t v = 0; v < vars.size(); ++v) {
        const auto [p, q] = vars[v];
        for (std::size_t k = 0; k < ds.size(); ++k) A(p * ds.size() + k, v) += B(q, k).get_d();
        for (std::size_t i = 0; i < dt.size(); ++i) A(i * ds.size() + q, v) -= Bp(i, p).get_d();
    }
    for (std::size_t i = 0; i < dt.size(); ++i)
        for (std::size_t k = 0; k < ds.size(); ++k) A(i * ds.size() + k, vars.size()) = rhs(i, k).get_d();
    Eigen::FullPivLU<Eigen::MatrixXd> with(A);
    with.setThreshold(1e-9);
    if (vars.empty()) return with.rank() == 0;
    Eigen::FullPivLU<Eigen::MatrixXd> without(A.leftCols(vars.size()));
    without.setThreshold(1e-9);
    return with.rank() == without.rank();
}

}  // namespace

TEST_CASE("graded spaces and objects") {
    GradedSpace s({{0, 1}, {2, 0}, {1, 2}});
    CHECK(s.total_dim() == 3);
    CHECK(s.degrees() == std::vector<int>{0, 1, 1});
    CHECK(s.dim(2) == 0);
    CHECK(s.filtration_dim(1) == 2);
    CHECK(s.filtration_dim(0) == 3);

    BundleObject q0 = qn_object(0);
    CHECK(q0.space.total_dim() == 1);
    CHECK(q0.beta.empty());
    CHECK(fiber_functor(q0).dim(0) == 1);

    CHECK_THROWS_AS(object_from_rep(GradedSpace({{0, 1}, {1, 1}}), {{1, rmat(2, 2, {0, 1, 0, 0})}}),
                    NotFiltrationCompatible);
    CHECK_THROWS_AS(object_from_rep(GradedSpace({{0, 1}, {2, 1}}), {{1, rmat(2, 2, {0, 0, 1, 0})}}),
                    NotFiltrationCompatible);
    CHECK_THROWS_AS(object_from_total(GradedSpace(std::map<int, int>{{0, 2}}), rmat(2, 2, {0, 0, 1, 0})), NotFiltrationCompatible);

    BundleObject split = object_from_total(GradedSpace({{0, 1}, {1, 1}, {3, 1}}), rmat(3, 3, {0, 0, 0, 2, 0, 0, 5, 7, 0}));
    CHECK(split.beta.size() == 3);
    CHECK(split.beta.at(2)(2, 1) == 7);
    CHECK(split.beta.at(3)(2, 0) == 5);
}

TEST_CASE("fiber functor on direct sums") {
    BundleObject sum = direct_sum(rank_two(), direct_sum(qn_object(1), qn_object(3)));
    GradedSpace w = fiber_functor(sum);
    CHECK(w.dims() == std::map<int, int>{{0, 1}, {1, 2}, {3, 1}});
    CHECK(sum.beta.at(1)(1, 0) == 1);
    CHECK(sum.total_beta()(2, 0) == 0);
}

TEST_CASE("rank two object") {
    BundleObject obj = rank_two();
    MatrixConnection c = matrix_connection(obj);
    CHECK(matrix_flatness_residual(obj, c).is_zero());
    CHECK(matrix_equisingular(obj, c));
    CHECK(matrix_classify(obj, c) == obj.beta);
    // the representation of from_beta(e_1) is the 2x2 image of its coefficients
    const InvariantConnection w = from_beta(Series::generator(1, LaurentSeries(1), 1));
    CHECK(c.a(1, 0) == w.a.coeff({1}));
    CHECK(c.b(1, 0) == w.b.coeff({1}));

    MatrixConnection broken = c;
    broken.a(1, 0) += LaurentSeries::z_power(-1);
    CHECK_FALSE(matrix_flatness_residual(obj, broken).is_zero());
    CHECK_THROWS_AS(matrix_equisingular(obj, broken), NotFlat);
}

TEST_CASE("classification of random objects") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 5; ++trial) {
        BundleObject obj = random_object(rng, {{0, 1}, {1, 2}, {2, 1}, {3, 1}});
        MatrixConnection c = matrix_connection(obj);
        CHECK(matrix_flatness_residual(obj, c).is_zero());
        CHECK(matrix_classify(obj, c) == obj.beta);
    }
    BundleObject obj = random_object(rng, {{0, 1}, {1, 1}, {2, 1}});
    CHECK(matrix_equisingular(obj, matrix_connection(obj)));
}

TEST_CASE("morphisms between Tate objects") {
    for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 3; ++m) {
            if (n == m) {
                CHECK(hom_dimension(qn_object(n), qn_object(m)) == 1);
                CHECK(morphism_check(qn_object(n), qn_object(m), rmat(1, 1, {3})));
            } else {
                CHECK(hom_dimension(qn_object(n), qn_object(m)) == 0);
                CHECK(morphism_check(qn_object(n), qn_object(m), rmat(1, 1, {0})));
                CHECK_THROWS_AS(morphism_check(qn_object(n), qn_object(m), rmat(1, 1, {1})), NotDegreeCompatible);
            }
        }
}

TEST_CASE("morphisms of the rank two object") {
    BundleObject e = rank_two();
    CHECK(morphism_check(e, e, RationalMatrix::identity(2)));
    CHECK(morphism_check(e, e, RationalMatrix(2, 2)));
    // the degree 1 line is a subobject, degree 0 a quotient
    CHECK(morphism_check(qn_object(1), e, rmat(2, 1, {0, 1})));
    CHECK(morphism_check(e, qn_object(0), rmat(1, 2, {1, 0})));
    CHECK_FALSE(morphism_check(qn_object(0), e, rmat(2, 1, {1, 0})));
    CHECK_FALSE(morphism_check(e, qn_object(1), rmat(1, 2, {0, 1})));
    // forgetting beta does not intertwine
    BundleObject flat_e{e.space, {}};
    CHECK_FALSE(morphism_check(e, flat_e, RationalMatrix::identity(2)));
    CHECK_FALSE(morphism_check(flat_e, e, RationalMatrix::identity(2)));
    CHECK(hom_dimension(e, e) == 1);
    CHECK(hom_dimension(flat_e, flat_e) == 2);
    CHECK(hom_dimension(qn_object(1), e) == 1);
    CHECK(hom_dimension(qn_object(0), e) == 0);

    auto blocks = morphism_blocks(e, qn_object(0), rmat(1, 2, {4, 0}));
    CHECK(blocks.at(0) == rmat(1, 1, {4}));
    CHECK(blocks.at(1).cols() == 1);
    CHECK(morphism_from_blocks(e, qn_object(0), blocks) == rmat(1, 2, {4, 0}));
}

TEST_CASE("random morphisms agree with a floating point oracle") {
    std::mt19937 rng(72);
    int accepted = 0, rejected = 0;
    for (int trial = 0; trial < 40; ++trial) {
        BundleObject src = random_object(rng, {{0, 1}, {1, 1}, {2, 1}});
        BundleObject dst = trial % 2 ? random_object(rng, {{0, 1}, {1, 2}, {2, 1}}) : src;
        RationalMatrix T = random_graded_map(rng, src, dst);
        const bool verdict = morphism_check(src, dst, T);
        CHECK(verdict == oracle_morphism(src, dst, T));
        (verdict ? accepted : rejected)++;
    }
    CHECK(rejected > 0);
    CHECK(morphism_check(qn_object(0), qn_object(0), RationalMatrix::identity(1)));
}

TEST_CASE("verdict is invariant under re-gauging representatives") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        BundleObject src = random_object(rng, {{0, 1}, {1, 1}, {2, 1}});
        BundleObject dst = random_object(rng, {{0, 1}, {1, 1}, {2, 1}});
        const RationalMatrix T = trial % 3 ? random_graded_map(rng, src, dst) : RationalMatrix::identity(3);
        const RationalMatrix u = random_unipotent(rng, src.space);
        const RationalMatrix up = random_unipotent(rng, dst.space);
        BundleObject src2 = object_from_total(src.space, u * src.total_beta() * unipotent_inverse(u));
        BundleObject dst2 = object_from_total(dst.space, up * dst.total_beta() * unipotent_inverse(up));
        const bool verdict = morphism_check(src, dst, T);
        CHECK(morphism_check(src2, dst, T) == verdict);
        CHECK(morphism_check(src, dst2, T) == verdict);
        CHECK(morphism_check(src2, dst2, T) == verdict);
    }
}

TEST_CASE("composition of morphisms") {
    std::mt19937 rng(74);
    int composed = 0;
    for (int trial = 0; trial < 30 && composed < 5; ++trial) {
        BundleObject a = random_object(rng, {{0, 1}, {1, 1}});
        BundleObject b = direct_sum(a, qn_object(1));
        // inclusion of a as a summand, then projection back
        RationalMatrix inc = rmat(3, 2, {1, 0, 0, 1, 0, 0});
        RationalMatrix proj = rmat(2, 3, {1, 0, 0, 0, 1, 0});
        REQUIRE(morphism_check(a, b, inc));
        REQUIRE(morphism_check(b, a, proj));
        CHECK(morphism_check(a, a, proj * inc));
        RationalMatrix f = random_graded_map(rng, b, b);
        RationalMatrix g = random_graded_map(rng, b, b);
        if (morphism_check(b, b, f) && morphism_check(b, b, g)) {
            CHECK(morphism_check(b, b, g * f));
            ++composed;
        }
    }
    CHECK(morphism_check(qn_object(1), rank_two(), rmat(2, 1, {0, 2})));
}
