#include "equi/connections.hpp"
#include "equi/expansional.hpp"
#include "random_inputs.hpp"

#include <doctest.h>

using namespace equi;
using equi::testing::random_laurent;
using equi::testing::random_lie;

namespace {

const PolyCoeff Lsym = PolyCoeff::symbol(Symbol::L);
const PolyCoeff ssym = PolyCoeff::symbol(Symbol::s);

LaurentSeries z(int k) { return LaurentSeries::z_power(k); }
LaurentSeries zc(const Rational &c, int k) { return LaurentSeries::monomial(PolyCoeff(c), k); }

Series e(int n, const LaurentSeries &c = LaurentSeries(1), int trunc = 6) { return Series::generator(n, c, trunc); }

Series derivative(const Series &x) {
    return x.map_coeffs([](const LaurentSeries &c) { return differentiate(c); });
}

GroupElement random_gauge(std::mt19937 &rng, int trunc) {
    Series x(trunc);
    for (int n = 1; n <= trunc; ++n) x += e(n, random_laurent(rng, 0, 2), trunc);
    x += bracket(e(1, random_laurent(rng, 0, 1), trunc), e(2, LaurentSeries(1), trunc));
    return nc_exp(x);
}

}  // namespace

TEST_CASE("from_beta examples") {
    InvariantConnection w = from_beta(e(2));
    CHECK(w.a == e(2, zc(Rational(1, 2), -2)));
    CHECK(w.b == e(2, -z(-1)));
    InvariantConnection zero = from_beta(LieElement());
    CHECK(zero.a.is_zero());
    CHECK(zero.b.is_zero());
    CHECK(flatness_check(from_beta(e(1, 1, 3) + e(2, 1, 3))).is_zero());
}

TEST_CASE("flatness residual") {
    CHECK(flatness_check(from_beta(e(2))).is_zero());
    InvariantConnection w{e(1, z(-1)), Series()};
    CHECK(flatness_check(w) == e(1, -z(-1)));
    InvariantConnection c{Series(), e(1)};
    CHECK(flatness_check(c).is_zero());
    std::mt19937 rng(51);
    for (int trial = 0; trial < 5; ++trial) CHECK(is_flat(from_beta(random_lie(rng, 5, 5))));
}

TEST_CASE("restriction to sections") {
    std::mt19937 rng(52);
    LieElement beta = random_lie(rng, 4, 4);
    InvariantConnection w = from_beta(beta);
    CHECK(restrict_to_section(w, Section(LaurentSeries(1))) == w.a);
    CHECK(restrict_to_section(InvariantConnection{Series(4), Series(4)}, Section(1 + z(1))).is_zero());

    // the section solution solves the restricted equation and is theta_{sz} of the unit-section loop
    const Section sigma = Section::exponential(ssym, section_order(4));
    GroupElement f = section_solution(w, sigma);
    LieElement A = restrict_to_section(w, sigma);
    CHECK(inverse(f) * derivative(f) == A);
    GroupElement gamma = section_solution(w, Section(LaurentSeries(1)));
    CHECK(f == theta(gamma, LaurentSeries::monomial(ssym, 1), section_order(4)));
    // minus parts do not depend on s
    auto parts = birkhoff_series(f);
    CHECK(free_of(parts.minus, Symbol::s));
    CHECK(parts.minus == birkhoff_series(gamma).minus);
}

TEST_CASE("solve_Df") {
    CHECK(solve_Df(Series(5)) == Series::unit(5));
    for (int n = 1; n <= 5; ++n) {
        const Rational c = ratio(n + 2, 3);
        try {
            solve_Df(e(n, zc(c, -1), 5));
            FAIL("expected an obstruction");
        } catch (const Obstructed &ob) {
            CHECK(ob.degree() == n);
            CHECK(ob.word() == Word{n});
            CHECK(ob.residue() == PolyCoeff(c));
        }
    }
    std::mt19937 rng(53);
    for (int trial = 0; trial < 4; ++trial) {
        InvariantConnection w = from_beta(random_lie(rng, 4, 4));
        for (const auto &sigma : default_sections(4)) {
            LieElement A = restrict_to_section(w, sigma);
            GroupElement f = solve_Df(A);
            CHECK(inverse(f) * derivative(f) == A);
        }
    }
}

TEST_CASE("gauge action") {
    std::mt19937 rng(54);
    LieElement beta = random_lie(rng, 4, 4);
    InvariantConnection w = from_beta(beta);
    InvariantConnection same = gauge_act(Series::unit(4), w);
    CHECK(same.a == w.a);
    CHECK(same.b == w.b);

    GroupElement h = random_gauge(rng, 4);
    InvariantConnection moved = gauge_act(h, w);
    InvariantConnection back = gauge_act(h, gauge_act(inverse(h), w));
    CHECK(back.a == w.a);
    CHECK(back.b == w.b);
    CHECK(is_flat(moved));
    CHECK(classify_beta(moved) == beta);
    CHECK(equivalent_negative_parts(w, moved));
    CHECK_THROWS_AS(gauge_act(nc_exp(e(1, z(-1), 4)), w), NotRegular);
}

TEST_CASE("equivalent negative parts") {
    InvariantConnection w = from_beta(e(1) + e(3));
    CHECK(equivalent_negative_parts(w, w));
    CHECK_FALSE(equivalent_negative_parts(from_beta(e(1)), from_beta(e(1, 2))));
    auto m1 = birkhoff_series(section_solution(from_beta(e(1)), Section(LaurentSeries(1)))).minus;
    auto m2 = birkhoff_series(section_solution(from_beta(e(1, 2)), Section(LaurentSeries(1)))).minus;
    CHECK(m1.coeff({1}) == z(-1));
    CHECK(m2.coeff({1}) == zc(2, -1));
}

TEST_CASE("classification") {
    CHECK(classify_beta(from_beta(e(1) + e(2))) == e(1) + e(2));
    CHECK(classify_beta(InvariantConnection{Series(), Series()}).is_zero());
    std::mt19937 rng(55);
    for (int trial = 0; trial < 5; ++trial) {
        LieElement beta = random_lie(rng, 5, 5);
        CHECK(classify_beta(from_beta(beta)) == beta);
        CHECK(classify_beta(gauge_act(random_gauge(rng, 5), from_beta(beta))) == beta);
    }
    CHECK_THROWS_AS(classify_beta(InvariantConnection{e(1, z(-1)), Series()}), NotFlat);
}

TEST_CASE("equisingularity") {
    std::mt19937 rng(56);
    CHECK(equisingularity_check(from_beta(random_lie(rng, 4, 4))));
    CHECK(equisingularity_check(InvariantConnection{Series(4), Series(4)}));

    // a = e1 L / z is not flat and its restriction has residue L
    InvariantConnection injected{e(1, LaurentSeries::monomial(Lsym, -1), 4), Series(4)};
    try {
        equisingularity_check(injected);
        FAIL("expected an obstruction");
    } catch (const Obstructed &ob) {
        CHECK(ob.residue() == Lsym);
    }

    // flat, but the solution exp(u e1 / z^2) has section-dependent poles
    InvariantConnection irregular{e(1, zc(-2, -3), 4), e(1, z(-2), 4)};
    CHECK(is_flat(irregular));
    CHECK_FALSE(equisingularity_check(irregular));
}

TEST_CASE("minus part on the section v = 1 + z") {
    std::mt19937 rng(57);
    LieElement beta = random_lie(rng, 4, 4);
    InvariantConnection w = from_beta(beta);
    GradedKernel k{KernelKind::power_flow, beta, -z(-1)};
    GroupElement te = time_ordered_exp(k, Bound::at(0), Bound::at(1));
    CHECK(birkhoff_series(section_solution(w, Section(1 + z(1)))).minus == inverse(te));
}

TEST_CASE("regular values under a change of section") {
    const Section one(LaurentSeries(1));
    auto same = section_change_regular_value(e(1, 1, 4), one, one);
    CHECK(same.verified);
    CHECK(same.value1 == same.value2);

    auto shift = section_change_regular_value(e(1, 1, 4), one, Section(1 + z(1)));
    CHECK(shift.verified);
    CHECK(shift.value1 == Series::unit(4));
    CHECK(shift.value2 == nc_exp(-e(1, 1, 4)));

    auto second_order = section_change_regular_value(e(1, 1, 4) + e(2, 1, 4), one, Section(1 + z(2)));
    CHECK(second_order.verified);
    CHECK(second_order.value1 == second_order.value2);

    std::mt19937 rng(58);
    LieElement beta = random_lie(rng, 4, 4);
    auto symbolic = section_change_regular_value(beta, Section(1 + z(1)), Section(1 + LaurentSeries::monomial(ssym, 1)));
    CHECK(symbolic.verified);
    CHECK(symbolic.s == ssym - PolyCoeff(1));
}
