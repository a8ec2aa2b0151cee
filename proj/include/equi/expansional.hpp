#pragma once

// Time-ordered exponentials of graded kernels, computed by exact iterated
// integration, together with the loops and frames built from them.
//
// Two kernel shapes occur. A theta_flow kernel carries e^{-nt} dt on its
// degree-n part (t in [0, inf]); a power_flow kernel carries u^{n-1} du. With
// x = e^{-t} both reduce to iterated integrals of monomials x^{k-1} dx, which
// are evaluated symbolically with Laurent-series bounds.

#include "equi/free_graded.hpp"
#include "equi/scalar_series.hpp"

#include <utility>
#include <vector>

namespace equi {

enum class KernelKind { theta_flow, power_flow };

struct GradedKernel {
    KernelKind kind = KernelKind::power_flow;
    /// The family beta_n, read off as the degree-n components.
    LieElement beta;
    /// Scalar multiplying every letter, e.g. -1/z.
    LaurentSeries prefactor = LaurentSeries(1);
};

/// Integration bound. For theta_flow kernels a finite bound is a time t
/// that vanishes at z = 0 (so e^{-t} is a series with constant term 1), or
/// a point given directly in the coordinate x = e^{-t}.
class Bound {
public:
    static Bound infinity() { return Bound(Kind::infinity, {}); }
    static Bound at(LaurentSeries value) { return Bound(Kind::value, std::move(value)); }
    static Bound exp_coordinate(LaurentSeries x) { return Bound(Kind::exp_coordinate, std::move(x)); }

    bool is_infinite() const { return kind_ == Kind::infinity; }
    bool is_exp_coordinate() const { return kind_ == Kind::exp_coordinate; }
    const LaurentSeries &value() const { return value_; }

private:
    enum class Kind { value, infinity, exp_coordinate };
    Bound(Kind k, LaurentSeries v) : kind_(k), value_(std::move(v)) {}
    Kind kind_;
    LaurentSeries value_;
};

/// Iterated integral of x^{k1-1} dx1 ... x^{kn-1} dxn over a <= x1 <= ... <= xn <= b,
/// the first letter being innermost.
LaurentSeries power_iterated_integral(const Word &w, const LaurentSeries &a, const LaurentSeries &b);

/// Te over [lower, upper]: sum over words of prefactor^n * (iterated integral)
/// * beta_{k1} ... beta_{kn}. `order` bounds exponential expansions of bounds.
GroupElement time_ordered_exp(const GradedKernel &kernel, const Bound &lower, const Bound &upper,
                              int order = LaurentSeries::kDefaultOrder);

struct FrameEntry {
    Word word;
    Rational coefficient;
    int v_exp;
    int z_exp;
};

struct UniversalFrame {
    std::vector<FrameEntry> table;
    GroupElement series;
};

/// The universal singular frame up to degree n, from its closed form.
UniversalFrame universal_frame(int n);

/// Te^{-(1/z) int_0^inf theta_{-t}(beta) dt}.
GroupElement gamma_minus_from_beta(const LieElement &beta);

/// The loop gamma_mu = Te^{-(1/z) int_inf^{-zL} theta_{-t}(beta) dt} * theta_{zL}(gamma_reg),
/// with L = log mu. Coefficients are known at least up to z^order.
GroupElement gamma_mu(const LieElement &beta, const GroupElement &gamma_reg, int order = LaurentSeries::kDefaultOrder);

/// Recovers beta from a minus part: beta_n = -n z [z^{-1} part of (log g)_n].
LieElement beta_extract(const GroupElement &gamma_minus);

/// exp(t * sum_{n <= trunc} e_{-n}).
GroupElement rg_flow(const PolyCoeff &t, int trunc = NCSeries<LaurentSeries>::kDefaultTrunc);

/// Numeric value of every coefficient at z (symbols from `values`).
NCSeries<double> evaluate_series(const Series &x, double z, const Assignment &values = {});

/// Discretized product integral A <- A (1 + alpha(s_i) ds) at midpoints s_i,
/// with the kernel evaluated at z.
NCSeries<double> product_integral_oracle(const GradedKernel &kernel, double lower, double upper, int steps, double z,
                                         const Assignment &values = {});

/// Same, recording the partial products after every `stride` steps (and at the start).
std::vector<std::pair<double, NCSeries<double>>> product_integral_path(const GradedKernel &kernel, double lower,
                                                                       double upper, int steps, int stride, double z,
                                                                       const Assignment &values = {});

/// Kernel value alpha(s) at a numeric time, as a series.
NCSeries<double> kernel_value(const GradedKernel &kernel, double s, double z, const Assignment &values = {});

/// e^{-t(beta/z + Y)} applied to 1 in the left-regular representation on
/// words of degree <= max_degree, via a dense matrix exponential.
NCSeries<double> scattering_numeric(const LieElement &beta, double t, double z, int max_degree);

}  // namespace equi
