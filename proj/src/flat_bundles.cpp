#include "equi/flat_bundles.hpp"

#include "equi/expansional.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace equi {

GradedSpace::GradedSpace(const std::map<int, int> &dims) {
    for (const auto &[d, n] : dims) {
        if (n < 0) throw std::invalid_argument("negative dimension");
        if (n == 0) continue;
        dims_[d] = n;
        degrees_.insert(degrees_.end(), n, d);
    }
}

int GradedSpace::dim(int degree) const {
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
}

int GradedSpace::filtration_dim(int n) const {
    int total = 0;
    for (const auto &[d, k] : dims_)
        if (d >= n) total += k;
    return total;
}

GradedSpace direct_sum(const GradedSpace &a, const GradedSpace &b) {
    std::map<int, int> dims = a.dims();
    for (const auto &[d, n] : b.dims()) dims[d] += n;
    return GradedSpace(dims);
}

RationalMatrix BundleObject::total_beta() const {
    const std::size_t n = space.total_dim();
    RationalMatrix total(n, n);
    for (const auto &[k, m] : beta) total += m;
    return total;
}

BundleObject object_from_rep(const GradedSpace &space, const std::map<int, RationalMatrix> &beta) {
    const auto &deg = space.degrees();
    const std::size_t dim = space.total_dim();
    BundleObject obj{space, {}};
    for (const auto &[n, m] : beta) {
        if (m.rows() != dim || m.cols() != dim)
            throw NotFiltrationCompatible("beta_" + std::to_string(n) + " has the wrong size");
        if (m.is_zero()) continue;
        if (n < 1) throw NotFiltrationCompatible("beta_" + std::to_string(n) + " does not lower the filtration");
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (m(i, j) != 0 && deg[i] - deg[j] != n)
                    throw NotFiltrationCompatible("beta_" + std::to_string(n) + " maps degree " +
                                                  std::to_string(deg[j]) + " to degree " + std::to_string(deg[i]));
        obj.beta.emplace(n, m);
    }
    return obj;
}

BundleObject object_from_total(const GradedSpace &space, const RationalMatrix &total) {
    const auto &deg = space.degrees();
    const std::size_t dim = space.total_dim();
    std::map<int, RationalMatrix> parts;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            if (total(i, j) == 0) continue;
            const int gap = deg[i] - deg[j];
            if (gap < 1) throw NotFiltrationCompatible("matrix does not lower the weight filtration strictly");
            auto it = parts.try_emplace(gap, dim, dim).first;
            it->second(i, j) = total(i, j);
        }
    return object_from_rep(space, parts);
}

BundleObject qn_object(int n) { return BundleObject{GradedSpace(std::map<int, int>{{n, 1}}), {}}; }

namespace {

// Positions of the basis vectors of a and b inside a + b.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sum_embedding(const GradedSpace &a, const GradedSpace &b) {
    const GradedSpace s = direct_sum(a, b);
    std::map<int, std::size_t> offset;
    std::size_t pos = 0;
    for (const auto &[d, n] : s.dims()) {
        offset[d] = pos;
        pos += n;
    }
    std::vector<std::size_t> ia, ib;
    std::map<int, std::size_t> used;
    for (int d : a.degrees()) ia.push_back(offset[d] + used[d]++);
    for (int d : b.degrees()) ib.push_back(offset[d] + used[d]++);
    return {ia, ib};
}

}  // namespace

BundleObject direct_sum(const BundleObject &a, const BundleObject &b) {
    const GradedSpace s = direct_sum(a.space, b.space);
    const auto [ia, ib] = sum_embedding(a.space, b.space);
    const std::size_t dim = s.total_dim();
    std::map<int, RationalMatrix> beta;
    auto place = [&](const std::map<int, RationalMatrix> &src, const std::vector<std::size_t> &idx) {
        for (const auto &[n, m] : src) {
            auto it = beta.try_emplace(n, dim, dim).first;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) it->second(idx[i], idx[j]) += m(i, j);
        }
    };
    place(a.beta, ia);
    place(b.beta, ib);
    return object_from_rep(s, beta);
}

GradedSpace fiber_functor(const BundleObject &obj) { return obj.space; }

void check_degree_compatible(const BundleObject &source, const BundleObject &target, const RationalMatrix &T) {
    const auto &ds = source.space.degrees();
    const auto &dt = target.space.degrees();
    if (T.rows() != dt.size() || T.cols() != ds.size())
        throw NotDegreeCompatible("morphism matrix has the wrong shape");
    for (std::size_t i = 0; i < dt.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j)
            if (T(i, j) != 0 && dt[i] != ds[j]) throw NotDegreeCompatible("morphism does not preserve the grading");
}

std::map<int, RationalMatrix> morphism_blocks(const BundleObject &source, const BundleObject &target,
                                              const RationalMatrix &T) {
    check_degree_compatible(source, target, T);
    const auto &ds = source.space.degrees();
    const auto &dt = target.space.degrees();
    std::map<int, RationalMatrix> blocks;
    std::set<int> degrees;
    for (int d : ds) degrees.insert(d);
    for (int d : dt) degrees.insert(d);
    for (int d : degrees) {
        RationalMatrix blk(target.space.dim(d), source.space.dim(d));
        std::size_t r = 0;
        for (std::size_t i = 0; i < dt.size(); ++i) {
            if (dt[i] != d) continue;
            std::size_t c = 0;
            for (std::size_t j = 0; j < ds.size(); ++j) {
                if (ds[j] != d) continue;
                blk(r, c++) = T(i, j);
            }
            ++r;
        }
        blocks.emplace(d, blk);
    }
    return blocks;
}

RationalMatrix morphism_from_blocks(const BundleObject &source, const BundleObject &target,
                                    const std::map<int, RationalMatrix> &blocks) {
    const auto &ds = source.space.degrees();
    const auto &dt = target.space.degrees();
    RationalMatrix T(dt.size(), ds.size());
    for (const auto &[d, blk] : blocks) {
        if (blk.rows() != static_cast<std::size_t>(target.space.dim(d)) ||
            blk.cols() != static_cast<std::size_t>(source.space.dim(d)))
            throw NotDegreeCompatible("block for degree " + std::to_string(d) + " has the wrong shape");
        std::size_t r = 0;
        for (std::size_t i = 0; i < dt.size(); ++i) {
            if (dt[i] != d) continue;
            std::size_t c = 0;
            for (std::size_t j = 0; j < ds.size(); ++j)
                if (ds[j] == d) T(i, j) = blk(r, c++);
            ++r;
        }
    }
    return T;
}

bool morphism_check(const BundleObject &source, const BundleObject &target, const RationalMatrix &T) {
    check_degree_compatible(source, target, T);
    const RationalMatrix B = source.total_beta(), Bp = target.total_beta();
    const std::size_t np = Bp.rows(), n = B.rows(), dim = np + n;

    // E' + E with E' first
    std::vector<int> deg(target.space.degrees());
    deg.insert(deg.end(), source.space.degrees().begin(), source.space.degrees().end());
    const RationalMatrix C = T * B - Bp * T;
    RationalMatrix B1(dim, dim), B2(dim, dim);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) B1(i, j) = B2(i, j) = Bp(i, j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) B1(np + i, np + j) = B2(np + i, np + j) = B(i, j);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < n; ++j) B1(i, np + j) = C(i, j);

    // unknown N, strictly raising degree: (1 + N) B1 = B2 (1 + N)
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> column;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (deg[i] > deg[j]) {
                column[{i, j}] = unknowns.size();
                unknowns.emplace_back(i, j);
            }
    RationalMatrix A(dim * dim, unknowns.size());
    std::vector<Rational> rhs(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            const std::size_t row = i * dim + k;
            rhs[row] = B2(i, k) - B1(i, k);
            for (std::size_t j = 0; j < dim; ++j) {
                if (auto it = column.find({i, j}); it != column.end()) A(row, it->second) += B1(j, k);
                if (auto it = column.find({j, k}); it != column.end()) A(row, it->second) -= B2(i, j);
            }
        }
    if (unknowns.empty()) {
        return std::all_of(rhs.begin(), rhs.end(), [](const Rational &q) { return q == 0; });
    }
    return solve_linear(A, rhs).has_value();
}

std::size_t hom_dimension(const BundleObject &source, const BundleObject &target) {
    const RationalMatrix B = source.total_beta(), Bp = target.total_beta();
    const auto &ds = source.space.degrees();
    const auto &dt = target.space.degrees();
    // unknowns S : E -> E' with deg' >= deg; S B - B' S = 0
    std::vector<std::pair<std::size_t, std::size_t>> graded, raising;
    for (std::size_t i = 0; i < dt.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (dt[i] == ds[j]) graded.emplace_back(i, j);
            if (dt[i] > ds[j]) raising.emplace_back(i, j);
        }
    auto system = [&](const std::vector<std::pair<std::size_t, std::size_t>> &vars) {
        RationalMatrix A(dt.size() * ds.size(), vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v) {
            const auto [p, q] = vars[v];
            for (std::size_t k = 0; k < ds.size(); ++k) A(p * ds.size() + k, v) += B(q, k);
            for (std::size_t i = 0; i < dt.size(); ++i) A(i * ds.size() + q, v) -= Bp(i, p);
        }
        return A;
    };
    auto all = graded;
    all.insert(all.end(), raising.begin(), raising.end());
    const std::size_t null_all = all.size() - (all.empty() ? 0 : rank(system(all)));
    const std::size_t null_raising = raising.size() - (raising.empty() ? 0 : rank(system(raising)));
    return null_all - null_raising;
}

namespace {

LaurentMatrix to_laurent(const RationalMatrix &m) {
    return m.map([](const Rational &q) { return LaurentSeries(q); });
}

int max_gap(const BundleObject &obj) {
    const auto &deg = obj.space.degrees();
    if (deg.empty()) return 1;
    return std::max(1, deg.back() - deg.front());
}

// Part of m whose entries raise the degree by exactly d.
LaurentMatrix gap_component(const BundleObject &obj, const LaurentMatrix &m, int d) {
    const auto &deg = obj.space.degrees();
    LaurentMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (deg[i] - deg[j] == d) r(i, j) = m(i, j);
    return r;
}

}  // namespace

LaurentMatrix represent(const BundleObject &obj, const Series &x) {
    const std::size_t dim = obj.space.total_dim();
    LaurentMatrix out(dim, dim);
    std::map<Word, RationalMatrix, WordLess> products;
    products.emplace(Word{}, RationalMatrix::identity(dim));
    for (const auto &[w, c] : x.terms()) {
        for (std::size_t len = 1; len <= w.size(); ++len) {
            const Word prefix(w.begin(), w.begin() + len);
            if (products.count(prefix)) continue;
            const Word head(w.begin(), w.begin() + len - 1);
            auto it = obj.beta.find(prefix.back());
            products.emplace(prefix, it == obj.beta.end() ? RationalMatrix(dim, dim) : products.at(head) * it->second);
        }
        const RationalMatrix &p = products.at(w);
        if (p.is_zero()) continue;
        out += c * to_laurent(p);
    }
    return out;
}

MatrixConnection matrix_connection(const BundleObject &obj) {
    const int trunc = max_gap(obj);
    LieElement universal(trunc);
    for (int n = 1; n <= trunc; ++n) universal.add({n}, LaurentSeries(1));
    const InvariantConnection c = from_beta(universal);
    return {represent(obj, c.a), represent(obj, c.b)};
}

LaurentMatrix matrix_flatness_residual(const BundleObject &obj, const MatrixConnection &c) {
    const auto &deg = obj.space.degrees();
    LaurentMatrix graded_a = c.a;
    for (std::size_t i = 0; i < graded_a.rows(); ++i)
        for (std::size_t j = 0; j < graded_a.cols(); ++j)
            graded_a(i, j) = LaurentSeries(deg[i] - deg[j]) * c.a(i, j);
    const LaurentMatrix db = c.b.map([](const LaurentSeries &x) { return differentiate(x); });
    return db - graded_a + (c.a * c.b - c.b * c.a);
}

LaurentMatrix matrix_section_solution(const BundleObject &obj, const MatrixConnection &c, const Section &sigma) {
    const int trunc = max_gap(obj);
    const std::size_t dim = obj.space.total_dim();
    std::vector<LaurentMatrix> parts(trunc + 1);
    for (int d = 1; d <= trunc; ++d) parts[d] = gap_component(obj, c.b, d);
    std::map<Word, LaurentMatrix, WordLess> products;
    products.emplace(Word{}, LaurentMatrix::identity(dim));
    LaurentMatrix out = LaurentMatrix::identity(dim);
    for (const auto &w : all_words(trunc)) {
        const Word head(w.begin(), w.end() - 1);
        auto hit = products.find(head);
        if (hit == products.end()) continue;  // some prefix vanished
        LaurentMatrix p = hit->second * parts[w.back()];
        if (p.is_zero()) continue;
        const LaurentSeries weight = power_iterated_integral(w, LaurentSeries(), sigma.alpha());
        out += weight * p;
        products.emplace(w, std::move(p));
    }
    return out;
}

MatrixBirkhoff matrix_birkhoff(const BundleObject &obj, const LaurentMatrix &m) {
    const int trunc = max_gap(obj);
    const std::size_t dim = obj.space.total_dim();
    std::vector<LaurentMatrix> parts(trunc + 1), minus(trunc + 1);
    for (int d = 1; d <= trunc; ++d) parts[d] = gap_component(obj, m, d);
    LaurentMatrix mi = LaurentMatrix::identity(dim), pl = LaurentMatrix::identity(dim);
    for (int d = 1; d <= trunc; ++d) {
        LaurentMatrix arg = parts[d];
        for (int j = 1; j < d; ++j) arg += minus[j] * parts[d - j];
        minus[d] = arg.map([](const LaurentSeries &x) { return -pole_part(x); });
        pl += arg.map([](const LaurentSeries &x) { return regular_part(x); });
        mi += minus[d];
    }
    return {mi, pl};
}

bool matrix_equisingular(const BundleObject &obj, const MatrixConnection &c, const std::vector<Section> &sections) {
    if (!matrix_flatness_residual(obj, c).is_zero()) throw NotFlat("matrix connection is not flat");
    const std::vector<Section> family = sections.empty() ? default_sections(max_gap(obj)) : sections;
    std::optional<LaurentMatrix> reference;
    for (const auto &sigma : family) {
        LaurentMatrix minus = matrix_birkhoff(obj, matrix_section_solution(obj, c, sigma)).minus;
        if (!reference)
            reference = std::move(minus);
        else if (!(minus == *reference))
            return false;
    }
    return true;
}

std::map<int, RationalMatrix> matrix_classify(const BundleObject &obj, const MatrixConnection &c) {
    if (!matrix_flatness_residual(obj, c).is_zero()) throw NotFlat("matrix connection is not flat");
    const int trunc = max_gap(obj);
    const std::size_t dim = obj.space.total_dim();
    const LaurentMatrix minus = matrix_birkhoff(obj, matrix_section_solution(obj, c, Section(LaurentSeries(1)))).minus;
    // log of a unipotent matrix
    const LaurentMatrix nil = minus - LaurentMatrix::identity(dim);
    LaurentMatrix log(dim, dim), power = LaurentMatrix::identity(dim);
    for (int k = 1; k <= trunc; ++k) {
        power = power * nil;
        if (power.is_zero()) break;
        log += LaurentSeries(ratio(k % 2 ? 1 : -1, k)) * power;
    }
    std::map<int, RationalMatrix> beta;
    const auto &deg = obj.space.degrees();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const int gap = deg[i] - deg[j];
            if (gap < 1) continue;
            const LaurentSeries &x = log(i, j);
            if (!x.coeff(-1).is_constant()) throw NotEquisingular("residue depends on symbols");
            const Rational q = gap * x.coeff(-1).constant();
            if (q == 0) continue;
            beta.try_emplace(gap, dim, dim).first->second(i, j) = q;
        }
    const BundleObject rebuilt = object_from_rep(obj.space, beta);
    if (!(matrix_connection(rebuilt).a == c.a) || !(matrix_connection(rebuilt).b == c.b))
        throw NotEquisingular("matrix connection is not generated by a constant beta");
    return beta;
}

}  // namespace equi
