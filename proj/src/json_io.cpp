#include "equi/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace equi {

namespace {

const Json &field(const Json &j, const char *name) {
    if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + name + "'");
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
    return *it;
}

int int_field(const Json &j, const char *name) {
    const Json &v = field(j, name);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + name + "' must be an integer");
    return v.get<int>();
}

const Json &array_field(const Json &j, const char *name) {
    const Json &v = field(j, name);
    if (!v.is_array()) throw ParseError(std::string("field '") + name + "' must be an array");
    return v;
}

int trunc_field(const Json &j, int fallback) {
    const int n = j.contains("trunc") ? int_field(j, "trunc") : fallback;
    if (n < 0) throw ParseError("negative truncation");
    return n;
}

Word word_from_json(const Json &j) {
    if (!j.is_array()) throw ParseError("a word must be an array of positive integers");
    Word w;
    for (const auto &k : j) {
        if (!k.is_number_integer() || k.get<int>() < 1) throw ParseError("word letters must be positive integers");
        w.push_back(k.get<int>());
    }
    return w;
}

}  // namespace

Json rational_to_json(const Rational &q) { return format_rational(q); }

Rational rational_from_json(const Json &j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError("rationals are written as \"num/den\" strings");
}

Json poly_to_json(const PolyCoeff &p) {
    Json out = Json::array();
    for (const auto &[m, c] : p.terms()) {
        Json mono = Json::object();
        for (int s = 0; s < kSymbolCount; ++s) mono[kSymbolNames[s]] = m[s];
        mono["value"] = rational_to_json(c);
        out.push_back(std::move(mono));
    }
    return out;
}

PolyCoeff poly_from_json(const Json &j) {
    if (!j.is_array()) throw ParseError("monomials must be an array");
    PolyCoeff p;
    for (const auto &mono : j) {
        Monomial m{};
        for (int s = 0; s < kSymbolCount; ++s) {
            if (!mono.is_object()) throw ParseError("monomial must be an object");
            if (!mono.contains(kSymbolNames[s])) continue;
            m[s] = int_field(mono, kSymbolNames[s]);
            if (m[s] < 0) throw ParseError("negative exponent");
        }
        p += PolyCoeff::monomial(m, rational_from_json(field(mono, "value")));
    }
    return p;
}

Json laurent_to_json(const LaurentSeries &x) {
    Json coeffs = Json::array();
    for (const auto &[k, c] : x.terms()) coeffs.push_back({{"z", k}, {"monomials", poly_to_json(c)}});
    Json out = {{"pole_order", x.pole_order()}, {"coeffs", std::move(coeffs)}};
    if (!x.is_exact()) out["order"] = x.precision();
    return out;
}

LaurentSeries laurent_from_json(const Json &j) {
    if (j.is_string() || j.is_number_integer()) return LaurentSeries(rational_from_json(j));
    LaurentSeries::Terms terms;
    for (const auto &c : array_field(j, "coeffs")) {
        const int k = int_field(c, "z");
        PolyCoeff p = poly_from_json(field(c, "monomials"));
        if (p.is_zero()) continue;
        if (!terms.emplace(k, std::move(p)).second) throw ParseError("repeated z exponent " + std::to_string(k));
    }
    const int prec = j.contains("order") ? int_field(j, "order") : LaurentSeries::kExact;
    for (const auto &[k, p] : terms)
        if (k > prec) throw ParseError("coefficient beyond the declared order");
    LaurentSeries x = LaurentSeries::from_terms(std::move(terms), prec);
    if (j.contains("pole_order") && int_field(j, "pole_order") != x.pole_order())
        throw ParseError("pole_order does not match the coefficients");
    return x;
}

Json series_to_json(const Series &x) {
    Json terms = Json::array();
    for (const auto &[w, c] : x.terms()) terms.push_back({{"word", w}, {"coeff", laurent_to_json(c)}});
    return {{"trunc", x.trunc()}, {"terms", std::move(terms)}};
}

Series series_from_json(const Json &j, int default_trunc) {
    Series x(trunc_field(j, default_trunc));
    for (const auto &t : array_field(j, "terms")) {
        Word w = word_from_json(field(t, "word"));
        if (word_degree(w) > x.trunc()) throw ParseError("word " + word_to_string(w) + " exceeds the truncation");
        x.add(w, laurent_from_json(field(t, "coeff")));
    }
    return x;
}

Json character_to_json(const Character &phi) {
    const auto &pres = phi.presentation();
    Json values = Json::array();
    for (std::size_t i = 0; i < pres->size(); ++i)
        if (!phi.value(i).is_zero()) values.push_back({{"key", pres->key(i)}, {"series", laurent_to_json(phi.value(i))}});
    return {{"presentation", pres->kind_name()}, {"trunc", pres->trunc()}, {"values", std::move(values)}};
}

Character character_from_json(const Json &j, int default_trunc) {
    const Json &kind = field(j, "presentation");
    if (!kind.is_string()) throw ParseError("presentation must be a string");
    const int trunc = trunc_field(j, default_trunc);
    PresentationPtr pres;
    if (kind == "shuffle")
        pres = HopfPresentation::shuffle(trunc);
    else if (kind == "rooted_trees")
        pres = HopfPresentation::rooted_trees(trunc);
    else
        throw ParseError("unknown presentation '" + kind.get<std::string>() + "'");

    std::map<std::string, LaurentSeries> given;
    for (const auto &v : array_field(j, "values")) {
        const Json &key = field(v, "key");
        std::optional<std::size_t> idx;
        if (key.is_array() && pres->kind() == HopfPresentation::Kind::shuffle)
            idx = pres->index_of(word_from_json(key));
        else if (key.is_string())
            idx = pres->index_of_key(pres->kind() == HopfPresentation::Kind::rooted_trees
                                         ? forest_to_string(canonical_forest(parse_forest(key.get<std::string>())))
                                         : key.get<std::string>());
        if (!idx) throw ParseError("unknown basis key " + key.dump());
        if (!given.emplace(pres->key(*idx), laurent_from_json(field(v, "series"))).second)
            throw ParseError("repeated key " + key.dump());
    }
    auto unit = given.find(pres->key(0));
    if (unit != given.end()) {
        if (!(unit->second == LaurentSeries(1))) throw ParseError("a character takes the value 1 on the unit");
        given.erase(unit);
    }
    std::map<std::string, LaurentSeries> generators;
    for (const auto &[k, v] : given) {
        const auto idx = *pres->index_of_key(k);
        if (pres->kind() == HopfPresentation::Kind::shuffle || pres->forest(idx).size() == 1) generators.emplace(k, v);
    }
    Character phi = Character::from_generators(pres, generators);
    for (const auto &[k, v] : given)
        if (!(phi.value(*pres->index_of_key(k)) == v))
            throw ParseError("value on forest " + k + " is not the product of its tree values");
    return phi;
}

Json connection_to_json(const InvariantConnection &omega) {
    const int n = omega.trunc();
    Json a = Json::array(), b = Json::array();
    for (int d = 1; d <= n; ++d) {
        a.push_back(series_to_json(omega.a.component(d)));
        b.push_back(series_to_json(omega.b.component(d)));
    }
    return {{"trunc", n}, {"a", std::move(a)}, {"b", std::move(b)}};
}

InvariantConnection connection_from_json(const Json &j, int default_trunc) {
    const int n = trunc_field(j, default_trunc);
    auto read = [&](const char *name) {
        Series total(n);
        const Json &parts = array_field(j, name);
        if (parts.size() > static_cast<std::size_t>(n))
            throw ParseError(std::string("'") + name + "' has more components than the truncation");
        for (std::size_t d = 1; d <= parts.size(); ++d) {
            const Series part = series_from_json(parts[d - 1], n);
            for (const auto &[w, c] : part.terms())
                if (word_degree(w) != static_cast<int>(d))
                    throw ParseError(std::string("'") + name + "' component " + std::to_string(d) +
                                     " holds the word " + word_to_string(w));
            total += part;
        }
        return total;
    };
    InvariantConnection omega{read("a"), read("b")};
    return omega;
}

std::vector<FrameEntry> frame_rows(const UniversalFrame &frame) {
    std::vector<FrameEntry> rows = frame.table;
    std::stable_sort(rows.begin(), rows.end(), [](const FrameEntry &x, const FrameEntry &y) {
        if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
        return x.word < y.word;
    });
    return rows;
}

Json frame_to_json(const UniversalFrame &frame, int order) {
    Json rows = Json::array();
    for (const auto &e : frame_rows(frame))
        rows.push_back({{"word", e.word}, {"coefficient", rational_to_json(e.coefficient)},
                        {"v_exp", e.v_exp}, {"z_exp", e.z_exp}});
    return {{"order", order}, {"rows", std::move(rows)}};
}

std::string frame_to_csv(const UniversalFrame &frame) {
    std::ostringstream out;
    out << "word;coefficient_num;coefficient_den;v_exp;z_exp\n";
    for (const auto &e : frame_rows(frame))
        out << word_to_string(e.word) << ';' << e.coefficient.get_num().get_str() << ';'
            << e.coefficient.get_den().get_str() << ';' << e.v_exp << ';' << e.z_exp << '\n';
    return out.str();
}

std::vector<FrameEntry> frame_from_json(const Json &j) {
    std::vector<FrameEntry> rows;
    for (const auto &r : array_field(j, "rows"))
        rows.push_back({word_from_json(field(r, "word")), rational_from_json(field(r, "coefficient")),
                        int_field(r, "v_exp"), int_field(r, "z_exp")});
    return rows;
}

Verdict verify_connection(const InvariantConnection &omega) {
    Verdict v;
    v.flat = is_flat(omega);
    try {
        v.equisingular = equisingularity_check(omega);
    } catch (const Obstructed &ob) {
        v.obstruction_degree = ob.degree();
        v.obstruction_word = ob.word();
        v.obstruction_residue = ob.residue();
    } catch (const NotFlat &) {
    }
    if (v.flat && v.equisingular) {
        try {
            v.beta = classify_beta(omega);
        } catch (const NotEquisingular &) {
            v.equisingular = false;
        }
    }
    return v;
}

Json verdict_to_json(const Verdict &v) {
    Json out = {{"flat", v.flat}, {"equisingular", v.equisingular}};
    out["beta"] = v.beta ? series_to_json(*v.beta) : Json(nullptr);
    if (v.obstruction_degree)
        out["obstruction"] = {{"degree", *v.obstruction_degree}, {"word", v.obstruction_word},
                              {"residue", poly_to_json(v.obstruction_residue)}};
    else
        out["obstruction"] = nullptr;
    return out;
}

Verdict verdict_from_json(const Json &j) {
    Verdict v;
    const Json &flat = field(j, "flat"), &equi = field(j, "equisingular");
    if (!flat.is_boolean() || !equi.is_boolean()) throw ParseError("verdict flags must be booleans");
    v.flat = flat.get<bool>();
    v.equisingular = equi.get<bool>();
    if (const Json &beta = field(j, "beta"); !beta.is_null()) v.beta = series_from_json(beta);
    if (const Json &ob = field(j, "obstruction"); !ob.is_null()) {
        v.obstruction_degree = int_field(ob, "degree");
        v.obstruction_word = word_from_json(field(ob, "word"));
        v.obstruction_residue = poly_from_json(field(ob, "residue"));
    }
    return v;
}

Json matrix_to_json(const RationalMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RationalMatrix matrix_from_json(const Json &j) {
    if (!j.is_array()) throw ParseError("a matrix is an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix rows must have equal length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(j[i][k]);
    }
    return m;
}

Json object_to_json(const BundleObject &obj) {
    Json dims = Json::object();
    for (const auto &[d, n] : obj.space.dims()) dims[std::to_string(d)] = n;
    Json beta = Json::array();
    for (const auto &[n, m] : obj.beta) beta.push_back({{"n", n}, {"matrix", matrix_to_json(m)}});
    return {{"dims", std::move(dims)}, {"beta", std::move(beta)}};
}

BundleObject object_from_json(const Json &j) {
    const Json &dims = field(j, "dims");
    if (!dims.is_object()) throw ParseError("dims must map degrees to dimensions");
    std::map<int, int> d;
    for (const auto &[key, value] : dims.items()) {
        int degree = 0;
        try {
            std::size_t used = 0;
            degree = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception &) {
            throw ParseError("degree key '" + key + "' is not an integer");
        }
        if (!value.is_number_integer() || value.get<int>() < 0) throw ParseError("dimensions must be non-negative integers");
        d[degree] = value.get<int>();
    }
    const GradedSpace space(d);
    std::map<int, RationalMatrix> beta;
    for (const auto &b : array_field(j, "beta")) {
        const int n = int_field(b, "n");
        RationalMatrix m = matrix_from_json(field(b, "matrix"));
        if (m.rows() == 0 && space.total_dim() > 0) m = RationalMatrix(space.total_dim(), space.total_dim());
        if (m.rows() != space.total_dim() || m.cols() != space.total_dim())
            throw ParseError("beta_" + std::to_string(n) + " does not match the total dimension");
        if (!beta.emplace(n, std::move(m)).second) throw ParseError("repeated beta_" + std::to_string(n));
    }
    return object_from_rep(space, beta);
}

Json morphism_to_json(const BundleObject &source, const BundleObject &target, const RationalMatrix &T) {
    Json blocks = Json::array();
    for (const auto &[d, m] : morphism_blocks(source, target, T))
        if (m.rows() && m.cols()) blocks.push_back({{"degree", d}, {"matrix", matrix_to_json(m)}});
    return {{"blocks", std::move(blocks)}};
}

RationalMatrix morphism_from_json(const Json &j, const BundleObject &source, const BundleObject &target) {
    std::map<int, RationalMatrix> blocks;
    for (const auto &b : array_field(j, "blocks")) {
        const int d = int_field(b, "degree");
        RationalMatrix m = matrix_from_json(field(b, "matrix"));
        if (m.rows() != static_cast<std::size_t>(target.space.dim(d)) ||
            m.cols() != static_cast<std::size_t>(source.space.dim(d)))
            throw ParseError("block for degree " + std::to_string(d) + " has the wrong shape");
        if (!blocks.emplace(d, std::move(m)).second) throw ParseError("repeated block for degree " + std::to_string(d));
    }
    return morphism_from_blocks(source, target, blocks);
}

}  // namespace equi
