#include "equi/hopf_characters.hpp"

#include "equi/errors.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace equi {

namespace {

void add_to(BasisCombination &acc, std::size_t i, const Rational &c) {
    if (c == 0) return;
    auto [it, inserted] = acc.emplace(i, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) acc.erase(it);
    }
}

}  // namespace

void HopfPresentation::index_basis() {
    for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
}

std::shared_ptr<const HopfPresentation> HopfPresentation::shuffle(int trunc) {
    std::shared_ptr<HopfPresentation> p(new HopfPresentation(Kind::shuffle, trunc));
    p->words_.push_back({});
    for (auto &w : all_words(trunc)) p->words_.push_back(w);
    for (const auto &w : p->words_) {
        p->keys_.push_back(word_to_string(w));
        p->degrees_.push_back(word_degree(w));
    }
    p->index_basis();
    // deconcatenation at interior cut points
    for (const auto &w : p->words_) {
        std::vector<CoproductTerm> terms;
        for (std::size_t cut = 1; cut < w.size(); ++cut) {
            const Word left(w.begin(), w.begin() + cut), right(w.begin() + cut, w.end());
            terms.push_back({Rational(1), *p->index_of(left), *p->index_of(right)});
        }
        p->coproducts_.push_back(std::move(terms));
    }
    return p;
}

std::shared_ptr<const HopfPresentation> HopfPresentation::rooted_trees(int trunc) {
    std::shared_ptr<HopfPresentation> p(new HopfPresentation(Kind::rooted_trees, trunc));
    p->forests_.push_back({});
    for (int n = 1; n <= trunc; ++n)
        for (auto &f : enumerate_forests(n)) p->forests_.push_back(std::move(f));
    for (const auto &f : p->forests_) {
        p->keys_.push_back(forest_to_string(f));
        p->degrees_.push_back(forest_size(f));
    }
    p->index_basis();
    for (const auto &f : p->forests_) {
        std::vector<CoproductTerm> terms;
        for (const auto &pair : rooted_tree_coproduct(f))
            terms.push_back({Rational(pair.multiplicity), *p->index_of(pair.left), *p->index_of(pair.right)});
        p->coproducts_.push_back(std::move(terms));
    }
    return p;
}

std::optional<std::size_t> HopfPresentation::index_of_key(const std::string &key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> HopfPresentation::index_of(const Word &w) const {
    if (kind_ != Kind::shuffle) return std::nullopt;
    return index_of_key(word_to_string(w));
}

std::optional<std::size_t> HopfPresentation::index_of(const Forest &f) const {
    if (kind_ != Kind::rooted_trees) return std::nullopt;
    return index_of_key(forest_to_string(f));
}

std::vector<CoproductTerm> HopfPresentation::full_coproduct(std::size_t i) const {
    if (i == 0) return {{Rational(1), 0, 0}};
    std::vector<CoproductTerm> terms{{Rational(1), 0, i}};
    const auto &red = coproducts_.at(i);
    terms.insert(terms.end(), red.begin(), red.end());
    terms.push_back({Rational(1), i, 0});
    return terms;
}

BasisCombination HopfPresentation::multiply(std::size_t i, std::size_t j) const {
    BasisCombination out;
    if (degrees_.at(i) + degrees_.at(j) > trunc_) return out;
    if (kind_ == Kind::shuffle) {
        const auto riffles = equi::shuffle(words_[i], words_[j]);
        for (const auto &[w, m] : riffles.terms()) add_to(out, *index_of(w), m);
    } else {
        Forest f = forests_[i];
        f.insert(f.end(), forests_[j].begin(), forests_[j].end());
        add_to(out, *index_of(f), Rational(1));
    }
    return out;
}

BasisCombination HopfPresentation::antipode(std::size_t i) const {
    std::map<std::size_t, BasisCombination> memo;
    std::function<const BasisCombination &(std::size_t)> rec = [&](std::size_t x) -> const BasisCombination & {
        if (auto it = memo.find(x); it != memo.end()) return it->second;
        BasisCombination s;
        if (x == 0) {
            s[0] = 1;
        } else {
            add_to(s, x, Rational(-1));
            for (const auto &t : coproducts_[x]) {
                const BasisCombination left = rec(t.left);
                for (const auto &[l, cl] : left)
                    for (const auto &[k, ck] : multiply(l, t.right)) add_to(s, k, -t.multiplicity * cl * ck);
            }
        }
        return memo.emplace(x, std::move(s)).first->second;
    };
    return rec(i);
}

bool HopfPresentation::check_coassociativity(int max_degree) const {
    using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;
    for (std::size_t x = 0; x < size(); ++x) {
        if (degrees_[x] > max_degree) continue;
        std::map<Triple, Rational> lhs, rhs;
        for (const auto &t : full_coproduct(x)) {
            for (const auto &u : full_coproduct(t.left)) lhs[{u.left, u.right, t.right}] += t.multiplicity * u.multiplicity;
            for (const auto &u : full_coproduct(t.right)) rhs[{t.left, u.left, u.right}] += t.multiplicity * u.multiplicity;
        }
        std::erase_if(lhs, [](const auto &kv) { return kv.second == 0; });
        std::erase_if(rhs, [](const auto &kv) { return kv.second == 0; });
        if (lhs != rhs) return false;
    }
    return true;
}

bool HopfPresentation::check_antipode(int max_degree) const {
    for (std::size_t x = 0; x < size(); ++x) {
        if (degrees_[x] > max_degree) continue;
        BasisCombination left_sum, right_sum, expected;
        if (x == 0) expected[0] = 1;
        for (const auto &t : full_coproduct(x)) {
            for (const auto &[s, cs] : antipode(t.left))
                for (const auto &[k, ck] : multiply(s, t.right)) add_to(left_sum, k, t.multiplicity * cs * ck);
            for (const auto &[s, cs] : antipode(t.right))
                for (const auto &[k, ck] : multiply(t.left, s)) add_to(right_sum, k, t.multiplicity * cs * ck);
        }
        if (left_sum != expected || right_sum != expected) return false;
    }
    return true;
}

LinearForm::LinearForm(PresentationPtr pres) : pres_(std::move(pres)), values_(pres_->size()) {}

LinearForm::LinearForm(PresentationPtr pres, std::vector<LaurentSeries> values)
    : pres_(std::move(pres)), values_(std::move(values)) {
    if (values_.size() != pres_->size()) throw PresentationMismatch("value table does not match the basis size");
}

bool LinearForm::operator==(const LinearForm &o) const {
    return pres_->same_as(*o.pres_) && values_ == o.values_;
}

Character Character::counit(PresentationPtr pres) {
    Character c(std::move(pres));
    c.set_value(0, LaurentSeries(1));
    return c;
}

Character Character::from_generators(PresentationPtr pres, const std::map<std::string, LaurentSeries> &values) {
    Character c = counit(pres);
    for (const auto &[key, v] : values) {
        auto idx = pres->index_of_key(key);
        if (!idx) throw PresentationMismatch("unknown basis key '" + key + "'");
        c.set_value(*idx, v);
    }
    if (pres->kind() == HopfPresentation::Kind::rooted_trees) {
        for (std::size_t i = 1; i < pres->size(); ++i) {
            const Forest &f = pres->forest(i);
            if (f.size() < 2) continue;
            LaurentSeries prod(1);
            for (const auto &t : f) prod = prod * c.value(*pres->index_of(Forest{t}));
            c.set_value(i, prod);
        }
    }
    return c;
}

bool Character::is_multiplicative() const {
    if (!(value(0) == LaurentSeries(1))) return false;
    for (std::size_t i = 1; i < pres_->size(); ++i)
        for (std::size_t j = i; j < pres_->size(); ++j) {
            if (pres_->degree(i) + pres_->degree(j) > pres_->trunc()) continue;
            LaurentSeries lhs;
            for (const auto &[k, c] : pres_->multiply(i, j)) lhs += LaurentSeries(c) * value(k);
            if (!(lhs == value(i) * value(j))) return false;
        }
    return true;
}

bool InfinitesimalCharacter::is_derivation() const {
    if (!value(0).is_zero()) return false;
    for (std::size_t i = 1; i < pres_->size(); ++i)
        for (std::size_t j = i; j < pres_->size(); ++j) {
            if (pres_->degree(i) + pres_->degree(j) > pres_->trunc()) continue;
            LaurentSeries lhs;
            for (const auto &[k, c] : pres_->multiply(i, j)) lhs += LaurentSeries(c) * value(k);
            if (!lhs.is_zero()) return false;
        }
    return true;
}

LinearForm convolve_forms(const LinearForm &f, const LinearForm &g) {
    const auto &pres = f.presentation();
    if (!pres->same_as(*g.presentation())) throw PresentationMismatch("convolution of characters on different Hopf algebras");
    LinearForm out(pres);
    for (std::size_t x = 0; x < pres->size(); ++x) {
        LaurentSeries sum;
        for (const auto &t : pres->full_coproduct(x)) {
            const auto &a = f.value(t.left);
            const auto &b = g.value(t.right);
            if (a.is_zero() || b.is_zero()) continue;
            sum += LaurentSeries(t.multiplicity) * a * b;
        }
        out.set_value(x, sum);
    }
    return out;
}

Character convolve(const Character &phi, const Character &psi) {
    LinearForm f = convolve_forms(phi, psi);
    return Character(f.presentation(), f.values());
}

Character antipode_inverse(const Character &phi) {
    const auto &pres = phi.presentation();
    Character inv = Character::counit(pres);
    // basis is ordered by degree, so x' is always computed before x
    for (std::size_t x = 1; x < pres->size(); ++x) {
        LaurentSeries v = -phi.value(x);
        for (const auto &t : pres->reduced_coproduct(x)) v -= LaurentSeries(t.multiplicity) * inv.value(t.left) * phi.value(t.right);
        inv.set_value(x, v);
    }
    return inv;
}

BirkhoffParts birkhoff(const Character &phi) {
    const auto &pres = phi.presentation();
    Character minus = Character::counit(pres), plus = Character::counit(pres);
    for (std::size_t x = 1; x < pres->size(); ++x) {
        LaurentSeries bar = phi.value(x);
        for (const auto &t : pres->reduced_coproduct(x))
            bar += LaurentSeries(t.multiplicity) * minus.value(t.left) * phi.value(t.right);
        const LaurentSeries pole = pole_part(bar);
        minus.set_value(x, -pole);
        plus.set_value(x, bar - pole);
    }
    return {minus, plus};
}

Character character_from_series(PresentationPtr shuffle_pres, const Series &x) {
    if (shuffle_pres->kind() != HopfPresentation::Kind::shuffle)
        throw PresentationMismatch("series can only be read on the shuffle presentation");
    Character c(shuffle_pres);
    for (std::size_t i = 0; i < shuffle_pres->size(); ++i) c.set_value(i, x.coeff(shuffle_pres->word(i)));
    return c;
}

Series series_from_character(const Character &phi) {
    const auto &pres = phi.presentation();
    if (pres->kind() != HopfPresentation::Kind::shuffle)
        throw PresentationMismatch("only shuffle characters correspond to series");
    Series s(pres->trunc());
    for (std::size_t i = 0; i < pres->size(); ++i) s.add(pres->word(i), phi.value(i));
    return s;
}

Character rep_to_tree_group(PresentationPtr target, const std::map<int, InfinitesimalCharacter> &rho,
                            const Series &x) {
    for (const auto &[n, form] : rho) {
        if (!form.presentation()->same_as(*target)) throw PresentationMismatch("representation targets another presentation");
        for (std::size_t i = 0; i < target->size(); ++i)
            if (target->degree(i) != n && !form.value(i).is_zero())
                throw DegreeMismatch("image of e_{-" + std::to_string(n) + "} is not homogeneous of that degree");
    }
    LinearForm unit = Character::counit(target);
    // images of words, built by extending prefixes one letter at a time
    std::map<Word, LinearForm, WordLess> images;
    images.emplace(Word{}, unit);
    LinearForm total(target);
    for (const auto &[w, c] : x.terms()) {
        if (!images.count(w)) {
            for (std::size_t len = 1; len <= w.size(); ++len) {
                const Word prefix(w.begin(), w.begin() + len);
                if (images.count(prefix)) continue;
                const Word shorter(w.begin(), w.begin() + len - 1);
                auto it = rho.find(prefix.back());
                LinearForm next = it == rho.end() ? LinearForm(target)
                                                  : convolve_forms(images.at(shorter), it->second);
                images.emplace(prefix, std::move(next));
            }
        }
        const LinearForm &img = images.at(w);
        for (std::size_t i = 0; i < target->size(); ++i)
            if (!img.value(i).is_zero()) total.set_value(i, total.value(i) + c * img.value(i));
    }
    return Character(target, total.values());
}

}  // namespace equi
