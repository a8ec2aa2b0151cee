#include "equi/rooted_trees.hpp"

#include "equi/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace equi {

Tree::Tree() : canon_("()") {}

Tree::Tree(std::vector<Tree> children) : children_(std::move(children)) {
    std::sort(children_.begin(), children_.end());
    canon_ = "(";
    for (const auto &c : children_) {
        size_ += c.size_;
        canon_ += c.canon_;
    }
    canon_ += ")";
}

bool Tree::operator<(const Tree &o) const {
    if (size_ != o.size_) return size_ < o.size_;
    return canon_ < o.canon_;
}

Forest canonical_forest(Forest f) {
    std::sort(f.begin(), f.end());
    return f;
}

int forest_size(const Forest &f) {
    int n = 0;
    for (const auto &t : f) n += t.size();
    return n;
}

std::string forest_to_string(const Forest &f) {
    std::string s;
    for (const auto &t : canonical_forest(f)) s += t.str();
    return s;
}

namespace {

Tree parse_tree_at(const std::string &text, std::size_t &pos) {
    if (pos >= text.size() || text[pos] != '(') throw ParseError("expected '(' in forest string '" + text + "'");
    ++pos;
    std::vector<Tree> children;
    while (pos < text.size() && text[pos] == '(') children.push_back(parse_tree_at(text, pos));
    if (pos >= text.size() || text[pos] != ')') throw ParseError("unbalanced forest string '" + text + "'");
    ++pos;
    return children.empty() ? Tree() : Tree(std::move(children));
}

}  // namespace

Forest parse_forest(const std::string &text) {
    Forest f;
    std::size_t pos = 0;
    while (pos < text.size()) f.push_back(parse_tree_at(text, pos));
    return canonical_forest(std::move(f));
}

Tree parse_tree(const std::string &text) {
    Forest f = parse_forest(text);
    if (f.size() != 1) throw ParseError("expected a single tree, got '" + text + "'");
    return f.front();
}

Tree ladder(int n) {
    Tree t;
    for (int i = 1; i < n; ++i) t = Tree(std::vector<Tree>{t});
    return t;
}

namespace {

// Forests of total size n whose trees are all >= lower_bound (canonical order).
void forests_from(int n, const Tree *lower_bound, Forest &prefix, std::vector<Forest> &out,
                  std::vector<std::vector<Tree>> &tree_cache);

const std::vector<Tree> &trees_cached(int n, std::vector<std::vector<Tree>> &cache) {
    if (static_cast<int>(cache.size()) <= n) cache.resize(n + 1);
    if (cache[n].empty() && n >= 1) {
        if (n == 1) {
            cache[n].push_back(Tree());
        } else {
            std::vector<Forest> below;
            Forest prefix;
            forests_from(n - 1, nullptr, prefix, below, cache);
            for (auto &f : below) cache[n].emplace_back(f);
            std::sort(cache[n].begin(), cache[n].end());
        }
    }
    return cache[n];
}

void forests_from(int n, const Tree *lower_bound, Forest &prefix, std::vector<Forest> &out,
                  std::vector<std::vector<Tree>> &tree_cache) {
    if (n == 0) {
        out.push_back(prefix);
        return;
    }
    const int start = lower_bound ? lower_bound->size() : 1;
    for (int k = start; k <= n; ++k) {
        // copy: the cache may grow during recursion
        const std::vector<Tree> candidates = trees_cached(k, tree_cache);
        for (const auto &t : candidates) {
            if (lower_bound && t < *lower_bound) continue;
            prefix.push_back(t);
            forests_from(n - k, &t, prefix, out, tree_cache);
            prefix.pop_back();
        }
    }
}

}  // namespace

std::vector<Tree> enumerate_trees(int n) {
    if (n < 1) return {};
    std::vector<std::vector<Tree>> cache;
    return trees_cached(n, cache);
}

std::vector<Forest> enumerate_forests(int n) {
    std::vector<std::vector<Tree>> cache;
    std::vector<Forest> out;
    Forest prefix;
    forests_from(n, nullptr, prefix, out, cache);
    std::sort(out.begin(), out.end(), [](const Forest &a, const Forest &b) {
        return forest_to_string(a) < forest_to_string(b);
    });
    return out;
}

namespace {

struct Cut {
    Forest pruned;
    std::optional<Tree> trunk;
};

// Admissible cuts of the subtree at `node` that keep `node` in the trunk.
std::vector<Cut> cuts_keeping_root(const Tree &node) {
    // per child: either sever the edge, or recurse
    std::vector<std::pair<Forest, std::vector<Tree>>> partial{{{}, {}}};
    for (const auto &child : node.children()) {
        std::vector<std::pair<Forest, std::vector<Tree>>> next;
        const auto child_cuts = cuts_keeping_root(child);
        for (const auto &[pruned, kept] : partial) {
            auto severed = pruned;
            severed.push_back(child);
            next.emplace_back(std::move(severed), kept);
            for (const auto &cc : child_cuts) {
                auto p = pruned;
                p.insert(p.end(), cc.pruned.begin(), cc.pruned.end());
                auto k = kept;
                k.push_back(*cc.trunk);
                next.emplace_back(std::move(p), std::move(k));
            }
        }
        partial = std::move(next);
    }
    std::vector<Cut> out;
    for (auto &[pruned, kept] : partial) out.push_back({canonical_forest(std::move(pruned)), Tree(std::move(kept))});
    return out;
}

using PairKey = std::pair<std::string, std::string>;

struct TermAccumulator {
    std::map<PairKey, std::pair<ForestPair, std::int64_t>> terms;
    void add(const Forest &l, const Forest &r, std::int64_t m) {
        auto key = PairKey{forest_to_string(l), forest_to_string(r)};
        auto it = terms.find(key);
        if (it == terms.end())
            terms.emplace(key, std::make_pair(ForestPair{canonical_forest(l), canonical_forest(r), 0}, m));
        else
            it->second.second += m;
    }
    std::vector<ForestPair> result() const {
        std::vector<std::pair<std::pair<int, PairKey>, ForestPair>> sorted;
        for (const auto &[key, val] : terms) {
            if (val.second == 0) continue;
            ForestPair fp = val.first;
            fp.multiplicity = val.second;
            sorted.push_back({{forest_size(fp.left), key}, fp});
        }
        std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        std::vector<ForestPair> out;
        for (auto &s : sorted) out.push_back(std::move(s.second));
        return out;
    }
};

}  // namespace

std::vector<ForestPair> full_coproduct(const Forest &f) {
    // Delta is multiplicative: expand the product of the per-tree coproducts
    std::vector<ForestPair> acc{{{}, {}, 1}};
    for (const auto &t : f) {
        std::vector<ForestPair> tree_terms;
        for (auto &c : cuts_keeping_root(t)) tree_terms.push_back({c.pruned, {*c.trunk}, 1});
        tree_terms.push_back({{t}, {}, 1});
        std::vector<ForestPair> next;
        for (const auto &a : acc)
            for (const auto &b : tree_terms) {
                ForestPair p = a;
                p.left.insert(p.left.end(), b.left.begin(), b.left.end());
                p.right.insert(p.right.end(), b.right.begin(), b.right.end());
                p.multiplicity *= b.multiplicity;
                next.push_back(std::move(p));
            }
        acc = std::move(next);
    }
    TermAccumulator sum;
    for (const auto &p : acc) sum.add(p.left, p.right, p.multiplicity);
    return sum.result();
}

std::vector<ForestPair> rooted_tree_coproduct(const Forest &f) {
    std::vector<ForestPair> out;
    for (auto &p : full_coproduct(f))
        if (!p.left.empty() && !p.right.empty()) out.push_back(std::move(p));
    return out;
}

}  // namespace equi
