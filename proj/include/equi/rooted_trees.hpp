#pragma once

// Unordered rooted trees and forests, the admissible-cut coproduct of the
// rooted-tree Hopf algebra, and exhaustive enumeration.
//
// Canonical form: a tree prints as "(" + its children + ")", children sorted
// by (vertex count, string). A forest is the concatenation of its trees in the
// same order; the empty forest "" is the unit.

#include <cstdint>
#include <string>
#include <vector>

namespace equi {

class Tree {
public:
    /// Single vertex.
    Tree();
    explicit Tree(std::vector<Tree> children);

    const std::vector<Tree> &children() const { return children_; }
    int size() const { return size_; }
    const std::string &str() const { return canon_; }

    bool operator==(const Tree &o) const { return canon_ == o.canon_; }
    /// Canonical order: vertex count, then string.
    bool operator<(const Tree &o) const;

private:
    std::vector<Tree> children_;
    int size_ = 1;
    std::string canon_;
};

using Forest = std::vector<Tree>;

/// Sorts the trees of a forest into canonical order.
Forest canonical_forest(Forest f);
int forest_size(const Forest &f);
std::string forest_to_string(const Forest &f);
/// Parses the canonical text form; throws ParseError on malformed input.
Forest parse_forest(const std::string &text);
Tree parse_tree(const std::string &text);

/// Linear tree with n vertices.
Tree ladder(int n);

/// Every isomorphism class of rooted trees with n vertices, canonically ordered.
std::vector<Tree> enumerate_trees(int n);
/// Every forest with exactly n vertices, canonically ordered.
std::vector<Forest> enumerate_forests(int n);

struct ForestPair {
    Forest left;   // pruned part
    Forest right;  // trunk
    std::int64_t multiplicity;
};

/// Full coproduct: sum over admissible cuts of pruned (x) trunk, including
/// the terms 1 (x) F and F (x) 1. Terms are merged and canonically ordered.
std::vector<ForestPair> full_coproduct(const Forest &f);
/// Full coproduct with the two trivial terms removed.
std::vector<ForestPair> rooted_tree_coproduct(const Forest &f);

}  // namespace equi
