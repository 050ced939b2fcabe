// Commutative forests of decorated trees, with and without a distinguished
// root. Plain forests are the extraction side of the minus coproducts; the
// rooted variant is the space F_rho on which the unified root coproduct acts,
// with non-distinguished members written C(...).
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "treealg/tree.hpp"

namespace treealg {

struct Forest {
    std::vector<TreePtr> trees; // sorted by canon
    std::string canon;

    bool empty() const { return trees.empty(); }
    size_t size() const { return trees.size(); }
};

inline Forest make_forest(std::vector<TreePtr> trees) {
    std::sort(trees.begin(), trees.end(),
              [](const TreePtr& a, const TreePtr& b) { return a->canon < b->canon; });
    Forest f;
    f.canon = trees.empty() ? "One_1" : std::string();
    for (size_t i = 0; i < trees.size(); ++i) {
        if (i) f.canon += " . ";
        f.canon += trees[i]->canon;
    }
    f.trees = std::move(trees);
    return f;
}

inline Forest forest_product(const Forest& a, const Forest& b) {
    std::vector<TreePtr> t = a.trees;
    t.insert(t.end(), b.trees.begin(), b.trees.end());
    return make_forest(std::move(t));
}

inline Rational degree(const Signature& sig, const Forest& f) {
    Rational d(0);
    for (auto& t : f.trees) d += degree(sig, t);
    return d;
}

inline bool has_bad_noise(const Signature& sig, const Forest& f) {
    for (auto& t : f.trees)
        if (has_bad_noise(sig, t)) return true;
    return false;
}

// deletes bare undecorated single-node trees, multiplicatively
inline Forest tilde_pi(const Forest& f) {
    std::vector<TreePtr> kept;
    for (auto& t : f.trees)
        if (!t->is_one()) kept.push_back(t);
    return make_forest(std::move(kept));
}

// true iff some member tree has non-negative degree (the forest then lies in
// the ideal killed by Pi_-)
inline bool killed_by_pi_minus(const Signature& sig, const Forest& f) {
    for (auto& t : f.trees)
        if (degree(sig, t) >= Rational(0)) return true;
    return false;
}

// Forest with one distinguished member (carrying the marked root).
struct RootedForest {
    TreePtr marked;
    std::vector<TreePtr> others; // sorted by canon
    std::string canon;
};

inline RootedForest make_rooted(TreePtr marked, std::vector<TreePtr> others) {
    std::sort(others.begin(), others.end(),
              [](const TreePtr& a, const TreePtr& b) { return a->canon < b->canon; });
    RootedForest r;
    r.canon = marked->canon;
    for (auto& t : others) r.canon += "*C(" + t->canon + ")";
    r.marked = std::move(marked);
    r.others = std::move(others);
    return r;
}

inline RootedForest rooted_of_tree(const TreePtr& t) { return make_rooted(t, {}); }

// wraps the whole forest: the marked tree joins the plain members and a new
// bare node takes the mark
inline RootedForest c_mark(const RootedForest& f, size_t dim1) {
    std::vector<TreePtr> o = f.others;
    o.push_back(f.marked);
    return make_rooted(tree_one(dim1), std::move(o));
}

inline RootedForest star_product(const RootedForest& a, const RootedForest& b) {
    std::vector<TreePtr> o = a.others;
    o.insert(o.end(), b.others.begin(), b.others.end());
    return make_rooted(tree_product(a.marked, b.marked), std::move(o));
}

inline Rational degree(const Signature& sig, const RootedForest& f) {
    Rational d = degree(sig, f.marked);
    for (auto& t : f.others) d += degree(sig, t);
    return d;
}

inline Forest forget_mark(const RootedForest& f) {
    std::vector<TreePtr> t = f.others;
    t.push_back(f.marked);
    return make_forest(std::move(t));
}

} // namespace treealg
