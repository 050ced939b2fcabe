// Decorated rooted trees in canonical form.
//
// A tree is a root decoration in N^{d+1} plus a multiset of branches; every
// branch carries an edge type, an edge decoration and a canonical subtree.
// Branches are kept sorted under (type name, edge decoration, child
// serialization), so two trees are equal iff their canonical serializations
// are equal. The serialization doubles as the text form used by the CLI:
//
//   One           single undecorated node
//   X^[2,1]       single node decorated (2,1)
//   Xi, Xi_l      noise edge (zero decoration, bare leaf)
//   I(expr)       kernel edge, zero decoration
//   I[0,1](expr)  kernel edge decorated (0,1)
//   a*b           tree product (roots identified, root decorations add)
#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "treealg/signature.hpp"

namespace treealg {

struct Tree;
using TreePtr = std::shared_ptr<const Tree>;

struct Branch {
    std::string type;
    MultiIndex dec;
    TreePtr child;
};

struct Tree {
    MultiIndex root_dec;
    std::vector<Branch> branches;
    std::string canon;
    int edges = 0;

    bool is_bare() const { return branches.empty(); }
    bool is_one() const { return branches.empty() && root_dec.is_zero(); }
    bool is_planted() const { return branches.size() == 1 && root_dec.is_zero(); }
};

namespace detail {

inline bool noise_shorthand(const Branch& b) {
    return b.type.rfind("Xi", 0) == 0 && b.dec.is_zero() && b.child->is_one();
}

inline std::string branch_str(const Branch& b) {
    if (noise_shorthand(b)) return b.type;
    std::string s = b.type;
    if (!b.dec.is_zero()) s += b.dec.to_string();
    return s + "(" + b.child->canon + ")";
}

inline bool branch_less(const Branch& a, const Branch& b) {
    if (a.type != b.type) return a.type < b.type;
    if (a.dec != b.dec) return a.dec < b.dec;
    return a.child->canon < b.child->canon;
}

} // namespace detail

inline TreePtr make_tree(MultiIndex root_dec, std::vector<Branch> branches) {
    std::sort(branches.begin(), branches.end(), detail::branch_less);
    auto t = std::make_shared<Tree>();
    t->root_dec = std::move(root_dec);
    t->edges = 0;
    for (auto& b : branches) t->edges += 1 + b.child->edges;
    if (branches.empty() && t->root_dec.is_zero()) {
        t->canon = "One";
    } else {
        std::string s;
        if (!t->root_dec.is_zero()) s = "X^" + t->root_dec.to_string();
        for (auto& b : branches) {
            if (!s.empty()) s += "*";
            s += detail::branch_str(b);
        }
        t->canon = std::move(s);
    }
    t->branches = std::move(branches);
    return t;
}

inline TreePtr tree_one(size_t dim1) { return make_tree(MultiIndex(dim1), {}); }
inline TreePtr tree_xpow(MultiIndex k) { return make_tree(std::move(k), {}); }
inline TreePtr tree_planted(std::string type, MultiIndex dec, TreePtr child) {
    size_t dim1 = dec.size();
    return make_tree(MultiIndex(dim1), {Branch{std::move(type), std::move(dec), std::move(child)}});
}
inline TreePtr tree_noise(const std::string& name, size_t dim1) {
    return tree_planted(name, MultiIndex(dim1), tree_one(dim1));
}

inline TreePtr tree_product(const TreePtr& a, const TreePtr& b) {
    std::vector<Branch> bs = a->branches;
    bs.insert(bs.end(), b->branches.begin(), b->branches.end());
    return make_tree(a->root_dec + b->root_dec, std::move(bs));
}

// tree with the root decoration replaced
inline TreePtr with_root_dec(const TreePtr& t, MultiIndex k) {
    return make_tree(std::move(k), t->branches);
}

inline Rational degree(const Signature& sig, const TreePtr& t) {
    Rational d = sig.scaled(t->root_dec);
    for (auto& b : t->branches)
        d += sig.type(b.type).degree - sig.scaled(b.dec) + degree(sig, b.child);
    return d;
}

// number of noise edges
inline int noise_norm(const Signature& sig, const TreePtr& t) {
    int n = 0;
    for (auto& b : t->branches)
        n += (sig.type(b.type).is_noise() ? 1 : 0) + noise_norm(sig, b.child);
    return n;
}

// strict partial order: lexicographic on (noise count, degree)
inline bool order_lt(const Signature& sig, const TreePtr& a, const TreePtr& b) {
    int na = noise_norm(sig, a), nb = noise_norm(sig, b);
    if (na != nb) return na < nb;
    return degree(sig, a) < degree(sig, b);
}

// noise edges must carry zero decoration and end in a bare leaf; trees
// violating this are not elements of the model space and are dropped
inline bool has_bad_noise(const Signature& sig, const TreePtr& t) {
    for (auto& b : t->branches) {
        if (sig.type(b.type).is_noise()) {
            if (!b.dec.is_zero() || !b.child->is_one()) return true;
        } else if (has_bad_noise(sig, b.child)) {
            return true;
        }
    }
    return false;
}

// true when some kernel edge ends in a bare (possibly decorated) node;
// such trees are zero under the kill_kernel_of_polynomial convention
inline bool has_kernel_of_polynomial(const Signature& sig, const TreePtr& t) {
    for (auto& b : t->branches) {
        if (!sig.type(b.type).is_noise() && b.child->is_bare()) return true;
        if (has_kernel_of_polynomial(sig, b.child)) return true;
    }
    return false;
}

inline bool contains_x(const TreePtr& t) {
    if (!t->root_dec.is_zero()) return true;
    for (auto& b : t->branches)
        if (contains_x(b.child)) return true;
    return false;
}

// tau = X^n * tau_1 ... tau_m with every tau_i planted
struct PlantedDecomposition {
    MultiIndex poly;
    std::vector<Branch> factors;
};

inline PlantedDecomposition planted_decomposition(const TreePtr& t) {
    return PlantedDecomposition{t->root_dec, t->branches};
}

inline std::string render_latex(const TreePtr& t);

namespace detail {
inline std::string latex_midx(const MultiIndex& k) {
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k[i]);
    }
    return s + ")";
}
} // namespace detail

inline std::string render_latex(const TreePtr& t) {
    if (t->is_one()) return "\\mathbf{1}";
    std::string s;
    if (!t->root_dec.is_zero()) s = "X^{" + detail::latex_midx(t->root_dec) + "}";
    for (auto& b : t->branches) {
        if (!s.empty()) s += " ";
        if (detail::noise_shorthand(b)) {
            s += "\\Xi";
            if (b.type.size() > 2) s += "_{" + b.type.substr(3) + "}";
        } else {
            s += "\\mathcal{" + b.type + "}";
            if (!b.dec.is_zero()) s += "_{" + detail::latex_midx(b.dec) + "}";
            s += "(" + render_latex(b.child) + ")";
        }
    }
    return s;
}

} // namespace treealg
