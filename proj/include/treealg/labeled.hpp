// Flat node/edge representation of a canonical tree or forest. Labels are
// assigned by a deterministic traversal of the canonical form, so every
// enumeration over labeled representatives is reproducible.
#pragma once

#include "treealg/forest.hpp"

namespace treealg {

struct LabeledEdge {
    int parent;
    int child;
    std::string type;
    MultiIndex dec;
};

struct LabeledForest {
    std::vector<MultiIndex> node_dec;
    std::vector<LabeledEdge> edges;
    std::vector<std::vector<int>> out; // node -> outgoing edge ids
    std::vector<int> roots;            // one per member tree
    int mark = -1;                     // distinguished root, -1 if none

    size_t nodes() const { return node_dec.size(); }
};

namespace detail {
inline int add_labeled(LabeledForest& lf, const TreePtr& t) {
    int id = static_cast<int>(lf.node_dec.size());
    lf.node_dec.push_back(t->root_dec);
    lf.out.emplace_back();
    for (auto& b : t->branches) {
        int child = add_labeled(lf, b.child);
        int eid = static_cast<int>(lf.edges.size());
        lf.edges.push_back(LabeledEdge{id, child, b.type, b.dec});
        lf.out[id].push_back(eid);
    }
    return id;
}
} // namespace detail

inline LabeledForest labeled_of_tree(const TreePtr& t) {
    LabeledForest lf;
    lf.roots.push_back(detail::add_labeled(lf, t));
    return lf;
}

inline LabeledForest labeled_of_rooted(const RootedForest& f) {
    LabeledForest lf;
    lf.mark = detail::add_labeled(lf, f.marked);
    lf.roots.push_back(lf.mark);
    for (auto& t : f.others) lf.roots.push_back(detail::add_labeled(lf, t));
    return lf;
}

// rebuilds the subtree at `node` following `out`, with decoration overrides
inline TreePtr tree_at(const LabeledForest& lf, int node,
                       const std::function<MultiIndex(int)>& node_dec,
                       const std::function<MultiIndex(int)>& edge_dec,
                       const std::function<bool(int)>& edge_in) {
    std::vector<Branch> bs;
    for (int eid : lf.out[node]) {
        if (!edge_in(eid)) continue;
        bs.push_back(Branch{lf.edges[eid].type, edge_dec(eid),
                            tree_at(lf, lf.edges[eid].child, node_dec, edge_dec, edge_in)});
    }
    return make_tree(node_dec(node), std::move(bs));
}

} // namespace treealg
