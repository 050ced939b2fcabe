// Subforest enumeration. A subforest is an edge subset of a labeled forest;
// its connected components are vertex-disjoint subtrees. Variants:
//
//   all              every edge subset (covered nodes = edge endpoints)
//   root             empty, or a single component containing the tree root
//   interior         no component rooted at the root of its member tree
//   rooted_all_nodes every edge subset, uncovered nodes become singleton
//                    components (the root coproduct space)
//   root_subtree     a rooted subtree: the root node always counts as
//                    covered, edges form one component at the root
#pragma once

#include "treealg/labeled.hpp"

#include <cstdint>

namespace treealg {

enum class SubforestVariant { all, root, interior, rooted_all_nodes, root_subtree };

struct Subforest {
    std::vector<char> in;                 // edge mask
    std::vector<int> comp_of;             // node -> component id, -1 uncovered
    std::vector<std::vector<int>> comps;  // component -> nodes
    std::vector<int> comp_root;           // shallowest node of each component
    std::vector<int> boundary;            // edges not in A with covered parent
};

namespace detail {

inline Subforest build_subforest(const LabeledForest& lf, uint64_t mask, bool cover_all,
                                 bool cover_roots) {
    size_t n = lf.nodes(), m = lf.edges.size();
    Subforest sf;
    sf.in.assign(m, 0);
    std::vector<char> covered(n, cover_all ? 1 : 0);
    for (size_t e = 0; e < m; ++e)
        if (mask & (uint64_t{1} << e)) {
            sf.in[e] = 1;
            covered[lf.edges[e].parent] = 1;
            covered[lf.edges[e].child] = 1;
        }
    if (cover_roots)
        for (int r : lf.roots) covered[r] = 1;
    sf.comp_of.assign(n, -1);
    // components in node order; node order is topological (parents first)
    for (size_t v = 0; v < n; ++v) {
        if (!covered[v] || sf.comp_of[v] != -1) continue;
        int cid = static_cast<int>(sf.comps.size());
        sf.comps.emplace_back();
        sf.comp_root.push_back(static_cast<int>(v));
        // flood downward along edges of A
        std::vector<int> stack{static_cast<int>(v)};
        sf.comp_of[v] = cid;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            sf.comps[cid].push_back(u);
            for (int eid : lf.out[u])
                if (sf.in[eid]) {
                    int w = lf.edges[eid].child;
                    if (sf.comp_of[w] == -1) {
                        sf.comp_of[w] = cid;
                        stack.push_back(w);
                    }
                }
        }
    }
    for (size_t e = 0; e < m; ++e)
        if (!sf.in[e] && sf.comp_of[lf.edges[e].parent] != -1)
            sf.boundary.push_back(static_cast<int>(e));
    return sf;
}

} // namespace detail

inline std::vector<Subforest> enumerate_subforests(const LabeledForest& lf,
                                                   SubforestVariant variant) {
    size_t m = lf.edges.size();
    if (m > 24) throw std::invalid_argument("subforest enumeration: too many edges");
    bool cover_all = variant == SubforestVariant::rooted_all_nodes;
    bool cover_roots = variant == SubforestVariant::root_subtree;
    std::vector<Subforest> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
        Subforest sf = detail::build_subforest(lf, mask, cover_all, cover_roots);
        switch (variant) {
            case SubforestVariant::all:
            case SubforestVariant::rooted_all_nodes:
                break;
            case SubforestVariant::root: {
                if (mask == 0) break;
                if (sf.comps.size() != 1 || sf.comp_root[0] != lf.roots.front()) continue;
                break;
            }
            case SubforestVariant::root_subtree: {
                if (sf.comps.size() != 1 || sf.comp_root[0] != lf.roots.front()) continue;
                break;
            }
            case SubforestVariant::interior: {
                bool ok = true;
                for (int r : sf.comp_root)
                    for (int tr : lf.roots)
                        if (r == tr) ok = false;
                if (!ok) continue;
                break;
            }
        }
        out.push_back(std::move(sf));
    }
    return out;
}

} // namespace treealg
