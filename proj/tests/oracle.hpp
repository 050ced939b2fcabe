// Test-only brute-force oracle for the extraction-contraction coproducts.
// Deliberately independent of the library's enumeration machinery: it
// flattens trees with its own walk, finds components by union-find, and
// enumerates decoration splits by plain recursion with a final survival
// filter. Only the value types (Tree/Forest/LinComb) are shared.
#pragma once

#include "treealg/lincomb.hpp"

#include <cstdint>
#include <functional>
#include <map>

namespace oracle {

using namespace treealg;

enum class Variant { all, root, interior };

struct Flat {
    std::vector<MultiIndex> ndec;
    std::vector<int> eparent, echild;
    std::vector<std::string> etype;
    std::vector<MultiIndex> edec;
    int root = 0;
};

inline Flat flatten(const TreePtr& t) {
    Flat f;
    std::function<int(const TreePtr&)> rec = [&](const TreePtr& node) -> int {
        int id = static_cast<int>(f.ndec.size());
        f.ndec.push_back(node->root_dec);
        for (auto& b : node->branches) {
            int eid = static_cast<int>(f.etype.size());
            f.eparent.push_back(id);
            f.echild.push_back(-1);
            f.etype.push_back(b.type);
            f.edec.push_back(b.dec);
            f.echild[eid] = rec(b.child);
        }
        return id;
    };
    f.root = rec(t);
    return f;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) {
        for (size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
    }
    int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
    void join(int a, int b) { p[find(a)] = find(b); }
};

// Full extraction-contraction sum over subforests of a single tree:
//   sum over A, n_A, e_A of (1/e_A!) binom(n, n_A)
//     (components of A, n_A + pi e_A, e restricted) (x) (contracted, n - n_A, e + e_A)
// keeping only terms whose extracted components all have negative degree and
// whose legs carry no decorated noise edge.
inline ForestTreeLin delta_minus(const Signature& sig, const TreePtr& tau, Variant variant) {
    Flat f = flatten(tau);
    size_t nn = f.ndec.size(), ne = f.etype.size();
    ForestTreeLin out;

    // per-edge decoration bound: more than the total noise magnitude can
    // never survive the negativity filter
    Rational budget(0);
    for (size_t e = 0; e < ne; ++e) {
        Rational d = sig.type(f.etype[e]).degree - sig.scaled(f.edec[e]);
        if (d < Rational(0)) budget -= d;
    }

    for (uint64_t mask = 0; mask < (uint64_t{1} << ne); ++mask) {
        UnionFind uf(nn);
        std::vector<char> covered(nn, 0);
        for (size_t e = 0; e < ne; ++e)
            if (mask & (uint64_t{1} << e)) {
                uf.join(f.eparent[e], f.echild[e]);
                covered[f.eparent[e]] = covered[f.echild[e]] = 1;
            }
        std::map<int, std::vector<int>> comps; // representative -> covered members
        for (size_t v = 0; v < nn; ++v)
            if (covered[v]) comps[uf.find(static_cast<int>(v))].push_back(static_cast<int>(v));
        std::map<int, int> root_of;
        for (auto& [rep, nodes] : comps)
            for (int v : nodes) {
                bool has_a_parent = false;
                for (size_t e = 0; e < ne; ++e)
                    if ((mask & (uint64_t{1} << e)) && f.echild[e] == v) has_a_parent = true;
                if (!has_a_parent) root_of[rep] = v;
            }

        if (variant == Variant::root) {
            if (mask != 0 && (comps.size() != 1 || root_of.begin()->second != f.root)) continue;
        } else if (variant == Variant::interior) {
            bool touches = false;
            for (auto& [rep, r] : root_of)
                if (r == f.root) touches = true;
            if (touches) continue;
        }

        std::vector<int> dec_nodes; // covered nodes with something to split
        for (size_t v = 0; v < nn; ++v)
            if (covered[v] && !f.ndec[v].is_zero()) dec_nodes.push_back(static_cast<int>(v));
        std::vector<int> boundary;
        for (size_t e = 0; e < ne; ++e)
            if (!(mask & (uint64_t{1} << e)) && covered[f.eparent[e]])
                boundary.push_back(static_cast<int>(e));

        std::map<int, MultiIndex> nA, eA;
        auto cls = [&](int v) { return uf.find(v); };
        auto kept_dec = [&](int v) {
            MultiIndex k = nA.count(v) ? nA[v] : MultiIndex(sig.midx_size());
            for (int e : boundary)
                if (f.eparent[e] == v) k += eA.at(e);
            return k; // decoration of v inside the extracted forest
        };

        auto emit = [&]() {
            for (auto& [rep, nodes] : comps) {
                Rational d(0);
                for (int v : nodes) d += sig.scaled(kept_dec(v));
                for (size_t e = 0; e < ne; ++e)
                    if ((mask & (uint64_t{1} << e)) && cls(f.eparent[e]) == rep)
                        d += sig.type(f.etype[e]).degree - sig.scaled(f.edec[e]);
                if (d >= Rational(0)) return;
            }
            Rational coeff(1);
            for (int e : boundary) coeff = coeff / eA.at(e).factorial();
            for (int v : dec_nodes) coeff = coeff * MultiIndex::binomial(f.ndec[v], nA.at(v));
            if (coeff.is_zero()) return;

            std::vector<TreePtr> parts;
            for (auto& [rep, nodes] : comps) {
                std::function<TreePtr(int)> build = [&](int v) -> TreePtr {
                    std::vector<Branch> bs;
                    for (size_t e = 0; e < ne; ++e)
                        if ((mask & (uint64_t{1} << e)) && f.eparent[e] == v)
                            bs.push_back(Branch{f.etype[e], f.edec[e],
                                                build(f.echild[e])});
                    return make_tree(kept_dec(v), std::move(bs));
                };
                parts.push_back(build(root_of[rep]));
            }
            Forest left = make_forest(std::move(parts));

            std::function<TreePtr(int)> contract = [&](int c) -> TreePtr {
                std::vector<Branch> bs;
                for (size_t e = 0; e < ne; ++e) {
                    if (mask & (uint64_t{1} << e)) continue;
                    if (cls(f.eparent[e]) != c) continue;
                    MultiIndex d = f.edec[e];
                    if (eA.count(static_cast<int>(e))) d += eA.at(static_cast<int>(e));
                    bs.push_back(Branch{f.etype[e], d, contract(cls(f.echild[e]))});
                }
                MultiIndex k(sig.midx_size());
                if (comps.count(c))
                    for (int v : comps[c]) k += f.ndec[v] - (nA.count(v) ? nA[v] : MultiIndex(sig.midx_size()));
                else k = f.ndec[c];
                return make_tree(k, std::move(bs));
            };
            TreePtr right = contract(cls(f.root));

            if (has_bad_noise(sig, right)) return;
            for (auto& p : left.trees)
                if (has_bad_noise(sig, p)) return;
            out.add(make_tensor(left, right), Poly(coeff));
        };

        std::function<void(size_t)> enum_eA = [&](size_t i) {
            if (i == boundary.size()) { emit(); return; }
            for_each_scaled_le(sig.midx_size(), sig.scaling, budget, [&](const MultiIndex& m) {
                eA[boundary[i]] = m;
                enum_eA(i + 1);
            });
        };
        std::function<void(size_t)> enum_nA = [&](size_t i) {
            if (i == dec_nodes.size()) { enum_eA(0); return; }
            for_each_sub(f.ndec[dec_nodes[i]], [&](const MultiIndex& m) {
                nA[dec_nodes[i]] = m;
                enum_nA(i + 1);
            });
        };
        enum_nA(0);
    }
    return out;
}

} // namespace oracle
