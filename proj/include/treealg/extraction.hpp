// Extraction-contraction coproducts by explicit subforest enumeration.
//
// Every map here walks labeled representatives: enumerate subforests A,
// split node decorations (binomially) and boundary-edge decorations (with
// 1/e_A! weights), extract the components with n_A + pi e_A, contract A in
// place with e + e_A. Symmetry factors are never precomputed; they emerge
// when canonicalized terms merge.
#pragma once

#include "treealg/rules.hpp"
#include "treealg/subforest.hpp"

namespace treealg {

namespace detail {

inline MultiIndex pi_eA(const LabeledForest& lf, const Subforest& sf,
                        const std::vector<MultiIndex>& eA, int v, size_t dim1) {
    MultiIndex k(dim1);
    for (int eid : lf.out[v])
        if (!sf.in[eid]) k += eA[eid];
    return k;
}

inline TreePtr extract_component(const Signature& sig, const LabeledForest& lf,
                                 const Subforest& sf, int cid,
                                 const std::vector<MultiIndex>& nA,
                                 const std::vector<MultiIndex>& eA) {
    return tree_at(
        lf, sf.comp_root[cid],
        [&](int v) { return nA[v] + pi_eA(lf, sf, eA, v, sig.midx_size()); },
        [&](int eid) { return lf.edges[eid].dec; }, [&](int eid) { return sf.in[eid] != 0; });
}

// contracted tree below a class; classes are components or uncovered nodes
inline TreePtr contract_class(const Signature& sig, const LabeledForest& lf, const Subforest& sf,
                              const std::vector<MultiIndex>& nA,
                              const std::vector<MultiIndex>& eA, int node) {
    size_t dim1 = sig.midx_size();
    std::vector<int> members;
    int cid = sf.comp_of[node];
    if (cid >= 0) members = sf.comps[cid];
    else members.push_back(node);
    std::vector<Branch> bs;
    MultiIndex dec(dim1);
    for (int v : members) {
        dec += lf.node_dec[v] - nA[v];
        for (int eid : lf.out[v]) {
            if (sf.in[eid]) continue;
            int ch = lf.edges[eid].child;
            int chrep = sf.comp_of[ch] >= 0 ? sf.comp_root[sf.comp_of[ch]] : ch;
            bs.push_back(Branch{lf.edges[eid].type, lf.edges[eid].dec + eA[eid],
                                contract_class(sig, lf, sf, nA, eA, chrep)});
        }
    }
    return make_tree(dec, std::move(bs));
}

// enumerate (n_A, e_A) for one component under a strict scaled budget
// (extracted degree must stay negative); calls sink with the coefficient
template <class Sink>
void splits_for_component(const Signature& sig, const LabeledForest& lf, const Subforest& sf,
                          int cid, const Rational& strict_bound, std::vector<MultiIndex>& nA,
                          std::vector<MultiIndex>& eA, Sink&& sink) {
    std::vector<int> dec_nodes, bedges;
    for (int v : sf.comps[cid])
        if (!lf.node_dec[v].is_zero()) dec_nodes.push_back(v);
    for (int eid : sf.boundary)
        if (sf.comp_of[lf.edges[eid].parent] == cid) bedges.push_back(eid);

    std::function<void(size_t, Rational, Rational)> edges_rec = [&](size_t i, Rational left,
                                                                    Rational coeff) {
        if (i == bedges.size()) { sink(coeff); return; }
        for_each_scaled_le(sig.midx_size(), sig.scaling, left, [&](const MultiIndex& m) {
            eA[bedges[i]] = m;
            edges_rec(i + 1, left - sig.scaled(m), coeff / m.factorial());
        });
        eA[bedges[i]] = MultiIndex(sig.midx_size());
    };
    std::function<void(size_t, Rational, Rational)> nodes_rec = [&](size_t i, Rational left,
                                                                    Rational coeff) {
        if (i == dec_nodes.size()) {
            // strict: spend strictly less than the bound, so shave an epsilon
            edges_rec(0, left, coeff);
            return;
        }
        int v = dec_nodes[i];
        for_each_sub(lf.node_dec[v], [&](const MultiIndex& m) {
            Rational cost = sig.scaled(m);
            if (cost > left) return;
            nA[v] = m;
            nodes_rec(i + 1, left - cost, coeff * MultiIndex::binomial(lf.node_dec[v], m));
        });
        nA[v] = MultiIndex(sig.midx_size());
    };
    // degree values are multiples of 1/denominator; a strict bound b is the
    // non-strict bound b - 1/den(b·stuff). Using the scaled grid: all scaled
    // sizes are integers, so strict < b means <= ceil(b) - 1 when b integral,
    // else <= floor(b).
    Rational budget = strict_bound;
    {
        // largest integer value strictly below strict_bound
        long long fl;
        if (budget.den() == 1) fl = budget.num() - 1;
        else fl = budget.num() >= 0 ? budget.num() / budget.den()
                                    : -((-budget.num() + budget.den() - 1) / budget.den());
        budget = Rational(fl);
    }
    if (budget < Rational(0)) return;
    nodes_rec(0, budget, Rational(1));
}

} // namespace detail

// ---------------------------------------------------------------------------
// minus-family coproducts (extracted components must have negative degree)

enum class MinusVariant { all, root, interior };

inline ForestTreeLin delta_minus_tree(const Signature& sig, const TreePtr& tau,
                                      MinusVariant variant) {
    SubforestVariant sv = variant == MinusVariant::all        ? SubforestVariant::all
                          : variant == MinusVariant::root     ? SubforestVariant::root
                                                              : SubforestVariant::interior;
    LabeledForest lf = labeled_of_tree(tau);
    ForestTreeLin out;
    for (const Subforest& sf : enumerate_subforests(lf, sv)) {
        size_t ncomp = sf.comps.size();
        std::vector<Rational> base(ncomp, Rational(0));
        for (size_t e = 0; e < lf.edges.size(); ++e)
            if (sf.in[e])
                base[sf.comp_of[lf.edges[e].parent]] +=
                    sig.type(lf.edges[e].type).degree - sig.scaled(lf.edges[e].dec);
        std::vector<MultiIndex> nA(lf.nodes(), sig.zero()), eA(lf.edges.size(), sig.zero());

        std::function<void(size_t, Rational)> comp_rec = [&](size_t cid, Rational coeff) {
            if (cid == ncomp) {
                std::vector<TreePtr> parts;
                parts.reserve(ncomp);
                for (size_t c = 0; c < ncomp; ++c)
                    parts.push_back(detail::extract_component(sig, lf, sf, static_cast<int>(c), nA, eA));
                TreePtr right = detail::contract_class(
                    sig, lf, sf, nA, eA,
                    sf.comp_of[lf.roots[0]] >= 0 ? sf.comp_root[sf.comp_of[lf.roots[0]]]
                                                 : lf.roots[0]);
                if (has_bad_noise(sig, right)) return;
                Forest left = make_forest(std::move(parts));
                if (has_bad_noise(sig, left)) return;
                out.add(make_tensor(std::move(left), std::move(right)), Poly(coeff));
                return;
            }
            detail::splits_for_component(sig, lf, sf, static_cast<int>(cid), -base[cid], nA, eA,
                                         [&](const Rational& c) { comp_rec(cid + 1, coeff * c); });
        };
        comp_rec(0, Rational(1));
    }
    return out;
}

inline ForestTreeLin delta_minus(const Signature& sig, const TreePtr& tau) {
    return delta_minus_tree(sig, tau, MinusVariant::all);
}
inline ForestTreeLin delta_minus_r(const Signature& sig, const TreePtr& tau) {
    return delta_minus_tree(sig, tau, MinusVariant::root);
}
inline ForestTreeLin delta_minus_circ(const Signature& sig, const TreePtr& tau) {
    return delta_minus_tree(sig, tau, MinusVariant::interior);
}

// multiplicative extension to forests, with both legs in the forest algebra:
// the contracted side is normalized by deleting bare nodes and killing
// non-negative trees (the Hopf-coproduct form used for character convolution)
inline ForestForestLin delta_minus_hopf(const Signature& sig, const Forest& f,
                                        MinusVariant variant = MinusVariant::all) {
    ForestForestLin acc;
    acc.add(make_tensor(make_forest({}), make_forest({})), Poly(1));
    for (auto& t : f.trees) {
        ForestTreeLin dt = delta_minus_tree(sig, t, variant);
        ForestForestLin next;
        for (auto& [k, c] : acc.terms()) {
            for (auto& [k2, c2] : dt.terms()) {
                Forest left = forest_product(k.left, k2.left);
                Forest right = forest_product(k.right, tilde_pi(make_forest({k2.right})));
                next.add(make_tensor(std::move(left), std::move(right)), c * c2);
            }
        }
        acc = std::move(next);
    }
    return filter(acc, [&](const Tensor<Forest, Forest>& t) {
        return !killed_by_pi_minus(sig, t.right);
    });
}

// ---------------------------------------------------------------------------
// rooted-subtree coproduct (colour-2 right leg, kept implicit)

// Terms whose total boundary decoration exceeds eA_budget are dropped; the
// default budget is large enough for everything that survives either Pi_+
// on the right or negativity of the left.
inline Rational delta_2_default_budget(const Signature& sig, const TreePtr& tau) {
    LabeledForest lf = labeled_of_tree(tau);
    Rational pos(0), neg(0);
    std::function<Rational(int)> subtree_deg = [&](int v) {
        Rational d = sig.scaled(lf.node_dec[v]);
        for (int eid : lf.out[v])
            d += sig.type(lf.edges[eid].type).degree - sig.scaled(lf.edges[eid].dec) +
                 subtree_deg(lf.edges[eid].child);
        return d;
    };
    for (size_t e = 0; e < lf.edges.size(); ++e) {
        Rational slack = sig.type(lf.edges[e].type).degree - sig.scaled(lf.edges[e].dec) +
                         subtree_deg(lf.edges[e].child);
        if (slack > Rational(0)) pos += slack;
        Rational d = sig.type(lf.edges[e].type).degree - sig.scaled(lf.edges[e].dec);
        if (d < Rational(0)) neg -= d;
    }
    return pos > neg ? pos : neg;
}

inline TreeTensorLin delta_2(const Signature& sig, const TreePtr& tau,
                             std::optional<Rational> eA_budget = std::nullopt) {
    Rational budget = eA_budget ? *eA_budget : delta_2_default_budget(sig, tau);
    LabeledForest lf = labeled_of_tree(tau);
    TreeTensorLin out;
    for (const Subforest& sf : enumerate_subforests(lf, SubforestVariant::root_subtree)) {
        std::vector<MultiIndex> nA(lf.nodes(), sig.zero()), eA(lf.edges.size(), sig.zero());
        std::vector<int> dec_nodes;
        for (int v : sf.comps[0])
            if (!lf.node_dec[v].is_zero()) dec_nodes.push_back(v);

        std::function<void(size_t, Rational, Rational)> edges_rec = [&](size_t i, Rational left,
                                                                        Rational coeff) {
            if (i == sf.boundary.size()) {
                TreePtr kept = detail::extract_component(sig, lf, sf, 0, nA, eA);
                TreePtr right = detail::contract_class(sig, lf, sf, nA, eA, sf.comp_root[0]);
                if (has_bad_noise(sig, kept) || has_bad_noise(sig, right)) return;
                out.add(make_tensor(std::move(kept), std::move(right)), Poly(coeff));
                return;
            }
            int eid = sf.boundary[i];
            for_each_scaled_le(sig.midx_size(), sig.scaling, left, [&](const MultiIndex& m) {
                eA[eid] = m;
                edges_rec(i + 1, left - sig.scaled(m), coeff / m.factorial());
            });
            eA[eid] = sig.zero();
        };
        std::function<void(size_t, Rational)> nodes_rec = [&](size_t i, Rational coeff) {
            if (i == dec_nodes.size()) { edges_rec(0, budget, coeff); return; }
            int v = dec_nodes[i];
            for_each_sub(lf.node_dec[v], [&](const MultiIndex& m) {
                nA[v] = m;
                nodes_rec(i + 1, coeff * MultiIndex::binomial(lf.node_dec[v], m));
            });
            nA[v] = sig.zero();
        };
        nodes_rec(0, Rational(1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// explicit form of the unified root coproduct on rooted forests

// Left-leg degree is capped (the boundary sums are genuinely infinite);
// every node lies in some extracted component, uncovered nodes count as
// bare singletons. Decorated noises are kept: this space is not quotiented.
// The sink form streams terms without building the canon-sorted sum.
template <class Sink>
void delta_hat_1_explicit_emit(const Signature& sig, const RootedForest& input,
                               const Rational& left_cap, Sink&& out) {
    LabeledForest lf = labeled_of_rooted(input);
    for (const Subforest& sf : enumerate_subforests(lf, SubforestVariant::rooted_all_nodes)) {
        Rational base(0);
        for (size_t e = 0; e < lf.edges.size(); ++e)
            if (sf.in[e]) base += sig.type(lf.edges[e].type).degree - sig.scaled(lf.edges[e].dec);
        if (base > left_cap) continue;
        std::vector<MultiIndex> nA(lf.nodes(), sig.zero()), eA(lf.edges.size(), sig.zero());
        std::vector<int> dec_nodes;
        for (size_t v = 0; v < lf.nodes(); ++v)
            if (!lf.node_dec[v].is_zero()) dec_nodes.push_back(static_cast<int>(v));

        auto emit = [&](Rational coeff) {
            int mark_comp = sf.comp_of[lf.mark];
            std::vector<TreePtr> others;
            TreePtr marked;
            for (size_t c = 0; c < sf.comps.size(); ++c) {
                TreePtr part = detail::extract_component(sig, lf, sf, static_cast<int>(c), nA, eA);
                if (static_cast<int>(c) == mark_comp) marked = part;
                else others.push_back(part);
            }
            RootedForest left = make_rooted(marked, std::move(others));
            // contracted right: one tree per input tree, mark on the class of
            // the distinguished root
            TreePtr rmarked;
            std::vector<TreePtr> rothers;
            for (int r : lf.roots) {
                TreePtr part = detail::contract_class(sig, lf, sf, nA, eA,
                                                      sf.comp_root[sf.comp_of[r]]);
                if (r == lf.mark) rmarked = part;
                else rothers.push_back(part);
            }
            RootedForest right = make_rooted(rmarked, std::move(rothers));
            out(std::move(left), std::move(right), coeff);
        };

        std::function<void(size_t, Rational, Rational)> edges_rec = [&](size_t i, Rational left,
                                                                        Rational coeff) {
            if (i == sf.boundary.size()) { emit(coeff); return; }
            int eid = sf.boundary[i];
            for_each_scaled_le(sig.midx_size(), sig.scaling, left, [&](const MultiIndex& m) {
                eA[eid] = m;
                edges_rec(i + 1, left - sig.scaled(m), coeff / m.factorial());
            });
            eA[eid] = sig.zero();
        };
        std::function<void(size_t, Rational, Rational)> nodes_rec =
            [&](size_t i, Rational left, Rational coeff) {
                if (i == dec_nodes.size()) { edges_rec(0, left, coeff); return; }
                int v = dec_nodes[i];
                for_each_sub(lf.node_dec[v], [&](const MultiIndex& m) {
                    Rational cost = sig.scaled(m);
                    if (cost > left) return;
                    nA[v] = m;
                    nodes_rec(i + 1, left - cost, coeff * MultiIndex::binomial(lf.node_dec[v], m));
                });
                nA[v] = sig.zero();
            };
        nodes_rec(0, left_cap - base, Rational(1));
    }
}

inline RootedTensorLin delta_hat_1_explicit(const Signature& sig, const RootedForest& input,
                                            const Rational& left_cap) {
    RootedTensorLin out;
    delta_hat_1_explicit_emit(sig, input, left_cap,
                              [&](RootedForest left, RootedForest right, const Rational& c) {
                                  out.add(make_tensor(std::move(left), std::move(right)),
                                          Poly(c));
                              });
    return out;
}

} // namespace treealg
