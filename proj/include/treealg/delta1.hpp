// Unified root coproduct on forests with a distinguished root, recursive
// form:
//
//   D1 1   = 1 (x) 1
//   D1 X_i = X_i (x) 1 + 1 (x) X_i
//   D1 C(t)    = (C (x) C) D1 t
//   D1 I_k(t)  = (I_k (x) id + sum_l X^l/l! C (x) I_{k+l}) D1 t
//
// multiplicative for the star product. Left-leg degrees are capped (the
// l-sums are infinite); internal sums run up to cap + |negative part| so
// that a term can still fall back under the cap through later factors, and
// the final output is filtered to the cap. Projections onto the minus
// coproduct and the coaction live here as well.
#pragma once

#include "treealg/coproducts.hpp"

namespace treealg {

namespace detail {

// total magnitude of the negative edge degrees: no left leg can sit lower
inline Rational negativity(const Signature& sig, const TreePtr& t) {
    Rational r(0);
    for (auto& b : t->branches) {
        Rational d = sig.type(b.type).degree - sig.scaled(b.dec);
        if (d < Rational(0)) r += d;
        r += negativity(sig, b.child);
    }
    return r;
}

inline Rational negativity(const Signature& sig, const RootedForest& f) {
    Rational r = negativity(sig, f.marked);
    for (auto& t : f.others) r += negativity(sig, t);
    return r;
}

struct Delta1Ctx {
    const Signature& sig;
    Rational l_bound; // per-sum budget for the X^l C (x) I_{k+l} tail
    std::map<std::string, RootedTensorLin> memo;

    // a left leg above this can never come back under the cap: later steps
    // lower a left degree by at most the total negativity of the input
    // (plus any decoration-over-type slack on kernel wraps)
    bool dead(const RootedForest& left) const { return degree(sig, left) > l_bound; }
};

inline RootedTensorLin d1_star(const Delta1Ctx& ctx, const RootedTensorLin& a,
                               const RootedTensorLin& b) {
    RootedTensorLin r;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            RootedForest left = star_product(ka.left, kb.left);
            if (ctx.dead(left)) continue;
            r.add(make_tensor(std::move(left), star_product(ka.right, kb.right)), ca * cb);
        }
    return r;
}

inline RootedTensorLin d1_tree(Delta1Ctx& ctx, const TreePtr& tau) {
    auto it = ctx.memo.find(tau->canon);
    if (it != ctx.memo.end()) return it->second;
    const Signature& sig = ctx.sig;
    size_t dim1 = sig.midx_size();
    // D1 X^n, from multiplicativity of the X_i case
    RootedTensorLin acc;
    for_each_sub(tau->root_dec, [&](const MultiIndex& m) {
        acc.add(make_tensor(rooted_of_tree(tree_xpow(tau->root_dec - m)),
                            rooted_of_tree(tree_xpow(m))),
                Poly(MultiIndex::binomial(tau->root_dec, m)));
    });
    for (auto& b : tau->branches) {
        RootedTensorLin ds = d1_tree(ctx, b.child);
        RootedTensorLin f;
        for (auto& [k, c] : ds.terms()) {
            // (I_k (x) id)
            RootedForest wrapped = make_rooted(tree_planted(b.type, b.dec, k.left.marked),
                                               k.left.others);
            if (!ctx.dead(wrapped))
                f.add(make_tensor(std::move(wrapped), k.right), c);
            // sum_l X^l/l! C (x) I_{k+l}
            Rational used = degree(sig, k.left);
            for_each_scaled_le(dim1, sig.scaling, ctx.l_bound - used, [&](const MultiIndex& l) {
                RootedForest left = star_product(rooted_of_tree(tree_xpow(l)),
                                                 c_mark(k.left, dim1));
                RootedForest right = make_rooted(
                    tree_planted(b.type, b.dec + l, k.right.marked), k.right.others);
                f.add(make_tensor(std::move(left), std::move(right)),
                      c * Poly(Rational(1) / l.factorial()));
            });
        }
        acc = d1_star(ctx, acc, f);
    }
    ctx.memo.emplace(tau->canon, acc);
    return acc;
}

} // namespace detail

// recursive evaluation, left-leg degree <= cap
inline RootedTensorLin delta_hat_1(const Signature& sig, const RootedForest& input,
                                   const Rational& cap) {
    detail::Delta1Ctx ctx{sig, cap - detail::negativity(sig, input), {}};
    RootedTensorLin acc = detail::d1_tree(ctx, input.marked);
    for (auto& t : input.others) {
        RootedTensorLin dt = detail::d1_tree(ctx, t);
        RootedTensorLin wrapped;
        for (auto& [k, c] : dt.terms())
            wrapped.add(make_tensor(c_mark(k.left, sig.midx_size()),
                                    c_mark(k.right, sig.midx_size())),
                        c);
        acc = detail::d1_star(ctx, acc, wrapped);
    }
    return filter(acc, [&](const Tensor<RootedForest, RootedForest>& t) {
        return degree(sig, t.left) <= cap;
    });
}

// ---------------------------------------------------------------------------
// projections of the root coproduct

// left leg through Pi_- Pi~ Pi^rho, right leg into the span of clean trees:
// recovers the full minus coproduct
inline ForestTreeLin project_to_delta_minus(const Signature& sig, const RootedTensorLin& x) {
    ForestTreeLin r;
    for (auto& [k, c] : x.terms()) {
        Forest left = tilde_pi(forget_mark(k.left));
        if (killed_by_pi_minus(sig, left) || has_bad_noise(sig, left)) continue;
        if (!k.right.others.empty()) continue; // single-tree inputs only
        TreePtr right = k.right.marked;
        if (has_bad_noise(sig, right)) continue;
        r.add(make_tensor(std::move(left), std::move(right)), c);
    }
    return r;
}

// left leg through Pi_T (marked tree, all other members bare), right leg
// coloured and projected: recovers the coaction
inline TreeTensorLin project_to_delta(const Signature& sig, const RootedTensorLin& x) {
    TreeTensorLin r;
    for (auto& [k, c] : x.terms()) {
        bool bare = true;
        for (auto& t : k.left.others)
            if (!t->is_one()) bare = false;
        if (!bare) continue;
        if (!k.right.others.empty()) continue;
        TreePtr right = k.right.marked;
        if (!plus_positive(sig, right) || has_bad_noise(sig, right)) continue;
        if (has_bad_noise(sig, k.left.marked)) continue;
        r.add(make_tensor(k.left.marked, std::move(right)), c);
    }
    return r;
}

// (Pi_- Pi~ (x) R_2) applied to the rooted-subtree coproduct: recovers the
// root extraction
inline ForestTreeLin project_delta2_to_minus_r(const Signature& sig, const TreeTensorLin& x) {
    ForestTreeLin r;
    for (auto& [k, c] : x.terms()) {
        Forest left = tilde_pi(make_forest({k.left}));
        if (killed_by_pi_minus(sig, left) || has_bad_noise(sig, left)) continue;
        if (has_bad_noise(sig, k.right)) continue;
        r.add(make_tensor(std::move(left), k.right), c);
    }
    return r;
}

// (id (x) Pi_+) applied to the rooted-subtree coproduct: recovers the
// coaction
inline TreeTensorLin project_delta2_to_delta(const Signature& sig, const TreeTensorLin& x) {
    return filter(x, [&](const TreeTensor& k) {
        return plus_positive(sig, k.right) && !has_bad_noise(sig, k.right) &&
               !has_bad_noise(sig, k.left);
    });
}

} // namespace treealg
