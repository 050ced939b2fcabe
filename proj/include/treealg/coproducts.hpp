// Recursive coaction and structure-group coproduct.
//
//   Delta  1 = 1 (x) 1,  Delta X_i = X_i (x) 1 + 1 (x) X_i,
//   Delta Xi = Xi (x) 1, multiplicative in the tree product,
//   Delta I_k(t) = (I_k (x) id) Delta t + sum_l X^l/l! (x) J_{k+l}(t),
//
// with the right leg living in the positive quotient: planted factors of
// non-positive degree are dropped, which makes every l-sum finite. Delta^+
// is the same recursion on the positive space, both legs projected. The
// antipode follows the defining identity M_+(id (x) A_+) Delta^+ J_k = 0.
#pragma once

#include "treealg/extraction.hpp"

namespace treealg {

class CoContext {
  public:
    explicit CoContext(Signature sig) : sig_(std::move(sig)) {}
    const Signature& sig() const { return sig_; }

    std::map<std::string, TreeTensorLin> delta_memo;
    std::map<std::string, TreeTensorLin> delta_plus_memo;
    std::map<std::string, TreeLin> antipode_memo;

  private:
    Signature sig_;
};

inline TreeLin lin_tree_product(const TreeLin& a, const TreeLin& b) {
    TreeLin r;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) r.add(tree_product(ka, kb), ca * cb);
    return r;
}

inline TreeTensorLin lin_tensor_tree_product(const TreeTensorLin& a, const TreeTensorLin& b) {
    TreeTensorLin r;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms())
            r.add(make_tensor(tree_product(ka.left, kb.left), tree_product(ka.right, kb.right)),
                  ca * cb);
    return r;
}

// product on the positive space lifted to tensors
inline TreeLin m_plus(const TreeTensorLin& x) {
    TreeLin r;
    for (auto& [k, c] : x.terms()) r.add(tree_product(k.left, k.right), c);
    return r;
}

namespace detail {

// Delta X^n = sum_{m<=n} binom(n,m) X^{n-m} (x) X^m
inline TreeTensorLin delta_poly(const MultiIndex& n) {
    TreeTensorLin r;
    for_each_sub(n, [&](const MultiIndex& m) {
        r.add(make_tensor(tree_xpow(n - m), tree_xpow(m)), Poly(MultiIndex::binomial(n, m)));
    });
    return r;
}

// largest integer strictly below q, as a budget for scaled sums
inline Rational strict_budget(const Rational& q) {
    long long fl;
    if (q.den() == 1) fl = q.num() - 1;
    else fl = q.num() >= 0 ? q.num() / q.den() : -((-q.num() + q.den() - 1) / q.den());
    return Rational(fl);
}

} // namespace detail

inline TreeTensorLin delta(CoContext& ctx, const TreePtr& tau);

// J_{k+l}(t) summed over the l's that stay positive, weighted X^l/l! on the
// left; shared by the coaction and the plus-coproduct
namespace detail {
inline TreeTensorLin recentering_tail(CoContext& ctx, const std::string& type,
                                      const MultiIndex& k, const TreePtr& arg) {
    const Signature& sig = ctx.sig();
    TreeTensorLin r;
    Rational bound = sig.type(type).degree - sig.scaled(k) + degree(sig, arg);
    for_each_scaled_le(sig.midx_size(), sig.scaling, strict_budget(bound),
                       [&](const MultiIndex& l) {
                           r.add(make_tensor(tree_xpow(l), tree_planted(type, k + l, arg)),
                                 Poly(Rational(1) / l.factorial()));
                       });
    return r;
}
} // namespace detail

inline TreeTensorLin delta(CoContext& ctx, const TreePtr& tau) {
    auto it = ctx.delta_memo.find(tau->canon);
    if (it != ctx.delta_memo.end()) return it->second;
    const Signature& sig = ctx.sig();
    TreeTensorLin acc = detail::delta_poly(tau->root_dec);
    for (auto& b : tau->branches) {
        TreeTensorLin f;
        if (sig.type(b.type).is_noise()) {
            f.add(make_tensor(tree_planted(b.type, b.dec, b.child), tree_one(sig.midx_size())),
                  Poly(1));
        } else {
            TreeTensorLin ds = delta(ctx, b.child);
            for (auto& [k, c] : ds.terms())
                f.add(make_tensor(tree_planted(b.type, b.dec, k.left), k.right), c);
            f += detail::recentering_tail(ctx, b.type, b.dec, b.child);
        }
        acc = lin_tensor_tree_product(acc, f);
    }
    ctx.delta_memo.emplace(tau->canon, acc);
    return acc;
}

inline TreeTensorLin delta(CoContext& ctx, const TreeLin& x) {
    return apply_linear<TreeTensor>(x, [&](const TreePtr& t) { return delta(ctx, t); });
}

// Delta^+ on the positive space; input factors must be positive planted
// trees (or polynomials), both output legs are projected
inline TreeTensorLin delta_plus(CoContext& ctx, const TreePtr& sigma) {
    auto it = ctx.delta_plus_memo.find(sigma->canon);
    if (it != ctx.delta_plus_memo.end()) return it->second;
    const Signature& sig = ctx.sig();
    TreeTensorLin acc = detail::delta_poly(sigma->root_dec);
    for (auto& b : sigma->branches) {
        TreeTensorLin f = detail::recentering_tail(ctx, b.type, b.dec, b.child);
        TreeTensorLin ds = delta(ctx, b.child);
        for (auto& [k, c] : ds.terms()) {
            TreePtr left = tree_planted(b.type, b.dec, k.left);
            if (!plus_positive(sig, left)) continue;
            f.add(make_tensor(std::move(left), k.right), c);
        }
        acc = lin_tensor_tree_product(acc, f);
    }
    ctx.delta_plus_memo.emplace(sigma->canon, acc);
    return acc;
}

inline TreeTensorLin delta_plus(CoContext& ctx, const TreeLin& x) {
    return apply_linear<TreeTensor>(x, [&](const TreePtr& t) { return delta_plus(ctx, t); });
}

// positive antipode: A_+ 1 = 1, A_+ X_i = -X_i, multiplicative, and on
// generators the defining identity unrolled:
//   A_+ J_k(t) = -M_+(J_k (x) A_+) Delta t - sum_{l>0} X^l/l! A_+ J_{k+l}(t)
inline TreeLin antipode_plus(CoContext& ctx, const TreePtr& sigma);

namespace detail {
inline TreeLin antipode_generator(CoContext& ctx, const std::string& type, const MultiIndex& k,
                                  const TreePtr& arg) {
    const Signature& sig = ctx.sig();
    TreePtr gen = tree_planted(type, k, arg);
    auto it = ctx.antipode_memo.find(gen->canon);
    if (it != ctx.antipode_memo.end()) return it->second;
    TreeLin acc;
    TreeTensorLin dt = delta(ctx, arg);
    for (auto& [t, c] : dt.terms()) {
        TreePtr left = tree_planted(type, k, t.left);
        if (!plus_positive(sig, left)) continue;
        TreeLin anti = antipode_plus(ctx, t.right);
        for (auto& [a, ca] : anti.terms()) acc.add(tree_product(left, a), -(c * ca));
    }
    Rational bound = sig.type(type).degree - sig.scaled(k) + degree(sig, arg);
    for_each_scaled_le(sig.midx_size(), sig.scaling, strict_budget(bound),
                       [&](const MultiIndex& l) {
                           if (l.is_zero()) return;
                           TreeLin sub = antipode_generator(ctx, type, k + l, arg);
                           for (auto& [a, ca] : sub.terms())
                               acc.add(tree_product(tree_xpow(l), a),
                                       -(ca * Poly(Rational(1) / l.factorial())));
                       });
    ctx.antipode_memo.emplace(gen->canon, acc);
    return acc;
}
} // namespace detail

inline TreeLin antipode_plus(CoContext& ctx, const TreePtr& sigma) {
    TreeLin acc = TreeLin::single(
        tree_xpow(sigma->root_dec),
        Poly(Rational(sigma->root_dec.total() % 2 == 0 ? 1 : -1)));
    for (auto& b : sigma->branches)
        acc = lin_tree_product(acc, detail::antipode_generator(ctx, b.type, b.dec, b.child));
    return acc;
}

inline TreeLin antipode_plus(CoContext& ctx, const TreeLin& x) {
    return apply_linear<TreePtr>(x, [&](const TreePtr& t) { return antipode_plus(ctx, t); });
}

// tilde-J: sum_l (-X)^l / l! J_{k+l}(t), projected
inline TreeLin tilde_J(CoContext& ctx, const std::string& type, const MultiIndex& k,
                       const TreePtr& arg) {
    const Signature& sig = ctx.sig();
    TreeLin r;
    Rational bound = sig.type(type).degree - sig.scaled(k) + degree(sig, arg);
    for_each_scaled_le(sig.midx_size(), sig.scaling, detail::strict_budget(bound),
                       [&](const MultiIndex& l) {
                           Rational s = l.total() % 2 == 0 ? Rational(1) : Rational(-1);
                           r.add(tree_product(tree_xpow(l), tree_planted(type, k + l, arg)),
                                 Poly(s / l.factorial()));
                       });
    return r;
}

// D = (id (x) M_+)(Delta (x) id) and its inverse via the antipode
inline TreeTensorLin D_map(CoContext& ctx, const TreeTensorLin& x) {
    TreeTensorLin r;
    for (auto& [k, c] : x.terms()) {
        TreeTensorLin dl = delta(ctx, k.left);
        for (auto& [t, ct] : dl.terms())
            r.add(make_tensor(t.left, tree_product(t.right, k.right)), c * ct);
    }
    return r;
}

inline TreeTensorLin D_inverse(CoContext& ctx, const TreeTensorLin& x) {
    TreeTensorLin r;
    for (auto& [k, c] : x.terms()) {
        TreeTensorLin dl = delta(ctx, k.left);
        for (auto& [t, ct] : dl.terms()) {
            TreeLin anti = antipode_plus(ctx, t.right);
            for (auto& [a, ca] : anti.terms())
                r.add(make_tensor(t.left, tree_product(a, k.right)), c * ct * ca);
        }
    }
    return r;
}

} // namespace treealg
