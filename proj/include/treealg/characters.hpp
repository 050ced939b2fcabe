// Characters of the structure group and of the renormalisation group, and
// the recursive operator Gamma_g.
//
//   Gamma_g Xi = Xi, Gamma_g X_i = X_i + g(X_i), multiplicative,
//   Gamma_g I_k(t) = I_k(Gamma_g t) + sum_l X^l/l! g(J_{k+l}(t)),
//
// with composition, inverse and the coproduct-pairing forms cross-checked
// in the suites. Plus-characters are total on a declared generator set and
// raise on anything outside it; the seeded family is a deterministic hash
// of (seed, generator), so values do not depend on evaluation order.
#pragma once

#include "treealg/coproducts.hpp"
#include "treealg/parser.hpp"

namespace treealg {

class PlusCharacter {
  public:
    using GenFn = std::function<Poly(const TreePtr&)>;

    PlusCharacter() : impl_(std::make_shared<Impl>()) {
        impl_->name = "1*";
        impl_->fn = [](const TreePtr&) { return Poly(Rational(0)); };
    }

    static PlusCharacter from_fn(std::string name, GenFn fn) {
        PlusCharacter g;
        g.impl_->name = std::move(name);
        g.impl_->fn = std::move(fn);
        return g;
    }

    // explicit table on generator canon strings; anything else raises
    static PlusCharacter from_table(std::string name, std::map<std::string, Poly> table) {
        auto tbl = std::make_shared<std::map<std::string, Poly>>(std::move(table));
        std::string nm = name;
        return from_fn(std::move(name), [tbl, nm](const TreePtr& gen) {
            auto it = tbl->find(gen->canon);
            if (it == tbl->end())
                throw std::out_of_range("character " + nm + " has no value on generator " +
                                        gen->canon);
            return it->second;
        });
    }

    // numerator in [-9,9], denominator in [1,4], from a splitmix-style hash
    // of (seed, canon); kill_poly_kernels forces zero on generators whose
    // argument is a polynomial or contains a kernel edge into one
    static PlusCharacter seeded(const Signature& sig, uint64_t seed, bool kill_poly_kernels) {
        Signature s = sig;
        return from_fn("seed" + std::to_string(seed),
                       [s, seed, kill_poly_kernels](const TreePtr& gen) {
                           if (kill_poly_kernels && gen->is_planted()) {
                               const TreePtr& arg = gen->branches[0].child;
                               if (arg->is_bare() || has_kernel_of_polynomial(s, arg))
                                   return Poly(Rational(0));
                           }
                           uint64_t h = seed + 0x9e3779b97f4a7c15ull;
                           for (char c : gen->canon)
                               h = (h ^ static_cast<uint64_t>(c)) * 0x100000001b3ull;
                           h ^= h >> 31;
                           h *= 0xbf58476d1ce4e5b9ull;
                           h ^= h >> 29;
                           long long num = static_cast<long long>(h % 19) - 9;
                           long long den = 1 + static_cast<long long>((h >> 8) % 4);
                           return Poly(Rational(num, den));
                       });
    }

    const std::string& name() const { return impl_->name; }

    Poly on_generator(const TreePtr& gen) const {
        auto it = impl_->memo.find(gen->canon);
        if (it != impl_->memo.end()) return it->second;
        Poly v = impl_->fn(gen);
        impl_->memo.emplace(gen->canon, v);
        return v;
    }

    Poly on_x(size_t dim1, size_t i) const { return on_generator(tree_xpow(MultiIndex::unit(dim1, i))); }

    // multiplicative evaluation on a positive element; zero when some
    // planted factor has non-positive degree
    Poly eval(const Signature& sig, const TreePtr& t) const {
        if (!plus_positive(sig, t) || has_bad_noise(sig, t)) return Poly(Rational(0));
        Poly v(Rational(1));
        for (size_t i = 0; i < t->root_dec.size(); ++i)
            for (int p = 0; p < t->root_dec[i]; ++p) v *= on_x(t->root_dec.size(), i);
        for (auto& b : t->branches)
            v *= on_generator(tree_planted(b.type, b.dec, b.child));
        return v;
    }

    Poly eval(const Signature& sig, const TreeLin& x) const {
        Poly v;
        for (auto& [t, c] : x.terms()) v += c * eval(sig, t);
        return v;
    }

    // scratch for the Gamma recursion, keyed by tree; lives with the
    // character so composed and inverted characters amortize their nested
    // evaluations
    std::map<std::string, TreeLin>& gamma_memo() const { return impl_->gamma_memo; }

  private:
    struct Impl {
        std::string name;
        GenFn fn;
        std::map<std::string, Poly> memo;
        std::map<std::string, TreeLin> gamma_memo;
    };
    std::shared_ptr<Impl> impl_;
};

inline PlusCharacter unit_plus_character() { return PlusCharacter(); }

// ---------------------------------------------------------------------------
// Gamma_g

inline TreeLin gamma_apply(CoContext& ctx, const PlusCharacter& g, const TreePtr& tau);

namespace detail {
inline TreeLin gamma_poly_part(CoContext& ctx, const PlusCharacter& g, const MultiIndex& n) {
    const Signature& sig = ctx.sig();
    TreeLin acc = TreeLin::single(tree_one(sig.midx_size()));
    for (size_t i = 0; i < n.size(); ++i) {
        TreeLin xi;
        xi.add(tree_xpow(MultiIndex::unit(n.size(), i)), Poly(1));
        xi.add(tree_one(sig.midx_size()), g.on_x(n.size(), i));
        for (int p = 0; p < n[i]; ++p) acc = lin_tree_product(acc, xi);
    }
    return acc;
}
} // namespace detail

inline TreeLin gamma_apply(CoContext& ctx, const PlusCharacter& g, const TreePtr& tau) {
    const Signature& sig = ctx.sig();
    auto hit = g.gamma_memo().find(tau->canon);
    if (hit != g.gamma_memo().end()) return hit->second;
    TreeLin acc = detail::gamma_poly_part(ctx, g, tau->root_dec);
    for (auto& b : tau->branches) {
        TreeLin f;
        if (sig.type(b.type).is_noise()) {
            f.add(tree_planted(b.type, b.dec, b.child), Poly(1));
        } else {
            TreeLin inner = gamma_apply(ctx, g, b.child);
            for (auto& [t, c] : inner.terms()) f.add(tree_planted(b.type, b.dec, t), c);
            Rational bound = sig.type(b.type).degree - sig.scaled(b.dec) + degree(sig, b.child);
            for_each_scaled_le(
                sig.midx_size(), sig.scaling, detail::strict_budget(bound),
                [&](const MultiIndex& l) {
                    Poly gv = g.on_generator(tree_planted(b.type, b.dec + l, b.child));
                    f.add(tree_xpow(l), gv.scaled(Rational(1) / l.factorial()));
                });
        }
        acc = lin_tree_product(acc, f);
    }
    g.gamma_memo().emplace(tau->canon, acc);
    return acc;
}

inline TreeLin gamma_apply(CoContext& ctx, const PlusCharacter& g, const TreeLin& x) {
    return apply_linear<TreePtr>(x, [&](const TreePtr& t) { return gamma_apply(ctx, g, t); });
}

// the coproduct-pairing form (id (x) g) Delta; the recursive form above must
// agree with it on everything
inline TreeLin gamma_via_pairing(CoContext& ctx, const PlusCharacter& g, const TreePtr& tau) {
    TreeLin r;
    TreeTensorLin d = delta(ctx, tau);
    for (auto& [k, c] : d.terms()) r.add(k.left, c * g.eval(ctx.sig(), k.right));
    return r;
}

// ---------------------------------------------------------------------------
// composition and inverse in the plus group

inline PlusCharacter compose_plus(CoContext& ctx, const PlusCharacter& g1,
                                  const PlusCharacter& g2) {
    CoContext* cp = &ctx;
    PlusCharacter a = g1, b = g2;
    return PlusCharacter::from_fn(
        "(" + g1.name() + " o " + g2.name() + ")", [cp, a, b](const TreePtr& gen) {
            const Signature& sig = cp->sig();
            if (gen->is_bare()) { // X_i generators
                return a.eval(sig, gen) + b.eval(sig, gen);
            }
            const Branch& br = gen->branches[0];
            // g1(J_k(Gamma_{g2} t))
            TreeLin inner = gamma_apply(*cp, b, br.child);
            Poly v;
            for (auto& [t, c] : inner.terms())
                v += c * a.eval(sig, tree_planted(br.type, br.dec, t));
            // sum_l (g1(X))^l / l! g2(J_{k+l}(t))
            Rational bound =
                sig.type(br.type).degree - sig.scaled(br.dec) + degree(sig, br.child);
            for_each_scaled_le(sig.midx_size(), sig.scaling, detail::strict_budget(bound),
                               [&](const MultiIndex& l) {
                                   Poly xl(Rational(1));
                                   for (size_t i = 0; i < l.size(); ++i)
                                       for (int p = 0; p < l[i]; ++p)
                                           xl *= a.on_x(l.size(), i);
                                   Poly gv = b.on_generator(tree_planted(br.type, br.dec + l, br.child));
                                   v += xl * gv.scaled(Rational(1) / l.factorial());
                               });
            return v;
        });
}

// pairing form (g1 (x) g2) Delta^+, for cross-checking the recursion
inline Poly compose_via_pairing(CoContext& ctx, const PlusCharacter& g1, const PlusCharacter& g2,
                                const TreePtr& elt) {
    Poly v;
    TreeTensorLin d = delta_plus(ctx, elt);
    for (auto& [k, c] : d.terms()) v += c * g1.eval(ctx.sig(), k.left) * g2.eval(ctx.sig(), k.right);
    return v;
}

inline PlusCharacter inverse_plus(CoContext& ctx, const PlusCharacter& g) {
    CoContext* cp = &ctx;
    auto self = std::make_shared<PlusCharacter>();
    PlusCharacter inv = PlusCharacter::from_fn(
        g.name() + "^-1", [cp, g, self](const TreePtr& gen) {
            const Signature& sig = cp->sig();
            if (gen->is_bare()) return -g.eval(sig, gen);
            const Branch& br = gen->branches[0];
            // -sum_l (-g(X))^l / l! g(J_{k+l}(Gamma_{g^-1} t))
            TreeLin inner = gamma_apply(*cp, *self, br.child);
            Poly v;
            Rational bound =
                sig.type(br.type).degree - sig.scaled(br.dec) + degree(sig, br.child);
            for_each_scaled_le(
                sig.midx_size(), sig.scaling, detail::strict_budget(bound),
                [&](const MultiIndex& l) {
                    Poly xl(l.total() % 2 == 0 ? Rational(1) : Rational(-1));
                    for (size_t i = 0; i < l.size(); ++i)
                        for (int p = 0; p < l[i]; ++p) xl *= g.on_x(l.size(), i);
                    Poly s;
                    for (auto& [t, c] : inner.terms())
                        s += c * g.eval(sig, tree_planted(br.type, br.dec + l, t));
                    v += xl * s.scaled(Rational(1) / l.factorial());
                });
            return -v;
        });
    *self = inv;
    return inv;
}

// ---------------------------------------------------------------------------
// minus characters

class MinusCharacter {
  public:
    MinusCharacter() = default;
    MinusCharacter(std::string name, std::map<std::string, Poly> support)
        : name_(std::move(name)), support_(std::move(support)) {}

    const std::string& name() const { return name_; }
    const std::map<std::string, Poly>& support() const { return support_; }

    void set(const TreePtr& t, Poly v) { support_[t->canon] = std::move(v); }

    // single tree: bare undecorated nodes count as the empty forest
    Poly eval_tree(const TreePtr& t) const {
        if (t->is_one()) return Poly(Rational(1));
        auto it = support_.find(t->canon);
        return it == support_.end() ? Poly(Rational(0)) : it->second;
    }

    Poly eval(const Forest& f) const {
        Poly v(Rational(1));
        for (auto& t : f.trees) v *= eval_tree(t);
        return v;
    }

  private:
    std::string name_;
    std::map<std::string, Poly> support_; // canon -> value, zero off support
};

inline MinusCharacter unit_minus_character() { return MinusCharacter("1_1*", {}); }

// support must avoid planted trees, decorated roots, and non-negative trees
inline bool is_admissible_minus(const Signature& sig, const RuleTable& rule,
                                const MinusCharacter& l) {
    for (auto& [canon, v] : l.support()) {
        if (v.is_zero()) continue;
        TreePtr t = parse_tree(canon, rule);
        if (t->is_planted()) return false;
        if (!t->root_dec.is_zero()) return false;
        if (!(degree(sig, t) < Rational(0))) return false;
    }
    return true;
}

// convolution through the minus coproduct: (l1 (x) l2) Delta^-
inline Poly convolve_eval(const Signature& sig, const MinusCharacter& l1,
                          const MinusCharacter& l2, const TreePtr& tau) {
    Poly v;
    ForestForestLin d = delta_minus_hopf(sig, make_forest({tau}));
    for (auto& [k, c] : d.terms()) v += c * l1.eval(k.left) * l2.eval(k.right);
    return v;
}

inline MinusCharacter convolve_minus(const Signature& sig, const MinusCharacter& l1,
                                     const MinusCharacter& l2,
                                     const std::vector<TreePtr>& basis) {
    MinusCharacter out("(" + l1.name() + " o " + l2.name() + ")", {});
    for (auto& t : basis) {
        if (!(degree(sig, t) < Rational(0)) || t->is_one()) continue;
        Poly v = convolve_eval(sig, l1, l2, t);
        if (!v.is_zero()) out.set(t, v);
    }
    return out;
}

// grade-by-grade triangular solve for the convolution inverse: the edge
// count of the contracted leg drops strictly for every nonempty extraction
class MinusInverse {
  public:
    MinusInverse(Signature sig, MinusCharacter l) : sig_(std::move(sig)), l_(std::move(l)) {}

    Poly value(const TreePtr& tau) {
        if (tau->is_one()) return Poly(Rational(1));
        if (!(degree(sig_, tau) < Rational(0))) return Poly(Rational(0));
        auto it = memo_.find(tau->canon);
        if (it != memo_.end()) return it->second;
        Poly acc;
        ForestForestLin d = delta_minus_hopf(sig_, make_forest({tau}));
        for (auto& [k, c] : d.terms()) {
            if (k.left.empty()) continue; // the identity term solved for
            Poly lv = l_.eval(k.left);
            if (lv.is_zero()) continue;
            Poly rv(Rational(1));
            for (auto& t : k.right.trees) rv *= value(t);
            acc += c * lv * rv;
        }
        Poly v = -acc;
        memo_.emplace(tau->canon, v);
        return v;
    }

    MinusCharacter materialize(const std::vector<TreePtr>& basis) {
        MinusCharacter out(l_.name() + "^-1", {});
        for (auto& t : basis) {
            if (t->is_one() || !(degree(sig_, t) < Rational(0))) continue;
            Poly v = value(t);
            if (!v.is_zero()) out.set(t, v);
        }
        return out;
    }

  private:
    Signature sig_;
    MinusCharacter l_;
    std::map<std::string, Poly> memo_;
};

inline MinusCharacter inverse_minus(const Signature& sig, const MinusCharacter& l,
                                    const std::vector<TreePtr>& basis) {
    MinusInverse solver(sig, l);
    return solver.materialize(basis);
}

// ---------------------------------------------------------------------------
// character files: `"<tree-expr>" = <coefficient>` with coefficient a
// rational or a (possibly negated) named constant

namespace detail {
inline Poly parse_coeff(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty coefficient");
    bool neg = t[0] == '-';
    std::string body = neg ? t.substr(1) : t;
    Poly v;
    if (isdigit(static_cast<unsigned char>(body[0])))
        v = Poly(Rational::parse(body));
    else
        v = Poly::var(body);
    return neg ? -v : v;
}
} // namespace detail

inline MinusCharacter parse_minus_character(const std::string& text, const RuleTable& rule,
                                            const std::string& name) {
    MinusCharacter out(name, {});
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed += c;
        while (!trimmed.empty() && isspace(static_cast<unsigned char>(trimmed.back())))
            trimmed.pop_back();
        if (trimmed.empty()) continue;
        auto q1 = trimmed.find('"');
        auto q2 = trimmed.find('"', q1 + 1);
        auto eq = trimmed.find('=', q2 == std::string::npos ? 0 : q2);
        if (q1 == std::string::npos || q2 == std::string::npos || eq == std::string::npos)
            throw std::invalid_argument("bad character line " + std::to_string(lineno) + ": " +
                                        line);
        TreePtr t = parse_tree(trimmed.substr(q1 + 1, q2 - q1 - 1), rule);
        out.set(t, detail::parse_coeff(trimmed.substr(eq + 1)));
    }
    return out;
}

} // namespace treealg
