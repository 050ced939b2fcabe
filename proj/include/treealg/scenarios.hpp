// The four worked settings as executable scenarios: the Gaussian/Hermite
// toy model, KPZ (with its polynomial-killing variant), generalised KPZ
// with a fully symbolic character, and the dynamic Phi^4_3 quantisation.
#pragma once

#include "treealg/renorm.hpp"

namespace treealg {

// generalised Hermite polynomials: H_0 = 1, H_{n+1} = x H_n - c^2 H_n'
// (the symbolic constant c2 stands for c^2)
inline Poly hermite_poly(int n) {
    Poly h(Rational(1));
    Poly x = Poly::var("x");
    Poly c2 = Poly::var("c2");
    for (int i = 0; i < n; ++i) h = x * h - c2 * h.derivative("x");
    return h;
}

// the image of a noise-power combination under Xi -> x
inline Poly noise_image(const Signature& sig, const TreeLin& v) {
    Poly out;
    for (auto& [t, c] : v.terms()) {
        if (!t->root_dec.is_zero())
            throw std::invalid_argument("noise_image: unexpected polynomial decoration");
        Poly x = Poly::var("x");
        Poly mono(Rational(1));
        for (auto& b : t->branches) {
            if (!sig.type(b.type).is_noise())
                throw std::invalid_argument("noise_image: unexpected kernel edge");
            mono *= x;
        }
        out += c * mono;
    }
    return out;
}

inline TreePtr xi_power(const Signature& sig, const std::string& noise, int n) {
    TreePtr t = tree_one(sig.midx_size());
    for (int i = 0; i < n; ++i) t = tree_product(t, tree_noise(noise, sig.midx_size()));
    return t;
}

// l_wick = 1* + sum_{k>=1} (-1)^k (2k-1)! / (2^{k-1}(k-1)!) c^{2k} on Xi^{2k}
inline Rational wick_weight(int k) {
    Rational w = Rational::factorial(2 * k - 1) /
                 (Rational(1LL << (k - 1)) * Rational::factorial(k - 1));
    return (k % 2 == 0 ? w : -w);
}

inline MinusCharacter wick_character(const Signature& sig, int kmax) {
    MinusCharacter l("wick", {});
    Poly c2 = Poly::var("c2");
    for (int k = 1; k <= kmax; ++k) {
        Poly v(wick_weight(k));
        for (int i = 0; i < k; ++i) v *= c2;
        l.set(xi_power(sig, "Xi", 2 * k), v);
    }
    return l;
}

// f_k = (2k-1)! / (2^{k-1}(k-1)!) c^{2k} on Xi^{2k}: R^k/k! pairs with it
inline MinusCharacter wick_fk(const Signature& sig, int k) {
    MinusCharacter f("f" + std::to_string(k), {});
    Poly v(Rational::factorial(2 * k - 1) /
           (Rational(1LL << (k - 1)) * Rational::factorial(k - 1)));
    Poly c2 = Poly::var("c2");
    for (int i = 0; i < k; ++i) v = v * c2;
    f.set(xi_power(sig, "Xi", 2 * k), v);
    return f;
}

// l(Xi^2) = c^2, the generator of the Gaussian subtraction
inline MinusCharacter hermite_ell(const Signature& sig) {
    MinusCharacter l("hermite", {});
    l.set(xi_power(sig, "Xi", 2), Poly::var("c2"));
    return l;
}

struct Scenario {
    std::string name;
    RuleTable rule;
    MinusCharacter ell;
    int edge_cap = 6;
    // for KPZ the commutation statement lives on the polynomial-killing
    // variant of the rule
    std::optional<RuleTable> property_a_rule;
    std::vector<std::string> counterexamples;      // property (a) fails here
    std::vector<std::string> negative_planted_expect; // the algebraic (c) set
};

namespace detail {
// distinct named constants C1, C2, ... for a symbolic character supported
// on the given trees, ordered by (edge count, canonical form)
inline MinusCharacter symbolic_character(const std::string& name, std::vector<TreePtr> trees) {
    std::sort(trees.begin(), trees.end(), [](const TreePtr& a, const TreePtr& b) {
        if (a->edges != b->edges) return a->edges < b->edges;
        return a->canon < b->canon;
    });
    MinusCharacter l(name, {});
    int i = 0;
    for (auto& t : trees) l.set(t, Poly::var("C" + std::to_string(++i)));
    return l;
}
} // namespace detail

inline Scenario hermite_scenario() {
    Scenario s;
    s.name = "hermite";
    s.rule = builtin_rule("hermite");
    s.ell = hermite_ell(s.rule.sig);
    s.edge_cap = 10;
    return s;
}

inline Scenario kpz_scenario() {
    Scenario s;
    s.name = "kpz";
    s.rule = builtin_rule("kpz");
    RuleTable r = s.rule;
    std::vector<TreePtr> supp = {
        parse_tree("I1(Xi)*I1(Xi)", r),
        parse_tree("I1(I1(Xi)*I1(Xi))*I1(I1(Xi)*I1(Xi))", r),
        parse_tree("I1(Xi)*I1(I1(Xi)*I1(I1(Xi)*I1(Xi)))", r),
    };
    s.ell = detail::symbolic_character("kpz", supp);
    s.property_a_rule = builtin_rule("kpz-bar");
    return s;
}

inline Scenario gkpz_scenario(int support_edge_cap = 6) {
    Scenario s;
    s.name = "gkpz";
    s.rule = builtin_rule("gkpz");
    // nonzero exactly on the negative-degree basis trees that contain no X
    // and are not planted (admissibility)
    std::vector<TreePtr> supp;
    for (auto& t : generate_basis(s.rule, Rational(0), support_edge_cap,
                                  MultiIndex(s.rule.sig.midx_size()))) {
        if (!(degree(s.rule.sig, t) < Rational(0))) continue;
        if (t->is_planted() || contains_x(t) || t->is_bare()) continue;
        supp.push_back(t);
    }
    s.ell = detail::symbolic_character("gkpz", supp);
    s.counterexamples = {"I(I(I(Xi)*Xi)*Xi)"};
    s.negative_planted_expect = {"I[0,1](Xi)", "I[0,1](I(Xi)*Xi)",
                                 "I[0,1](I[0,1](Xi)*I[0,1](Xi))"};
    return s;
}

inline Scenario qua_scenario() {
    Scenario s;
    s.name = "phi4";
    s.rule = builtin_rule("qua");
    std::vector<TreePtr> supp = {
        parse_tree("I(Xi)*I(Xi)", s.rule),
        parse_tree("I(Xi)*I(Xi)*I(I(Xi)*I(Xi))", s.rule),
    };
    s.ell = detail::symbolic_character("qua", supp);
    s.counterexamples = {"I(I(Xi)*I(Xi)*I(Xi))"};
    s.negative_planted_expect = {"I(Xi)"};
    return s;
}

inline Scenario load_scenario(const std::string& name) {
    if (name == "hermite" || name == "wick") return hermite_scenario();
    if (name == "kpz") return kpz_scenario();
    if (name == "gkpz") return gkpz_scenario();
    if (name == "phi4" || name == "qua") return qua_scenario();
    throw std::invalid_argument("unknown scenario: " + name);
}

// ---------------------------------------------------------------------------
// Wick checks

// exact reproduction of H_n from the renormalised noise powers
inline Report wick_check(int nmax) {
    Scenario s = hermite_scenario();
    const Signature& sig = s.rule.sig;
    Report rep("wick");
    MinusCharacter lw = wick_character(sig, nmax / 2 + 1);
    LinearTreeMap Mw = R_from_character(sig, lw); // Delta^-_r and Delta^- agree here
    // the Gaussian subtraction is the pairing with c^2 1_{Xi^2} alone; it
    // has no identity part, which is what makes exp(-R) a finite sum
    LinearTreeMap R = R_from_functional(sig, s.ell);
    for (int n = 0; n <= nmax; ++n) {
        TreePtr xin = xi_power(sig, "Xi", n);
        Poly img = noise_image(sig, Mw(xin));
        rep.check("hermite-image", xin->canon, img == hermite_poly(n),
                  [&] { return img.to_string() + "  vs  " + hermite_poly(n).to_string(); });

        // M = exp(-R): the nilpotent exponential sum
        TreeLin expsum;
        TreeLin power = TreeLin::single(xin);
        Rational fact(1);
        expsum += power;
        for (int k = 1; k <= n / 2 + 1; ++k) {
            power = R(power);
            fact = fact * Rational(k);
            if (power.is_zero()) break;
            expsum += power.scaled(Rational(k % 2 == 0 ? 1 : -1) / fact);
        }
        rep.check("exp(-R)", xin->canon, expsum == Mw(xin));
    }
    return rep;
}

// R^k / k! = (f_k (x) id) Delta^-_r on noise powers; f_k is the pure
// indicator functional on Xi^{2k} (no unit part), so the pairing is spelled
// out rather than routed through a character
inline Report wick_lemma_check(int kmax, int nmax) {
    Scenario s = hermite_scenario();
    const Signature& sig = s.rule.sig;
    Report rep("wick-lemma");
    LinearTreeMap R = R_from_functional(sig, s.ell);
    for (int k = 1; k <= kmax; ++k) {
        MinusCharacter fk = wick_fk(sig, k);
        std::string key = xi_power(sig, "Xi", 2 * k)->canon;
        for (int n = 0; n <= nmax; ++n) {
            TreePtr xin = xi_power(sig, "Xi", n);
            TreeLin lhs = TreeLin::single(xin);
            for (int i = 0; i < k; ++i) lhs = R(lhs);
            lhs = lhs.scaled(Rational(1) / Rational::factorial(k));
            TreeLin rhs;
            ForestTreeLin d = delta_minus_r(sig, xin);
            for (auto& [t, c] : d.terms()) {
                if (t.left.size() != 1 || t.left.trees[0]->canon != key) continue;
                rhs.add(t.right, c * fk.eval_tree(t.left.trees[0]));
            }
            rep.check("Rk-pairing", "k=" + std::to_string(k) + " " + xin->canon, lhs == rhs,
                      [&] { return render_text(lhs - rhs); });
        }
    }
    return rep;
}

} // namespace treealg
