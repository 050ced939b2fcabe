#include "doctest.h"

#include "treealg/parser.hpp"
#include "treealg/rules.hpp"

#include <set>

using namespace treealg;

TEST_CASE("built-in rules load and are normal") {
    for (const char* name : {"hermite", "kpz", "kpz-bar", "gkpz", "phi4"}) {
        RuleTable r = builtin_rule(name);
        CHECK(normality_violations(r).empty());
    }
}

TEST_CASE("conforms on the displayed node types") {
    RuleTable kpz = builtin_rule("kpz");
    CHECK(conforms(kpz, parse_tree("I1(Xi)*I1(Xi)", kpz)));
    CHECK_FALSE(conforms(kpz, parse_tree("I(Xi*Xi)", kpz)));
    RuleTable qua = builtin_rule("qua");
    CHECK(conforms(qua, parse_tree("I(I(Xi)*I(Xi)*I(Xi))", qua)));
    RuleTable gkpz = builtin_rule("gkpz");
    CHECK(conforms(gkpz, parse_tree("I(I(I(Xi)*Xi)*Xi)", gkpz)));
    CHECK(conforms(gkpz, parse_tree("I(Xi)*Xi", gkpz)));
    CHECK_FALSE(conforms(gkpz, parse_tree("I1(Xi)*Xi", gkpz)));
    // root constraint only bites under the strong convention
    CHECK_FALSE(conforms(kpz, parse_tree("Xi*I1(Xi)", kpz), RootConvention::strong));
    CHECK(conforms(kpz, parse_tree("Xi*I1(Xi)", kpz), RootConvention::free));
}

TEST_CASE("hermite basis is the noise powers") {
    RuleTable h = builtin_rule("hermite");
    auto basis = generate_basis(h, std::nullopt, 3, MultiIndex{0});
    std::set<std::string> names;
    for (auto& t : basis) names.insert(t->canon);
    CHECK(names == std::set<std::string>{"One", "Xi", "Xi*Xi", "Xi*Xi*Xi"});
}

TEST_CASE("kpz basis honours degree and edge caps") {
    RuleTable kpz = builtin_rule("kpz");
    auto basis = generate_basis(kpz, Rational(0), 4, MultiIndex{0, 0});
    std::set<std::string> names;
    for (auto& t : basis) names.insert(t->canon);
    CHECK(names.count("Xi"));
    CHECK(names.count("I[0,1](Xi)"));
    CHECK(names.count("I[0,1](Xi)*I[0,1](Xi)"));
    CHECK_FALSE(names.count("I(Xi)*I(Xi)")); // degree 49/50 > 0
    CHECK(degree(kpz.sig, parse_tree("I(Xi)*I(Xi)", kpz)) == Rational(49, 50));
    for (auto& t : basis) {
        CHECK(t->edges <= 4);
        CHECK(degree(kpz.sig, t) <= Rational(0));
        CHECK(conforms(kpz, t));
    }
}

TEST_CASE("edge cap zero leaves the polynomial sector") {
    RuleTable kpz = builtin_rule("kpz");
    auto basis = generate_basis(kpz, Rational(2), 0, MultiIndex{1, 2});
    std::set<std::string> names;
    for (auto& t : basis) names.insert(t->canon);
    CHECK(names == std::set<std::string>{"One", "X^[0,1]", "X^[0,2]", "X^[1,0]"});
}

TEST_CASE("generate_basis is monotone in caps") {
    RuleTable kpz = builtin_rule("kpz");
    auto small = generate_basis(kpz, Rational(0), 3, MultiIndex{0, 1});
    auto large = generate_basis(kpz, Rational(2), 4, MultiIndex{1, 1});
    std::set<std::string> big;
    for (auto& t : large) big.insert(t->canon);
    for (auto& t : small) CHECK(big.count(t->canon));
}

TEST_CASE("normality closure holds on generated bases") {
    RuleTable qua = builtin_rule("qua");
    auto basis = generate_basis(qua, std::nullopt, 5, MultiIndex{0, 0, 0, 0});
    for (auto& t : basis) {
        if (t->branches.size() < 2) continue;
        // prune one branch anywhere at the root
        for (size_t i = 0; i < t->branches.size(); ++i) {
            std::vector<Branch> bs;
            for (size_t j = 0; j < t->branches.size(); ++j)
                if (j != i) bs.push_back(t->branches[j]);
            CHECK(conforms(qua, make_tree(t->root_dec, bs)));
        }
    }
}

TEST_CASE("projections") {
    RuleTable kpz = builtin_rule("kpz");
    const Signature& sig = kpz.sig;
    auto J1Xi = parse_tree("I1(Xi)", kpz);
    auto JXi = parse_tree("I(Xi)", kpz);
    CHECK(project_Tplus(sig, TreeLin::single(J1Xi)).is_zero());      // degree -51/100
    CHECK_FALSE(project_Tplus(sig, TreeLin::single(JXi)).is_zero()); // degree 49/100
    CHECK_FALSE(project_Tplus(sig, TreeLin::single(parse_tree("X^[0,1]", kpz))).is_zero());

    Forest f = make_forest({parse_tree("X^[0,1]", kpz)});
    CHECK(project_Tminus(sig, ForestLin::single(f)).is_zero());
    Forest g = make_forest({parse_tree("One", kpz), parse_tree("Xi*Xi", kpz)});
    CHECK(tilde_pi(g).canon == "Xi*Xi");
    CHECK_FALSE(project_Tminus(sig, ForestLin::single(make_forest({J1Xi, J1Xi}))).is_zero());
}

TEST_CASE("empty caps yield an empty basis, not an error") {
    RuleTable kpz = builtin_rule("kpz");
    auto basis = generate_basis(kpz, Rational(-1000), 3, MultiIndex{0, 0});
    CHECK(basis.empty());
}

TEST_CASE("non-absorbing rules admit no polynomial decorations") {
    RuleTable r = builtin_rule("kpz");
    r.poly_absorbing = false;
    CHECK(conforms(r, parse_tree("I1(Xi)*I1(Xi)", r)));
    CHECK_FALSE(conforms(r, parse_tree("X_1*I1(Xi)*I1(Xi)", r)));
    CHECK_FALSE(conforms(r, parse_tree("I(X_1*Xi)", r)));
    auto basis = generate_basis(r, std::nullopt, 3, MultiIndex{1, 1});
    for (auto& t : basis) CHECK_FALSE(contains_x(t));
}

TEST_CASE("rule files round through the loader") {
    std::string text = "dim = 1\nscaling = 2 1\nnoise Xi degree -3/2\nkernel K degree 2\n"
                       "rule K : () (Xi) (K[0,1],K[0,1]) (K[0,1])\n";
    RuleTable r = parse_rule_text(text);
    CHECK(r.sig.dim == 1);
    CHECK(r.sig.type("K").degree == Rational(2));
    CHECK(conforms(r, parse_tree("K1(Xi)*K1(Xi)", r)));
    CHECK_THROWS(parse_rule_text("dim = 1\nscaling = 2 1\nnoise Q degree -1\n"));
    // missing sub-multiset: not normal
    CHECK_THROWS(parse_rule_text("dim = 1\nscaling = 2 1\nnoise Xi degree -3/2\n"
                                 "kernel K degree 2\nrule K : (Xi,Xi)\n"));
}
