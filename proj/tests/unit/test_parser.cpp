#include "doctest.h"

#include "treealg/parser.hpp"

using namespace treealg;

namespace {
const RuleTable& kpz() {
    static RuleTable r = builtin_rule("kpz");
    return r;
}
} // namespace

TEST_CASE("grammar examples") {
    auto t = parse_tree("I1(Xi)*I1(Xi)", kpz());
    CHECK(t->branches.size() == 2);
    CHECK(t->branches[0].dec == MultiIndex{0, 1});

    RuleTable gkpz = builtin_rule("gkpz");
    auto cex = parse_tree("I(I(I(Xi)*Xi)*Xi)", gkpz);
    CHECK(cex->edges == 6);
    CHECK(noise_norm(gkpz.sig, cex) == 3);

    CHECK(parse_tree("X^[2,1]", kpz())->root_dec == MultiIndex{2, 1});
    CHECK(parse_tree("X_1", kpz())->root_dec == MultiIndex{0, 1});
    CHECK(parse_tree("I( Xi ) * Xi", builtin_rule("gkpz"))->canon == "I(Xi)*Xi");
    CHECK(parse_tree("Xi Xi", kpz())->canon == "Xi*Xi"); // '*' optional
}

TEST_CASE("rooted forests via C(...)") {
    auto f = parse_rooted("I(Xi)*C(Xi)", kpz());
    CHECK(f.marked->canon == "I(Xi)");
    REQUIRE(f.others.size() == 1);
    CHECK(f.others[0]->canon == "Xi");
    CHECK(parse_rooted("C(Xi)", kpz()).marked->canon == "One");
    CHECK_THROWS_AS(parse_tree("C(Xi)", kpz()), ParseError);
}

TEST_CASE("errors carry positions") {
    CHECK_THROWS_AS(parse_tree("I(", kpz()), ParseError);
    CHECK_THROWS_AS(parse_tree("Q(Xi)", kpz()), ParseError);
    CHECK_THROWS_AS(parse_tree("X^[1]", kpz()), ParseError);  // arity mismatch
    CHECK_THROWS_AS(parse_tree("Xi(One)", kpz()), ParseError);
    CHECK_THROWS_AS(parse_tree("", kpz()), ParseError);
    CHECK_THROWS_AS(parse_tree("I(Xi))", kpz()), ParseError);
}

TEST_CASE("round-trip on an enumerated basis") {
    RuleTable r = builtin_rule("kpz");
    auto basis = generate_basis(r, std::nullopt, 4, MultiIndex{0, 1});
    for (auto& t : basis) {
        CHECK(parse_tree(t->canon, r)->canon == t->canon);
    }
    RuleTable h = builtin_rule("hermite");
    for (auto& t : generate_basis(h, std::nullopt, 6, MultiIndex{2}))
        CHECK(parse_tree(t->canon, h)->canon == t->canon);
}
