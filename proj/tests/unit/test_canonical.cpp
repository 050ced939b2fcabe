#include "doctest.h"

#include "treealg/rules.hpp"

using namespace treealg;

namespace {

// rebuild a tree with branches fed in a rotated order at every node
TreePtr rebuild_rotated(const TreePtr& t, unsigned rot) {
    std::vector<Branch> bs;
    size_t n = t->branches.size();
    for (size_t i = 0; i < n; ++i) {
        const Branch& b = t->branches[(i + rot) % n];
        bs.push_back(Branch{b.type, b.dec, rebuild_rotated(b.child, rot * 7 + 3)});
    }
    return make_tree(t->root_dec, std::move(bs));
}

// rebuild with branches in exactly reversed order
TreePtr rebuild_reversed(const TreePtr& t) {
    std::vector<Branch> bs;
    for (auto it = t->branches.rbegin(); it != t->branches.rend(); ++it)
        bs.push_back(Branch{it->type, it->dec, rebuild_reversed(it->child)});
    return make_tree(t->root_dec, std::move(bs));
}

} // namespace

TEST_CASE("all permuted encodings canonicalize identically, trees up to 6 edges") {
    for (const char* name : {"kpz", "gkpz", "phi4", "hermite"}) {
        RuleTable rule = builtin_rule(name);
        MultiIndex pcap(rule.sig.midx_size());
        if (rule.sig.dim >= 1) pcap[1] = 1;
        auto basis = generate_basis(rule, Rational(2), 6, pcap);
        for (auto& t : basis) {
            CHECK(rebuild_reversed(t)->canon == t->canon);
            for (unsigned rot = 1; rot <= 3; ++rot)
                CHECK(rebuild_rotated(t, rot)->canon == t->canon);
        }
    }
}

TEST_CASE("canonicalization is idempotent") {
    RuleTable rule = builtin_rule("gkpz");
    auto basis = generate_basis(rule, Rational(2), 5, MultiIndex{0, 1});
    for (auto& t : basis) {
        TreePtr again = make_tree(t->root_dec, t->branches);
        CHECK(again->canon == t->canon);
    }
}
