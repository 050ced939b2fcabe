#include "doctest.h"

#include "treealg/cli.hpp"

#include <sstream>

using namespace treealg;

namespace {
struct Run {
    int code;
    std::string out, err;
};
Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}
} // namespace

TEST_CASE("wick command prints the polynomial twice and exits clean") {
    Run r = cli({"wick", "--n", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "x^4 + 3*c2^2 - 6*c2*x^2\nx^4 + 3*c2^2 - 6*c2*x^2\n");
}

TEST_CASE("basis command lists trees with degrees") {
    Run r = cli({"basis", "--rule", "hermite", "--max-degree", "0", "--max-edges", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "One  0\nXi  -51/100\nXi*Xi  -51/50\nXi*Xi*Xi  -153/100\n");
}

TEST_CASE("coproduct command renders structured output") {
    Run r = cli({"coproduct", "--map", "delta-minus-r", "--rule", "hermite", "Xi*Xi"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 | One_1 (x) Xi*Xi\n2 | Xi (x) Xi\n1 | Xi*Xi (x) One\n");
    Run d = cli({"coproduct", "--map", "delta", "--rule", "kpz", "I(Xi)"});
    CHECK(d.out == "1 | I(Xi) (x) One\n1 | One (x) I(Xi)\n");
    Run h = cli({"coproduct", "--map", "delta-hat-1", "--rule", "kpz", "--cap", "1",
                 "Xi*C(Xi)"});
    CHECK(h.code == 0);
    CHECK(h.out.find("(x)") != std::string::npos);
}

TEST_CASE("renorm routes agree byte for byte") {
    for (auto& [rule, chr, expr] :
         std::vector<std::tuple<std::string, std::string, std::string>>{
             {"hermite", "wick", "Xi*Xi*Xi"},
             {"kpz", "kpz", "I1(Xi)*I1(Xi)"},
             {"gkpz", "gkpz", "I(I(I(Xi)*Xi)*Xi)"},
             {"phi4", "qua", "I(I(Xi)*I(Xi)*I(Xi))"}}) {
        Run a = cli({"renorm", "--rule", rule, "--char", chr, "--via", "character", expr});
        Run b = cli({"renorm", "--rule", rule, "--char", chr, "--via", "recursive", expr});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("check command gates on the report") {
    Run r = cli({"check", "--rule", "kpz", "--suite", "cointeraction", "--max-edges", "4",
                 "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# summary OK") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("exit codes: usage errors and parse errors report 2") {
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"basis", "--rule", "kpz"}).code == 2);
    Run r = cli({"coproduct", "--map", "delta", "--rule", "kpz", "Q(Xi)"});
    CHECK(r.code == 2);
    CHECK(r.err.find("parse error") != std::string::npos);
    CHECK(cli({"renorm", "--rule", "kpz", "--char", "/nonexistent", "Xi"}).code == 2);
    CHECK(cli({"coproduct", "--map", "delta-plus", "--rule", "kpz", "I1(Xi)"}).code == 2);
}

TEST_CASE("rule and character files load through the same paths") {
    std::string rule_path = "/tmp/treealg_test_rule.txt";
    {
        std::ofstream f(rule_path);
        f << "dim = 1\nscaling = 2 1\nnoise Xi degree -5/2\nkernel K degree 2\n"
             "rule K : () (Xi) (K) (K,K)\n";
    }
    std::string char_path = "/tmp/treealg_test_char.txt";
    {
        std::ofstream f(char_path);
        f << "\"K(Xi)*K(Xi)\" = a\n";
    }
    Run r = cli({"renorm", "--rule", rule_path, "--char", char_path, "K(Xi)*K(Xi)"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 | K(Xi)*K(Xi)\na | One\n");
}
