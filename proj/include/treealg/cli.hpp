// Command-line front end. Subcommands:
//
//   basis     --rule F --max-degree Q --max-edges N [--poly-cap M]
//   coproduct --map {delta|delta-plus|delta-minus|delta-minus-r|
//                    delta-minus-circ|delta-hat-1|delta-2} --rule F
//                   [--cap Q] EXPR
//   renorm    --rule F --char C EXPR [--via {character|recursive}]
//   check     --rule F --suite {coassoc|factorisation|cointeraction|group|
//                               antipode|deltaM|admissible|all}
//                   --max-edges N --seed S
//   wick      --n N
//
// Exit codes: 0 all pass, 1 a check failed, 2 usage or parse error.
#pragma once

#include "CLI11.hpp"
#include "treealg/suites.hpp"

#include <iostream>

namespace treealg {

namespace cli_detail {

inline MinusCharacter load_character(const std::string& arg, const RuleTable& rule) {
    if (arg == "wick") return wick_character(rule.sig, 8);
    if (arg == "hermite") return hermite_ell(rule.sig);
    for (const char* b : {"kpz", "gkpz", "phi4", "qua"})
        if (arg == b) return load_scenario(arg).ell;
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open character file: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_minus_character(ss.str(), rule, arg);
}

inline MultiIndex parse_poly_cap(const std::string& s, size_t dim1) {
    if (s.empty()) return MultiIndex(dim1);
    if (s[0] == '[') {
        size_t i = 0;
        return detail::parse_midx_token(s, i, dim1);
    }
    int v = std::stoi(s);
    MultiIndex m(dim1);
    for (size_t i = 0; i < dim1; ++i) m[i] = v;
    return m;
}

} // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact symbolic engine for decorated rooted trees"};
    app.require_subcommand(1);

    std::string rule_arg, expr, map_name, char_arg, via = "character", suite_name, cap_str,
                             degree_str, poly_cap_str;
    int max_edges = 4;
    uint64_t seed = 1;
    int wick_n = 4;

    auto* basis_cmd = app.add_subcommand("basis", "enumerate the conforming basis");
    basis_cmd->add_option("--rule", rule_arg)->required();
    basis_cmd->add_option("--max-degree", degree_str)->required();
    basis_cmd->add_option("--max-edges", max_edges)->required();
    basis_cmd->add_option("--poly-cap", poly_cap_str);

    auto* cop_cmd = app.add_subcommand("coproduct", "evaluate a coproduct on an expression");
    cop_cmd->add_option("--map", map_name)->required();
    cop_cmd->add_option("--rule", rule_arg)->required();
    cop_cmd->add_option("--cap", cap_str);
    cop_cmd->add_option("expr", expr)->required();

    auto* ren_cmd = app.add_subcommand("renorm", "apply the renormalisation map");
    ren_cmd->add_option("--rule", rule_arg)->required();
    ren_cmd->add_option("--char", char_arg)->required();
    ren_cmd->add_option("--via", via)->check(CLI::IsMember({"character", "recursive"}));
    ren_cmd->add_option("expr", expr)->required();

    auto* chk_cmd = app.add_subcommand("check", "run an identity suite");
    chk_cmd->add_option("--rule", rule_arg)->required();
    chk_cmd->add_option("--suite", suite_name)->required();
    chk_cmd->add_option("--max-edges", max_edges)->required();
    chk_cmd->add_option("--seed", seed)->required();

    auto* wick_cmd = app.add_subcommand("wick", "compare renormalised noise powers with the "
                                                "generalised Hermite polynomials");
    wick_cmd->add_option("--n", wick_n)->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*basis_cmd) {
            RuleTable rule = load_rule(rule_arg);
            Rational cap = Rational::parse(degree_str);
            MultiIndex pcap = cli_detail::parse_poly_cap(poly_cap_str, rule.sig.midx_size());
            for (auto& t : generate_basis(rule, cap, max_edges, pcap))
                out << t->canon << "  " << degree(rule.sig, t).to_string() << "\n";
            return 0;
        }
        if (*cop_cmd) {
            RuleTable rule = load_rule(rule_arg);
            const Signature& sig = rule.sig;
            CoContext ctx(sig);
            if (map_name == "delta-hat-1") {
                Rational cap = cap_str.empty() ? Rational(0) : Rational::parse(cap_str);
                out << render_structured(delta_hat_1(sig, parse_rooted(expr, rule), cap));
                return 0;
            }
            TreePtr t = parse_tree(expr, rule);
            if (map_name == "delta") out << render_structured(delta(ctx, t));
            else if (map_name == "delta-plus") {
                if (!plus_positive(sig, t)) {
                    err << "input is not a positive-space element: " << t->canon << "\n";
                    return 2;
                }
                out << render_structured(delta_plus(ctx, t));
            } else if (map_name == "delta-minus") out << render_structured(delta_minus(sig, t));
            else if (map_name == "delta-minus-r") out << render_structured(delta_minus_r(sig, t));
            else if (map_name == "delta-minus-circ")
                out << render_structured(delta_minus_circ(sig, t));
            else if (map_name == "delta-2") {
                std::optional<Rational> budget;
                if (!cap_str.empty()) budget = Rational::parse(cap_str);
                out << render_structured(delta_2(sig, t, budget));
            } else {
                err << "unknown map: " << map_name << "\n";
                return 2;
            }
            return 0;
        }
        if (*ren_cmd) {
            RuleTable rule = load_rule(rule_arg);
            MinusCharacter ell = cli_detail::load_character(char_arg, rule);
            TreePtr t = parse_tree(expr, rule);
            TreeLin result;
            if (via == "character") {
                result = M_from_character(rule.sig, ell)(t);
            } else {
                RenormPair mr = M_from_R(rule.sig, R_from_character(rule.sig, ell));
                result = mr.M(t);
            }
            out << render_structured(result);
            return 0;
        }
        if (*chk_cmd) {
            RuleTable rule = load_rule(rule_arg);
            Report rep = run_suite(suite_name, rule, max_edges, seed);
            out << rep.render();
            return rep.all_pass() ? 0 : 1;
        }
        if (*wick_cmd) {
            Signature sig = builtin_rule("hermite").sig;
            MinusCharacter lw = wick_character(sig, wick_n / 2 + 1);
            LinearTreeMap Mw = R_from_character(sig, lw);
            Poly img = noise_image(sig, Mw(xi_power(sig, "Xi", wick_n)));
            Poly hn = hermite_poly(wick_n);
            out << img.to_string() << "\n" << hn.to_string() << "\n";
            return img == hn ? 0 : 1;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace treealg
