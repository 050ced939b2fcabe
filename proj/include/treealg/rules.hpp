// Rule tables: which decorated trees exist. A rule assigns to each edge type
// the admitted node types (multisets of decorated edges) of the node below
// such an edge; noises always end in bare leaves. Polynomial decorations are
// absorbing: node decorations never enter the node-type match.
//
// Rule file grammar (line oriented, UTF-8):
//   dim = <int>
//   scaling = <int> ... <int>          (d+1 entries, time first)
//   noise <name> degree <rational>
//   kernel <name> degree <rational>
//   rule <kernel-name> : <nodetype> ...
//   option kill_kernel_of_polynomial   (optional)
// where <nodetype> is `()` or `(<item>,...)` and <item> is `<name>` or
// `<name>[<midx>]`. Noise names must be `Xi` or start with `Xi_`; kernel
// names must not.
#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "treealg/lincomb.hpp"

namespace treealg {

struct NodeType {
    std::vector<std::pair<std::string, MultiIndex>> items; // sorted
    std::string key;
};

inline NodeType make_node_type(std::vector<std::pair<std::string, MultiIndex>> items) {
    std::sort(items.begin(), items.end(), [](auto& a, auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    NodeType nt;
    nt.key = "(";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) nt.key += ",";
        nt.key += items[i].first;
        if (!items[i].second.is_zero()) nt.key += items[i].second.to_string();
    }
    nt.key += ")";
    nt.items = std::move(items);
    return nt;
}

inline NodeType node_type_of(const TreePtr& t) {
    std::vector<std::pair<std::string, MultiIndex>> items;
    items.reserve(t->branches.size());
    for (auto& b : t->branches) items.emplace_back(b.type, b.dec);
    return make_node_type(std::move(items));
}

enum class RootConvention { strong, free };

struct RuleTable {
    std::string name;
    Signature sig;
    std::map<std::string, std::set<std::string>> rules; // kernel -> node-type keys
    std::map<std::string, std::vector<NodeType>> rule_types;
    bool kill_kernel_of_polynomial = false;
    bool root_unconstrained = false; // free-root basis by default (hermite)
    // polynomial factors are absorbing: node decorations never enter the
    // node-type match (true for every built-in); without it conforming
    // trees carry no decorations at all
    bool poly_absorbing = true;

    bool admits(const std::string& kernel, const NodeType& nt) const {
        auto it = rules.find(kernel);
        return it != rules.end() && it->second.count(nt.key) != 0;
    }
    bool admits_root(const NodeType& nt) const {
        for (auto& [k, keys] : rules)
            if (keys.count(nt.key)) return true;
        return false;
    }

    // decorated edges that may occur anywhere under this rule
    std::vector<std::pair<std::string, MultiIndex>> item_alphabet() const {
        std::set<std::pair<std::string, MultiIndex>> seen;
        for (auto& [t, et] : sig.types())
            if (et.is_noise()) seen.insert({t, sig.zero()});
        for (auto& [k, nts] : rule_types)
            for (auto& nt : nts)
                for (auto& item : nt.items) seen.insert(item);
        return {seen.begin(), seen.end()};
    }
};

inline void add_rule_entry(RuleTable& r, const std::string& kernel, NodeType nt) {
    if (r.rules[kernel].insert(nt.key).second) r.rule_types[kernel].push_back(std::move(nt));
}

// Normality: each admitted set is closed under sub-multisets. Under
// kill_kernel_of_polynomial the empty node type denotes a tree that is zero
// in the quotient, so its absence does not break closure.
inline std::vector<std::string> normality_violations(const RuleTable& r) {
    std::vector<std::string> bad;
    for (auto& [kernel, nts] : r.rule_types) {
        for (auto& nt : nts) {
            size_t m = nt.items.size();
            for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
                std::vector<std::pair<std::string, MultiIndex>> sub;
                for (size_t i = 0; i < m; ++i)
                    if (mask & (size_t{1} << i)) sub.push_back(nt.items[i]);
                NodeType snt = make_node_type(std::move(sub));
                if (snt.items.empty() && r.kill_kernel_of_polynomial) continue;
                if (!r.admits(kernel, snt))
                    bad.push_back(kernel + ": " + nt.key + " -> missing " + snt.key);
            }
        }
    }
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    return bad;
}

inline bool conforms_below(const RuleTable& r, const std::string& edge_type, const TreePtr& t) {
    if (r.sig.type(edge_type).is_noise()) return t->is_one();
    if (!r.poly_absorbing && !t->root_dec.is_zero()) return false;
    if (!r.admits(edge_type, node_type_of(t))) return false;
    for (auto& b : t->branches)
        if (!conforms_below(r, b.type, b.child)) return false;
    return true;
}

inline bool conforms(const RuleTable& r, const TreePtr& t,
                     RootConvention rc = RootConvention::strong) {
    if (has_bad_noise(r.sig, t)) return false;
    if (!r.poly_absorbing && !t->root_dec.is_zero()) return false;
    if (r.kill_kernel_of_polynomial && has_kernel_of_polynomial(r.sig, t)) return false;
    for (auto& b : t->branches) {
        if (!r.sig.has_type(b.type)) throw std::invalid_argument("unknown edge type: " + b.type);
        if (!conforms_below(r, b.type, b.child)) return false;
    }
    if (rc == RootConvention::strong && !r.root_unconstrained && !t->is_bare() &&
        !r.admits_root(node_type_of(t)))
        return false;
    return true;
}

// ---------------------------------------------------------------------------
// basis generation

namespace detail {

class BasisGen {
  public:
    BasisGen(const RuleTable& rule, int edge_cap, MultiIndex poly_cap)
        : rule_(rule), edge_cap_(edge_cap), poly_cap_(std::move(poly_cap)) {}

    // all conforming trees with <= edge_cap edges under the root convention
    std::vector<TreePtr> run(RootConvention rc) {
        std::set<std::string> seen;
        std::vector<TreePtr> out;
        auto emit = [&](const TreePtr& t) {
            if (seen.insert(t->canon).second) out.push_back(t);
        };
        bool free_root = rc == RootConvention::free || rule_.root_unconstrained;
        for_each_dec([&](const MultiIndex& n) {
            if (free_root) {
                auto alpha = rule_.item_alphabet();
                free_products(alpha, 0, edge_cap_, {}, [&](const std::vector<Branch>& bs) {
                    emit(make_tree(n, bs));
                });
            } else {
                std::set<std::string> nts;
                for (auto& [k, v] : rule_.rule_types)
                    for (auto& nt : v) {
                        if (!nts.insert(nt.key).second) continue;
                        for (auto& bs : with_type(nt, edge_cap_)) emit(make_tree(n, bs));
                    }
                emit(make_tree(n, {})); // bare nodes are always basis members
            }
        });
        std::sort(out.begin(), out.end(), [](const TreePtr& a, const TreePtr& b) {
            if (a->edges != b->edges) return a->edges < b->edges;
            return a->canon < b->canon;
        });
        return out;
    }

  private:
    void for_each_dec(const std::function<void(const MultiIndex&)>& f) {
        if (!rule_.poly_absorbing) {
            f(MultiIndex(rule_.sig.midx_size()));
            return;
        }
        for_each_sub(poly_cap_, f);
    }

    // trees admissible below an edge of the given type, <= budget edges
    const std::vector<TreePtr>& below(const std::string& type, int budget) {
        auto key = type + "#" + std::to_string(budget);
        auto it = below_memo_.find(key);
        if (it != below_memo_.end()) return it->second;
        std::vector<TreePtr> out;
        std::set<std::string> seen;
        if (rule_.sig.type(type).is_noise()) {
            out.push_back(tree_one(rule_.sig.midx_size()));
        } else {
            auto rit = rule_.rule_types.find(type);
            if (rit != rule_.rule_types.end()) {
                for (auto& nt : rit->second) {
                    if (nt.items.empty() && rule_.kill_kernel_of_polynomial) continue;
                    for (auto& bs : with_type(nt, budget))
                        for_each_dec([&](const MultiIndex& n) {
                            if (nt.items.empty() && rule_.kill_kernel_of_polynomial) return;
                            TreePtr t = make_tree(n, bs);
                            if (seen.insert(t->canon).second) out.push_back(t);
                        });
                }
            }
        }
        return below_memo_.emplace(key, std::move(out)).first->second;
    }

    // branch vectors realizing the node type within the edge budget
    std::vector<std::vector<Branch>> with_type(const NodeType& nt, int budget) {
        int need = static_cast<int>(nt.items.size());
        if (need > budget) return {};
        std::vector<std::vector<Branch>> out;
        std::vector<Branch> cur;
        std::set<std::string> seen;
        build_items(nt.items, 0, budget - need, cur, seen, out);
        return out;
    }

    void build_items(const std::vector<std::pair<std::string, MultiIndex>>& items, size_t i,
                     int budget, std::vector<Branch>& cur, std::set<std::string>& seen,
                     std::vector<std::vector<Branch>>& out) {
        if (i == items.size()) {
            TreePtr probe = make_tree(MultiIndex(rule_.sig.midx_size()), cur);
            if (seen.insert(probe->canon).second) out.push_back(cur);
            return;
        }
        for (auto& c : below(items[i].first, budget)) {
            if (c->edges > budget) continue;
            cur.push_back(Branch{items[i].first, items[i].second, c});
            build_items(items, i + 1, budget - c->edges, cur, seen, out);
            cur.pop_back();
        }
    }

    // free root: arbitrary multisets over the item alphabet
    void free_products(const std::vector<std::pair<std::string, MultiIndex>>& alpha, size_t i,
                       int budget, std::vector<Branch> cur,
                       const std::function<void(const std::vector<Branch>&)>& emit) {
        if (i == alpha.size()) { emit(cur); return; }
        free_products(alpha, i + 1, budget, cur, emit);
        for (auto& c : below(alpha[i].first, budget - 1)) {
            if (1 + c->edges > budget) continue;
            auto next = cur;
            next.push_back(Branch{alpha[i].first, alpha[i].second, c});
            free_products(alpha, i, budget - 1 - c->edges, std::move(next), emit);
        }
    }

    const RuleTable& rule_;
    int edge_cap_;
    MultiIndex poly_cap_;
    std::map<std::string, std::vector<TreePtr>> below_memo_;
};

} // namespace detail

inline std::vector<TreePtr> generate_basis(const RuleTable& rule,
                                           std::optional<Rational> degree_cap, int edge_cap,
                                           const MultiIndex& poly_cap,
                                           RootConvention rc = RootConvention::strong) {
    detail::BasisGen gen(rule, edge_cap, poly_cap);
    std::vector<TreePtr> all = gen.run(rc);
    if (!degree_cap) return all;
    std::vector<TreePtr> out;
    for (auto& t : all)
        if (degree(rule.sig, t) <= *degree_cap) out.push_back(t);
    return out;
}

// ---------------------------------------------------------------------------
// degree-based projections

// factor-positivity of a T_+ element: every planted factor J_k(sigma) needs
// |I_k(sigma)|_s > 0
inline bool plus_positive(const Signature& sig, const TreePtr& t) {
    for (auto& b : t->branches) {
        Rational d = sig.type(b.type).degree - sig.scaled(b.dec) + degree(sig, b.child);
        if (!(d > Rational(0))) return false;
    }
    return true;
}

// Pi_+ : kills terms with a planted factor of non-positive degree
inline TreeLin project_Tplus(const Signature& sig, const TreeLin& x) {
    return filter(x, [&](const TreePtr& t) { return plus_positive(sig, t) && !has_bad_noise(sig, t); });
}

// Pi_- : kills forests containing a tree of non-negative degree
inline ForestLin project_Tminus(const Signature& sig, const ForestLin& x) {
    return filter(x, [&](const Forest& f) { return !killed_by_pi_minus(sig, f) && !has_bad_noise(sig, f); });
}

inline ForestLin tilde_pi(const ForestLin& x) {
    ForestLin r;
    for (auto& [f, c] : x.terms()) r.add(tilde_pi(f), c);
    return r;
}

// ---------------------------------------------------------------------------
// loading

namespace detail {

inline std::vector<std::string> tokenize_rule_line(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : line) {
        if (isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) { toks.push_back(cur); cur.clear(); }
        } else cur += ch;
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

inline MultiIndex parse_midx_token(const std::string& s, size_t& i, size_t dim1) {
    // expects '[' a ',' b ... ']' starting at i
    if (s[i] != '[') throw std::invalid_argument("expected '[' in " + s);
    ++i;
    std::vector<int> vals;
    std::string num;
    for (; i < s.size(); ++i) {
        if (s[i] == ',' || s[i] == ']') {
            if (num.empty()) throw std::invalid_argument("bad multiindex in " + s);
            vals.push_back(std::stoi(num));
            num.clear();
            if (s[i] == ']') { ++i; break; }
        } else num += s[i];
    }
    if (vals.size() != dim1)
        throw std::invalid_argument("multiindex arity mismatch (need " + std::to_string(dim1) +
                                    " entries): " + s);
    return MultiIndex(vals);
}

inline NodeType parse_node_type(const std::string& tok, size_t dim1) {
    if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
        throw std::invalid_argument("bad node type: " + tok);
    std::string inner = tok.substr(1, tok.size() - 2);
    std::vector<std::pair<std::string, MultiIndex>> items;
    size_t i = 0;
    while (i < inner.size()) {
        std::string name;
        while (i < inner.size() && inner[i] != ',' && inner[i] != '[') name += inner[i++];
        if (name.empty()) throw std::invalid_argument("bad node type: " + tok);
        MultiIndex dec(dim1);
        if (i < inner.size() && inner[i] == '[') dec = parse_midx_token(inner, i, dim1);
        items.emplace_back(name, dec);
        if (i < inner.size()) {
            if (inner[i] != ',') throw std::invalid_argument("bad node type: " + tok);
            ++i;
        }
    }
    return make_node_type(std::move(items));
}

} // namespace detail

inline RuleTable parse_rule_text(const std::string& text, const std::string& name = "rule") {
    RuleTable r;
    r.name = name;
    bool have_dim = false;
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<std::string, std::vector<std::string>>> pending_rules;
    while (std::getline(in, line)) {
        auto toks = detail::tokenize_rule_line(line);
        if (toks.empty()) continue;
        if (toks[0] == "dim") {
            if (toks.size() != 3 || toks[1] != "=") throw std::invalid_argument("bad dim line");
            r.sig.dim = std::stoi(toks[2]);
            have_dim = true;
        } else if (toks[0] == "scaling") {
            if (toks.size() < 3 || toks[1] != "=") throw std::invalid_argument("bad scaling line");
            for (size_t i = 2; i < toks.size(); ++i) {
                int v = std::stoi(toks[i]);
                if (v < 1) throw std::invalid_argument("scaling entries must be >= 1");
                r.sig.scaling.push_back(v);
            }
        } else if (toks[0] == "noise" || toks[0] == "kernel") {
            if (toks.size() != 4 || toks[2] != "degree")
                throw std::invalid_argument("bad type line: " + line);
            bool noise = toks[0] == "noise";
            if (noise && toks[1].rfind("Xi", 0) != 0)
                throw std::invalid_argument("noise names must be Xi or Xi_<suffix>: " + toks[1]);
            if (!noise && toks[1].rfind("Xi", 0) == 0)
                throw std::invalid_argument("kernel names must not start with Xi: " + toks[1]);
            for (const char* reserved : {"One", "X", "C"})
                if (toks[1] == reserved)
                    throw std::invalid_argument("reserved type name: " + toks[1]);
            Rational deg = Rational::parse(toks[3]);
            if (noise != (deg < Rational(0)))
                throw std::invalid_argument(toks[1] + ": noise iff degree < 0");
            r.sig.add_type(EdgeType{toks[1], deg});
        } else if (toks[0] == "rule") {
            if (toks.size() < 3 || toks[2] != ":")
                throw std::invalid_argument("bad rule line: " + line);
            pending_rules.emplace_back(toks[1], std::vector<std::string>(toks.begin() + 3, toks.end()));
        } else if (toks[0] == "option") {
            if (toks.size() == 2 && toks[1] == "kill_kernel_of_polynomial")
                r.kill_kernel_of_polynomial = true;
            else throw std::invalid_argument("unknown option: " + line);
        } else {
            throw std::invalid_argument("bad rule file line: " + line);
        }
    }
    if (!have_dim || r.sig.scaling.empty())
        throw std::invalid_argument("rule file needs dim and scaling");
    if (r.sig.scaling.size() != static_cast<size_t>(r.sig.dim) + 1)
        throw std::invalid_argument("scaling must have dim+1 entries");
    for (auto& [kernel, toks] : pending_rules) {
        if (!r.sig.has_type(kernel) || r.sig.type(kernel).is_noise())
            throw std::invalid_argument("rule for unknown kernel: " + kernel);
        for (auto& tok : toks) add_rule_entry(r, kernel, detail::parse_node_type(tok, r.sig.midx_size()));
    }
    auto bad = normality_violations(r);
    if (!bad.empty()) throw std::invalid_argument("rule not normal: " + bad.front());
    return r;
}

inline RuleTable builtin_rule(const std::string& name) {
    if (name == "hermite") {
        RuleTable r = parse_rule_text("dim = 0\nscaling = 1\nnoise Xi degree -51/100\n", name);
        r.root_unconstrained = true;
        return r;
    }
    if (name == "kpz")
        return parse_rule_text("dim = 1\nscaling = 2 1\nnoise Xi degree -151/100\n"
                               "kernel I degree 2\n"
                               "rule I : () (Xi) (I[0,1]) (I[0,1],I[0,1])\n",
                               name);
    if (name == "kpz-bar")
        return parse_rule_text("dim = 1\nscaling = 2 1\nnoise Xi degree -151/100\n"
                               "kernel I degree 2\n"
                               "rule I : (Xi) (I[0,1]) (I[0,1],I[0,1])\n"
                               "option kill_kernel_of_polynomial\n",
                               name);
    if (name == "gkpz") {
        RuleTable r = parse_rule_text("dim = 1\nscaling = 2 1\nnoise Xi degree -151/100\n"
                                      "kernel I degree 2\n"
                                      "rule I : ()\n",
                                      name);
        MultiIndex zero(2), one{0, 1};
        for (int l = 0; l <= 8; ++l) {
            std::vector<std::pair<std::string, MultiIndex>> base;
            for (int i = 0; i < l; ++i) base.emplace_back("I", zero);
            add_rule_entry(r, "I", make_node_type(base));
            auto with = [&](std::vector<std::pair<std::string, MultiIndex>> extra) {
                auto items = base;
                for (auto& e : extra) items.push_back(e);
                add_rule_entry(r, "I", make_node_type(std::move(items)));
            };
            with({{"I", one}});
            with({{"I", one}, {"I", one}});
            with({{"Xi", zero}});
        }
        auto bad = normality_violations(r);
        if (!bad.empty()) throw std::logic_error("gkpz rule not normal: " + bad.front());
        return r;
    }
    if (name == "phi4" || name == "qua")
        return parse_rule_text("dim = 3\nscaling = 2 1 1 1\nnoise Xi degree -251/100\n"
                               "kernel I degree 2\n"
                               "rule I : () (Xi) (I) (I,I) (I,I,I)\n",
                               name);
    throw std::invalid_argument("unknown built-in rule: " + name);
}

inline RuleTable load_rule(const std::string& arg) {
    for (const char* b : {"hermite", "kpz", "kpz-bar", "gkpz", "phi4", "qua"})
        if (arg == b) return builtin_rule(arg);
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open rule file: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_rule_text(ss.str(), arg);
}

} // namespace treealg
