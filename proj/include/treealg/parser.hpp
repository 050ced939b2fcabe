// Recursive-descent parser for the symbolic tree grammar.
//
//   expr   := factor { ['*'] factor }
//   factor := 'One' | 'Xi' ['_' name] | 'X' ['^' midx | '_' digit]
//           | name [midx] '(' expr ')' | 'C' '(' expr ')'
//   midx   := '[' int {',' int} ']'
//
// Whitespace-insensitive; '*' between factors is optional. `I1(...)` is sugar
// for `I[0,...,1](...)` (unit decoration in slot 1). `C(...)` marks a
// non-distinguished member of a rooted forest.
#pragma once

#include "treealg/rules.hpp"

namespace treealg {

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t p)
        : std::runtime_error(msg + " (at offset " + std::to_string(p) + ")"), pos(p) {}
};

namespace detail {

class ExprParser {
  public:
    ExprParser(std::string_view src, const RuleTable& rule) : s_(src), rule_(rule) {}

    RootedForest parse() {
        RootedForest acc = rooted_of_tree(tree_one(dim1()));
        bool any = false;
        for (;;) {
            skip_ws();
            if (eof()) break;
            if (peek() == '*') {
                if (!any) fail("unexpected '*'");
                ++i_;
                continue;
            }
            if (peek() == ')') break;
            acc = star_like(acc, factor());
            any = true;
        }
        if (!any) fail("empty expression");
        return acc;
    }

    static RootedForest star_like(const RootedForest& a, const RootedForest& b) {
        std::vector<TreePtr> o = a.others;
        o.insert(o.end(), b.others.begin(), b.others.end());
        return make_rooted(tree_product(a.marked, b.marked), std::move(o));
    }

    size_t pos() const { return i_; }

  private:
    size_t dim1() const { return rule_.sig.midx_size(); }
    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    void skip_ws() {
        while (!eof() && isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

    std::string ident() {
        skip_ws();
        size_t start = i_;
        while (!eof() && (isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (i_ == start) fail("expected identifier");
        return std::string(s_.substr(start, i_ - start));
    }

    MultiIndex midx() {
        skip_ws();
        if (eof() || peek() != '[') fail("expected '['");
        ++i_;
        std::vector<int> vals;
        for (;;) {
            skip_ws();
            size_t start = i_;
            if (!eof() && (peek() == '-' || peek() == '+')) ++i_;
            while (!eof() && isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (i_ == start) fail("expected integer");
            int v = std::stoi(std::string(s_.substr(start, i_ - start)));
            if (v < 0) fail("decorations are non-negative");
            vals.push_back(v);
            skip_ws();
            if (!eof() && peek() == ',') { ++i_; continue; }
            if (!eof() && peek() == ']') { ++i_; break; }
            fail("expected ',' or ']'");
        }
        if (vals.size() != dim1())
            fail("decoration needs " + std::to_string(dim1()) + " entries");
        return MultiIndex(vals);
    }

    RootedForest parens() {
        skip_ws();
        if (eof() || peek() != '(') fail("expected '('");
        ++i_;
        RootedForest inner = parse();
        skip_ws();
        if (eof() || peek() != ')') fail("expected ')'");
        ++i_;
        return inner;
    }

    RootedForest factor() {
        std::string name = ident();
        if (name == "One") return rooted_of_tree(tree_one(dim1()));
        if (name == "C") {
            RootedForest inner = parens();
            return make_rooted(tree_one(dim1()), {fold_tree(inner, "C")});
        }
        if (name.rfind("Xi", 0) == 0) {
            if (!rule_.sig.has_type(name)) {
                if (name != "Xi") fail("unknown noise: " + name);
                std::string found;
                for (auto& [t, et] : rule_.sig.types())
                    if (et.is_noise()) {
                        if (!found.empty()) fail("ambiguous 'Xi': name the noise");
                        found = t;
                    }
                if (found.empty()) fail("rule has no noise type");
                name = found;
            } else if (!rule_.sig.type(name).is_noise()) {
                fail(name + " is not a noise");
            }
            return rooted_of_tree(tree_noise(name, dim1()));
        }
        if (name == "X") {
            skip_ws();
            if (!eof() && peek() == '^') {
                ++i_;
                return rooted_of_tree(tree_xpow(midx()));
            }
            return rooted_of_tree(tree_xpow(MultiIndex::unit(dim1(), 0)));
        }
        if (name.size() >= 2 && name[0] == 'X' && name[1] == '_') {
            size_t idx = std::stoul(name.substr(2));
            if (idx >= dim1()) fail("X index out of range");
            return rooted_of_tree(tree_xpow(MultiIndex::unit(dim1(), idx)));
        }
        // kernel application, possibly with trailing-digit decoration sugar
        std::string kernel = name;
        MultiIndex dec(dim1());
        if (!rule_.sig.has_type(kernel)) {
            if (name.size() >= 2 && isdigit(static_cast<unsigned char>(name.back()))) {
                std::string base = name.substr(0, name.size() - 1);
                size_t slot = name.back() - '0';
                if (rule_.sig.has_type(base) && slot < dim1()) {
                    kernel = base;
                    dec = MultiIndex::unit(dim1(), slot);
                } else fail("unknown type: " + name);
            } else fail("unknown type: " + name);
        }
        if (rule_.sig.type(kernel).is_noise()) fail("noise takes no argument: " + kernel);
        skip_ws();
        if (!eof() && peek() == '[') dec = midx();
        RootedForest arg = parens();
        return rooted_of_tree(tree_planted(kernel, dec, fold_tree(arg, kernel)));
    }

    TreePtr fold_tree(const RootedForest& f, const std::string& where) {
        if (!f.others.empty()) fail("C(...) not allowed inside " + where + "(...)");
        return f.marked;
    }

    std::string_view s_;
    const RuleTable& rule_;
    size_t i_ = 0;
};

} // namespace detail

inline RootedForest parse_rooted(std::string_view s, const RuleTable& rule) {
    detail::ExprParser p(s, rule);
    RootedForest r = p.parse();
    if (p.pos() != s.size()) throw ParseError("trailing input", p.pos());
    return r;
}

inline TreePtr parse_tree(std::string_view s, const RuleTable& rule) {
    RootedForest r = parse_rooted(s, rule);
    if (!r.others.empty()) throw ParseError("C(...) is only valid in rooted-forest inputs", 0);
    return r.marked;
}

} // namespace treealg
