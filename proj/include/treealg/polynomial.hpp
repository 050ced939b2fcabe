// Multivariate polynomials with exact rational coefficients over named
// formal constants. This is the coefficient ring for all linear
// combinations, so renormalisation constants stay symbolic end to end.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "treealg/rational.hpp"

namespace treealg {

// sorted (variable, exponent>0) pairs
using Monomial = std::vector<std::pair<std::string, int>>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return r;
}

class Poly {
  public:
    Poly() = default;
    Poly(const Rational& c) {
        if (!c.is_zero()) terms_[Monomial{}] = c;
    }
    Poly(long long c) : Poly(Rational(c)) {}

    static Poly var(const std::string& name, int exp = 1) {
        Poly p;
        p.terms_[Monomial{{name, exp}}] = Rational(1);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    // the rational value when the polynomial is constant
    bool constant_value(Rational& out) const {
        if (terms_.empty()) { out = Rational(0); return true; }
        if (terms_.size() == 1 && terms_.begin()->first.empty()) {
            out = terms_.begin()->second;
            return true;
        }
        return false;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    Poly operator-() const {
        Poly r;
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Rational& c) const {
        Poly r;
        if (c.is_zero()) return r;
        for (auto& [m, v] : terms_) r.terms_[m] = v * c;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative(const std::string& name) const {
        Poly r;
        for (auto& [m, c] : terms_) {
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i].first != name) continue;
                Monomial d = m;
                Rational coeff = c * Rational(m[i].second);
                if (d[i].second == 1) d.erase(d.begin() + i);
                else d[i].second -= 1;
                r.add_term(d, coeff);
                break;
            }
        }
        return r;
    }

    // coefficient of var^exp viewed as polynomial in the remaining constants
    Poly coefficient_of(const std::string& name, int exp) const {
        Poly r;
        for (auto& [m, c] : terms_) {
            int e = 0;
            Monomial rest;
            for (auto& [v, p] : m) {
                if (v == name) e = p;
                else rest.emplace_back(v, p);
            }
            if (e == exp) r.add_term(rest, c);
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rational& c = it->second;
            std::string body = mono_str(it->first);
            Rational ac = c.sign() < 0 ? -c : c;
            std::string coeff;
            if (!ac.is_one() || body.empty()) {
                coeff = ac.to_string();
                if (!body.empty()) coeff += "*";
            }
            if (first) {
                s += (c.sign() < 0 ? "-" : "") + coeff + body;
                first = false;
            } else {
                s += (c.sign() < 0 ? " - " : " + ") + coeff + body;
            }
        }
        return s;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }

  private:
    static std::string mono_str(const Monomial& m) {
        std::string s;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i) s += "*";
            s += m[i].first;
            if (m[i].second != 1) s += "^" + std::to_string(m[i].second);
        }
        return s;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.emplace(m, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<Monomial, Rational> terms_;
};

} // namespace treealg
