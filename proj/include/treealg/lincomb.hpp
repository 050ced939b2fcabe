// Finite formal sums of basis elements (trees, forests, tensors of these)
// with Poly coefficients. Keys are ordered by their canonical serialization,
// so term order — and every rendered output — is deterministic.
#pragma once

#include <functional>
#include <map>
#include <string>

#include "treealg/forest.hpp"
#include "treealg/polynomial.hpp"

namespace treealg {

inline const std::string& key_of(const TreePtr& t) { return t->canon; }
inline const std::string& key_of(const Forest& f) { return f.canon; }
inline const std::string& key_of(const RootedForest& f) { return f.canon; }

template <class A, class B>
struct Tensor {
    A left;
    B right;
    std::string canon;
};

template <class A, class B>
Tensor<A, B> make_tensor(A a, B b) {
    Tensor<A, B> t;
    t.canon = key_of(a) + " (x) " + key_of(b);
    t.left = std::move(a);
    t.right = std::move(b);
    return t;
}

template <class A, class B>
const std::string& key_of(const Tensor<A, B>& t) { return t.canon; }

template <class A, class B, class C>
struct Tensor3 {
    A first;
    B second;
    C third;
    std::string canon;
};

template <class A, class B, class C>
Tensor3<A, B, C> make_tensor3(A a, B b, C c) {
    Tensor3<A, B, C> t;
    t.canon = key_of(a) + " (x) " + key_of(b) + " (x) " + key_of(c);
    t.first = std::move(a);
    t.second = std::move(b);
    t.third = std::move(c);
    return t;
}

template <class A, class B, class C>
const std::string& key_of(const Tensor3<A, B, C>& t) { return t.canon; }

template <class K>
struct KeyLess {
    bool operator()(const K& a, const K& b) const { return key_of(a) < key_of(b); }
};

template <class K>
class LinComb {
  public:
    using Map = std::map<K, Poly, KeyLess<K>>;

    LinComb() = default;

    static LinComb single(K k, Poly c = Poly(1)) {
        LinComb r;
        r.add(std::move(k), std::move(c));
        return r;
    }

    void add(K k, Poly c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) terms_.emplace(std::move(k), std::move(c));
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    friend LinComb operator+(const LinComb& a, const LinComb& b) {
        LinComb r = a;
        for (auto& [k, c] : b.terms_) r.add(k, c);
        return r;
    }
    friend LinComb operator-(const LinComb& a, const LinComb& b) {
        LinComb r = a;
        for (auto& [k, c] : b.terms_) r.add(k, -c);
        return r;
    }
    LinComb& operator+=(const LinComb& o) {
        for (auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        for (auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }

    LinComb scaled(const Poly& c) const {
        LinComb r;
        for (auto& [k, v] : terms_) r.add(k, v * c);
        return r;
    }

    friend bool operator==(const LinComb& a, const LinComb& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto it = a.terms_.begin();
        auto jt = b.terms_.begin();
        for (; it != a.terms_.end(); ++it, ++jt)
            if (key_of(it->first) != key_of(jt->first) || it->second != jt->second) return false;
        return true;
    }
    friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }

    const Map& terms() const { return terms_; }

    typename Map::const_iterator begin() const { return terms_.begin(); }
    typename Map::const_iterator end() const { return terms_.end(); }

  private:
    Map terms_;
};

// extends a basis-level map linearly
template <class K2, class K, class F>
LinComb<K2> apply_linear(const LinComb<K>& x, F&& f) {
    LinComb<K2> r;
    for (auto& [k, c] : x.terms()) {
        LinComb<K2> fk = f(k);
        for (auto& [k2, c2] : fk.terms()) r.add(k2, c2 * c);
    }
    return r;
}

template <class A, class B>
LinComb<Tensor<A, B>> tensor(const LinComb<A>& a, const LinComb<B>& b) {
    LinComb<Tensor<A, B>> r;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) r.add(make_tensor(ka, kb), ca * cb);
    return r;
}

template <class K, class Pred>
LinComb<K> filter(const LinComb<K>& x, Pred&& keep) {
    LinComb<K> r;
    for (auto& [k, c] : x.terms())
        if (keep(k)) r.add(k, c);
    return r;
}

// one line per term, ordered by key: "<coeff> | <key>"
template <class K>
std::string render_structured(const LinComb<K>& x) {
    if (x.is_zero()) return "0\n";
    std::string s;
    for (auto& [k, c] : x.terms()) {
        s += c.to_string();
        s += " | ";
        s += key_of(k);
        s += "\n";
    }
    return s;
}

// compact one-line form: "c1*k1 + c2*k2 - ..."
template <class K>
std::string render_text(const LinComb<K>& x) {
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto& [k, c] : x.terms()) {
        Rational rc;
        bool is_const = c.constant_value(rc);
        std::string coeff;
        bool neg = false;
        if (is_const) {
            neg = rc.sign() < 0;
            Rational a = neg ? -rc : rc;
            if (!a.is_one()) coeff = a.to_string() + "*";
        } else if (c.terms().size() == 1) {
            Poly p = c;
            auto& [m, r] = *p.terms().begin();
            neg = r.sign() < 0;
            coeff = (neg ? (-p) : p).to_string() + "*";
        } else {
            coeff = "(" + c.to_string() + ")*";
        }
        if (first) s += (neg ? "-" : "");
        else s += neg ? " - " : " + ";
        s += coeff + key_of(k);
        first = false;
    }
    return s;
}

using TreeLin = LinComb<TreePtr>;
using ForestLin = LinComb<Forest>;
using RootedLin = LinComb<RootedForest>;
using TreeTensor = Tensor<TreePtr, TreePtr>;
using TreeTensorLin = LinComb<TreeTensor>;
using ForestTreeLin = LinComb<Tensor<Forest, TreePtr>>;
using ForestForestLin = LinComb<Tensor<Forest, Forest>>;
using RootedTensorLin = LinComb<Tensor<RootedForest, RootedForest>>;

} // namespace treealg
