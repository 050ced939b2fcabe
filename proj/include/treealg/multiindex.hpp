// Multi-indices in N^{d+1} (time component first) and enumeration helpers.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "treealg/rational.hpp"

namespace treealg {

class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(size_t dim1) : k_(dim1, 0) {}
    MultiIndex(std::initializer_list<int> v) : k_(v) {}
    explicit MultiIndex(std::vector<int> v) : k_(std::move(v)) {}

    static MultiIndex unit(size_t dim1, size_t i) {
        MultiIndex m(dim1);
        m.k_[i] = 1;
        return m;
    }

    size_t size() const { return k_.size(); }
    int operator[](size_t i) const { return k_[i]; }
    int& operator[](size_t i) { return k_[i]; }

    bool is_zero() const {
        for (int v : k_) if (v != 0) return false;
        return true;
    }
    long long total() const {
        long long s = 0;
        for (int v : k_) s += v;
        return s;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r = a;
        for (size_t i = 0; i < r.k_.size(); ++i) r.k_[i] += b.k_[i];
        return r;
    }
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r = a;
        for (size_t i = 0; i < r.k_.size(); ++i) r.k_[i] -= b.k_[i];
        return r;
    }
    MultiIndex& operator+=(const MultiIndex& o) {
        for (size_t i = 0; i < k_.size(); ++i) k_[i] += o.k_[i];
        return *this;
    }

    // componentwise a <= b
    friend bool leq(const MultiIndex& a, const MultiIndex& b) {
        for (size_t i = 0; i < a.k_.size(); ++i)
            if (a.k_[i] > b.k_[i]) return false;
        return true;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.k_ == b.k_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.k_ != b.k_; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.k_ < b.k_; }

    Rational factorial() const {
        Rational r(1);
        for (int v : k_) r *= Rational::factorial(v);
        return r;
    }

    // prod_i binom(n_i, m_i); zero when not m <= n
    static Rational binomial(const MultiIndex& n, const MultiIndex& m) {
        Rational r(1);
        for (size_t i = 0; i < n.size(); ++i) r *= Rational::binomial(n[i], m[i]);
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (size_t i = 0; i < k_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(k_[i]);
        }
        return s + "]";
    }

    const std::vector<int>& raw() const { return k_; }

  private:
    std::vector<int> k_;
};

// All m with m <= n componentwise (including 0 and n).
inline void for_each_sub(const MultiIndex& n, const std::function<void(const MultiIndex&)>& f) {
    MultiIndex m(n.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == n.size()) { f(m); return; }
        for (int v = 0; v <= n[i]; ++v) {
            m[i] = v;
            rec(i + 1);
        }
        m[i] = 0;
    };
    rec(0);
}

// All m in N^{dim1} with sum_i s_i * m_i <= bound (bound < 0 yields nothing).
inline void for_each_scaled_le(size_t dim1, const std::vector<int>& s, const Rational& bound,
                               const std::function<void(const MultiIndex&)>& f) {
    if (bound < Rational(0)) return;
    MultiIndex m(dim1);
    std::function<void(size_t, Rational)> rec = [&](size_t i, Rational left) {
        if (i == dim1) { f(m); return; }
        for (int v = 0;; ++v) {
            Rational cost = Rational(s[i]) * Rational(v);
            if (cost > left) break;
            m[i] = v;
            rec(i + 1, left - cost);
        }
        m[i] = 0;
    };
    rec(0, bound);
}

} // namespace treealg
