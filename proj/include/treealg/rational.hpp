// Exact rational arithmetic on 128-bit numerator/denominator with checked
// operations: anything that overflows throws instead of wrapping. Desk-scale
// runs stay far from the limit; the guard exists to keep exactness honest.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treealg {

class Rational {
  public:
    using Int = __int128;

    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) { assign(n, d); }

    long long num() const { return narrow(num_); }
    long long den() const { return narrow(den_); }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                    checked_mul(a.den_, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(checked_sub(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                    checked_mul(a.den_, b.den_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        // cross-reduce first so products of reduced values rarely grow
        Rational x = make(a.num_, b.den_);
        Rational y = make(b.num_, a.den_);
        return make(checked_mul(x.num_, y.num_), checked_mul(x.den_, y.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        Rational x = make(a.num_, b.num_);
        Rational y = make(b.den_, a.den_);
        return make(checked_mul(x.num_, y.num_), checked_mul(x.den_, y.den_));
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string to_string() const {
        if (den_ == 1) return int_str(num_);
        return int_str(num_) + "/" + int_str(den_);
    }

    // Accepts "p" or "p/q", optional leading sign.
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return from_int(parse_int(s));
        Rational r;
        r.assign128(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
        return r;
    }

    static Rational factorial(long long n) {
        Rational r(1);
        for (long long i = 2; i <= n; ++i) r *= Rational(i);
        return r;
    }
    static Rational binomial(long long n, long long k) {
        if (k < 0 || k > n) return Rational(0);
        Rational r(1);
        for (long long i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
        return r;
    }

  private:
    static Rational from_int(Int v) {
        Rational r;
        r.num_ = v;
        r.den_ = 1;
        return r;
    }

    static long long narrow(Int v) {
        if (v < INT64_MIN || v > INT64_MAX)
            throw std::overflow_error("Rational: component exceeds 64 bits");
        return static_cast<long long>(v);
    }

    static Int checked_add(Int a, Int b) {
        Int r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
        return r;
    }
    static Int checked_sub(Int a, Int b) {
        Int r;
        if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
        return r;
    }
    static Int checked_mul(Int a, Int b) {
        Int r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
        return r;
    }

    static Rational make(Int n, Int d) {
        Rational r;
        r.assign128(n, d);
        return r;
    }

    void assign(long long n, long long d) { assign128(n, d); }

    void assign128(Int n, Int d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        Int g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    static Int gcd128(Int a, Int b) {
        while (b != 0) { Int t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    static std::string int_str(Int v) {
        if (v == 0) return "0";
        bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
        std::string s;
        while (u > 0) {
            s += static_cast<char>('0' + static_cast<int>(u % 10));
            u /= 10;
        }
        if (neg) s += '-';
        return std::string(s.rbegin(), s.rend());
    }

    static Int parse_int(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty numeral");
        bool neg = false;
        size_t i = 0;
        if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; i = 1; }
        if (i == s.size()) throw std::invalid_argument("Rational: bad numeral");
        Int v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Rational: bad numeral");
            v = checked_add(checked_mul(v, 10), s[i] - '0');
        }
        return neg ? -v : v;
    }

    Int num_;
    Int den_;
};

} // namespace treealg
