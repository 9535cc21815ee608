#pragma once

// Exact rational arithmetic on 64-bit integers.  All intermediate products
// go through 128-bit integers and throw on overflow instead of wrapping;
// the quantities in this project are small enough that hitting the guard
// indicates a logic error, not a capacity problem.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>

#include "hecke/error.hpp"

namespace hecke {

class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

struct Rat {
    long long num = 0;
    long long den = 1; // always > 0, gcd(num, den) == 1

    Rat() = default;
    Rat(long long n) : num(n), den(1) {} // NOLINT: implicit by design
    Rat(long long n, long long d) : num(n), den(d) { normalize_(); }

    static long long checked_(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw OverflowError("rational arithmetic overflow");
        return static_cast<long long>(v);
    }

    void normalize_() {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    static Rat make_(__int128 n, __int128 d) {
        if (d == 0) throw Error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        Rat r;
        r.num = checked_(n);
        r.den = checked_(d);
        if (r.num == 0) r.den = 1;
        return r;
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make_((__int128)a.num * b.den + (__int128)b.num * a.den,
                     (__int128)a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make_((__int128)a.num * b.den - (__int128)b.num * a.den,
                     (__int128)a.den * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make_((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw Error("rational division by zero");
        return make_((__int128)a.num * b.den, (__int128)a.den * b.num);
    }

    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }

    Rat abs() const { return num < 0 ? -*this : *this; }

    // Largest integer <= value.
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    long long ceil() const { return -(-*this).floor(); }

    // Fractional part in [0, 1).
    Rat frac() const { return *this - Rat(floor()); }

    Rat pow(long long e) const {
        if (e < 0) return (Rat(1) / *this).pow(-e);
        Rat r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Parses "n" or "n/d"; throws ValidationError on junk.
    static Rat parse(const std::string& s) {
        size_t slash = s.find('/');
        try {
            size_t used = 0;
            if (slash == std::string::npos) {
                long long n = std::stoll(s, &used);
                if (used != s.size()) throw ValidationError("bad rational: " + s);
                return Rat(n);
            }
            long long n = std::stoll(s.substr(0, slash), &used);
            if (used != slash) throw ValidationError("bad rational: " + s);
            long long d = std::stoll(s.substr(slash + 1), &used);
            if (used != s.size() - slash - 1) throw ValidationError("bad rational: " + s);
            return Rat(n, d);
        } catch (const std::invalid_argument&) {
            throw ValidationError("bad rational: " + s);
        } catch (const std::out_of_range&) {
            throw ValidationError("rational out of range: " + s);
        }
    }
};

// Exact integer r-th root; returns false when none exists.
inline bool integer_root(long long v, long long r, long long& out) {
    if (v < 0) return false;
    if (v <= 1) { out = v; return true; }
    long long lo = 1, hi = v;
    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        __int128 p = 1;
        bool over = false;
        for (long long i = 0; i < r && !over; ++i) {
            p *= mid;
            if (p > v) over = true;
        }
        if (!over && p == v) { out = mid; return true; }
        if (over || p > v) hi = mid; else lo = mid + 1;
    }
    __int128 p = 1;
    for (long long i = 0; i < r; ++i) p *= lo;
    if (p == v) { out = lo; return true; }
    return false;
}

// q^e for rational exponent e; fails (returns false) when the result is
// irrational, e.g. 3^(1/2).
inline bool rational_power(const Rat& base, const Rat& exp, Rat& out) {
    if (base.num <= 0) return false;
    Rat b = base;
    if (exp.den != 1) {
        long long rn, rd;
        if (!integer_root(b.num, exp.den, rn)) return false;
        if (!integer_root(b.den, exp.den, rd)) return false;
        b = Rat(rn, rd);
    }
    out = b.pow(exp.num);
    return true;
}

} // namespace hecke

template <>
struct std::hash<hecke::Rat> {
    size_t operator()(const hecke::Rat& r) const {
        return std::hash<long long>()(r.num) * 1000003u ^ std::hash<long long>()(r.den);
    }
};
