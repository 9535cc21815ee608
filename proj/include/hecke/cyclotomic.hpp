#pragma once

// Exact arithmetic in Q(zeta_m): elements are polynomial residues modulo the
// m-th cyclotomic polynomial, with rational coefficients.  The fields used
// by the oracle are tiny (m <= 8), so dense vectors are fine.

#include <map>
#include <vector>

#include "hecke/rational.hpp"

namespace hecke {

// Coefficients of the m-th cyclotomic polynomial (monic, integer).
std::vector<long long> cyclotomic_polynomial(int m);

struct Cyc {
    int m = 1;           // conductor
    std::vector<Rat> c;  // coefficients, size = deg(Phi_m), index = power of zeta

    Cyc() : m(1), c(1, Rat(0)) {}
    Cyc(int m_, Rat constant) : m(m_) {
        c.assign(degree(m_), Rat(0));
        c[0] = constant;
    }

    static int degree(int m);
    static Cyc zero(int m) { return Cyc(m, Rat(0)); }
    static Cyc one(int m) { return Cyc(m, Rat(1)); }
    static Cyc zeta_pow(int m, long long k);

    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c.size(); ++i)
            if (!c[i].is_zero()) return false;
        return true;
    }
    Rat rational_value() const {
        if (!is_rational()) throw Error("cyclotomic value is not rational");
        return c[0];
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a, const Cyc& b);
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    Cyc operator-() const;
    Cyc inverse() const;
    Cyc& operator+=(const Cyc& o) { *this = *this + o; return *this; }
    Cyc& operator-=(const Cyc& o) { *this = *this - o; return *this; }
    Cyc& operator*=(const Cyc& o) { *this = *this * o; return *this; }
    friend bool operator==(const Cyc& a, const Cyc& b) { return a.m == b.m && a.c == b.c; }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    std::string str() const;
};

using CycVec = std::vector<Cyc>;
using CycMat = std::vector<CycVec>;

} // namespace hecke
