#pragma once

// Sparse Laurent polynomials in one formal symbol q, with rational
// coefficients and rational exponents (exponents like 1/2 appear for
// parameters of ramified wall classes).  Zero-coefficient terms are never
// stored.

#include <map>
#include <string>

#include "hecke/rational.hpp"

namespace hecke {

struct QPoly {
    std::map<Rat, Rat> terms; // exponent -> coefficient, no zero coefficients

    QPoly() = default;
    explicit QPoly(const Rat& c) {
        if (!c.is_zero()) terms[Rat(0)] = c;
    }
    static QPoly monomial(const Rat& exp, const Rat& coeff = Rat(1)) {
        QPoly p;
        if (!coeff.is_zero()) p.terms[exp] = coeff;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first.is_zero());
    }

    Rat constant_value() const {
        if (terms.empty()) return Rat(0);
        return terms.begin()->second;
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        QPoly r = a;
        for (const auto& [e, c] : b.terms) {
            auto it = r.terms.find(e);
            if (it == r.terms.end()) {
                r.terms[e] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
        return r;
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }
    QPoly operator-() const {
        QPoly r;
        for (const auto& [e, c] : terms) r.terms[e] = -c;
        return r;
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        QPoly r;
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                Rat e = ea + eb, c = ca * cb;
                auto it = r.terms.find(e);
                if (it == r.terms.end()) {
                    if (!c.is_zero()) r.terms[e] = c;
                } else {
                    it->second += c;
                    if (it->second.is_zero()) r.terms.erase(it);
                }
            }
        return r;
    }
    QPoly& operator+=(const QPoly& o) { *this = *this + o; return *this; }
    QPoly& operator*=(const QPoly& o) { *this = *this * o; return *this; }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.terms == b.terms; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    // Substitutes a positive rational for q; throws when an exponent makes
    // the value irrational (e.g. q = 3 at exponent 1/2).
    Rat evaluate(const Rat& q) const {
        if (!(q > Rat(0))) throw Error("specialization requires a positive value");
        Rat out(0);
        for (const auto& [e, c] : terms) {
            Rat p;
            if (!rational_power(q, e, p))
                throw Error("specialization at " + q.str() + " is irrational for q^" +
                            e.str());
            out += c * p;
        }
        return out;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            const Rat& e = it->first;
            const Rat& c = it->second;
            if (!first) s += c.sign() >= 0 ? " + " : " - ";
            else if (c.sign() < 0) s += "-";
            first = false;
            Rat ca = c.abs();
            if (e.is_zero()) {
                s += ca.str();
            } else {
                if (ca != Rat(1)) s += ca.str() + "*";
                s += "q";
                if (e != Rat(1)) s += "^" + e.str();
            }
        }
        return s;
    }
};

} // namespace hecke
