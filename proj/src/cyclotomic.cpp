#include "hecke/cyclotomic.hpp"

#include <algorithm>

namespace hecke {

namespace {

// Exact division of integer polynomials (quotient known to be integral).
std::vector<long long> poly_divide(std::vector<long long> num,
                                   const std::vector<long long>& den) {
    std::vector<long long> q(num.size() - den.size() + 1, 0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        long long f = num[i + den.size() - 1] / den.back();
        q[i] = f;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
    }
    for (long long x : num)
        if (x != 0) throw Error("inexact polynomial division");
    return q;
}

std::map<int, std::vector<long long>>& phi_cache() {
    thread_local std::map<int, std::vector<long long>> cache;
    return cache;
}

} // namespace

std::vector<long long> cyclotomic_polynomial(int m) {
    auto& cache = phi_cache();
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // x^m - 1 divided by the product of Phi_d over proper divisors d of m.
    std::vector<long long> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) num = poly_divide(std::move(num), cyclotomic_polynomial(d));
    cache[m] = num;
    return num;
}

int Cyc::degree(int m) {
    return static_cast<int>(cyclotomic_polynomial(m).size()) - 1;
}

Cyc Cyc::zeta_pow(int m, long long k) {
    k %= m;
    if (k < 0) k += m;
    // Reduce x^k modulo Phi_m.
    std::vector<Rat> poly(static_cast<size_t>(k) + 1, Rat(0));
    poly[k] = Rat(1);
    auto phi = cyclotomic_polynomial(m);
    int d = static_cast<int>(phi.size()) - 1;
    for (int i = static_cast<int>(poly.size()) - 1; i >= d; --i) {
        Rat f = poly[i];
        if (f.is_zero()) continue;
        poly[i] = Rat(0);
        for (int j = 0; j < d; ++j) poly[i - d + j] -= f * Rat(phi[j]);
    }
    Cyc out = Cyc::zero(m);
    for (int i = 0; i < d && i < static_cast<int>(poly.size()); ++i) out.c[i] = poly[i];
    return out;
}

Cyc operator+(const Cyc& a, const Cyc& b) {
    if (a.m != b.m) throw Error("cyclotomic conductor mismatch");
    Cyc r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

Cyc operator-(const Cyc& a, const Cyc& b) {
    if (a.m != b.m) throw Error("cyclotomic conductor mismatch");
    Cyc r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

Cyc Cyc::operator-() const {
    Cyc r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.m != b.m) throw Error("cyclotomic conductor mismatch");
    size_t d = a.c.size();
    std::vector<Rat> prod(2 * d, Rat(0));
    for (size_t i = 0; i < d; ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < d; ++j) {
            if (b.c[j].is_zero()) continue;
            prod[i + j] += a.c[i] * b.c[j];
        }
    }
    auto phi = cyclotomic_polynomial(a.m);
    for (int i = static_cast<int>(prod.size()) - 1; i >= static_cast<int>(d); --i) {
        Rat f = prod[i];
        if (f.is_zero()) continue;
        prod[i] = Rat(0);
        for (size_t j = 0; j < d; ++j) prod[i - d + j] -= f * Rat(phi[j]);
    }
    Cyc r = Cyc::zero(a.m);
    for (size_t i = 0; i < d; ++i) r.c[i] = prod[i];
    return r;
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw Error("cyclotomic division by zero");
    // Extended Euclid in Q[x] for gcd(this, Phi_m) = 1.
    auto phi_int = cyclotomic_polynomial(m);
    std::vector<Rat> r0(phi_int.size());
    for (size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rat(phi_int[i]);
    std::vector<Rat> r1 = c;
    while (!r1.empty() && r1.back().is_zero()) r1.pop_back();
    std::vector<Rat> s0{Rat(0)}, s1{Rat(1)}; // track coefficients of `this`

    auto deg = [](const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; };
    while (deg(r1) > 0) {
        // divide r0 by r1
        std::vector<Rat> q(std::max<int>(deg(r0) - deg(r1) + 1, 0), Rat(0));
        std::vector<Rat> rem = r0;
        for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
            Rat f = rem[i + deg(r1)] / r1.back();
            q[i] = f;
            if (f.is_zero()) continue;
            for (int j = 0; j <= deg(r1); ++j) rem[i + j] -= f * r1[j];
        }
        while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        // s_new = s0 - q * s1
        std::vector<Rat> snew(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        while (snew.size() > 1 && snew.back().is_zero()) snew.pop_back();
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
        if (r1.empty()) throw Error("cyclotomic element is a zero divisor");
    }
    // r1 is a nonzero constant: inverse = s1 / r1[0].
    Cyc out = Cyc::zero(m);
    for (size_t i = 0; i < s1.size() && i < out.c.size(); ++i)
        out.c[i] = s1[i] / r1[0];
    // Terms of s1 beyond the residue degree cannot occur (deg s1 < deg Phi).
    return out;
}

std::string Cyc::str() const {
    std::string s;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (!first) s += c[i].sign() > 0 ? "+" : "";
        first = false;
        if (i == 0) {
            s += c[i].str();
        } else {
            if (c[i] == Rat(1)) {}
            else if (c[i] == Rat(-1)) s += "-";
            else s += c[i].str() + "*";
            s += "z" + std::to_string(m);
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return first ? "0" : s;
}

} // namespace hecke
