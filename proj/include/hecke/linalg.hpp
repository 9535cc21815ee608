#pragma once

// Small exact linear algebra over Q and Z: just enough for root-datum
// lattice work (Gauss elimination, kernels, Hermite normal form).
// Everything is dense; dimensions here never exceed single digits.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "hecke/rational.hpp"

namespace hecke {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>; // row major
using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;

inline QVec qvec(std::initializer_list<long long> v) {
    QVec r;
    for (auto x : v) r.push_back(Rat(x));
    return r;
}

inline QVec to_qvec(const IVec& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

inline QMat to_qmat(const IMat& m) {
    QMat r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = to_qvec(m[i]);
    return r;
}

inline bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline QVec add(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVec sub(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline QVec scale(const Rat& c, const QVec& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

inline Rat dot(const QVec& a, const QVec& b) {
    Rat r(0);
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline QMat qidentity(int n) {
    QMat m(n, QVec(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = Rat(1);
    return m;
}

inline QMat transpose(const QMat& m) {
    if (m.empty()) return {};
    QMat r(m[0].size(), QVec(m.size(), Rat(0)));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[0].size(); ++j) r[j][i] = m[i][j];
    return r;
}

inline QVec matvec(const QMat& m, const QVec& v) {
    QVec r(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

inline QMat matmul(const QMat& a, const QMat& b) {
    size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    QMat r(n, QVec(p, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t l = 0; l < p; ++l) r[i][l] += a[i][j] * b[j][l];
        }
    return r;
}

inline bool qmat_equal(const QMat& a, const QMat& b) { return a == b; }

// Row-reduces a copy of m; returns the rank. If `right` is non-null it
// receives the same row operations (used for inversion / solving).
inline int row_reduce(QMat m, QMat* right, QMat* echelon_out) {
    size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        if (right) std::swap((*right)[piv], (*right)[r]);
        Rat inv = Rat(1) / m[r][c];
        for (auto& x : m[r]) x *= inv;
        if (right)
            for (auto& x : (*right)[r]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rat f = m[i][c];
            for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
            if (right)
                for (size_t j = 0; j < (*right)[i].size(); ++j)
                    (*right)[i][j] -= f * (*right)[r][j];
        }
        ++r;
    }
    if (echelon_out) *echelon_out = m;
    return static_cast<int>(r);
}

inline int rank(const QMat& m) { return row_reduce(m, nullptr, nullptr); }

inline QMat inverse(const QMat& m) {
    size_t n = m.size();
    QMat right = qidentity(static_cast<int>(n));
    QMat copy = m;
    int r = row_reduce(copy, &right, &copy);
    if (r != static_cast<int>(n)) throw Error("matrix not invertible");
    // copy is now a row-permuted identity; un-permute right accordingly.
    QMat result(n, QVec(n));
    for (size_t i = 0; i < n; ++i) {
        size_t lead = 0;
        while (lead < n && copy[i][lead].is_zero()) ++lead;
        result[lead] = right[i];
    }
    return result;
}

// Solves x * m = v (row-vector convention); returns false if inconsistent.
inline bool solve_left(const QMat& m, const QVec& v, QVec& x) {
    size_t rows = m.size();
    QMat t = transpose(m); // t * x^T = v^T
    for (size_t i = 0; i < t.size(); ++i) t[i].push_back(v[i]);
    QMat ech;
    row_reduce(t, nullptr, &ech);
    x.assign(rows, Rat(0));
    // RREF with free variables set to zero.
    for (const auto& row : ech) {
        size_t lead = 0;
        while (lead < row.size() && row[lead].is_zero()) ++lead;
        if (lead == row.size()) continue;
        if (lead == row.size() - 1) return false; // 0 = nonzero
        x[lead] = row.back();
    }
    // verify
    QVec check(v.size(), Rat(0));
    for (size_t i = 0; i < rows; ++i)
        if (!x[i].is_zero())
            for (size_t j = 0; j < v.size(); ++j) check[j] += x[i] * m[i][j];
    return check == v;
}

// Basis (as rows) of { v : m * v = 0 }, i.e. vectors killed by every row of m.
inline QMat kernel_basis(const QMat& m, int ambient_dim) {
    QMat ech;
    if (m.empty())
        return qidentity(ambient_dim);
    row_reduce(m, nullptr, &ech);
    std::vector<int> lead_of_row;
    std::vector<bool> is_pivot(ambient_dim, false);
    for (const auto& row : ech) {
        int lead = 0;
        while (lead < ambient_dim && row[lead].is_zero()) ++lead;
        if (lead < ambient_dim) { lead_of_row.push_back(lead); is_pivot[lead] = true; }
    }
    QMat basis;
    for (int f = 0; f < ambient_dim; ++f) {
        if (is_pivot[f]) continue;
        QVec v(ambient_dim, Rat(0));
        v[f] = Rat(1);
        for (size_t r = 0; r < lead_of_row.size(); ++r)
            v[lead_of_row[r]] = -ech[r][f];
        basis.push_back(v);
    }
    return basis;
}

inline long long lcm_ll(long long a, long long b) {
    return a / std::gcd(a, b) * b;
}

inline long long common_denominator(const QVec& v) {
    long long l = 1;
    for (const auto& x : v) l = lcm_ll(l, x.den);
    return l;
}

inline bool is_integral(const QVec& v) {
    for (const auto& x : v)
        if (!x.is_integer()) return false;
    return true;
}

inline bool is_integral(const QMat& m) {
    for (const auto& r : m)
        if (!is_integral(r)) return false;
    return true;
}

inline IVec to_ivec(const QVec& v) {
    IVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_integer()) throw Error("expected integral vector");
        r[i] = v[i].num;
    }
    return r;
}

// Row-style Hermite normal form of an integer matrix: returns the nonzero
// rows of an upper-triangular basis of the row lattice.
inline IMat hnf_rows(IMat m) {
    size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // Euclid on column c below row r.
        while (true) {
            size_t piv = rows;
            for (size_t i = r; i < rows; ++i)
                if (m[i][c] != 0 && (piv == rows ||
                    std::llabs(m[i][c]) < std::llabs(m[piv][c])))
                    piv = i;
            if (piv == rows) break;
            std::swap(m[piv], m[r]);
            bool clear = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                long long f = m[i][c] / m[r][c];
                for (size_t j = 0; j < cols; ++j)
                    m[i][j] = Rat::checked_((__int128)m[i][j] - (__int128)f * m[r][j]);
                if (m[i][c] != 0) clear = false;
            }
            if (clear) break;
        }
        if (m[r][c] == 0) continue;
        if (m[r][c] < 0)
            for (size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
        // Reduce rows above.
        for (size_t i = 0; i < r; ++i) {
            long long f = m[i][c] / m[r][c];
            if (m[i][c] % m[r][c] < 0) f -= 1;
            if (f == 0) continue;
            for (size_t j = 0; j < cols; ++j)
                m[i][j] = Rat::checked_((__int128)m[i][j] - (__int128)f * m[r][j]);
        }
        ++r;
    }
    m.resize(r);
    return m;
}

// Basis rows of the lattice in Q^n generated by the given rational rows.
inline QMat lattice_basis(const QMat& gens, int n) {
    long long denom = 1;
    for (const auto& row : gens) denom = lcm_ll(denom, common_denominator(row));
    IMat scaled;
    for (const auto& row : gens) {
        IVec iv(n);
        for (int j = 0; j < n; ++j) {
            Rat x = row[j] * Rat(denom);
            iv[j] = x.num; // integral by construction
        }
        scaled.push_back(iv);
    }
    IMat h = hnf_rows(scaled);
    QMat basis;
    for (const auto& row : h) {
        QVec q(n);
        for (int j = 0; j < n; ++j) q[j] = Rat(row[j], denom);
        basis.push_back(q);
    }
    return basis;
}

// Normalizes a nonzero rational vector to a primitive integer vector whose
// first nonzero entry is positive; returns the positive factor c with
// v == c * primitive.
inline IVec primitive_vector(const QVec& v, Rat& factor) {
    long long denom = common_denominator(v);
    IVec iv(v.size());
    long long g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        Rat x = v[i] * Rat(denom);
        iv[i] = x.num;
        g = std::gcd(g, std::llabs(iv[i]));
    }
    if (g == 0) throw Error("primitive_vector of zero vector");
    int sign = 1;
    for (auto x : iv)
        if (x != 0) { sign = x > 0 ? 1 : -1; break; }
    for (auto& x : iv) x = x / g * sign;
    factor = Rat(g * sign, denom);
    return iv;
}

inline std::string vec_str(const QVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

} // namespace hecke
