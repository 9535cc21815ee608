#include "hecke/finitegrp.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hecke {

namespace {

// Reduction identities for the non-prime fields: coefficients of x^e as a
// polynomial of lower degree (from x^2+x+1, x^3+x+1, x^2+1 respectively).
const std::map<int, std::vector<int>> kFieldPolys = {
    {4, {1, 1}}, {8, {1, 1, 0}}, {9, {2, 0}}};

bool is_prime(int v) {
    if (v < 2) return false;
    for (int d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

} // namespace

const Fq& Fq::get(int q) {
    thread_local std::map<int, Fq> cache;
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;

    Fq f;
    f.q = q;
    if (is_prime(q)) {
        f.p = q;
        f.e = 1;
    } else {
        auto poly = kFieldPolys.find(q);
        if (poly == kFieldPolys.end())
            throw ValidationError("unsupported field size " + std::to_string(q));
        f.p = q == 9 ? 3 : 2;
        f.e = q == 8 ? 3 : 2;
    }
    // Elements encoded as base-p digit vectors packed into 0..q-1.
    auto digits = [&](int v) {
        std::vector<int> d(f.e);
        for (int i = 0; i < f.e; ++i) { d[i] = v % f.p; v /= f.p; }
        return d;
    };
    auto pack = [&](const std::vector<int>& d) {
        int v = 0;
        for (int i = f.e - 1; i >= 0; --i) v = v * f.p + d[i];
        return v;
    };
    f.add_tab.assign(q * q, 0);
    f.mul_tab.assign(q * q, 0);
    f.neg_tab.assign(q, 0);
    f.inv_tab.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a);
        std::vector<int> dn(f.e);
        for (int i = 0; i < f.e; ++i) dn[i] = (f.p - da[i]) % f.p;
        f.neg_tab[a] = static_cast<uint8_t>(pack(dn));
        for (int b = 0; b < q; ++b) {
            auto db = digits(b);
            std::vector<int> ds(f.e);
            for (int i = 0; i < f.e; ++i) ds[i] = (da[i] + db[i]) % f.p;
            f.add_tab[a * q + b] = static_cast<uint8_t>(pack(ds));
            // Polynomial product with reduction by the field polynomial.
            std::vector<int> prod(2 * f.e - 1, 0);
            for (int i = 0; i < f.e; ++i)
                for (int j = 0; j < f.e; ++j)
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % f.p;
            if (f.e > 1) {
                const auto& red = kFieldPolys.at(q);
                for (int i = 2 * f.e - 2; i >= f.e; --i) {
                    int c = prod[i];
                    if (c == 0) continue;
                    prod[i] = 0;
                    for (int j = 0; j < f.e; ++j)
                        prod[i - f.e + j] = (prod[i - f.e + j] + c * red[j]) % f.p;
                }
            }
            std::vector<int> dm(prod.begin(), prod.begin() + f.e);
            f.mul_tab[a * q + b] = static_cast<uint8_t>(pack(dm));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (f.mul_tab[a * q + b] == 1) f.inv_tab[a] = static_cast<uint8_t>(b);
    // Multiplicative generator and discrete logs.
    f.log_tab.assign(q, 0);
    f.generator = 0;
    for (int g = 1; g < q && !f.generator; ++g) {
        int x = g, order = 1;
        while (x != 1 && order <= q) { x = f.mul_tab[x * q + g]; ++order; }
        if (order == q - 1) f.generator = g;
    }
    if (!f.generator) throw Error("no multiplicative generator found (bad field tables)");
    {
        int x = 1;
        for (int k = 0; k < q - 1; ++k) {
            f.log_tab[x] = k;
            x = f.mul_tab[x * q + f.generator];
        }
    }
    cache[q] = std::move(f);
    return cache[q];
}

namespace {

GMat mat_mul(const Fq& f, const GMat& a, const GMat& b) {
    GMat r;
    r.n = a.n;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            uint8_t s = 0;
            for (int k = 0; k < a.n; ++k)
                s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
            r.at(i, j) = s;
        }
    return r;
}

uint8_t det_of(const Fq& f, const GMat& m) {
    if (m.n == 1) return m.at(0, 0);
    if (m.n == 2)
        return f.add(f.mul(m.at(0, 0), m.at(1, 1)),
                     f.neg(f.mul(m.at(0, 1), m.at(1, 0))));
    uint8_t d = 0;
    // Cyclic expansion along the first row (signs absorbed by the cycling).
    for (int j = 0; j < 3; ++j) {
        int c1 = (j + 1) % 3, c2 = (j + 2) % 3;
        uint8_t minor = f.add(f.mul(m.at(1, c1), m.at(2, c2)),
                              f.neg(f.mul(m.at(1, c2), m.at(2, c1))));
        d = f.add(d, f.mul(m.at(0, j), minor));
    }
    return d;
}

GMat mat_inv(const Fq& f, const GMat& m) {
    GMat r;
    r.n = m.n;
    uint8_t d = det_of(f, m);
    uint8_t dinv = f.inv(d);
    if (m.n == 1) {
        r.at(0, 0) = dinv;
        return r;
    }
    if (m.n == 2) {
        r.at(0, 0) = f.mul(m.at(1, 1), dinv);
        r.at(1, 1) = f.mul(m.at(0, 0), dinv);
        r.at(0, 1) = f.mul(f.neg(m.at(0, 1)), dinv);
        r.at(1, 0) = f.mul(f.neg(m.at(1, 0)), dinv);
        return r;
    }
    // Adjugate for n = 3.
    auto cof = [&](int i, int j) {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        return f.add(f.mul(m.at(r0, c0), m.at(r1, c1)),
                     f.neg(f.mul(m.at(r0, c1), m.at(r1, c0))));
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(j, i) = f.mul(cof(i, j), dinv);
    return r;
}

long long group_order(GroupFamily family, int n, int q) {
    long long order = 1;
    long long qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    long long qi = 1;
    for (int i = 0; i < n; ++i) {
        order *= (qn - qi);
        qi *= q;
    }
    if (family == GroupFamily::SL) order /= (q - 1);
    return order;
}

} // namespace

int FiniteMatrixGroup::mul(int i, int j) const {
    GMat r = mat_mul(field(), elems[i], elems[j]);
    return index.at(r.key());
}

int FiniteMatrixGroup::inv(int i) const {
    GMat r = mat_inv(field(), elems[i]);
    return index.at(r.key());
}

int FiniteMatrixGroup::index_of(const GMat& m) const {
    auto it = index.find(m.key());
    return it == index.end() ? -1 : it->second;
}

FiniteMatrixGroup build_group(GroupFamily family, int n, int q,
                              long long order_bound) {
    if (n != 2 && n != 3) throw ValidationError("only degrees 2 and 3 are supported");
    const Fq& f = Fq::get(q);
    long long order = group_order(family, n, q);
    if (order > order_bound)
        throw ValidationError("group order " + std::to_string(order) +
                              " exceeds the bound " + std::to_string(order_bound));
    FiniteMatrixGroup g;
    g.family = family;
    g.n = n;
    g.q = q;
    g.elems.reserve(order);

    long long total = 1;
    for (int i = 0; i < n * n; ++i) total *= q;
    for (long long code = 0; code < total; ++code) {
        GMat m;
        m.n = static_cast<uint8_t>(n);
        long long c = code;
        for (int i = 0; i < n * n; ++i) { m.a[i] = static_cast<uint8_t>(c % q); c /= q; }
        uint8_t d = det_of(f, m);
        if (d == 0) continue;
        if (family == GroupFamily::SL && d != 1) continue;
        g.index[m.key()] = static_cast<int>(g.elems.size());
        g.elems.push_back(m);
    }
    if (static_cast<long long>(g.elems.size()) != order)
        throw Error("group enumeration does not match the order formula");

    for (size_t i = 0; i < g.elems.size(); ++i) {
        const GMat& m = g.elems[i];
        bool diag = true, upper = true, lower = true;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                if (r != c && m.at(r, c) != 0) diag = false;
                if (r > c && m.at(r, c) != 0) upper = false;
                if (r < c && m.at(r, c) != 0) lower = false;
            }
        bool identity = diag;
        for (int r = 0; r < n && identity; ++r)
            if (m.at(r, r) != 1) identity = false;
        if (identity) g.identity_index = static_cast<int>(i);
        if (diag) g.torus.push_back(static_cast<int>(i));
        if (upper) g.borel.push_back(static_cast<int>(i));
        if (lower) g.borel_opp.push_back(static_cast<int>(i));
        if (n == 3) {
            bool p21 = m.at(2, 0) == 0 && m.at(2, 1) == 0;
            bool p12 = m.at(1, 0) == 0 && m.at(2, 0) == 0;
            if (p21) g.parabolic21.push_back(static_cast<int>(i));
            if (p12) g.parabolic12.push_back(static_cast<int>(i));
        }
    }
    return g;
}

ParabolicHandle borel_of(const FiniteMatrixGroup& g) {
    ParabolicHandle p;
    p.elems = g.borel;
    p.blocks.assign(g.n, 1);
    return p;
}

ParabolicHandle opposite_borel_of(const FiniteMatrixGroup& g) {
    ParabolicHandle p;
    p.elems = g.borel_opp;
    p.blocks.assign(g.n, 1);
    p.lower = true;
    return p;
}

ParabolicHandle parabolic_of(const FiniteMatrixGroup& g, const std::vector<int>& blocks) {
    int sum = 0;
    for (int b : blocks) sum += b;
    if (sum != g.n) throw ValidationError("parabolic blocks do not sum to the degree");
    ParabolicHandle p;
    p.blocks = blocks;
    if (blocks.size() == 1) {
        p.elems.resize(g.elems.size());
        std::iota(p.elems.begin(), p.elems.end(), 0);
    } else if (blocks == std::vector<int>(g.n, 1)) {
        p.elems = g.borel;
    } else if (g.n == 3 && blocks == std::vector<int>{2, 1}) {
        p.elems = g.parabolic21;
    } else if (g.n == 3 && blocks == std::vector<int>{1, 2}) {
        p.elems = g.parabolic12;
    } else {
        throw ValidationError("unsupported parabolic block shape");
    }
    return p;
}

namespace {

void validate_character(const FiniteMatrixGroup& g, const ParabolicHandle& p,
                        const TorusCharacter& chi) {
    if (static_cast<int>(chi.exponents.size()) != g.n)
        throw ValidationError("torus character needs one exponent per diagonal entry");
    int pos = 0;
    for (int b : p.blocks) {
        for (int i = 1; i < b; ++i)
            if (chi.exponents[pos + i] != chi.exponents[pos])
                throw ValidationError(
                    "character exponents must be constant on parabolic blocks "
                    "(one-dimensionality)");
        pos += b;
    }
}

uint8_t block_det(const Fq& f, const GMat& m, int start, int size) {
    if (size == 1) return m.at(start, start);
    if (size == 2)
        return f.add(f.mul(m.at(start, start), m.at(start + 1, start + 1)),
                     f.neg(f.mul(m.at(start, start + 1), m.at(start + 1, start))));
    GMat sub;
    sub.n = 3;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sub.at(i, j) = m.at(start + i, start + j);
    return det_of(f, sub);
}

} // namespace

Cyc character_value(const FiniteMatrixGroup& g, const ParabolicHandle& p,
                    const TorusCharacter& chi, int elem) {
    const Fq& f = g.field();
    int m = TorusCharacter::conductor(g.q);
    long long total = 0;
    int pos = 0;
    const GMat& mat = g.elems[elem];
    for (int b : p.blocks) {
        uint8_t d = block_det(f, mat, pos, b);
        if (d == 0) throw Error("character evaluated off the parabolic");
        if (m > 1) total += static_cast<long long>(chi.exponents[pos]) * f.log(d);
        pos += b;
    }
    return Cyc::zeta_pow(m, total);
}

namespace {

std::vector<DoubleCoset> double_cosets_in(const FiniteMatrixGroup& g,
                                          const std::vector<int>& ambient,
                                          const std::vector<int>& left,
                                          const std::vector<int>& right) {
    std::vector<char> visited(g.elems.size(), 0);
    std::vector<char> in_ambient(g.elems.size(), 0);
    for (int e : ambient) in_ambient[e] = 1;
    std::vector<DoubleCoset> out;
    for (int e : ambient) {
        if (visited[e]) continue;
        long long size = 0;
        for (int pl : left) {
            int pe = g.mul(pl, e);
            for (int pr : right) {
                int x = g.mul(pe, pr);
                if (!in_ambient[x]) throw Error("double coset leaves the subgroup");
                if (!visited[x]) { visited[x] = 1; ++size; }
            }
        }
        out.push_back(DoubleCoset{e, size});
    }
    return out;
}

std::vector<int> all_elements(const FiniteMatrixGroup& g) {
    std::vector<int> v(g.elems.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

} // namespace

std::vector<DoubleCoset> double_cosets(const FiniteMatrixGroup& g,
                                       const std::vector<int>& p,
                                       const std::vector<int>& q) {
    return double_cosets_in(g, all_elements(g), p, q);
}

namespace {

// Internal induced-module machinery over a subgroup view.
struct ModuleView {
    const FiniteMatrixGroup* g = nullptr;
    std::vector<int> ambient;      // subgroup H
    std::vector<int> parab;        // P inside H
    ParabolicHandle chi_handle;    // block data for character values
    TorusCharacter chi;
    std::vector<int> coset_reps;   // right cosets P\H
    std::vector<int> coset_of;     // element -> coset (only for H members)
    std::vector<int> parab_inv;    // inverses of P elements
    std::vector<char> in_parab;

    void build() {
        coset_of.assign(g->elems.size(), -1);
        in_parab.assign(g->elems.size(), 0);
        for (int e : parab) in_parab[e] = 1;
        parab_inv.clear();
        for (int e : parab) parab_inv.push_back(g->inv(e));
        for (int e : ambient) {
            if (coset_of[e] >= 0) continue;
            int id = static_cast<int>(coset_reps.size());
            coset_reps.push_back(e);
            for (int p : parab) coset_of[g->mul(p, e)] = id;
        }
    }

    Cyc chi_value(int e) const { return character_value(*g, chi_handle, chi, e); }

    // K(x) for the double coset of w: theta(p1) theta(p2) when x = p1 w p2.
    Cyc kernel_value(int w_inv, int x) const {
        for (size_t i = 0; i < parab.size(); ++i) {
            int y = g->mul(parab_inv[i], x); // p1^{-1} x
            int p2 = g->mul(w_inv, y);
            if (in_parab[p2])
                return chi_value(parab[i]) * chi_value(p2);
        }
        return Cyc::zero(TorusCharacter::conductor(g->q));
    }

    CycMat operator_for(int w) const {
        int n = static_cast<int>(coset_reps.size());
        int w_inv = g->inv(w);
        CycMat t(n, CycVec(n, Cyc::zero(TorusCharacter::conductor(g->q))));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int x = g->mul(coset_reps[i], g->inv(coset_reps[j]));
                t[i][j] = kernel_value(w_inv, x);
            }
        return t;
    }
};

CycMat cyc_matmul(const CycMat& a, const CycMat& b) {
    size_t n = a.size();
    int m = a[0][0].m;
    CycMat r(n, CycVec(n, Cyc::zero(m)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) {
                if (b[k][j].is_zero()) continue;
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    return r;
}

Cyc cyc_trace(const CycMat& a) {
    Cyc t = Cyc::zero(a[0][0].m);
    for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

// Characteristic polynomial, monic, coefficients low degree first.
std::vector<Cyc> char_poly(const CycMat& a) {
    int n = static_cast<int>(a.size());
    int m = a[0][0].m;
    // Faddeev-LeVerrier: p(x) = x^n + c1 x^{n-1} + ... + cn.
    std::vector<Cyc> c(n + 1, Cyc::zero(m));
    c[n] = Cyc::one(m); // coefficient of x^n
    CycMat mk = a;
    Cyc ck = -cyc_trace(mk);
    c[n - 1] = ck;
    for (int k = 2; k <= n; ++k) {
        // mk <- a (mk + c_{k-1} I)
        CycMat t = mk;
        for (int i = 0; i < n; ++i) t[i][i] += ck;
        mk = cyc_matmul(a, t);
        ck = -(cyc_trace(mk) * Cyc(m, Rat(1, k)));
        c[n - k] = ck;
    }
    return c;
}

// Divides poly (monic-led) by x^2 - a x - b; returns true and the quotient
// when the division is exact.
bool divide_by_quadratic(const std::vector<Cyc>& poly, const Cyc& a, const Cyc& b,
                         std::vector<Cyc>& quotient) {
    int deg = static_cast<int>(poly.size()) - 1;
    if (deg < 2) return false;
    int m = poly[0].m;
    std::vector<Cyc> rem = poly;
    quotient.assign(deg - 1, Cyc::zero(m));
    for (int i = deg; i >= 2; --i) {
        Cyc f = rem[i];
        if (f.is_zero()) continue;
        quotient[i - 2] = f;
        rem[i] = Cyc::zero(m);
        rem[i - 1] += f * a;
        rem[i - 2] += f * b;
    }
    return rem[0].is_zero() && rem[1].is_zero();
}

bool rational_sqrt(const Rat& v, Rat& out) {
    if (v.sign() < 0) return false;
    long long n, d;
    if (!integer_root(v.num, 2, n)) return false;
    if (!integer_root(v.den, 2, d)) return false;
    out = Rat(n, d);
    return true;
}

QParameterResult q_parameter_view(const FiniteMatrixGroup& g, ModuleView view) {
    validate_character(g, view.chi_handle, view.chi);
    view.build();
    int m = TorusCharacter::conductor(g.q);

    // Endomorphism dimension: double cosets supporting theta-intertwiners.
    auto cosets = double_cosets_in(g, view.ambient, view.parab, view.parab);
    std::vector<int> compatible;
    for (const auto& dc : cosets) {
        int x = dc.representative;
        int x_inv = g.inv(x);
        bool ok = true;
        for (int pe : view.parab) {
            int conj = g.mul(g.mul(x, pe), x_inv);
            if (!view.in_parab[conj]) continue;
            if (view.chi_value(conj) != view.chi_value(pe)) { ok = false; break; }
        }
        if (ok) compatible.push_back(x);
    }

    QParameterResult res;
    res.end_dim = static_cast<int>(compatible.size());
    res.module_dim = static_cast<int>(view.coset_reps.size());
    res.rel_a = Cyc::zero(m);
    res.rel_b = Cyc::zero(m);
    if (res.end_dim == 1) {
        res.q_value = Rat(1);
        res.dim_large = res.dim_small = 0;
        return res;
    }
    if (res.end_dim > 2)
        throw ValidationError("endomorphism dimension " +
                              std::to_string(res.end_dim) +
                              " > 2: not a rank-one situation");

    int w = compatible[0];
    for (int x : compatible)
        if (view.coset_of[x] != view.coset_of[g.id()]) w = x;
    CycMat t = view.operator_for(w);
    int n = static_cast<int>(t.size());
    if (!cyc_trace(t).is_zero())
        throw Error("intertwining operator has nonzero trace");

    CycMat t2 = cyc_matmul(t, t);
    // T^2 = a T + b: read a off a nonzero off-diagonal entry, b off the diagonal.
    Cyc a = Cyc::zero(m), b = Cyc::zero(m);
    bool found = false;
    for (int i = 0; i < n && !found; ++i)
        for (int j = 0; j < n && !found; ++j) {
            if (i == j || t[i][j].is_zero()) continue;
            a = t2[i][j] * t[i][j].inverse();
            found = true;
        }
    if (!found) throw ValidationError("intertwining operator vanishes (malformed character)");
    b = t2[0][0];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Cyc expect = a * t[i][j];
            if (i == j) expect += b;
            if (t2[i][j] != expect)
                throw Error("operator does not satisfy a quadratic relation");
        }
    if (b.is_zero())
        throw ValidationError("non-invertible intertwining operator (malformed character)");
    res.rel_a = a;
    res.rel_b = b;

    // Constituent dimensions: divide char(T) by x^2 - a x - b while exact.
    std::vector<Cyc> poly = char_poly(t);
    int k = 0;
    while (static_cast<int>(poly.size()) - 1 >= 2) {
        std::vector<Cyc> quot;
        if (!divide_by_quadratic(poly, a, b, quot)) break;
        poly = std::move(quot);
        ++k;
    }
    int delta = static_cast<int>(poly.size()) - 1;
    long long m1 = k + delta, m2 = k;
    if (m1 + m2 != n) throw Error("constituent dimensions do not sum to the degree");
    if (delta > 0) {
        // Leftover must be (x - lambda)^delta with lambda in the field.
        Cyc lambda = -(poly[delta - 1] * Cyc(m, Rat(1, delta)));
        std::vector<Cyc> check{Cyc::one(m)};
        for (int i = 0; i < delta; ++i) {
            std::vector<Cyc> next(check.size() + 1, Cyc::zero(m));
            for (size_t j = 0; j < check.size(); ++j) {
                next[j + 1] += check[j];
                next[j] -= check[j] * lambda;
            }
            check = std::move(next);
        }
        if (check != poly) throw Error("leftover factor is not a pure power");
        Cyc mu = a - lambda;
        if (lambda * mu != -b) throw Error("eigenvalues do not match the relation");
        // trace = m1 lambda + m2 mu must vanish.
        if (!(lambda * Cyc(m, Rat(m1)) + mu * Cyc(m, Rat(m2))).is_zero())
            throw Error("multiplicities inconsistent with the trace");
    }
    res.dim_large = m1;
    res.dim_small = m2;
    res.q_value = m2 == 0 ? Rat(1) : Rat(m1, 1) / Rat(m2, 1);

    // Cross-validation: the eigenvalue ratio from (a, b) alone.
    Cyc u_cyc = a * a * (-b).inverse();
    if (!u_cyc.is_rational()) throw Error("eigenvalue-ratio invariant is irrational");
    Rat u = u_cyc.rational_value();
    Rat disc = u * (u - Rat(4));
    Rat q_cross(1);
    Rat sq;
    if (rational_sqrt(disc, sq)) {
        Rat r1 = ((u - Rat(2)) + sq) / Rat(2);
        Rat r2 = ((u - Rat(2)) - sq) / Rat(2);
        // Eigenvalue ratios come as a reciprocal pair of negatives.
        Rat cand = r1 < Rat(0) ? -r1 : -r2;
        if (cand < Rat(1)) cand = Rat(1) / cand;
        q_cross = cand;
    }
    if (q_cross != res.q_value)
        throw Error("quadratic-relation route disagrees with the multiplicity route");
    return res;
}

} // namespace

InducedModule induce(const FiniteMatrixGroup& g, const ParabolicHandle& p,
                     const TorusCharacter& chi) {
    validate_character(g, p, chi);
    InducedModule mod;
    mod.group = &g;
    mod.parabolic = p;
    mod.chi = chi;
    mod.conductor = TorusCharacter::conductor(g.q);
    ModuleView view{&g, all_elements(g), p.elems, p, chi, {}, {}, {}, {}};
    view.build();
    mod.coset_reps = view.coset_reps;
    mod.coset_of = view.coset_of;
    return mod;
}

InducedModule principal_series(const FiniteMatrixGroup& g, const TorusCharacter& chi) {
    return induce(g, borel_of(g), chi);
}

CycMat InducedModule::coset_operator(int w) const {
    ModuleView view{group, all_elements(*group), parabolic.elems, parabolic, chi,
                    coset_reps, coset_of, {}, {}};
    view.in_parab.assign(group->elems.size(), 0);
    for (int e : parabolic.elems) view.in_parab[e] = 1;
    for (int e : parabolic.elems) view.parab_inv.push_back(group->inv(e));
    return view.operator_for(w);
}

CycMat InducedModule::right_action(int g) const {
    int n = dim();
    CycMat r(n, CycVec(n, Cyc::zero(conductor)));
    for (int i = 0; i < n; ++i) {
        int moved = group->mul(coset_reps[i], g);
        int j = coset_of[moved];
        int p = group->mul(moved, group->inv(coset_reps[j]));
        r[i][j] = character_value(*group, parabolic, chi, p);
    }
    return r;
}

QParameterResult q_parameter(const FiniteMatrixGroup& g, const ParabolicHandle& p,
                             const TorusCharacter& chi) {
    ModuleView view{&g, all_elements(g), p.elems, p, chi, {}, {}, {}, {}};
    return q_parameter_view(g, std::move(view));
}

TransferReport check_transfer(const FiniteMatrixGroup& g_big,
                              const std::vector<int>& g_small,
                              const ParabolicHandle& p_big,
                              const TorusCharacter& chi) {
    std::vector<char> in_small(g_big.elems.size(), 0);
    for (int e : g_small) in_small[e] = 1;

    // Normality of the subgroup.
    for (size_t a = 0; a < g_big.elems.size(); ++a) {
        int a_inv = g_big.inv(static_cast<int>(a));
        for (int s : g_small)
            if (!in_small[g_big.mul(g_big.mul(static_cast<int>(a), s), a_inv)])
                throw ValidationError("check_transfer: subgroup is not normal");
    }
    // Abelian quotient: commutators land in the subgroup.
    for (size_t a = 0; a < g_big.elems.size(); ++a) {
        int a_inv = g_big.inv(static_cast<int>(a));
        for (size_t b = 0; b < g_big.elems.size(); ++b) {
            int comm = g_big.mul(g_big.mul(static_cast<int>(a), static_cast<int>(b)),
                                 g_big.mul(a_inv, g_big.inv(static_cast<int>(b))));
            if (!in_small[comm])
                throw ValidationError("check_transfer: quotient is not abelian");
        }
    }
    // G' = P' * G.
    std::vector<int> p_small;
    for (int e : p_big.elems)
        if (in_small[e]) p_small.push_back(e);
    long long product_order = static_cast<long long>(p_big.elems.size()) *
                              static_cast<long long>(g_small.size()) /
                              static_cast<long long>(p_small.size());
    if (product_order != static_cast<long long>(g_big.elems.size()))
        throw ValidationError("check_transfer: G' != P' * G");

    TransferReport rep;
    ModuleView big{&g_big, all_elements(g_big), p_big.elems, p_big, chi, {}, {}, {}, {}};
    rep.big = q_parameter_view(g_big, std::move(big));
    ModuleView small{&g_big, g_small, p_small, p_big, chi, {}, {}, {}, {}};
    rep.small = q_parameter_view(g_big, std::move(small));
    rep.equal = rep.big.q_value == rep.small.q_value;
    return rep;
}

} // namespace hecke
