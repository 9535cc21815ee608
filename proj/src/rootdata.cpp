#include "hecke/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace hecke {

namespace {

Rat pairing(const IVec& root, const IVec& coroot) {
    Rat r(0);
    for (size_t i = 0; i < root.size(); ++i) r += Rat(root[i]) * Rat(coroot[i]);
    return r;
}

int find_vector(const std::vector<IVec>& list, const IVec& v) {
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == v) return static_cast<int>(i);
    return -1;
}

} // namespace

FrobeniusAction FrobeniusAction::identity(int rank) {
    FrobeniusAction f;
    f.matrix.assign(rank, IVec(rank, 0));
    for (int i = 0; i < rank; ++i) f.matrix[i][i] = 1;
    f.order = 1;
    return f;
}

QMat FrobeniusAction::cocharacter_matrix() const {
    return inverse(transpose(to_qmat(matrix)));
}

RootDatum validate_root_datum(int rank, std::vector<IVec> roots,
                              std::vector<IVec> coroots) {
    if (rank < 0) throw ValidationError("rank must be non-negative");
    if (roots.size() != coroots.size())
        throw ValidationError("roots and coroots must correspond bijectively");
    for (const auto& r : roots)
        if (static_cast<int>(r.size()) != rank)
            throw ValidationError("root of wrong dimension");
    for (const auto& r : coroots)
        if (static_cast<int>(r.size()) != rank)
            throw ValidationError("coroot of wrong dimension");

    IVec zero(rank, 0);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (roots[i] == zero || coroots[i] == zero)
            throw ValidationError("zero vector among roots or coroots");
        Rat p = pairing(roots[i], coroots[i]);
        if (p != Rat(2))
            throw ValidationError("pairing <root, coroot> = " + p.str() +
                                  " != 2 at index " + std::to_string(i));
    }
    // No duplicate roots.
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i] == roots[j])
                throw ValidationError("duplicate root at indices " +
                                      std::to_string(i) + "," + std::to_string(j));
    // -alpha present.
    for (size_t i = 0; i < roots.size(); ++i) {
        IVec neg = roots[i];
        for (auto& x : neg) x = -x;
        if (find_vector(roots, neg) < 0)
            throw ValidationError("missing negative of root " + std::to_string(i));
    }
    // Reflection stability, and dually.
    for (size_t i = 0; i < roots.size(); ++i) {
        for (size_t j = 0; j < roots.size(); ++j) {
            Rat c = pairing(roots[j], coroots[i]);
            if (!c.is_integer())
                throw ValidationError("non-integral Cartan pairing");
            IVec refl = roots[j];
            for (int k = 0; k < rank; ++k) refl[k] -= c.num * roots[i][k];
            int idx = find_vector(roots, refl);
            if (idx < 0)
                throw ValidationError("root set not stable under reflection s_" +
                                      std::to_string(i));
            // Dual reflection must send coroot_j to coroot_idx.
            Rat cd = pairing(roots[i], coroots[j]);
            IVec corefl = coroots[j];
            for (int k = 0; k < rank; ++k) corefl[k] -= cd.num * coroots[i][k];
            if (corefl != coroots[idx])
                throw ValidationError(
                    "coroot set not stable under dual reflection s_" + std::to_string(i));
        }
    }
    RootDatum d;
    d.rank = rank;
    d.roots = std::move(roots);
    d.coroots = std::move(coroots);
    return d;
}

FrobeniusAction validate_frobenius(const RootDatum& d, IMat matrix, int order) {
    if (static_cast<int>(matrix.size()) != d.rank)
        throw ValidationError("frobenius matrix of wrong size");
    for (const auto& row : matrix)
        if (static_cast<int>(row.size()) != d.rank)
            throw ValidationError("frobenius matrix of wrong size");
    if (order < 1) throw ValidationError("frobenius order must be positive");

    QMat m = to_qmat(matrix);
    QMat p = qidentity(d.rank);
    for (int k = 0; k < order; ++k) p = matmul(m, p);
    if (p != qidentity(d.rank))
        throw ValidationError("frobenius matrix does not have the stated order");

    FrobeniusAction f;
    f.matrix = std::move(matrix);
    f.order = order;

    QMat covec = f.cocharacter_matrix();
    if (!is_integral(covec))
        throw ValidationError("frobenius does not preserve the cocharacter lattice");

    // Must permute roots, compatibly with the root <-> coroot bijection.
    for (size_t i = 0; i < d.roots.size(); ++i) {
        QVec img = matvec(to_qmat(f.matrix), to_qvec(d.roots[i]));
        int idx = find_vector(d.roots, to_ivec(img));
        if (idx < 0) throw ValidationError("frobenius does not permute the root set");
        QVec cimg = matvec(covec, to_qvec(d.coroots[i]));
        if (to_ivec(cimg) != d.coroots[idx])
            throw ValidationError(
                "frobenius incompatible with the root/coroot correspondence");
    }
    return f;
}

RootDatum dual_datum(const RootDatum& d) {
    return validate_root_datum(d.rank, d.coroots, d.roots);
}

QVec generic_vector(const std::vector<QVec>& covectors, int dim) {
    for (long long t = 1;; ++t) {
        QVec v(dim);
        Rat pw(1);
        for (int i = 0; i < dim; ++i) {
            v[i] = pw;
            pw *= Rat(t);
        }
        bool ok = true;
        for (const auto& c : covectors)
            if (dot(c, v).is_zero()) { ok = false; break; }
        if (ok) return v;
    }
}

std::vector<int> simple_system(const std::vector<QVec>& roots, const QVec& positive_on) {
    std::vector<int> pos;
    for (size_t i = 0; i < roots.size(); ++i)
        if (dot(roots[i], positive_on) > Rat(0)) pos.push_back(static_cast<int>(i));
    std::vector<int> simples;
    for (int i : pos) {
        bool decomposable = false;
        for (int j : pos) {
            if (decomposable) break;
            for (int k : pos) {
                if (add(roots[j], roots[k]) == roots[i]) { decomposable = true; break; }
            }
        }
        if (!decomposable) simples.push_back(i);
    }
    return simples;
}

std::vector<std::vector<int>> root_components(const std::vector<QVec>& roots,
                                              const std::vector<QVec>& coroots) {
    size_t n = roots.size();
    std::vector<int> comp(n, -1);
    int next = 0;
    for (size_t i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = next;
        std::vector<size_t> stack{i};
        while (!stack.empty()) {
            size_t cur = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < n; ++j) {
                if (comp[j] >= 0) continue;
                if (!dot(roots[cur], coroots[j]).is_zero()) {
                    comp[j] = next;
                    stack.push_back(j);
                }
            }
        }
        ++next;
    }
    std::vector<std::vector<int>> out(next);
    for (size_t i = 0; i < n; ++i) out[comp[i]].push_back(static_cast<int>(i));
    return out;
}

CartanType classify_component(const std::vector<QVec>& roots,
                              const std::vector<QVec>& coroots) {
    QVec ref = generic_vector(roots, roots.empty() ? 0 : (int)roots[0].size());
    std::vector<int> simples = simple_system(roots, ref);
    int n = static_cast<int>(simples.size());
    CartanType t;
    t.rank = n;
    if (n == 0) throw Error("classify_component on empty system");
    if (n == 1) { t.family = 'A'; return t; }

    // Edge weights of the Dynkin diagram.
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) c[i][j] = (int)dot(roots[simples[i]], coroots[simples[j]]).num;
    std::vector<int> degree(n, 0);
    int max_weight = 0, double_edges = 0, triple_edges = 0;
    int du = -1, dv = -1; // the unique multiple edge, when present
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int w = c[i][j] * c[j][i];
            if (w > 0) { ++degree[i]; ++degree[j]; }
            if (w == 2) { ++double_edges; du = i; dv = j; }
            if (w == 3) { ++triple_edges; du = i; dv = j; }
            max_weight = std::max(max_weight, w);
        }
    int branch = -1;
    for (int i = 0; i < n; ++i)
        if (degree[i] >= 3) branch = i;

    if (max_weight == 3) {
        if (n != 2) throw Error("unrecognized Cartan matrix (triple edge, rank != 2)");
        t.family = 'G';
        return t;
    }
    if (max_weight == 2) {
        if (double_edges != 1 || branch >= 0)
            throw Error("unrecognized Cartan matrix (multiple double edges)");
        if (n == 2) { t.family = 'B'; return t; } // B2 = C2 presentation
        bool du_leaf = degree[du] == 1, dv_leaf = degree[dv] == 1;
        if (!du_leaf && !dv_leaf) {
            if (n == 4) { t.family = 'F'; return t; }
            throw Error("unrecognized Cartan matrix (interior double edge)");
        }
        // The short simple root s is the one with <other, s_vee> = -2.
        int leaf = du_leaf ? du : dv;
        int other = du_leaf ? dv : du;
        bool leaf_short = c[other][leaf] == -2;
        t.family = leaf_short ? 'B' : 'C';
        return t;
    }
    // Simply laced.
    if (branch < 0) { t.family = 'A'; return t; }
    // Leg lengths from the branch node.
    std::vector<int> legs;
    for (int j = 0; j < n; ++j) {
        if (j == branch || c[branch][j] == 0) continue;
        int len = 1, prev = branch, cur = j;
        while (true) {
            int next = -1;
            for (int k = 0; k < n; ++k)
                if (k != prev && k != cur && c[cur][k] != 0) next = k;
            if (next < 0) break;
            prev = cur;
            cur = next;
            ++len;
        }
        legs.push_back(len);
    }
    std::sort(legs.begin(), legs.end());
    if (legs.size() != 3) throw Error("unrecognized Cartan matrix (branching)");
    if (legs[0] == 1 && legs[1] == 1) { t.family = 'D'; return t; }
    if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4) {
        t.family = 'E';
        return t;
    }
    throw Error("unrecognized Cartan matrix");
}

std::string OrbitLabel::str() const {
    std::string s;
    if (twist > 1) s += std::to_string(twist) + "^";
    s += type.str();
    if (components > 1) s += "x" + std::to_string(components);
    return s;
}

namespace {

struct OrbitStructure {
    std::vector<std::vector<int>> components;
    std::vector<std::vector<int>> orbits; // component indices
};

OrbitStructure orbit_structure(const std::vector<QVec>& roots,
                               const std::vector<QVec>& coroots, const QMat& fm) {
    OrbitStructure out;
    out.components = root_components(roots, coroots);
    if (out.components.size() == 1 && out.components[0].empty()) out.components.clear();
    size_t nc = out.components.size();
    std::vector<int> comp_of(roots.size());
    for (size_t c = 0; c < nc; ++c)
        for (int i : out.components[c]) comp_of[i] = static_cast<int>(c);
    std::vector<int> comp_perm(nc);
    for (size_t c = 0; c < nc; ++c) {
        QVec img = matvec(fm, roots[out.components[c][0]]);
        int found = -1;
        for (size_t j = 0; j < roots.size(); ++j)
            if (roots[j] == img) { found = static_cast<int>(j); break; }
        if (found < 0) throw ValidationError("frobenius does not permute the root set");
        comp_perm[c] = comp_of[found];
    }
    std::vector<bool> seen(nc, false);
    for (size_t c = 0; c < nc; ++c) {
        if (seen[c]) continue;
        std::vector<int> orbit;
        int cur = static_cast<int>(c);
        do {
            seen[cur] = true;
            orbit.push_back(cur);
            cur = comp_perm[cur];
        } while (cur != static_cast<int>(c));
        out.orbits.push_back(orbit);
    }
    return out;
}

OrbitLabel label_of_orbit(const std::vector<QVec>& roots,
                          const std::vector<QVec>& coroots, const QMat& fm,
                          const std::vector<int>& component_roots, int orbit_size) {
    OrbitLabel label;
    label.components = orbit_size;
    int dim = static_cast<int>(fm.size());
    std::vector<QVec> crs, ccrs;
    for (int i : component_roots) {
        crs.push_back(roots[i]);
        ccrs.push_back(coroots[i]);
    }
    label.type = classify_component(crs, ccrs);

    // Diagram automorphism induced by F^(orbit length) on the component,
    // computed modulo the component's Weyl group.
    QMat power = qidentity(dim);
    for (int k = 0; k < orbit_size; ++k) power = matmul(fm, power);
    QVec ref = generic_vector(crs, dim);
    std::vector<int> simples = simple_system(crs, ref);
    std::set<QVec> delta;
    for (int s : simples) delta.insert(crs[s]);
    std::vector<QMat> wgroup{qidentity(dim)};
    std::set<std::string> keys;
    auto key_of = [&](const QMat& m) {
        std::string k;
        for (const auto& row : m)
            for (const auto& x : row) k += x.str() + ",";
        return k;
    };
    keys.insert(key_of(wgroup[0]));
    std::vector<QMat> gens;
    for (int s : simples) {
        QMat g = qidentity(dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) g[a][b] -= crs[s][a] * ccrs[s][b];
        gens.push_back(g);
    }
    for (size_t head = 0; head < wgroup.size(); ++head) {
        for (const auto& g : gens) {
            QMat next = matmul(g, wgroup[head]);
            if (keys.insert(key_of(next)).second) wgroup.push_back(next);
        }
    }
    int twist = 1;
    for (const auto& w : wgroup) {
        QMat sigma = matmul(w, power);
        std::set<QVec> img;
        for (const auto& dd : delta) img.insert(matvec(sigma, dd));
        if (img == delta) {
            QMat acc = sigma;
            int ord = 1;
            while (true) {
                bool is_id = true;
                for (const auto& dd : delta)
                    if (matvec(acc, dd) != dd) { is_id = false; break; }
                if (is_id) break;
                acc = matmul(sigma, acc);
                ++ord;
            }
            twist = ord;
            break;
        }
    }
    label.twist = twist;
    return label;
}

} // namespace

std::vector<OrbitLabel> orbit_labels(const std::vector<QVec>& roots,
                                     const std::vector<QVec>& coroots,
                                     const QMat& frob_char) {
    OrbitStructure st = orbit_structure(roots, coroots, frob_char);
    std::vector<OrbitLabel> labels;
    for (const auto& orbit : st.orbits)
        labels.push_back(label_of_orbit(roots, coroots, frob_char,
                                        st.components[orbit[0]],
                                        static_cast<int>(orbit.size())));
    std::sort(labels.begin(), labels.end(), [](const OrbitLabel& a, const OrbitLabel& b) {
        return a.str() < b.str();
    });
    return labels;
}

OrbitDecomposition decompose_orbits(const RootDatum& d, const FrobeniusAction& f) {
    OrbitDecomposition out;
    std::vector<QVec> roots, coroots;
    for (const auto& r : d.roots) roots.push_back(to_qvec(r));
    for (const auto& r : d.coroots) coroots.push_back(to_qvec(r));
    QMat fm = to_qmat(f.matrix);
    OrbitStructure st = orbit_structure(roots, coroots, fm);
    out.components = st.components;
    out.orbits = st.orbits;
    for (const auto& orbit : out.orbits)
        out.labels.push_back(label_of_orbit(roots, coroots, fm,
                                            out.components[orbit[0]],
                                            static_cast<int>(orbit.size())));
    return out;
}

WeylGroup weyl_group(const RootDatum& d, size_t size_bound) {
    WeylGroup w;
    std::vector<QVec> roots, coroots;
    for (const auto& r : d.roots) roots.push_back(to_qvec(r));
    for (const auto& r : d.coroots) coroots.push_back(to_qvec(r));

    WeylElement id;
    id.char_matrix = qidentity(d.rank);
    w.elements.push_back(id);
    if (d.roots.empty()) return w;

    QVec ref = generic_vector(roots, d.rank);
    std::vector<int> simples = simple_system(roots, ref);
    std::vector<QMat> gens;
    for (int s : simples) {
        w.simple_roots.push_back(d.roots[s]);
        w.simple_coroots.push_back(d.coroots[s]);
        QMat g = qidentity(d.rank);
        for (int a = 0; a < d.rank; ++a)
            for (int b = 0; b < d.rank; ++b)
                g[a][b] -= roots[s][a] * coroots[s][b];
        gens.push_back(g);
    }
    std::set<std::string> keys;
    auto key_of = [](const QMat& m) {
        std::string k;
        for (const auto& row : m)
            for (const auto& x : row) k += x.str() + ",";
        return k;
    };
    keys.insert(key_of(id.char_matrix));
    for (size_t head = 0; head < w.elements.size(); ++head) {
        WeylElement cur = w.elements[head];
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            WeylElement next;
            next.char_matrix = matmul(gens[gi], cur.char_matrix);
            if (!keys.insert(key_of(next.char_matrix)).second) continue;
            next.word = cur.word;
            next.word.insert(next.word.begin(), static_cast<int>(gi));
            w.elements.push_back(next);
            if (w.elements.size() > size_bound)
                throw Error("weyl_group exceeds configured size bound");
        }
    }
    return w;
}

namespace {

struct OrbitSystem {
    std::vector<QVec> roots;
    std::vector<QVec> coroots;
    std::vector<bool> in_levi;
    std::vector<int> galois; // permutation on root indices
};

OrbitSystem make_orbit_system(const RootSystemView& v, const std::vector<int>& idx,
                              bool dualize) {
    OrbitSystem o;
    std::set<int> levi(v.levi.begin(), v.levi.end());
    for (int i : idx) {
        o.roots.push_back(dualize ? v.coroots[i] : v.roots[i]);
        o.coroots.push_back(dualize ? v.roots[i] : v.coroots[i]);
        o.in_levi.push_back(levi.count(i) > 0);
    }
    // Galois permutation on the chosen vectors: image of root i under the
    // character-side matrix (or its dual when dualized).
    QMat act = v.frobenius_char;
    QMat coact = inverse(transpose(act));
    const QMat& use = dualize ? coact : act;
    for (size_t i = 0; i < o.roots.size(); ++i) {
        QVec img = matvec(use, o.roots[i]);
        int found = -1;
        for (size_t j = 0; j < o.roots.size(); ++j)
            if (o.roots[j] == img) { found = static_cast<int>(j); break; }
        if (found < 0) throw Error("frobenius does not stabilize orbit system");
        o.galois.push_back(found);
    }
    return o;
}

// Searches for a Galois-equivariant root-system isomorphism a -> b matching
// the Levi subsets.
bool orbit_isomorphic(const OrbitSystem& a, const OrbitSystem& b) {
    size_t n = a.roots.size();
    if (n != b.roots.size()) return false;
    if (n == 0) return true;
    int dim_a = static_cast<int>(a.roots[0].size());

    QVec ref = generic_vector(a.roots, dim_a);
    std::vector<int> simples = simple_system(a.roots, ref);
    size_t k = simples.size();

    // Express every root of a in the simple basis.
    QMat basis;
    for (int s : simples) basis.push_back(a.roots[s]);
    std::vector<QVec> coords(n);
    for (size_t i = 0; i < n; ++i) {
        if (!solve_left(basis, a.roots[i], coords[i]))
            throw Error("root outside span of simple system");
    }

    std::vector<int> img(k, -1);
    std::vector<bool> used(b.roots.size(), false);

    std::function<bool(size_t)> place = [&](size_t pos) -> bool {
        if (pos == k) {
            // Build the full map and verify.
            std::vector<int> map_of(n, -1);
            for (size_t i = 0; i < n; ++i) {
                QVec target(b.roots[0].size(), Rat(0));
                for (size_t s = 0; s < k; ++s)
                    if (!coords[i][s].is_zero())
                        target = add(target, scale(coords[i][s], b.roots[img[s]]));
                int found = -1;
                for (size_t j = 0; j < b.roots.size(); ++j)
                    if (b.roots[j] == target) { found = static_cast<int>(j); break; }
                if (found < 0) return false;
                map_of[i] = found;
            }
            // Bijective?
            std::vector<bool> hit(n, false);
            for (int m : map_of) {
                if (hit[m]) return false;
                hit[m] = true;
            }
            // All pairings preserved.
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (dot(a.roots[i], a.coroots[j]) !=
                        dot(b.roots[map_of[i]], b.coroots[map_of[j]]))
                        return false;
            // Galois equivariance.
            for (size_t i = 0; i < n; ++i)
                if (map_of[a.galois[i]] != b.galois[map_of[i]]) return false;
            // Levi condition.
            for (size_t i = 0; i < n; ++i)
                if (a.in_levi[i] != b.in_levi[map_of[i]]) return false;
            return true;
        }
        for (size_t j = 0; j < b.roots.size(); ++j) {
            if (used[j]) continue;
            // Cartan compatibility with already placed simples.
            bool ok = dot(a.roots[simples[pos]], a.coroots[simples[pos]]) ==
                      dot(b.roots[j], b.coroots[j]);
            for (size_t prev = 0; prev < pos && ok; ++prev) {
                if (dot(a.roots[simples[pos]], a.coroots[simples[prev]]) !=
                        dot(b.roots[j], b.coroots[img[prev]]) ||
                    dot(a.roots[simples[prev]], a.coroots[simples[pos]]) !=
                        dot(b.roots[img[prev]], b.coroots[j]))
                    ok = false;
            }
            if (!ok) continue;
            img[pos] = static_cast<int>(j);
            used[j] = true;
            if (place(pos + 1)) return true;
            used[j] = false;
            img[pos] = -1;
        }
        return false;
    };
    return place(0);
}

std::vector<std::vector<int>> frobenius_orbits_of_components(
    const RootSystemView& v, std::vector<std::vector<int>>& components) {
    components = root_components(v.roots, v.coroots);
    if (components.size() == 1 && components[0].empty()) components.clear();
    size_t nc = components.size();
    std::vector<int> comp_of(v.roots.size(), -1);
    for (size_t c = 0; c < nc; ++c)
        for (int i : components[c]) comp_of[i] = static_cast<int>(c);
    std::vector<int> comp_perm(nc);
    for (size_t c = 0; c < nc; ++c) {
        QVec img = matvec(v.frobenius_char, v.roots[components[c][0]]);
        int found = -1;
        for (size_t j = 0; j < v.roots.size(); ++j)
            if (v.roots[j] == img) { found = static_cast<int>(j); break; }
        if (found < 0) throw Error("frobenius does not permute roots of the view");
        comp_perm[c] = comp_of[found];
    }
    std::vector<std::vector<int>> orbits;
    std::vector<bool> seen(nc, false);
    for (size_t c = 0; c < nc; ++c) {
        if (seen[c]) continue;
        std::vector<int> orbit_roots;
        int cur = static_cast<int>(c);
        do {
            seen[cur] = true;
            for (int i : components[cur]) orbit_roots.push_back(i);
            cur = comp_perm[cur];
        } while (cur != static_cast<int>(c));
        orbits.push_back(orbit_roots);
    }
    return orbits;
}

} // namespace

DualsDecision isomorphic_up_to_duals(const RootSystemView& a, const RootSystemView& b) {
    DualsDecision out;
    std::vector<std::vector<int>> comps_a, comps_b;
    auto orbits_a = frobenius_orbits_of_components(a, comps_a);
    auto orbits_b = frobenius_orbits_of_components(b, comps_b);
    if (orbits_a.size() != orbits_b.size()) {
        out.reason = "orbit counts differ: " + std::to_string(orbits_a.size()) +
                     " vs " + std::to_string(orbits_b.size());
        return out;
    }
    size_t n = orbits_a.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // Try every orbit matching; record the first full success.
    std::vector<int> assign(n, -1);
    std::vector<bool> used(n, false);
    std::vector<DualsWitness> witnesses(n);

    std::function<bool(size_t)> match = [&](size_t pos) -> bool {
        if (pos == n) return true;
        for (size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            OrbitSystem oa = make_orbit_system(a, orbits_a[pos], false);
            OrbitSystem ob = make_orbit_system(b, orbits_b[j], false);
            bool direct = orbit_isomorphic(oa, ob);
            bool dual = false;
            if (!direct) {
                OrbitSystem oad = make_orbit_system(a, orbits_a[pos], true);
                dual = orbit_isomorphic(oad, ob);
            }
            if (direct || dual) {
                used[j] = true;
                witnesses[pos] = DualsWitness{direct, static_cast<int>(pos),
                                              static_cast<int>(j)};
                if (match(pos + 1)) return true;
                used[j] = false;
            }
        }
        return false;
    };
    if (match(0)) {
        out.isomorphic = true;
        out.witnesses = witnesses;
    } else {
        out.reason = "no orbit matching admits equivariant isomorphisms";
    }
    return out;
}

} // namespace hecke
