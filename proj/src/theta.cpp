#include "hecke/theta.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace hecke {

namespace {

QVec reduce_mod1(const QVec& s) {
    QVec out(s.size());
    for (size_t i = 0; i < s.size(); ++i) out[i] = s[i].frac();
    return out;
}

} // namespace

ThetaDatum make_theta_datum(const RootDatum& d, QVec s, FrobeniusAction frob,
                            long long max_denominator) {
    if (static_cast<int>(s.size()) != d.rank)
        throw ValidationError("theta parameter of wrong dimension");
    for (const auto& x : s)
        if (x.den > max_denominator)
            throw ValidationError("theta parameter denominator too large");
    QVec red = reduce_mod1(s);
    QVec img = matvec(to_qmat(frob.matrix), red);
    if (reduce_mod1(img) != red)
        throw ValidationError("theta parameter is not Frobenius-stable mod 1");
    return ThetaDatum{red, std::move(frob)};
}

std::vector<int> theta_root_subsystem(const RootDatum& d, const ThetaDatum& t) {
    std::vector<int> out;
    for (size_t i = 0; i < d.coroots.size(); ++i) {
        Rat p = dot(t.s, to_qvec(d.coroots[i]));
        if (p.is_integer()) out.push_back(static_cast<int>(i));
    }
    return out;
}

AffineRootSystem theta_affine_subsystem(const AffineRootSystem& s,
                                        const std::vector<int>& subsystem) {
    AffineRootSystem out;
    out.rank = s.rank;
    for (int i : subsystem) {
        out.gradients.push_back(s.gradients[i]);
        out.cogradients.push_back(s.cogradients[i]);
        out.levels.push_back(s.levels[i]);
    }
    return out;
}

namespace {

// Smallest element of the progression that is strictly greater than x.
Rat next_level_above(const LevelSet& ls, const Rat& x) {
    long long k = ((x - ls.offset) / ls.period).floor() + 1;
    return ls.offset + Rat(k) * ls.period;
}

} // namespace

QVec choose_special_point(const AffineRootSystem& s) {
    if (s.empty()) return QVec(s.rank, Rat(0));

    QVec ref = generic_vector(s.gradients, s.rank);
    std::vector<int> simples = simple_system(s.gradients, ref);
    size_t k = simples.size();

    // Dual vectors u_j inside the cogradient span with <alpha_i, u_j> = delta_ij.
    QMat span;
    for (size_t i = 0; i < s.cogradients.size(); ++i) span.push_back(s.cogradients[i]);
    QMat span_basis = lattice_basis(span, s.rank); // basis rows of the span lattice
    size_t dim = span_basis.size();
    if (dim != k) throw Error("simple system does not match cogradient span rank");
    // Solve for coefficients: u_j = sum_m c_m * span_basis[m].
    QMat eval(k, QVec(dim, Rat(0))); // eval[i][m] = <alpha_i, span_basis[m]>
    for (size_t i = 0; i < k; ++i)
        for (size_t m = 0; m < dim; ++m)
            eval[i][m] = dot(s.gradients[simples[i]], span_basis[m]);
    QMat eval_inv = inverse(eval);
    std::vector<QVec> duals(k, QVec(s.rank, Rat(0)));
    for (size_t j = 0; j < k; ++j)
        for (size_t m = 0; m < dim; ++m)
            duals[j] = add(duals[j], scale(eval_inv[m][j], span_basis[m]));

    // Candidate values for alpha_i(x): negatives of levels within two periods.
    std::vector<std::vector<Rat>> candidates(k);
    for (size_t i = 0; i < k; ++i) {
        const LevelSet& ls = s.levels[simples[i]];
        Rat bound = Rat(2) * ls.period;
        for (Rat l = next_level_above(ls, -bound - ls.period); l <= bound;
             l += ls.period)
            if (l.abs() <= bound) candidates[i].push_back(-l);
    }

    std::optional<QVec> best;
    std::vector<size_t> pick(k, 0);
    std::function<void(size_t, QVec)> walk = [&](size_t pos, QVec x) {
        if (pos == k) {
            // Special: every gradient admits a vanishing affine root.
            if (!is_special_point(s, x)) return;
            // In the closure of the alcove of the (perturbed) origin.
            for (size_t i = 0; i < s.gradients.size(); ++i) {
                Rat w = dot(s.gradients[i], x);
                const LevelSet& ls = s.levels[i];
                Rat lo = w < Rat(0) ? w : Rat(0);
                Rat hi = w < Rat(0) ? Rat(0) : w;
                // A wall at <g,.> + l = 0 lies strictly between the origin and
                // x when lo < -l < hi.
                for (Rat l = next_level_above(ls, -hi); -l > lo; l += ls.period)
                    if (-l < hi && -l > lo) return;
                if (ls.contains(Rat(0))) {
                    // Origin sits on a wall of this family; stay on the side
                    // of the reference perturbation.
                    if (w.sign() != 0 && w.sign() != dot(s.gradients[i], ref).sign())
                        return;
                }
            }
            if (!best || x < *best) best = x;
            return;
        }
        for (const Rat& t : candidates[pos])
            walk(pos + 1, add(x, scale(t, duals[pos])));
    };
    walk(0, QVec(s.rank, Rat(0)));
    if (!best) throw Error("no special point found in the search window");
    return *best;
}

NormalizedSystem normalize(const AffineRootSystem& s_theta, const QVec& x_s) {
    if (!is_special_point(s_theta, x_s))
        throw ValidationError("normalize: x_s is not a special point");
    NormalizedSystem out;
    out.base = s_theta;
    out.x_s = x_s;
    out.normalized.rank = s_theta.rank;

    for (size_t i = 0; i < s_theta.gradients.size(); ++i) {
        const QVec& alpha = s_theta.gradients[i];
        Rat l0 = -dot(alpha, x_s); // a = alpha + l0 vanishes at x_s
        std::optional<Rat> r;
        // Case a + r in the system: r = period of the own level set.
        r = s_theta.levels[i].period;
        // Case 2(a + r) in the system.
        int j2 = s_theta.gradient_index(scale(Rat(2), alpha));
        if (j2 >= 0) {
            Rat l = next_level_above(s_theta.levels[j2], Rat(2) * l0);
            Rat cand = (l - Rat(2) * l0) / Rat(2);
            if (cand > Rat(0) && (!r || cand < *r)) r = cand;
        }
        // Case (a + r)/2 in the system.
        int jh = s_theta.gradient_index(scale(Rat(1, 2), alpha));
        if (jh >= 0) {
            Rat l = next_level_above(s_theta.levels[jh], l0 / Rat(2));
            Rat cand = Rat(2) * l - l0;
            if (cand > Rat(0) && (!r || cand < *r)) r = cand;
        }
        if (!r || !(*r > Rat(0)) || *r > Rat(2) * s_theta.levels[i].period)
            throw ValidationError("normalize: no admissible r_a within the period bound");
        out.scale[static_cast<int>(i)] = *r;

        QVec g = scale(Rat(1) / *r, alpha);
        QVec cog = scale(*r, s_theta.cogradients[i]);
        LevelSet ls{(l0 / *r).frac(), Rat(1)};
        int existing = out.normalized.gradient_index(g);
        if (existing >= 0) {
            if (!(out.normalized.levels[existing] == ls) ||
                out.normalized.cogradients[existing] != cog)
                throw ValidationError("normalize: inconsistent normalized families");
        } else {
            out.normalized.gradients.push_back(g);
            out.normalized.cogradients.push_back(cog);
            out.normalized.levels.push_back(ls);
        }
    }
    // Reducedness of Phi_norm.
    for (const auto& g : out.normalized.gradients)
        if (out.normalized.gradient_index(scale(Rat(2), g)) >= 0)
            throw ValidationError("normalize: normalized system is not reduced");
    if (!out.normalized.empty()) validate_affine_system(out.normalized);
    return out;
}

namespace {

// Enumerates the Weyl group of a rational root system as character-side
// matrices of the ambient space.
std::vector<QMat> enumerate_weyl(const std::vector<QVec>& roots,
                                 const std::vector<QVec>& coroots, int rank,
                                 size_t bound = 100000) {
    std::vector<QMat> group{qidentity(rank)};
    if (roots.empty()) return group;
    QVec ref = generic_vector(roots, rank);
    std::vector<int> simples = simple_system(roots, ref);
    std::vector<QMat> gens;
    for (int si : simples) {
        QMat g = qidentity(rank);
        for (int a = 0; a < rank; ++a)
            for (int b = 0; b < rank; ++b) g[a][b] -= roots[si][a] * coroots[si][b];
        gens.push_back(g);
    }
    std::set<std::string> keys;
    auto key_of = [](const QMat& m) {
        std::string k;
        for (const auto& row : m)
            for (const auto& x : row) k += x.str() + ",";
        return k;
    };
    keys.insert(key_of(group[0]));
    for (size_t head = 0; head < group.size(); ++head)
        for (const auto& g : gens) {
            QMat next = matmul(g, group[head]);
            if (keys.insert(key_of(next)).second) {
                group.push_back(next);
                if (group.size() > bound) throw Error("weyl enumeration exceeds bound");
            }
        }
    return group;
}

int matrix_order(const QMat& m, int bound = 1000) {
    QMat acc = m;
    QMat id = qidentity(static_cast<int>(m.size()));
    for (int k = 1; k <= bound; ++k) {
        if (acc == id) return k;
        acc = matmul(m, acc);
    }
    throw Error("matrix order exceeds bound");
}

} // namespace

ThetaGroupDatum build_theta_datum(const RootDatum& d, const NormalizedSystem& n,
                                  const FrobeniusAction& f) {
    ThetaGroupDatum out;
    int rank = d.rank;
    QMat fchar = to_qmat(f.matrix);
    QMat fco = f.cocharacter_matrix();

    const auto& norm = n.normalized;

    // Frobenius must permute the adjoined coweights.
    for (const auto& cog : norm.cogradients) {
        QVec img = matvec(fco, cog);
        bool found = false;
        for (const auto& other : norm.cogradients)
            if (other == img) { found = true; break; }
        if (!found)
            throw ValidationError(
                "build_theta_datum: adjoined coweights are not Frobenius-stable");
    }

    // Saturate the cocharacter lattice.
    QMat gens = qidentity(rank);
    for (const auto& cog : norm.cogradients) gens.push_back(cog);
    QMat basis = lattice_basis(gens, rank);
    if (static_cast<int>(basis.size()) != rank)
        throw Error("saturated cocharacter lattice is not full rank");
    out.cochar_basis = basis;
    out.char_to_new = basis; // chi' = B * chi (dual coordinates)

    // Re-express roots and coroots.
    std::vector<IVec> new_roots, new_coroots;
    for (size_t i = 0; i < norm.gradients.size(); ++i) {
        QVec chi = matvec(basis, norm.gradients[i]);
        if (!is_integral(chi))
            throw ValidationError(
                "build_theta_datum: normalized root not integral on the new lattice");
        QVec c;
        if (!solve_left(basis, norm.cogradients[i], c) || !is_integral(c))
            throw ValidationError(
                "build_theta_datum: normalized coroot outside the new lattice");
        new_roots.push_back(to_ivec(chi));
        new_coroots.push_back(to_ivec(c));
        out.roots_old_coords.push_back(norm.gradients[i]);
        out.coroots_old_coords.push_back(norm.cogradients[i]);
    }
    out.datum = validate_root_datum(rank, new_roots, new_coroots);

    // Frobenius descent through w_gamma.
    QMat ftheta_old = fchar;
    if (!norm.empty()) {
        QVec ref = generic_vector(norm.gradients, rank);
        std::vector<int> simples = simple_system(norm.gradients, ref);
        std::set<QVec> delta;
        for (int si : simples) delta.insert(norm.gradients[si]);
        std::set<QVec> gamma_delta;
        for (const auto& dd : delta) gamma_delta.insert(matvec(fchar, dd));

        std::vector<QMat> wgroup =
            enumerate_weyl(norm.gradients, norm.cogradients, rank);
        std::optional<QMat> w0;
        for (const auto& w : wgroup) {
            std::set<QVec> img;
            for (const auto& dd : delta) img.insert(matvec(w, dd));
            if (img == gamma_delta) { w0 = w; break; }
        }
        if (!w0)
            throw Error("build_theta_datum: no Weyl element matches gamma(Delta)");

        // Translation part of w_gamma must preserve the normalized system.
        QVec t = sub(matvec(fco, n.x_s), n.x_s);
        for (const auto& g : norm.gradients)
            if (!dot(g, t).is_integer())
                throw ValidationError(
                    "build_theta_datum: gamma(x_s) - x_s is not a system translation");

        ftheta_old = matmul(inverse(*w0), fchar);
        // The descended action preserves Delta.
        std::set<QVec> check;
        for (const auto& dd : delta) check.insert(matvec(ftheta_old, dd));
        if (check != delta)
            throw Error("build_theta_datum: descended Frobenius does not fix Delta");
    }

    out.frob_char_old = ftheta_old;
    QMat fnew = matmul(matmul(basis, ftheta_old), inverse(basis));
    if (!is_integral(fnew))
        throw ValidationError(
            "build_theta_datum: descended Frobenius does not preserve the lattice");
    IMat fmat;
    for (const auto& row : fnew) fmat.push_back(to_ivec(row));
    out.frob = validate_frobenius(out.datum, fmat, matrix_order(fnew));
    return out;
}

std::vector<int> build_theta_levi(const ThetaGroupDatum& g,
                                  const std::vector<QVec>& levi_roots_of_m) {
    std::vector<int> out;
    if (levi_roots_of_m.empty()) return out;
    QMat span;
    for (const auto& r : levi_roots_of_m) span.push_back(r);
    int base_rank = rank(span);
    for (size_t i = 0; i < g.roots_old_coords.size(); ++i) {
        QMat ext = span;
        ext.push_back(g.roots_old_coords[i]);
        if (rank(ext) == base_rank) out.push_back(static_cast<int>(i));
    }
    return out;
}

ThetaWalls theta_walls(const WallArrangement& ambient, const WallArrangement& theta) {
    for (const auto& tf : theta.families) {
        const WallFamily* match = nullptr;
        for (const auto& af : ambient.families)
            if (af.gradient == tf.gradient) { match = &af; break; }
        if (!match)
            throw CertificateError("theta wall direction " +
                                   vec_str(to_qvec(tf.gradient)) +
                                   " is not an ambient wall direction");
        for (const auto& tls : tf.levels) {
            // The containment pattern repeats with period lcm(theta period,
            // ambient periods); checking one window of representatives is
            // exhaustive.
            Rat common = tls.period;
            for (const auto& als : match->levels) {
                // lcm(p/q, r/s) = lcm(p*s, r*q) / (q*s)
                long long numl =
                    lcm_ll(common.num * als.period.den, als.period.num * common.den);
                common = Rat(numl, common.den * als.period.den);
            }
            long long reps = (common / tls.period).floor();
            for (long long k = 0; k < reps; ++k) {
                Rat level = tls.offset + Rat(k) * tls.period;
                bool ok = false;
                for (const auto& als : match->levels)
                    if (als.contains(level)) { ok = true; break; }
                if (!ok)
                    throw CertificateError(
                        "theta wall " + vec_str(to_qvec(tf.gradient)) + " + " +
                        level.str() + " is not a wall of the ambient arrangement");
            }
        }
    }
    ThetaWalls out;
    out.theta_walls = theta;
    out.inclusion_certified = true;
    return out;
}

} // namespace hecke
