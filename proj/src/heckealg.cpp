#include "hecke/heckealg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace hecke {

namespace {

std::string map_key(const AffineMap& m) {
    std::string k;
    for (const auto& row : m.linear)
        for (const auto& x : row) k += x.str() + ",";
    k += ";";
    for (const auto& x : m.translation) k += x.str() + ",";
    return k;
}

AffineMap compose_maps(const AffineMap& a, const AffineMap& b) {
    AffineMap r;
    r.linear = matmul(a.linear, b.linear);
    r.translation = add(matvec(a.linear, b.translation), a.translation);
    return r;
}

Rat eval_wall(const IVec& g, const Rat& l, const QVec& x) {
    Rat v = l;
    for (size_t i = 0; i < g.size(); ++i) v += Rat(g[i]) * x[i];
    return v;
}

// Strict feasibility of a system of rational linear constraints
// a.t + b (> or >=) 0 together with equalities, by substitution and
// Fourier-Motzkin elimination.
struct Constraint {
    QVec a;
    Rat b;
    bool strict = true;
};

bool feasible(std::vector<Constraint> cs, std::vector<std::pair<QVec, Rat>> eqs,
              int dim) {
    // Eliminate equalities by substitution.
    while (!eqs.empty()) {
        auto [a, b] = eqs.back();
        eqs.pop_back();
        int piv = -1;
        for (int i = 0; i < dim; ++i)
            if (!a[i].is_zero()) piv = i;
        if (piv < 0) {
            if (!b.is_zero()) return false;
            continue;
        }
        // t_piv = -(b + sum_{j != piv} a_j t_j) / a_piv
        for (auto& c : cs) {
            if (c.a[piv].is_zero()) continue;
            Rat f = c.a[piv] / a[piv];
            for (int j = 0; j < dim; ++j) c.a[j] -= f * a[j];
            c.b -= f * b;
        }
        for (auto& [ea, eb] : eqs) {
            if (ea[piv].is_zero()) continue;
            Rat f = ea[piv] / a[piv];
            for (int j = 0; j < dim; ++j) ea[j] -= f * a[j];
            eb -= f * b;
        }
    }
    // Fourier-Motzkin on the inequalities.
    for (int var = 0; var < dim; ++var) {
        std::vector<Constraint> pos, neg, rest;
        for (const auto& c : cs) {
            if (c.a[var] > Rat(0)) pos.push_back(c);
            else if (c.a[var] < Rat(0)) neg.push_back(c);
            else rest.push_back(c);
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                // p: a t + b > 0 with a_var > 0 ; n: with a_var < 0.
                Constraint comb;
                comb.a.assign(dim, Rat(0));
                Rat fp = -n.a[var], fn = p.a[var];
                for (int j = 0; j < dim; ++j) comb.a[j] = fp * p.a[j] + fn * n.a[j];
                comb.b = fp * p.b + fn * n.b;
                comb.strict = p.strict || n.strict;
                rest.push_back(comb);
            }
        cs = std::move(rest);
    }
    for (const auto& c : cs) {
        if (c.strict ? !(c.b > Rat(0)) : c.b < Rat(0)) return false;
    }
    return true;
}

} // namespace

OmegaData OmegaData::trivial(int num_gens) {
    OmegaData o;
    o.size = 1;
    o.table = {{0}};
    o.s_action = {std::vector<int>(num_gens)};
    for (int s = 0; s < num_gens; ++s) o.s_action[0][s] = s;
    o.mu = {{Rat(1)}};
    return o;
}

int HeckeAlgebra::intern(const AffineMap& m) const {
    std::string k = map_key(m);
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(elements_.size());
    elements_.push_back(m);
    ids_.emplace(std::move(k), id);
    length_.push_back(-1);
    words_.push_back({});
    return id;
}

int HeckeAlgebra::compose(int a, int b) const {
    return intern(compose_maps(elements_[a], elements_[b]));
}

int HeckeAlgebra::generator_id(int s) const { return intern(simple_refl[s]); }

long long HeckeAlgebra::length(int id) const {
    if (length_[id] >= 0) return length_[id];
    QVec img = elements_[id].apply(base_point);
    long long count = 0;
    for (const auto& fam : walls.families) {
        Rat vx(0), vy(0);
        for (size_t i = 0; i < fam.gradient.size(); ++i) {
            vx += Rat(fam.gradient[i]) * base_point[i];
            vy += Rat(fam.gradient[i]) * img[i];
        }
        Rat lo = vx < vy ? vx : vy, hi = vx < vy ? vy : vx;
        for (const auto& ls : fam.levels) {
            if (!(lo < hi)) continue;
            // count l in progression with lo < -l < hi
            long long k_lo = ((-hi - ls.offset) / ls.period).floor();
            long long k_hi = ((-lo - ls.offset) / ls.period).floor();
            for (long long k = k_lo; k <= k_hi; ++k) {
                Rat l = ls.offset + Rat(k) * ls.period;
                if (-l > lo && -l < hi) ++count;
            }
        }
    }
    length_[id] = count;
    return count;
}

const std::vector<int>& HeckeAlgebra::reduced_word(int id) const {
    if (id == 0 || !words_[id].empty()) return words_[id];
    QVec img = elements_[id].apply(base_point);
    for (int s = 0; s < cox.num_gens; ++s) {
        Rat vx = eval_wall(simple_walls[s].gradient, simple_walls[s].level, base_point);
        Rat vy = eval_wall(simple_walls[s].gradient, simple_walls[s].level, img);
        if (vx.sign() != vy.sign()) {
            int rest = compose(generator_id(s), id);
            std::vector<int> w = reduced_word(rest);
            w.insert(w.begin(), s);
            words_[id] = std::move(w);
            return words_[id];
        }
    }
    throw Error("element has no descent but is not the identity");
}

int HeckeAlgebra::id_of_word(const std::vector<int>& word) const {
    int id = 0;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        id = compose(generator_id(*it), id);
    return id;
}

int HeckeAlgebra::inverse_id(int id) const {
    const AffineMap& m = elements_[id];
    AffineMap inv;
    inv.linear = inverse(m.linear);
    inv.translation = scale(Rat(-1), matvec(inv.linear, m.translation));
    return intern(inv);
}

int HeckeAlgebra::act_omega(int a, int id) const {
    std::vector<int> w = reduced_word(id);
    for (auto& s : w) s = omega.s_action[a][s];
    return id_of_word(w);
}

std::vector<int> HeckeAlgebra::generator_classes() const {
    std::vector<int> cls(cox.num_gens);
    for (int i = 0; i < cox.num_gens; ++i) cls[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (cls[x] != x) x = cls[x] = cls[cls[x]];
        return x;
    };
    auto unite = [&](int a, int b) { cls[find(a)] = find(b); };
    for (int s = 0; s < cox.num_gens; ++s)
        for (int t = s + 1; t < cox.num_gens; ++t)
            if (cox.m[s][t] != 0 && cox.m[s][t] % 2 == 1) unite(s, t);
    for (int a = 0; a < omega.size; ++a)
        for (int s = 0; s < cox.num_gens; ++s) unite(s, omega.s_action[a][s]);
    for (int s = 0; s < cox.num_gens; ++s) cls[s] = find(s);
    return cls;
}

namespace {

void validate_omega(const OmegaData& o, const CoxeterPresentation& cox) {
    if (o.size < 1 || static_cast<int>(o.table.size()) != o.size ||
        static_cast<int>(o.s_action.size()) != o.size ||
        static_cast<int>(o.mu.size()) != o.size)
        throw ValidationError("omega data of inconsistent size");
    for (int a = 0; a < o.size; ++a) {
        if (static_cast<int>(o.table[a].size()) != o.size ||
            static_cast<int>(o.mu[a].size()) != o.size ||
            static_cast<int>(o.s_action[a].size()) != cox.num_gens)
            throw ValidationError("omega data of inconsistent size");
        if (o.table[0][a] != a || o.table[a][0] != a)
            throw ValidationError("omega element 0 must be the identity");
        for (const auto& v : o.mu[a])
            if (v.is_zero()) throw ValidationError("omega cocycle value is zero");
    }
    // Group axioms and the 2-cocycle identity.
    for (int a = 0; a < o.size; ++a) {
        bool has_inverse = false;
        for (int b = 0; b < o.size; ++b)
            if (o.table[a][b] == 0) has_inverse = true;
        if (!has_inverse) throw ValidationError("omega element without inverse");
        for (int b = 0; b < o.size; ++b)
            for (int c = 0; c < o.size; ++c) {
                if (o.table[o.table[a][b]][c] != o.table[a][o.table[b][c]])
                    throw ValidationError("omega multiplication is not associative");
                if (o.mu[a][b] * o.mu[o.table[a][b]][c] !=
                    o.mu[b][c] * o.mu[a][o.table[b][c]])
                    throw ValidationError("omega cocycle identity fails");
            }
        if (o.mu[0][a] != Rat(1) || o.mu[a][0] != Rat(1))
            throw ValidationError("omega cocycle must be normalized");
    }
    // Actions preserve the Coxeter matrix.
    for (int a = 0; a < o.size; ++a) {
        std::vector<bool> seen(cox.num_gens, false);
        for (int s = 0; s < cox.num_gens; ++s) {
            int img = o.s_action[a][s];
            if (img < 0 || img >= cox.num_gens || seen[img])
                throw ValidationError("omega action is not a permutation of S");
            seen[img] = true;
        }
        for (int s = 0; s < cox.num_gens; ++s)
            for (int t = 0; t < cox.num_gens; ++t)
                if (cox.m[s][t] != cox.m[o.s_action[a][s]][o.s_action[a][t]])
                    throw ValidationError("omega action does not preserve the Coxeter matrix");
    }
}

} // namespace

std::vector<Wall> chamber_facets(const WallArrangement& walls, const QVec& base) {
    int r = walls.dim;
    // Bracket walls around the base point per progression, then keep those
    // supporting a face of dimension r - 1.
    struct Candidate {
        Wall wall;
        int side; // sign of the chamber on this wall
    };
    std::vector<Candidate> candidates;
    for (const auto& fam : walls.families) {
        Rat v(0);
        for (size_t i = 0; i < fam.gradient.size(); ++i)
            v += Rat(fam.gradient[i]) * base[i];
        for (const auto& ls : fam.levels) {
            long long k = ((-v - ls.offset) / ls.period).floor();
            Rat l_below = ls.offset + Rat(k) * ls.period;
            Rat l_above = l_below + ls.period;
            candidates.push_back({Wall{fam.gradient, l_below}, 0});
            candidates.push_back({Wall{fam.gradient, l_above}, 0});
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.wall < b.wall; });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Candidate& a, const Candidate& b) {
                                     return a.wall == b.wall;
                                 }),
                     candidates.end());
    for (auto& c : candidates) c.side = c.wall.eval(base).sign();

    std::vector<Wall> facets;
    for (size_t i = 0; i < candidates.size(); ++i) {
        std::vector<Constraint> cs;
        std::vector<std::pair<QVec, Rat>> eqs;
        for (size_t j = 0; j < candidates.size(); ++j) {
            QVec a(r);
            for (int k = 0; k < r; ++k)
                a[k] = Rat(candidates[j].wall.gradient[k]) * Rat(candidates[j].side);
            Rat b = candidates[j].wall.level * Rat(candidates[j].side);
            if (j == i) eqs.push_back({a, b});
            else cs.push_back(Constraint{a, b, true});
        }
        if (feasible(cs, eqs, r)) facets.push_back(candidates[i].wall);
    }
    std::sort(facets.begin(), facets.end());
    return facets;
}

HeckeAlgebra from_arrangement(const WallArrangement& walls_in, const QVec& base,
                              const OmegaData* omega_in) {
    HeckeAlgebra alg;

    // Essential coordinates: a maximal independent set of family gradients.
    QMat cmat;
    std::vector<size_t> pivots;
    for (size_t i = 0; i < walls_in.families.size(); ++i) {
        QMat probe = cmat;
        probe.push_back(to_qvec(walls_in.families[i].gradient));
        if (rank(probe) > static_cast<int>(cmat.size())) {
            cmat = probe;
            pivots.push_back(i);
        }
    }
    int r = static_cast<int>(cmat.size());
    alg.dim = r;
    alg.walls.dim = r;
    std::vector<std::pair<IVec, Rat>> family_origin; // input gradient, scale
    for (const auto& fam : walls_in.families) {
        QVec coeffs;
        if (!solve_left(cmat, to_qvec(fam.gradient), coeffs))
            throw Error("gradient outside essential span");
        if (is_zero(coeffs)) continue;
        Rat c;
        IVec prim = primitive_vector(coeffs, c);
        WallFamily nf;
        nf.gradient = prim;
        for (const auto& ls : fam.levels) {
            LevelSet scaled{ls.offset / c, (ls.period / c).abs()};
            nf.levels.push_back(scaled.normalized());
        }
        std::sort(nf.levels.begin(), nf.levels.end());
        alg.walls.families.push_back(nf);
        family_origin.push_back({fam.gradient, c});
    }
    alg.base_point.assign(r, Rat(0));
    for (int i = 0; i < r; ++i) alg.base_point[i] = dot(cmat[i], base);

    if (!is_generic(alg.walls, alg.base_point))
        throw ValidationError("from_arrangement: base point lies on a wall");

    std::vector<Wall> facets = chamber_facets(alg.walls, alg.base_point);
    alg.simple_walls = facets;
    for (const auto& f : facets) {
        bool found = false;
        for (size_t fi = 0; fi < alg.walls.families.size(); ++fi) {
            if (alg.walls.families[fi].gradient != f.gradient) continue;
            alg.simple_walls_input.push_back(
                Wall{family_origin[fi].first, f.level * family_origin[fi].second});
            found = true;
            break;
        }
        if (!found) throw Error("facet without a source family");
    }
    alg.cox.num_gens = static_cast<int>(facets.size());

    // Coxeter matrix from pencil counts through codimension-two flats.
    alg.cox.m.assign(alg.cox.num_gens, std::vector<int>(alg.cox.num_gens, 2));
    for (int s = 0; s < alg.cox.num_gens; ++s) alg.cox.m[s][s] = 1;
    for (int s = 0; s < alg.cox.num_gens; ++s)
        for (int t = s + 1; t < alg.cox.num_gens; ++t) {
            if (facets[s].gradient == facets[t].gradient) {
                alg.cox.m[s][t] = alg.cox.m[t][s] = 0; // parallel: infinity
                continue;
            }
            QMat pair{to_qvec(facets[s].gradient), to_qvec(facets[t].gradient)};
            int count = 0;
            for (const auto& fam : alg.walls.families) {
                QVec coeffs;
                if (!solve_left(pair, to_qvec(fam.gradient), coeffs)) continue;
                Rat level_req = coeffs[0] * facets[s].level + coeffs[1] * facets[t].level;
                for (const auto& ls : fam.levels)
                    if (ls.contains(level_req)) { ++count; break; }
            }
            if (count != 2 && count != 3 && count != 4 && count != 6)
                throw ValidationError(
                    "pencil of " + std::to_string(count) +
                    " walls: reflection closure is not an affine Weyl arrangement");
            alg.cox.m[s][t] = alg.cox.m[t][s] = count;
        }

    // Invariant metric from the direction multiset; forced reflections.
    QMat metric(r, QVec(r, Rat(0)));
    for (const auto& fam : alg.walls.families)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                metric[i][j] += Rat(fam.gradient[i]) * Rat(fam.gradient[j]);
    QMat metric_inv = inverse(metric);
    for (const auto& f : facets) {
        QVec d = matvec(metric_inv, to_qvec(f.gradient));
        Rat gd = dot(to_qvec(f.gradient), d);
        QVec dir = scale(Rat(2) / gd, d);
        AffineMap refl;
        refl.linear = qidentity(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                refl.linear[i][j] -= dir[i] * Rat(f.gradient[j]);
        refl.translation = scale(-f.level, dir);
        alg.simple_refl.push_back(refl);
    }

    // Simple reflections must permute the wall families.
    for (const auto& refl : alg.simple_refl) {
        for (const auto& fam : alg.walls.families) {
            for (const auto& ls : fam.levels) {
                QVec g;
                Rat l;
                transform_functional(refl, to_qvec(fam.gradient), ls.offset, g, l);
                Rat c;
                IVec prim = primitive_vector(g, c);
                LevelSet img{l / c, (ls.period / c).abs()};
                img = img.normalized();
                bool found = false;
                for (const auto& other : alg.walls.families) {
                    if (other.gradient != prim) continue;
                    for (const auto& ols : other.levels)
                        if (ols == img) { found = true; break; }
                }
                if (!found)
                    throw ValidationError(
                        "reflection does not preserve the wall arrangement");
            }
        }
    }

    alg.omega = omega_in ? *omega_in : OmegaData::trivial(alg.cox.num_gens);
    validate_omega(alg.omega, alg.cox);
    alg.omega_inverse.assign(alg.omega.size, 0);
    for (int a = 0; a < alg.omega.size; ++a)
        for (int b = 0; b < alg.omega.size; ++b)
            if (alg.omega.table[a][b] == 0) alg.omega_inverse[a] = b;

    alg.intern(AffineMap::identity(r)); // id = 0
    return alg;
}

void validate_parameters(const HeckeAlgebra& alg, const ParameterFunction& params) {
    if (static_cast<int>(params.q.size()) != alg.cox.num_gens)
        throw ValidationError("parameter function size mismatch");
    std::vector<int> cls = alg.generator_classes();
    for (int s = 0; s < alg.cox.num_gens; ++s)
        for (int t = 0; t < alg.cox.num_gens; ++t)
            if (cls[s] == cls[t] && params.q[s] != params.q[t])
                throw ValidationError(
                    "conjugate simple reflections must receive equal parameters");
}

HeckeElement HeckeElement::basis(int omega_idx, int elem_id, const QPoly& c) {
    HeckeElement e;
    if (!c.is_zero()) e.terms[{omega_idx, elem_id}] = c;
    return e;
}

void HeckeElement::add_term(int omega_idx, int elem_id, const QPoly& c) {
    auto key = std::make_pair(omega_idx, elem_id);
    auto it = terms.find(key);
    if (it == terms.end()) {
        if (!c.is_zero()) terms[key] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

HeckeElement operator+(const HeckeElement& a, const HeckeElement& b) {
    HeckeElement r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k.first, k.second, c);
    return r;
}

HeckeElement multiply(const HeckeElement& a, const HeckeElement& b,
                      const HeckeAlgebra& alg, const ParameterFunction& params) {
    validate_parameters(alg, params);
    HeckeElement out;
    for (const auto& [ka, ca] : a.terms) {
        for (const auto& [kb, cb] : b.terms) {
            auto [om_a, w_a] = ka;
            auto [om_b, w_b] = kb;
            // (om_a, w_a)(om_b, w_b) =
            //   mu(om_a, om_b) (om_a om_b, (w_a ^ om_b^-1) * w_b)
            int om = alg.omega.table[om_a][om_b];
            int wa_tw = alg.act_omega(alg.omega_inverse[om_b], w_a);
            QPoly coeff = ca * cb * QPoly(alg.omega.mu[om_a][om_b]);
            // Fold the letters of w_b into T_{wa_tw} one at a time.  Copy the
            // word: interning during the fold may grow the registry.
            std::vector<int> word_b = alg.reduced_word(w_b);
            std::map<int, QPoly> acc{{wa_tw, coeff}};
            for (int s : word_b) {
                std::map<int, QPoly> next;
                for (const auto& [w, c] : acc) {
                    int ws = alg.compose(w, alg.generator_id(s));
                    if (alg.length(ws) > alg.length(w)) {
                        next[ws] += c;
                    } else {
                        QPoly qs = params.q[s];
                        next[w] += c * (qs - QPoly(Rat(1)));
                        next[ws] += c * qs;
                    }
                }
                for (auto it = next.begin(); it != next.end();) {
                    if (it->second.is_zero()) it = next.erase(it);
                    else ++it;
                }
                acc = std::move(next);
            }
            for (const auto& [w, c] : acc) out.add_term(om, w, c);
        }
    }
    return out;
}

HeckeElement anti_involution(const HeckeElement& a, const HeckeAlgebra& alg) {
    HeckeElement out;
    for (const auto& [k, c] : a.terms) {
        auto [om, w] = k;
        int om_inv = alg.omega_inverse[om];
        // (om w)^{-1} = om^{-1} (w^{-1} acted on by om)
        int w_inv = alg.act_omega(om, alg.inverse_id(w));
        out.add_term(om_inv, w_inv, c);
    }
    return out;
}

HeckeElement specialize(const HeckeElement& a, const Rat& q_value) {
    HeckeElement out;
    for (const auto& [k, c] : a.terms)
        out.add_term(k.first, k.second, QPoly(c.evaluate(q_value)));
    return out;
}

} // namespace hecke
