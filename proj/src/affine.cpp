#include "hecke/affine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hecke {

int AffineRootSystem::gradient_index(const QVec& g) const {
    for (size_t i = 0; i < gradients.size(); ++i)
        if (gradients[i] == g) return static_cast<int>(i);
    return -1;
}

bool AffineRootSystem::contains(const QVec& g, const Rat& l) const {
    int i = gradient_index(g);
    return i >= 0 && levels[i].contains(l);
}

// Verifies the affine reflection closure on a window of levels around 0:
// s_a(b) must land back in the level sets for all window pairs (a, b).
void validate_affine_system(const AffineRootSystem& s) {
    const long long window = 2;
    for (size_t ia = 0; ia < s.gradients.size(); ++ia) {
        for (long long ka = -window; ka <= window; ++ka) {
            Rat la = s.levels[ia].offset + Rat(ka) * s.levels[ia].period;
            // s_a(x) = x - a(x) * alpha_a_vee ; action on functional b:
            // b o s_a = b - <g_b, coga> * a   (as affine functionals)
            for (size_t ib = 0; ib < s.gradients.size(); ++ib) {
                Rat c = dot(s.gradients[ib], s.cogradients[ia]);
                if (c.is_zero()) continue;
                for (long long kb = -window; kb <= window; ++kb) {
                    Rat lb = s.levels[ib].offset + Rat(kb) * s.levels[ib].period;
                    QVec g = sub(s.gradients[ib], scale(c, s.gradients[ia]));
                    Rat l = lb - c * la;
                    if (is_zero(g)) {
                        if (!l.is_zero())
                            throw ValidationError("affine reflection produced a constant");
                        continue;
                    }
                    if (!s.contains(g, l))
                        throw ValidationError(
                            "level data not stable under affine reflections");
                }
            }
        }
    }
}

AffineRootSystem from_split(const RootDatum& d) {
    std::vector<LevelSet> levels(d.roots.size(), LevelSet{Rat(0), Rat(1)});
    return from_levels(d, levels);
}

AffineRootSystem from_levels(const RootDatum& d, const std::vector<LevelSet>& levels) {
    if (levels.size() != d.roots.size())
        throw ValidationError("level data must align with the root list");
    AffineRootSystem s;
    s.rank = d.rank;
    for (const auto& r : d.roots) s.gradients.push_back(to_qvec(r));
    for (const auto& r : d.coroots) s.cogradients.push_back(to_qvec(r));
    for (const auto& l : levels) {
        if (!(l.period > Rat(0)))
            throw ValidationError("level period must be positive");
        s.levels.push_back(l.normalized());
    }
    validate_affine_system(s);
    return s;
}

std::vector<int> reductive_quotient_roots(const AffineRootSystem& s, const QVec& x) {
    std::vector<int> out;
    for (size_t i = 0; i < s.gradients.size(); ++i) {
        Rat v = dot(s.gradients[i], x);
        if (s.levels[i].contains(-v)) out.push_back(static_cast<int>(i));
    }
    return out;
}

bool is_special_point(const AffineRootSystem& s, const QVec& x) {
    return reductive_quotient_roots(s, x).size() == s.gradients.size();
}

void transform_functional(const AffineMap& m, const QVec& g, const Rat& l,
                          QVec& g_out, Rat& l_out) {
    // (a o m^{-1})(x) = <g, m^{-1} x> + l ; with m^{-1} x = L^{-1}(x - v):
    // gradient g o L^{-1}, level l - <g, L^{-1} v>.
    QMat linv = inverse(m.linear);
    QVec gl(g.size(), Rat(0));
    for (size_t j = 0; j < g.size(); ++j)
        for (size_t i = 0; i < g.size(); ++i) gl[j] += g[i] * linv[i][j];
    g_out = gl;
    l_out = l - dot(gl, m.translation);
}

namespace {

// Does the affine map stabilize the affine root set?  Checked per family:
// the transformed family must coincide with an existing family.
bool normalizes(const AffineRootSystem& s, const AffineMap& m) {
    for (size_t i = 0; i < s.gradients.size(); ++i) {
        QVec g;
        Rat l0;
        transform_functional(m, s.gradients[i], s.levels[i].offset, g, l0);
        int j = s.gradient_index(g);
        if (j < 0) return false;
        if (s.levels[j].period != s.levels[i].period) return false;
        if (!s.levels[j].contains(l0)) return false;
    }
    return true;
}

} // namespace

ExtendedAffineElement split_at_special_point(const AffineRootSystem& s,
                                             const QVec& x_s, const AffineMap& w) {
    if (!is_special_point(s, x_s))
        throw ValidationError("split_at_special_point: point is not special");
    if (!normalizes(s, w))
        throw ValidationError(
            "split_at_special_point: map does not normalize the affine root set");
    ExtendedAffineElement e;
    e.derivative = w.linear;
    e.translation = sub(w.apply(x_s), x_s);
    return e;
}

LeviArrangement restrict_to_levi(const AffineRootSystem& s,
                                 const std::vector<int>& levi_gradients,
                                 const ApartmentSubspace& sub) {
    // Precondition: the directions span the common kernel of the Levi roots.
    for (int li : levi_gradients)
        for (const auto& dir : sub.directions)
            if (!dot(s.gradients[li], dir).is_zero())
                throw ValidationError(
                    "subspace directions are not killed by the Levi roots");

    LeviArrangement arr;
    arr.dim = static_cast<int>(sub.directions.size());
    std::set<int> levi(levi_gradients.begin(), levi_gradients.end());
    for (size_t i = 0; i < s.gradients.size(); ++i) {
        if (levi.count(static_cast<int>(i))) continue;
        QVec g(arr.dim);
        for (int j = 0; j < arr.dim; ++j) g[j] = dot(s.gradients[i], sub.directions[j]);
        if (is_zero(g)) continue; // constant restriction, dropped
        Rat base = dot(s.gradients[i], sub.base);
        LevelSet ls{(s.levels[i].offset + base), s.levels[i].period};
        ls = ls.normalized();
        bool merged = false;
        for (auto& fam : arr.families) {
            if (fam.gradient != g) continue;
            merged = true;
            if (std::find(fam.levels.begin(), fam.levels.end(), ls) == fam.levels.end())
                fam.levels.push_back(ls);
        }
        if (!merged) arr.families.push_back(RestrictedFamily{g, {ls}});
    }
    for (auto& fam : arr.families) std::sort(fam.levels.begin(), fam.levels.end());
    std::sort(arr.families.begin(), arr.families.end(),
              [](const RestrictedFamily& a, const RestrictedFamily& b) {
                  return a.gradient < b.gradient;
              });
    return arr;
}

WallArrangement walls_of(const LeviArrangement& arr) {
    WallArrangement w;
    w.dim = arr.dim;
    std::map<IVec, std::vector<LevelSet>> fams;
    for (const auto& fam : arr.families) {
        Rat c;
        IVec prim = primitive_vector(fam.gradient, c);
        // <g, t> + l = 0  <=>  <prim, t> + l/c = 0
        for (const auto& ls : fam.levels) {
            LevelSet scaled{ls.offset / c, (ls.period / c).abs()};
            scaled = scaled.normalized();
            auto& list = fams[prim];
            if (std::find(list.begin(), list.end(), scaled) == list.end())
                list.push_back(scaled);
        }
    }
    for (auto& [g, levels] : fams) {
        std::sort(levels.begin(), levels.end());
        // Drop progressions contained in another progression of the family.
        std::vector<LevelSet> kept;
        for (size_t i = 0; i < levels.size(); ++i) {
            bool redundant = false;
            for (size_t j = 0; j < levels.size() && !redundant; ++j) {
                if (i == j) continue;
                if ((levels[i].period / levels[j].period).is_integer() &&
                    levels[j].contains(levels[i].offset))
                    redundant = true;
            }
            if (!redundant) kept.push_back(levels[i]);
        }
        w.families.push_back(WallFamily{g, kept});
    }
    return w;
}

namespace {

// All levels of the progression lying in the open interval (lo, hi).
std::vector<Rat> levels_in(const LevelSet& ls, const Rat& lo, const Rat& hi) {
    std::vector<Rat> out;
    if (!(lo < hi)) return out;
    // smallest k with offset + k*period > lo
    Rat k0 = (lo - ls.offset) / ls.period;
    long long k = k0.floor() + 1;
    for (Rat l = ls.offset + Rat(k) * ls.period; l < hi; l += ls.period)
        if (l > lo) out.push_back(l);
    return out;
}

} // namespace

bool is_generic(const WallArrangement& walls, const QVec& x) {
    for (const auto& fam : walls.families) {
        Rat v(0);
        for (size_t i = 0; i < fam.gradient.size(); ++i)
            v += Rat(fam.gradient[i]) * x[i];
        for (const auto& ls : fam.levels)
            if (ls.contains(-v)) return false;
    }
    return true;
}

std::vector<Wall> separation_set(const WallArrangement& walls, const QVec& x,
                                 const QVec& y) {
    if (!is_generic(walls, x)) throw ValidationError("separation_set: x lies on a wall");
    if (!is_generic(walls, y)) throw ValidationError("separation_set: y lies on a wall");
    std::vector<Wall> out;
    for (const auto& fam : walls.families) {
        Rat vx(0), vy(0);
        for (size_t i = 0; i < fam.gradient.size(); ++i) {
            vx += Rat(fam.gradient[i]) * x[i];
            vy += Rat(fam.gradient[i]) * y[i];
        }
        // Wall <g,t> + l = 0 separates iff -l lies strictly between vx and vy.
        Rat lo = vx < vy ? vx : vy, hi = vx < vy ? vy : vx;
        for (const auto& ls : fam.levels)
            for (const Rat& nl : levels_in(ls, lo, hi))
                out.push_back(Wall{fam.gradient, -nl});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QVec midpoint_on_wall(const QVec& x, const QVec& y, const Wall& h) {
    Rat vx = h.eval(x), vy = h.eval(y);
    if (vx.is_zero() || vy.is_zero() || vx.sign() == vy.sign())
        throw ValidationError("midpoint_on_wall: segment does not cross the wall");
    Rat t = vx / (vx - vy);
    QVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + t * (y[i] - x[i]);
    return out;
}

} // namespace hecke
