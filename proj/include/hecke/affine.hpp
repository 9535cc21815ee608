#pragma once

// Affine root systems with level data: an affine root is a functional
// a(x) = <alpha, x> + l on the apartment X_*(T) x Q, where alpha runs over
// the gradient roots and l over an arithmetic progression Gamma_alpha.
// Level sets are stored as (offset, period) pairs, never enumerated; all
// queries work on bounded windows computed from the query point.

#include <optional>
#include <vector>

#include "hecke/rootdata.hpp"

namespace hecke {

struct LevelSet {
    Rat offset; // representative in [0, period)
    Rat period; // > 0

    bool contains(const Rat& l) const { return ((l - offset) / period).is_integer(); }
    LevelSet normalized() const {
        LevelSet s{offset, period};
        s.offset = offset - Rat(((offset) / period).floor()) * period;
        return s;
    }
    bool operator==(const LevelSet& o) const {
        return offset == o.offset && period == o.period;
    }
    bool operator<(const LevelSet& o) const {
        if (period != o.period) return period < o.period;
        return offset < o.offset;
    }
};

struct AffineRootSystem {
    int rank = 0;                 // ambient dimension of the apartment
    std::vector<QVec> gradients;  // D_T(a), character side (rational)
    std::vector<QVec> cogradients; // corresponding coroots
    std::vector<LevelSet> levels; // aligned with gradients

    bool empty() const { return gradients.empty(); }
    int gradient_index(const QVec& g) const;
    // Is the functional <g, .> + l an affine root of the system?
    bool contains(const QVec& g, const Rat& l) const;
};

// An affine transformation x -> linear * x + translation of the apartment.
struct AffineMap {
    QMat linear;
    QVec translation;

    QVec apply(const QVec& x) const { return add(matvec(linear, x), translation); }
    static AffineMap identity(int n) { return {qidentity(n), QVec(n, Rat(0))}; }
};

struct ExtendedAffineElement {
    QMat derivative;  // linear part, acting on the apartment
    QVec translation; // w = (translate by translation) o (fix x_s, derivative)
};

// The affine slice x0 + span(directions) of the apartment on which the
// Levi-restricted arrangement lives.  Directions are a basis of the
// Frobenius-fixed part of the common kernel of the Levi roots.
struct ApartmentSubspace {
    QVec base;                   // x0
    std::vector<QVec> directions;
};

// A family of restricted affine functionals t -> <grad, t> + l with l in the
// given level sets, in the coordinates of an ApartmentSubspace.
struct RestrictedFamily {
    QVec gradient;
    std::vector<LevelSet> levels; // distinct progressions, sorted
};

struct LeviArrangement {
    int dim = 0; // dimension of the subspace coordinates
    std::vector<RestrictedFamily> families;
};

// A family of parallel walls { <grad, t> + l = 0 : l in levels }, with the
// gradient normalized to a primitive integer covector with positive leading
// entry.  Proportional functionals merge into one wall family.
struct WallFamily {
    IVec gradient;
    std::vector<LevelSet> levels;
};

struct WallArrangement {
    int dim = 0;
    std::vector<WallFamily> families;
};

// One concrete wall of a WallArrangement.
struct Wall {
    IVec gradient;
    Rat level;
    bool operator==(const Wall& o) const {
        return gradient == o.gradient && level == o.level;
    }
    bool operator<(const Wall& o) const {
        if (gradient != o.gradient) return gradient < o.gradient;
        return level < o.level;
    }
    Rat eval(const QVec& x) const {
        Rat r = level;
        for (size_t i = 0; i < gradient.size(); ++i) r += Rat(gradient[i]) * x[i];
        return r;
    }
};

AffineRootSystem from_split(const RootDatum& d);

// Builds the system with explicit level data (one progression per root,
// aligned with d.roots); validates reflection stability on a window.
AffineRootSystem from_levels(const RootDatum& d, const std::vector<LevelSet>& levels);

// Reflection-closure check on a window of levels; throws ValidationError.
void validate_affine_system(const AffineRootSystem& s);

// { D_T(a) : a(x) = 0 }, as indices into s.gradients.
std::vector<int> reductive_quotient_roots(const AffineRootSystem& s, const QVec& x);

bool is_special_point(const AffineRootSystem& s, const QVec& x);

// Decomposes w = (translation) o (part fixing x_s); requires x_s special and
// w to normalize the affine root set.
ExtendedAffineElement split_at_special_point(const AffineRootSystem& s,
                                             const QVec& x_s, const AffineMap& w);

// Restrictions of the affine roots whose gradients are not Levi roots to the
// subspace, i.e. all non-constant restrictions; exact duplicates merged.
LeviArrangement restrict_to_levi(const AffineRootSystem& s,
                                 const std::vector<int>& levi_gradients,
                                 const ApartmentSubspace& sub);

WallArrangement walls_of(const LeviArrangement& arr);

bool is_generic(const WallArrangement& walls, const QVec& x);

// Walls separating x from y strictly; throws if either point is non-generic.
std::vector<Wall> separation_set(const WallArrangement& walls, const QVec& x,
                                 const QVec& y);

// The unique point of H on the open segment (x, y); requires the segment to
// cross H properly.
QVec midpoint_on_wall(const QVec& x, const QVec& y, const Wall& h);

// Action of an affine map on an affine functional: (g, l) o m^{-1}.
void transform_functional(const AffineMap& m, const QVec& g, const Rat& l,
                          QVec& g_out, Rat& l_out);

} // namespace hecke
