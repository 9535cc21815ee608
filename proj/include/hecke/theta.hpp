#pragma once

// The theta-side constructions: orthogonal root subsystems, normalization of
// ramified level data by the minimal scaling factors r_a, the resulting group
// datum on saturated lattices with its descended Frobenius action, the Levi
// inside it, and the wall-inclusion certificate.

#include <map>

#include "hecke/affine.hpp"
#include "hecke/rootdata.hpp"

namespace hecke {

struct ThetaDatum {
    QVec s;                // dual parameter in (Q/Z)^rank, entries in [0,1)
    FrobeniusAction frob;
};

// Validates Frobenius stability of s mod 1 and bounded denominators.
ThetaDatum make_theta_datum(const RootDatum& d, QVec s, FrobeniusAction frob,
                            long long max_denominator = 720720);

// { alpha : <s, alpha_vee> = 0 mod 1 }, as indices into d.roots.
std::vector<int> theta_root_subsystem(const RootDatum& d, const ThetaDatum& t);

// Restriction of the level data to gradients in the subsystem.
AffineRootSystem theta_affine_subsystem(const AffineRootSystem& s,
                                        const std::vector<int>& subsystem);

struct NormalizedSystem {
    AffineRootSystem base;       // the theta affine subsystem
    QVec x_s;                    // the chosen special point
    std::map<int, Rat> scale;    // base gradient index -> r_a (vanishing at x_s)
    AffineRootSystem normalized; // gradients D_T(a)/r_a with their level sets
};

// Deterministic special point: the lexicographically smallest special vertex
// adjacent to the alcove of the origin (perturbed by the reference vector).
QVec choose_special_point(const AffineRootSystem& s);

NormalizedSystem normalize(const AffineRootSystem& s_theta, const QVec& x_s);

struct ThetaGroupDatum {
    RootDatum datum;        // in coordinates of the saturated lattices
    FrobeniusAction frob;   // descended action on the new character lattice
    std::vector<int> levi;  // root indices of the Levi M_theta
    QMat cochar_basis;      // rows: basis of X_*(T)_theta in the old coordinates
    QMat char_to_new;       // old fractional character coords -> new coords
    QMat frob_char_old;     // descended action in the old character coordinates
    std::vector<QVec> roots_old_coords;   // Phi_norm in the old coordinates
    std::vector<QVec> coroots_old_coords; // r_a * D_T(a)_vee in the old coordinates
};

// Saturates the cocharacter lattice by the normalized coroots, re-expresses
// the datum, and descends the Frobenius through the unique w_gamma with
// gamma(Delta) = D(w_gamma)(Delta) and gamma(x_s) = w_gamma(x_s).
ThetaGroupDatum build_theta_datum(const RootDatum& d, const NormalizedSystem& n,
                                  const FrobeniusAction& f);

// Roots of G_theta in the rational span of the Levi roots of M, as indices
// into g.datum.roots.
std::vector<int> build_theta_levi(const ThetaGroupDatum& g,
                                  const std::vector<QVec>& levi_roots_of_m);

struct ThetaWalls {
    WallArrangement theta_walls;    // walls of the G_theta arrangement
    bool inclusion_certified = false; // every theta wall is a wall of ambient
};

// Certifies the inclusion of the theta wall set in the ambient wall set;
// throws CertificateError when a theta wall does not appear among the
// ambient walls.
ThetaWalls theta_walls(const WallArrangement& ambient, const WallArrangement& theta);

} // namespace hecke
