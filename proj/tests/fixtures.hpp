#pragma once

// Shared root-datum fixtures for the test suites.

#include "hecke/affine.hpp"
#include "hecke/rootdata.hpp"

namespace hecke::fixtures {

inline RootDatum sl2() {
    return validate_root_datum(1, {{2}, {-2}}, {{1}, {-1}});
}

inline RootDatum pgl2() {
    return validate_root_datum(1, {{1}, {-1}}, {{2}, {-2}});
}

inline RootDatum gl2() {
    return validate_root_datum(2, {{1, -1}, {-1, 1}}, {{1, -1}, {-1, 1}});
}

// Simply connected A2 in weight coordinates.
inline RootDatum sl3() {
    return validate_root_datum(
        2, {{2, -1}, {-1, 2}, {1, 1}, {-2, 1}, {1, -2}, {-1, -1}},
        {{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}});
}

inline RootDatum gl3() {
    return validate_root_datum(3,
                               {{1, -1, 0},
                                {-1, 1, 0},
                                {1, 0, -1},
                                {-1, 0, 1},
                                {0, 1, -1},
                                {0, -1, 1}},
                               {{1, -1, 0},
                                {-1, 1, 0},
                                {1, 0, -1},
                                {-1, 0, 1},
                                {0, 1, -1},
                                {0, -1, 1}});
}

// C2: long roots +-2e_i, short roots +-e1+-e2.
inline RootDatum sp4() {
    return validate_root_datum(2,
                               {{1, -1},
                                {-1, 1},
                                {1, 1},
                                {-1, -1},
                                {2, 0},
                                {-2, 0},
                                {0, 2},
                                {0, -2}},
                               {{1, -1},
                                {-1, 1},
                                {1, 1},
                                {-1, -1},
                                {1, 0},
                                {-1, 0},
                                {0, 1},
                                {0, -1}});
}

inline RootDatum sl2xsl2() {
    return validate_root_datum(2, {{2, 0}, {-2, 0}, {0, 2}, {0, -2}},
                               {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

inline FrobeniusAction swap_frobenius(const RootDatum& d) {
    return validate_frobenius(d, {{0, 1}, {1, 0}}, 2);
}

// Diagram flip of the sl3 presentation (swaps the two simple roots).
inline FrobeniusAction sl3_flip() {
    return validate_frobenius(sl3(), {{0, 1}, {1, 0}}, 2);
}

inline RootSystemView view_of(const RootDatum& d, std::vector<int> levi = {},
                              const FrobeniusAction* f = nullptr) {
    RootSystemView v;
    for (const auto& r : d.roots) v.roots.push_back(to_qvec(r));
    for (const auto& r : d.coroots) v.coroots.push_back(to_qvec(r));
    v.levi = std::move(levi);
    v.frobenius_char = f ? to_qmat(f->matrix) : qidentity(d.rank);
    return v;
}

inline int root_index(const RootDatum& d, const IVec& v) {
    for (size_t i = 0; i < d.roots.size(); ++i)
        if (d.roots[i] == v) return static_cast<int>(i);
    return -1;
}

} // namespace hecke::fixtures
