#pragma once

// Root data in the combinatorial sense: character lattice Z^rank with a list
// of roots, cocharacter lattice Z^rank with the corresponding coroots, and
// the standard dot pairing between the two.  A Frobenius action is a single
// finite-order lattice automorphism.

#include <optional>
#include <string>
#include <vector>

#include "hecke/linalg.hpp"

namespace hecke {

struct RootDatum {
    int rank = 0;
    std::vector<IVec> roots;   // character lattice vectors
    std::vector<IVec> coroots; // cocharacter lattice vectors, index-aligned
};

struct FrobeniusAction {
    IMat matrix; // acts on the character lattice, chi -> matrix * chi
    int order = 1;

    static FrobeniusAction identity(int rank);
    // Induced action on the cocharacter lattice (inverse transpose).
    QMat cocharacter_matrix() const;
};

struct CartanType {
    char family = 'A';
    int rank = 0;
    std::string str() const { return std::string(1, family) + std::to_string(rank); }
};

struct OrbitLabel {
    CartanType type;      // type of one irreducible component
    int components = 1;   // number of components in the Frobenius orbit
    int twist = 1;        // order of the diagram automorphism induced on one component
    std::string str() const;
};

struct OrbitDecomposition {
    std::vector<std::vector<int>> components; // root indices per component
    std::vector<std::vector<int>> orbits;     // component indices per Frobenius orbit
    std::vector<OrbitLabel> labels;           // aligned with orbits
};

struct WeylElement {
    QMat char_matrix;      // action on the character lattice
    std::vector<int> word; // simple-reflection indices, reduced
};

struct WeylGroup {
    std::vector<IVec> simple_roots;
    std::vector<IVec> simple_coroots;
    std::vector<WeylElement> elements;
};

// Validates the RootDatum invariants and returns the datum; throws
// ValidationError naming the first violated invariant.
RootDatum validate_root_datum(int rank, std::vector<IVec> roots,
                              std::vector<IVec> coroots);

// Validates a Frobenius action against a datum.
FrobeniusAction validate_frobenius(const RootDatum& d, IMat matrix, int order);

RootDatum dual_datum(const RootDatum& d);

OrbitDecomposition decompose_orbits(const RootDatum& d, const FrobeniusAction& f);

WeylGroup weyl_group(const RootDatum& d, size_t size_bound = 100000);

// A root system presented by rational root/coroot vectors under the dot
// pairing; used for subsystems living inside larger data (e.g. reductive
// quotients, normalized theta systems).
struct RootSystemView {
    std::vector<QVec> roots;
    std::vector<QVec> coroots;
    std::vector<int> levi;   // indices into roots
    QMat frobenius_char;     // action on the span of roots (character side)
};

struct DualsWitness {
    bool direct = false; // true: orbit matched directly, false: via duals
    int orbit_from = 0;
    int orbit_to = 0;
};

struct DualsDecision {
    bool isomorphic = false;
    std::vector<DualsWitness> witnesses;
    std::string reason; // set when not isomorphic
};

// Tests whether two (system, Levi) pairs with Frobenius actions are
// isomorphic orbit-by-orbit, allowing each orbit to be matched either
// directly or through its dual, with Galois-equivariant root-system maps
// restricting compatibly to the Levi subsets.
DualsDecision isomorphic_up_to_duals(const RootSystemView& a, const RootSystemView& b);

// --- helpers shared by other modules ---

// Deterministic vector not orthogonal to any of the given (nonzero) covectors.
QVec generic_vector(const std::vector<QVec>& covectors, int dim);

// Simple system of the root set that is positive on `positive_on`.
std::vector<int> simple_system(const std::vector<QVec>& roots, const QVec& positive_on);

// Cartan type of an irreducible root system given by (roots, coroots).
CartanType classify_component(const std::vector<QVec>& roots,
                              const std::vector<QVec>& coroots);

// Connected components of the root graph (edges where the pairing is nonzero).
std::vector<std::vector<int>> root_components(const std::vector<QVec>& roots,
                                              const std::vector<QVec>& coroots);

// Frobenius-orbit labels of an arbitrary rational root system; sorted by
// label string for deterministic output.
std::vector<OrbitLabel> orbit_labels(const std::vector<QVec>& roots,
                                     const std::vector<QVec>& coroots,
                                     const QMat& frob_char);

} // namespace hecke
