#pragma once

// Generic affine Hecke algebras with parameter functions and a twisted
// group-algebra extension.  The Coxeter presentation is derived from a wall
// arrangement: simple reflections are the facets of the chamber containing
// the base point, the Coxeter matrix comes from counting the walls through
// each codimension-two intersection, and group elements are realized as
// exact affine transformations of the essential quotient of the apartment
// slice.

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "hecke/affine.hpp"
#include "hecke/laurent.hpp"

namespace hecke {

struct CoxeterPresentation {
    int num_gens = 0;
    std::vector<std::vector<int>> m; // m[s][t] in {2,3,4,6}; 0 encodes infinity
};

// Abstract symmetry group acting on the presentation by diagram
// automorphisms, with a 2-cocycle twisting its group algebra.  The paper's
// Omega carries representation-theoretic content that is consumed here as
// plain data; the default is the trivial group with the trivial cocycle.
struct OmegaData {
    int size = 1;
    std::vector<std::vector<int>> table;    // table[a][b] = a*b, identity = 0
    std::vector<std::vector<int>> s_action; // s_action[a][s] = image of s under a
    std::vector<std::vector<Rat>> mu;       // cocycle values, nonzero

    static OmegaData trivial(int num_gens);
};

struct ParameterFunction {
    std::vector<QPoly> q; // per simple reflection
};

class HeckeAlgebra {
public:
    CoxeterPresentation cox;
    OmegaData omega;
    int dim = 0;                  // essential coordinates
    WallArrangement walls;        // in essential coordinates
    QVec base_point;              // image of x0, interior to the base chamber
    std::vector<Wall> simple_walls;       // essential coordinates
    std::vector<Wall> simple_walls_input; // original input coordinates
    std::vector<AffineMap> simple_refl;
    std::vector<int> omega_inverse;

    int identity_id() const { return 0; }
    int intern(const AffineMap& m) const;
    int compose(int a, int b) const;          // element a * element b
    int generator_id(int s) const;
    long long length(int id) const;
    const std::vector<int>& reduced_word(int id) const; // canonical, left-greedy
    int id_of_word(const std::vector<int>& word) const;
    int inverse_id(int id) const;
    int act_omega(int a, int id) const;       // diagram automorphism on elements
    const AffineMap& element(int id) const { return elements_[id]; }
    size_t element_count() const { return elements_.size(); }

    // True when s and t are conjugate in the Coxeter group (odd-edge paths)
    // or identified by the omega action.
    std::vector<int> generator_classes() const;

private:
    mutable std::vector<AffineMap> elements_;
    mutable std::unordered_map<std::string, int> ids_;
    mutable std::vector<long long> length_;
    mutable std::vector<std::vector<int>> words_;
    friend HeckeAlgebra from_arrangement(const WallArrangement&, const QVec&,
                                         const OmegaData*);
};

// Builds the algebra descriptor from a wall arrangement and the symmetry
// data (nullptr = trivial); throws ValidationError when the reflections do
// not preserve the arrangement or a pencil count falls outside {2,3,4,6}.
HeckeAlgebra from_arrangement(const WallArrangement& walls, const QVec& base,
                              const OmegaData* omega = nullptr);

// Facets of the chamber of `base` in the arrangement (in the arrangement's
// own coordinates, no essentialization).
std::vector<Wall> chamber_facets(const WallArrangement& walls, const QVec& base);

// Requires parameters constant on conjugacy/omega classes of generators.
void validate_parameters(const HeckeAlgebra& alg, const ParameterFunction& params);

struct HeckeElement {
    // (omega index, group element id) -> coefficient
    std::map<std::pair<int, int>, QPoly> terms;

    static HeckeElement basis(int omega_idx, int elem_id, const QPoly& c = QPoly(Rat(1)));
    bool is_zero() const { return terms.empty(); }
    void add_term(int omega_idx, int elem_id, const QPoly& c);
    friend HeckeElement operator+(const HeckeElement& a, const HeckeElement& b);
    friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
        return a.terms == b.terms;
    }
};

HeckeElement multiply(const HeckeElement& a, const HeckeElement& b,
                      const HeckeAlgebra& alg, const ParameterFunction& params);

HeckeElement anti_involution(const HeckeElement& a, const HeckeAlgebra& alg);

// Substitutes a positive rational for the formal symbol q.
HeckeElement specialize(const HeckeElement& a, const Rat& q_value);

} // namespace hecke
