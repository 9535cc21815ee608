#pragma once

// Brute-force oracle over small matrix groups: GL_n and SL_n over F_q for
// prime powers q <= 9 and n <= 3, with full element enumeration, marked
// standard subgroups, double cosets, and exact q-parameter computation for
// induced modules with one-dimensional inducing characters.

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/cyclotomic.hpp"

namespace hecke {

// Finite field F_q, q = p^e <= 9, with table arithmetic.
struct Fq {
    int q = 2, p = 2, e = 1;
    std::vector<uint8_t> add_tab, mul_tab, inv_tab, neg_tab;
    int generator = 1;      // a generator of the multiplicative group
    std::vector<int> log_tab; // discrete log base generator, log_tab[0] unused

    static const Fq& get(int q);
    uint8_t add(uint8_t a, uint8_t b) const { return add_tab[a * q + b]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_tab[a * q + b]; }
    uint8_t neg(uint8_t a) const { return neg_tab[a]; }
    uint8_t inv(uint8_t a) const { return inv_tab[a]; }
    int log(uint8_t a) const { return log_tab[a]; } // a != 0
};

// A square matrix over F_q, degree <= 3, stored row major.
struct GMat {
    std::array<uint8_t, 9> a{};
    uint8_t n = 0;

    uint8_t& at(int i, int j) { return a[i * n + j]; }
    uint8_t at(int i, int j) const { return a[i * n + j]; }
    uint64_t key() const {
        uint64_t k = n;
        for (int i = 0; i < n * n; ++i) k = (k << 4) | a[i];
        return k;
    }
    bool operator==(const GMat& o) const { return n == o.n && a == o.a; }
};

enum class GroupFamily { GL, SL };

struct FiniteMatrixGroup {
    GroupFamily family = GroupFamily::GL;
    int n = 2;
    int q = 2;
    std::vector<GMat> elems;
    std::unordered_map<uint64_t, int> index;

    // Marked subgroups as sorted element-index lists.
    std::vector<int> torus;        // diagonal
    std::vector<int> borel;        // upper triangular
    std::vector<int> borel_opp;    // lower triangular
    std::vector<int> parabolic21;  // block upper (2,1), n = 3 only
    std::vector<int> parabolic12;  // block upper (1,2), n = 3 only

    const Fq& field() const { return Fq::get(q); }
    int mul(int i, int j) const;
    int inv(int i) const;
    int id() const { return identity_index; }
    int index_of(const GMat& m) const;

    int identity_index = 0;
};

// Enumerates the group; throws when the group order exceeds the bound.
FiniteMatrixGroup build_group(GroupFamily family, int n, int q,
                              long long order_bound = 1000000);

// A parabolic subgroup given by its element list and diagonal block sizes
// (block structure is what one-dimensional characters see).
struct ParabolicHandle {
    std::vector<int> elems;
    std::vector<int> blocks; // e.g. {1,1} for the Borel of GL_2, {2,1} for P21
    bool lower = false;      // opposite parabolic (block lower triangular)
};

ParabolicHandle borel_of(const FiniteMatrixGroup& g);
ParabolicHandle opposite_borel_of(const FiniteMatrixGroup& g);
ParabolicHandle parabolic_of(const FiniteMatrixGroup& g, const std::vector<int>& blocks);

// One-dimensional character data on a parabolic: chi^{r_b}(det of block b),
// where chi is the fixed injective character of F_q^* of order q-1 sending
// the chosen generator to zeta_{q-1}.  Exponents must be constant on blocks.
struct TorusCharacter {
    std::vector<int> exponents; // one per diagonal entry

    // Character order: the conductor of the values is q-1 (or 1 when q = 2).
    static int conductor(int q) { return q == 2 ? 1 : q - 1; }
};

// Value of the character on an element of the parabolic.
Cyc character_value(const FiniteMatrixGroup& g, const ParabolicHandle& p,
                    const TorusCharacter& chi, int elem);

struct DoubleCoset {
    int representative;
    long long size;
};

std::vector<DoubleCoset> double_cosets(const FiniteMatrixGroup& g,
                                       const std::vector<int>& p,
                                       const std::vector<int>& q);

// The induced module Ind_P^G(chi) with basis indexed by cosets P\G.
struct InducedModule {
    const FiniteMatrixGroup* group = nullptr;
    ParabolicHandle parabolic;
    TorusCharacter chi;
    int conductor = 1;
    std::vector<int> coset_reps;
    std::vector<int> coset_of; // element index -> coset number

    int dim() const { return static_cast<int>(coset_reps.size()); }
    // Matrix of the intertwining operator attached to the double coset of w.
    CycMat coset_operator(int w) const;
    // Matrix of the right translation by g (for spot checks).
    CycMat right_action(int g) const;
};

InducedModule induce(const FiniteMatrixGroup& g, const ParabolicHandle& p,
                     const TorusCharacter& chi);

// Principal series: induction from the Borel.
InducedModule principal_series(const FiniteMatrixGroup& g, const TorusCharacter& chi);

struct QParameterResult {
    int end_dim = 1;           // dimension of the endomorphism algebra
    long long dim_large = 0;   // constituent dimensions when length two
    long long dim_small = 0;
    Rat q_value = Rat(1);
    Cyc rel_a, rel_b;          // T^2 = a T + b when end_dim == 2
    int module_dim = 0;
};

// Exact q-parameter of Ind_P^G(chi).  Requires the theta-intertwining
// double-coset count to be <= 2; computes constituent dimensions by trial
// division of the characteristic polynomial by the quadratic relation and
// cross-validates against the eigenvalue-ratio route.
QParameterResult q_parameter(const FiniteMatrixGroup& g, const ParabolicHandle& p,
                             const TorusCharacter& chi);

struct TransferReport {
    QParameterResult big;
    QParameterResult small;
    bool equal = false;
};

// Compares the q-parameters of Ind_{P'}^{G'}(chi) and Ind_{P' cap G}^{G}(chi)
// for a normal subgroup G of G' with abelian quotient and G' = P' * G.
// The subgroup is passed as an element list inside g_big.
TransferReport check_transfer(const FiniteMatrixGroup& g_big,
                              const std::vector<int>& g_small,
                              const ParabolicHandle& p_big,
                              const TorusCharacter& chi);

} // namespace hecke
