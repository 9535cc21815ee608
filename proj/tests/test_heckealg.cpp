#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "hecke/heckealg.hpp"

using namespace hecke;
namespace fx = hecke::fixtures;

namespace {

// Walls of the full apartment arrangement for a split datum with M = T.
WallArrangement arrangement_of(const RootDatum& d) {
    AffineRootSystem s = from_split(d);
    ApartmentSubspace sub;
    sub.base.assign(d.rank, Rat(0));
    for (int i = 0; i < d.rank; ++i) {
        QVec e(d.rank, Rat(0));
        e[i] = Rat(1);
        sub.directions.push_back(e);
    }
    return walls_of(restrict_to_levi(s, {}, sub));
}

QVec generic_base(const WallArrangement& w) {
    // A deterministic interior point of some alcove.
    QVec x(w.dim, Rat(0));
    Rat step(1, 5);
    for (int i = 0; i < w.dim; ++i) {
        x[i] = step;
        step = step * Rat(1, 3);
    }
    return x;
}

ParameterFunction equal_params(const HeckeAlgebra& alg, const QPoly& q) {
    return ParameterFunction{std::vector<QPoly>(alg.cox.num_gens, q)};
}

QPoly qsym() { return QPoly::monomial(Rat(1)); }

HeckeElement t_word(const HeckeAlgebra& alg, const std::vector<int>& word) {
    return HeckeElement::basis(0, alg.id_of_word(word));
}

} // namespace

TEST_CASE("from_arrangement: SL2 gives affine A1") {
    WallArrangement w = arrangement_of(fx::sl2());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    CHECK(alg.cox.num_gens == 2);
    CHECK(alg.cox.m[0][1] == 0); // infinity
}

TEST_CASE("from_arrangement: SL3 gives affine A2") {
    WallArrangement w = arrangement_of(fx::sl3());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    CHECK(alg.cox.num_gens == 3);
    for (int s = 0; s < 3; ++s)
        for (int t = s + 1; t < 3; ++t) CHECK(alg.cox.m[s][t] == 3);
}

TEST_CASE("from_arrangement: C2 gives affine C2") {
    WallArrangement w = arrangement_of(fx::sp4());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    CHECK(alg.cox.num_gens == 3);
    std::multiset<int> offdiag;
    for (int s = 0; s < 3; ++s)
        for (int t = s + 1; t < 3; ++t) offdiag.insert(alg.cox.m[s][t]);
    CHECK(offdiag == std::multiset<int>{2, 4, 4});
}

TEST_CASE("from_arrangement rejects a base point on a wall") {
    WallArrangement w = arrangement_of(fx::sl2());
    CHECK_THROWS_AS(from_arrangement(w, QVec{Rat(0)}), ValidationError);
}

TEST_CASE("empty wall set: twisted group algebra of Omega alone") {
    WallArrangement w;
    w.dim = 0;
    OmegaData omega;
    omega.size = 2;
    omega.table = {{0, 1}, {1, 0}};
    omega.s_action = {{}, {}};
    omega.mu = {{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
    HeckeAlgebra alg = from_arrangement(w, QVec{}, &omega);
    CHECK(alg.cox.num_gens == 0);
    ParameterFunction pf{{}};
    HeckeElement a = HeckeElement::basis(1, alg.identity_id());
    HeckeElement sq = multiply(a, a, alg, pf);
    // mu(1,1) = -1: T_w^2 = -T_e
    REQUIRE(sq.terms.size() == 1);
    CHECK(sq.terms.begin()->first == std::make_pair(0, alg.identity_id()));
    CHECK(sq.terms.begin()->second == QPoly(Rat(-1)));
}

TEST_CASE("quadratic relation and braid case") {
    WallArrangement w = arrangement_of(fx::sl2());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    ParameterFunction pf = equal_params(alg, qsym());

    HeckeElement t0 = t_word(alg, {0});
    HeckeElement sq = multiply(t0, t0, alg, pf);
    // T_s^2 = (q-1) T_s + q T_e
    HeckeElement expect = HeckeElement::basis(0, alg.id_of_word({0}),
                                              qsym() - QPoly(Rat(1)));
    expect.add_term(0, alg.identity_id(), qsym());
    CHECK(sq == expect);

    HeckeElement t1 = t_word(alg, {1});
    HeckeElement prod = multiply(t0, t1, alg, pf);
    CHECK(prod == t_word(alg, {0, 1})); // lengths add

    HeckeElement e = HeckeElement::basis(0, alg.identity_id());
    CHECK(multiply(t0 + e, e, alg, pf) == t0 + e);
}

TEST_CASE("braid relations hold for the Hecke basis") {
    for (const RootDatum& d : {fx::sl3(), fx::sp4()}) {
        WallArrangement w = arrangement_of(d);
        HeckeAlgebra alg = from_arrangement(w, generic_base(w));
        ParameterFunction pf = equal_params(alg, qsym());
        for (int s = 0; s < alg.cox.num_gens; ++s)
            for (int t = s + 1; t < alg.cox.num_gens; ++t) {
                int m = alg.cox.m[s][t];
                if (m == 0) continue;
                HeckeElement lhs = HeckeElement::basis(0, alg.identity_id());
                HeckeElement rhs = lhs;
                for (int i = 0; i < m; ++i) {
                    lhs = multiply(lhs, t_word(alg, {i % 2 == 0 ? s : t}), alg, pf);
                    rhs = multiply(rhs, t_word(alg, {i % 2 == 0 ? t : s}), alg, pf);
                }
                CHECK(lhs == rhs);
                // and the group elements agree
                std::vector<int> ws, wt;
                for (int i = 0; i < m; ++i) {
                    ws.push_back(i % 2 == 0 ? s : t);
                    wt.push_back(i % 2 == 0 ? t : s);
                }
                CHECK(alg.id_of_word(ws) == alg.id_of_word(wt));
            }
    }
}

TEST_CASE("associativity on random words") {
    std::mt19937 rng(101);
    for (const RootDatum& d : {fx::sl2(), fx::sl3(), fx::sp4()}) {
        WallArrangement w = arrangement_of(d);
        HeckeAlgebra alg = from_arrangement(w, generic_base(w));
        ParameterFunction pf = equal_params(alg, qsym());
        for (int trial = 0; trial < 120; ++trial) {
            auto rand_word = [&]() {
                std::vector<int> word(rng() % 7);
                for (auto& s : word) s = rng() % alg.cox.num_gens;
                return word;
            };
            HeckeElement a = t_word(alg, rand_word());
            HeckeElement b = t_word(alg, rand_word());
            HeckeElement c = t_word(alg, rand_word());
            HeckeElement left = multiply(multiply(a, b, alg, pf), c, alg, pf);
            HeckeElement right = multiply(a, multiply(b, c, alg, pf), alg, pf);
            CHECK(left == right);
        }
    }
}

TEST_CASE("coefficients of basis products are integral Laurent polynomials") {
    std::mt19937 rng(55);
    WallArrangement w = arrangement_of(fx::sp4());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    ParameterFunction pf = equal_params(alg, qsym());
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<int> wa(rng() % 7), wb(rng() % 7);
        for (auto& s : wa) s = rng() % alg.cox.num_gens;
        for (auto& s : wb) s = rng() % alg.cox.num_gens;
        HeckeElement prod = multiply(t_word(alg, wa), t_word(alg, wb), alg, pf);
        for (const auto& [key, poly] : prod.terms)
            for (const auto& [e, c] : poly.terms) {
                CHECK(e.is_integer());
                CHECK(c.is_integer());
            }
    }
}

TEST_CASE("anti involution") {
    WallArrangement w = arrangement_of(fx::sl3());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    ParameterFunction pf = equal_params(alg, qsym());

    HeckeElement t01 = t_word(alg, {0, 1});
    CHECK(anti_involution(t01, alg) == t_word(alg, {1, 0}));

    std::mt19937 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<int> wa(rng() % 6), wb(rng() % 6);
        for (auto& s : wa) s = rng() % alg.cox.num_gens;
        for (auto& s : wb) s = rng() % alg.cox.num_gens;
        HeckeElement x = t_word(alg, wa);
        HeckeElement y = t_word(alg, wb);
        CHECK(anti_involution(anti_involution(x, alg), alg) == x);
        CHECK(anti_involution(multiply(x, y, alg, pf), alg) ==
              multiply(anti_involution(y, alg), anti_involution(x, alg), alg, pf));
    }
}

TEST_CASE("specialization") {
    WallArrangement w = arrangement_of(fx::sl2());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    ParameterFunction pf = equal_params(alg, qsym());
    HeckeElement t0 = t_word(alg, {0});
    HeckeElement sq = multiply(t0, t0, alg, pf);

    HeckeElement at1 = specialize(sq, Rat(1));
    CHECK(at1 == HeckeElement::basis(0, alg.identity_id()));

    HeckeElement at4 = specialize(sq, Rat(4));
    HeckeElement expect = HeckeElement::basis(0, alg.id_of_word({0}), QPoly(Rat(3)));
    expect.add_term(0, alg.identity_id(), QPoly(Rat(4)));
    CHECK(at4 == expect);

    HeckeElement c = HeckeElement::basis(0, alg.identity_id(), QPoly(Rat(7)));
    CHECK(specialize(c, Rat(9)) == c);
}

TEST_CASE("specialization at q = 1 matches group algebra structure constants") {
    std::mt19937 rng(31);
    WallArrangement w = arrangement_of(fx::sl3());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    ParameterFunction pf = equal_params(alg, QPoly(Rat(1)));
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> wa(rng() % 6), wb(rng() % 6);
        for (auto& s : wa) s = rng() % alg.cox.num_gens;
        for (auto& s : wb) s = rng() % alg.cox.num_gens;
        std::vector<int> ab = wa;
        ab.insert(ab.end(), wb.begin(), wb.end());
        CHECK(multiply(t_word(alg, wa), t_word(alg, wb), alg, pf) ==
              t_word(alg, ab));
    }
}

TEST_CASE("conjugate generators must receive equal parameters") {
    WallArrangement w = arrangement_of(fx::sl3());
    HeckeAlgebra alg = from_arrangement(w, generic_base(w));
    // In affine A2 all simple reflections are conjugate (odd bonds).
    ParameterFunction bad{{qsym(), qsym(), QPoly::monomial(Rat(2))}};
    CHECK_THROWS_AS(validate_parameters(alg, bad), ValidationError);
    // In affine C2 the two outer reflections are not conjugate to the middle.
    WallArrangement wc = arrangement_of(fx::sp4());
    HeckeAlgebra algc = from_arrangement(wc, generic_base(wc));
    // find the generator connected to both others by m = 4 edges
    int mid = -1;
    for (int s = 0; s < 3; ++s) {
        int count4 = 0;
        for (int t = 0; t < 3; ++t)
            if (t != s && algc.cox.m[s][t] == 4) ++count4;
        if (count4 == 2) mid = s;
    }
    REQUIRE(mid >= 0);
    std::vector<QPoly> params(3, qsym());
    params[mid] = QPoly::monomial(Rat(2));
    CHECK_NOTHROW(validate_parameters(algc, ParameterFunction{params}));
}

TEST_CASE("non-crystallographic pencils are rejected") {
    // Five wall directions through the origin: the pencil count at a chamber
    // corner cannot be a Coxeter bond.
    WallArrangement w;
    w.dim = 2;
    for (IVec g : {IVec{1, 0}, IVec{0, 1}, IVec{1, 1}, IVec{1, -1}, IVec{2, 1}})
        w.families.push_back(WallFamily{g, {LevelSet{Rat(0), Rat(1)}}});
    CHECK_THROWS_AS(from_arrangement(w, QVec{Rat(1, 7), Rat(1, 11)}),
                    ValidationError);
}

TEST_CASE("omega action twists the semidirect multiplication") {
    // Affine A1 with the diagram flip as Omega.
    WallArrangement w = arrangement_of(fx::sl2());
    OmegaData omega;
    omega.size = 2;
    omega.table = {{0, 1}, {1, 0}};
    omega.s_action = {{0, 1}, {1, 0}};
    omega.mu = {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
    HeckeAlgebra alg = from_arrangement(w, generic_base(w), &omega);
    ParameterFunction pf = equal_params(alg, qsym());

    // (omega, e) * (e, T_{s0}) * (omega, e) = T_{s1}-type conjugation:
    HeckeElement om = HeckeElement::basis(1, alg.identity_id());
    HeckeElement t0 = t_word(alg, {0});
    HeckeElement conj = multiply(multiply(om, t0, alg, pf), om, alg, pf);
    CHECK(conj == t_word(alg, {1}));
}
