#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace hecke;
namespace fx = hecke::fixtures;

namespace {

ApartmentSubspace full_apartment(int rank) {
    ApartmentSubspace sub;
    sub.base.assign(rank, Rat(0));
    for (int i = 0; i < rank; ++i) {
        QVec e(rank, Rat(0));
        e[i] = Rat(1);
        sub.directions.push_back(e);
    }
    return sub;
}

} // namespace

TEST_CASE("from_split level sets") {
    AffineRootSystem s = from_split(fx::sl2());
    CHECK(s.gradients.size() == 2);
    for (const auto& l : s.levels) {
        CHECK(l.offset == Rat(0));
        CHECK(l.period == Rat(1));
    }
    CHECK(from_split(validate_root_datum(2, {}, {})).empty());
    CHECK(from_split(fx::sl3()).gradients.size() == 6);
}

TEST_CASE("ramified level data validates; inconsistent data does not") {
    RootDatum d = fx::sl2();
    CHECK_NOTHROW(from_levels(d, {{Rat(0), Rat(1, 2)}, {Rat(0), Rat(1, 2)}}));
    // Periods differing between alpha and -alpha break reflection closure.
    CHECK_THROWS_AS(from_levels(d, {{Rat(0), Rat(1, 2)}, {Rat(0), Rat(1)}}),
                    ValidationError);
}

TEST_CASE("reductive_quotient_roots on split SL2") {
    AffineRootSystem s = from_split(fx::sl2());
    CHECK(reductive_quotient_roots(s, {Rat(0)}).size() == 2);
    CHECK(reductive_quotient_roots(s, {Rat(1, 4)}).empty());
    CHECK(reductive_quotient_roots(s, {Rat(1, 2)}).size() == 2);
}

TEST_CASE("reductive quotients are reflection-closed; full set iff special") {
    std::mt19937 rng(7);
    for (const RootDatum& d : {fx::sl3(), fx::sp4()}) {
        AffineRootSystem s = from_split(d);
        for (int trial = 0; trial < 40; ++trial) {
            QVec x(d.rank);
            for (auto& c : x)
                c = Rat((int)(rng() % 13) - 6, 1 + (int)(rng() % 4));
            auto q = reductive_quotient_roots(s, x);
            // reflection closure of the quotient subset
            for (int i : q)
                for (int j : q) {
                    Rat c = dot(s.gradients[j], s.cogradients[i]);
                    QVec refl = sub(s.gradients[j], scale(c, s.gradients[i]));
                    int idx = s.gradient_index(refl);
                    if (idx >= 0)
                        CHECK(std::find(q.begin(), q.end(), idx) != q.end());
                }
            CHECK((q.size() == s.gradients.size()) == is_special_point(s, x));
        }
    }
}

TEST_CASE("is_special_point on split SL2") {
    AffineRootSystem s = from_split(fx::sl2());
    CHECK(is_special_point(s, {Rat(0)}));
    CHECK_FALSE(is_special_point(s, {Rat(1, 4)}));
    AffineRootSystem empty = from_split(validate_root_datum(1, {}, {}));
    CHECK(is_special_point(empty, {Rat(3, 7)}));
}

TEST_CASE("split_at_special_point on SL2 examples") {
    AffineRootSystem s = from_split(fx::sl2());
    QVec xs{Rat(0)};

    AffineMap translation{qidentity(1), {Rat(1)}}; // by alpha_vee
    ExtendedAffineElement e = split_at_special_point(s, xs, translation);
    CHECK(e.derivative == qidentity(1));
    CHECK(e.translation == QVec{Rat(1)});

    // Reflection in the wall at x = 1/2: x -> -x + 1.
    AffineMap refl{{{Rat(-1)}}, {Rat(1)}};
    e = split_at_special_point(s, xs, refl);
    CHECK(e.derivative == QMat{{Rat(-1)}});
    CHECK(e.translation == QVec{Rat(1)});

    AffineMap id = AffineMap::identity(1);
    e = split_at_special_point(s, xs, id);
    CHECK(e.derivative == qidentity(1));
    CHECK(e.translation == QVec{Rat(0)});

    AffineMap bad{qidentity(1), {Rat(1, 3)}};
    CHECK_THROWS_AS(split_at_special_point(s, xs, bad), ValidationError);
    CHECK_THROWS_AS(split_at_special_point(s, {Rat(1, 4)}, id), ValidationError);
}

TEST_CASE("split_at_special_point recomposes (fuzz)") {
    std::mt19937 rng(11);
    RootDatum d = fx::sl3();
    AffineRootSystem s = from_split(d);
    WeylGroup w = weyl_group(d);
    for (int trial = 0; trial < 50; ++trial) {
        const WeylElement& we = w.elements[rng() % w.elements.size()];
        // cocharacter-side action of the Weyl element
        QMat lin = inverse(transpose(we.char_matrix));
        QVec t(d.rank);
        for (auto& c : t) c = Rat((int)(rng() % 7) - 3);
        // translation by an integral cocharacter preserves the split system
        AffineMap m{lin, t};
        ExtendedAffineElement e = split_at_special_point(s, {Rat(0), Rat(0)}, m);
        // recompose: x -> derivative*(x - xs) + xs + translation, xs = 0
        for (int probe = 0; probe < 5; ++probe) {
            QVec x(d.rank);
            for (auto& c : x) c = Rat((int)(rng() % 9) - 4, 1 + (int)(rng() % 3));
            QVec lhs = m.apply(x);
            QVec rhs = add(matvec(e.derivative, x), e.translation);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("restrict_to_levi on SL2 with M = T") {
    AffineRootSystem s = from_split(fx::sl2());
    LeviArrangement arr = restrict_to_levi(s, {}, full_apartment(1));
    CHECK(arr.families.size() == 2); // functionals +-2t + Z
    WallArrangement w = walls_of(arr);
    REQUIRE(w.families.size() == 1);
    CHECK(w.families[0].gradient == IVec{1});
    REQUIRE(w.families[0].levels.size() == 1);
    CHECK(w.families[0].levels[0].period == Rat(1, 2)); // walls at (1/2)Z
}

TEST_CASE("restrict_to_levi drops Levi directions and merges duplicates") {
    RootDatum d = fx::gl3();
    std::vector<int> levi{fx::root_index(d, {1, -1, 0}), fx::root_index(d, {-1, 1, 0})};
    ApartmentSubspace sub;
    sub.base.assign(3, Rat(0));
    sub.directions = {qvec({1, 1, 0}), qvec({0, 0, 1})};
    AffineRootSystem s = from_split(d);
    LeviArrangement arr = restrict_to_levi(s, levi, sub);
    // e1-e3 and e2-e3 restrict to the same functional; likewise negatives.
    CHECK(arr.families.size() == 2);
    for (const auto& fam : arr.families) CHECK(fam.levels.size() == 1);

    // M = G: everything is constant.
    std::vector<int> all;
    for (size_t i = 0; i < d.roots.size(); ++i) all.push_back((int)i);
    ApartmentSubspace center;
    center.base.assign(3, Rat(0));
    center.directions = {qvec({1, 1, 1})};
    CHECK(restrict_to_levi(s, all, center).families.empty());
}

TEST_CASE("restriction is invariant under permuting coordinates") {
    // Conjugating the gl3 presentation by a coordinate permutation must give
    // the same restricted wall set.
    RootDatum d = fx::gl3();
    AffineRootSystem s = from_split(d);
    std::vector<int> levi{fx::root_index(d, {1, -1, 0}), fx::root_index(d, {-1, 1, 0})};
    ApartmentSubspace sub;
    sub.base.assign(3, Rat(0));
    sub.directions = {qvec({1, 1, 0}), qvec({0, 0, 1})};
    WallArrangement w1 = walls_of(restrict_to_levi(s, levi, sub));

    // Permute coordinates 1 <-> 2 (fixing the Levi) everywhere.
    auto permute = [](const IVec& v) { return IVec{v[1], v[0], v[2]}; };
    std::vector<IVec> roots, coroots;
    for (const auto& r : d.roots) roots.push_back(permute(r));
    for (const auto& r : d.coroots) coroots.push_back(permute(r));
    RootDatum dp = validate_root_datum(3, roots, coroots);
    AffineRootSystem sp = from_split(dp);
    std::vector<int> levi_p;
    for (size_t i = 0; i < dp.roots.size(); ++i)
        if (dp.roots[i] == IVec{1, -1, 0} || dp.roots[i] == IVec{-1, 1, 0})
            levi_p.push_back((int)i);
    WallArrangement w2 = walls_of(restrict_to_levi(sp, levi_p, sub));
    REQUIRE(w1.families.size() == w2.families.size());
    for (size_t i = 0; i < w1.families.size(); ++i) {
        CHECK(w1.families[i].gradient == w2.families[i].gradient);
        CHECK(w1.families[i].levels == w2.families[i].levels);
    }
}

TEST_CASE("separation_set on the SL2 line") {
    AffineRootSystem s = from_split(fx::sl2());
    WallArrangement w = walls_of(restrict_to_levi(s, {}, full_apartment(1)));

    CHECK(separation_set(w, {Rat(1, 5)}, {Rat(3, 10)}).empty());

    auto one = separation_set(w, {Rat(1, 5)}, {Rat(3, 5)});
    REQUIRE(one.size() == 1);
    CHECK(one[0].eval({Rat(1, 2)}) == Rat(0));

    auto two = separation_set(w, {Rat(1, 5)}, {Rat(6, 5)});
    CHECK(two.size() == 2);

    CHECK_THROWS_AS(separation_set(w, {Rat(1, 2)}, {Rat(1, 5)}), ValidationError);
}

TEST_CASE("midpoint_on_wall") {
    Wall h{IVec{1}, Rat(-1, 2)}; // t - 1/2 = 0
    CHECK(midpoint_on_wall({Rat(1, 5)}, {Rat(3, 5)}, h) == QVec{Rat(1, 2)});
    CHECK(midpoint_on_wall({Rat(2, 5)}, {Rat(3, 5)}, h) == QVec{Rat(1, 2)});
    CHECK_THROWS_AS(midpoint_on_wall({Rat(1, 5)}, {Rat(3, 10)}, h), ValidationError);
}

TEST_CASE("affine reflection closure holds on ramified data") {
    RootDatum d = fx::sl2();
    AffineRootSystem s = from_levels(d, {{Rat(0), Rat(1, 2)}, {Rat(0), Rat(1, 2)}});
    CHECK_NOTHROW(validate_affine_system(s));
}
