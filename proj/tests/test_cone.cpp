#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "toritrans/cone.hpp"
#include "toritrans/oracle.hpp"

using namespace toritrans;
using testutil::vec;
using testutil::vecs;

static RationalCone cone2(std::initializer_list<std::initializer_list<long>> gens) {
    return RationalCone::from_generators(testutil::vecs(gens), 2);
}

TEST_CASE("dual_cone on the stated examples") {
    RationalCone quadrant = cone2({{1, 0}, {0, 1}});
    CHECK(dual_cone(quadrant).rays() == vecs({{0, 1}, {1, 0}}));

    RationalCone c = cone2({{1, 0}, {1, 2}});
    RationalCone d = dual_cone(c);
    CHECK(d.rays() == vecs({{0, 1}, {2, -1}}));
    CHECK(oracle::brute_dual_equivalence(c, d, 5));
    CHECK_FALSE(oracle::brute_dual_equivalence(c, quadrant, 5));

    RationalCone zero = RationalCone::zero_cone(2);
    RationalCone plane = dual_cone(zero);
    CHECK(plane.inequalities().empty());
    CHECK(plane.rays().empty());
    CHECK(plane.lineality() == vecs({{1, 0}, {0, 1}}));
}

TEST_CASE("duality is an involution") {
    std::mt19937_64 rng(20240101);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 2 + t % 2;
        RationalCone c = testutil::random_pointed_cone(rng, n, 2 + t % 3, -9, 9);
        CHECK(dual_cone(dual_cone(c)) == c);
    }
}

TEST_CASE("is_strongly_convex") {
    CHECK_FALSE(RationalCone::from_generators(vecs({{1}, {-1}}), 1).is_strongly_convex());
    CHECK(cone2({{1, 0}, {0, 1}}).is_strongly_convex());
    CHECK_FALSE(cone2({{1, 0}, {-1, 0}, {0, 1}}).is_strongly_convex());
}

TEST_CASE("faces of small cones") {
    RationalCone quadrant = cone2({{1, 0}, {0, 1}});
    std::vector<RationalCone> fs = faces(quadrant);
    REQUIRE(fs.size() == 4);
    CHECK(fs[0].is_zero());
    CHECK(fs[1].rays() == vecs({{0, 1}}));
    CHECK(fs[2].rays() == vecs({{1, 0}}));
    CHECK(fs[3] == quadrant);

    RationalCone ray = cone2({{1, 0}});
    CHECK(faces(ray).size() == 2);

    CHECK(faces(cone2({{1, 0}, {1, 2}})).size() == 4);

    CHECK_THROWS_AS(faces(RationalCone::from_generators(vecs({{1}, {-1}}), 1)),
                    UnsupportedCone);
}

TEST_CASE("is_face_of") {
    RationalCone quadrant = cone2({{1, 0}, {0, 1}});
    CHECK(is_face_of(RationalCone::zero_cone(2), quadrant));
    CHECK(is_face_of(cone2({{1, 0}}), quadrant));
    CHECK_FALSE(is_face_of(cone2({{1, 1}}), quadrant));
    CHECK(is_face_of(quadrant, quadrant));
    CHECK_FALSE(is_face_of(quadrant, cone2({{1, 0}})));
}

TEST_CASE("is_smooth_cone") {
    CHECK(is_smooth_cone(cone2({{1, 0}, {1, 1}})));
    CHECK_FALSE(is_smooth_cone(cone2({{1, 0}, {1, 2}})));
    CHECK(is_smooth_cone(RationalCone::zero_cone(2)));
    CHECK(is_smooth_cone(cone2({{1, 2}})));  // a primitive ray is smooth
}

TEST_CASE("hilbert_basis on the stated examples") {
    CHECK(hilbert_basis(cone2({{1, 0}, {0, 1}})) == vecs({{0, 1}, {1, 0}}));
    CHECK(hilbert_basis(cone2({{0, 1}, {2, -1}})) == vecs({{0, 1}, {1, 0}, {2, -1}}));
    CHECK(hilbert_basis(cone2({{0, 1}, {3, -2}})) ==
          vecs({{0, 1}, {1, 0}, {2, -1}, {3, -2}}));
    CHECK(hilbert_basis(RationalCone::zero_cone(3)).empty());
    CHECK_THROWS_AS(hilbert_basis(RationalCone::from_generators(vecs({{1}, {-1}}), 1)),
                    UnsupportedCone);
    CHECK_THROWS_AS(
        hilbert_basis(RationalCone::from_generators({vec({1, 0, 0, 0, 0})}, 5)),
        UnsupportedRank);
}

TEST_CASE("hilbert_basis matches the box oracle on rank-2 cones") {
    std::mt19937_64 rng(20240102);
    for (int t = 0; t < 40; ++t) {
        RationalCone c = testutil::random_pointed_cone(rng, 2, 2, -6, 6);
        long bound = 1;
        for (const IntVector& r : c.rays())
            for (const Int& x : r)
                if (abs_int(x) > bound) bound = static_cast<long>(abs_int(x));
        CHECK(hilbert_basis(c) == oracle::brute_hilbert_basis(c, bound));
    }
}

TEST_CASE("hilbert_basis elements are irreducible") {
    std::mt19937_64 rng(20240103);
    for (int t = 0; t < 15; ++t) {
        RationalCone c = testutil::random_pointed_cone(rng, 3, 3, -4, 4);
        std::vector<IntVector> hb = hilbert_basis(c);
        if (hb.size() > 50) continue;
        for (const IntVector& h : hb)
            for (const IntVector& p : hb) {
                IntVector rest = sub(h, p);
                if (is_zero_vector(rest)) continue;
                bool rest_in_basis_span = c.contains_point(rest);
                if (rest_in_basis_span) {
                    // h = p + rest is only allowed when rest is not a
                    // semigroup element, i.e. never here
                    CHECK(false);
                }
            }
    }
}

TEST_CASE("hilbert_basis of the dual of a smooth full cone has n elements") {
    CHECK(hilbert_basis(dual_cone(cone2({{1, 0}, {1, 1}}))).size() == 2);
    RationalCone c3 = RationalCone::from_generators(
        vecs({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}}), 3);
    REQUIRE(is_smooth_cone(c3));
    CHECK(hilbert_basis(dual_cone(c3)).size() == 3);
}

TEST_CASE("hilbert_basis of a lower-dimensional cone") {
    // the diagonal ray inside Z^2, embedded with a non-primitive direction
    RationalCone c = RationalCone::from_generators({vec({2, 2})}, 2);
    CHECK(hilbert_basis(c) == vecs({{1, 1}}));
    // a 2d cone inside Z^3
    RationalCone f = RationalCone::from_generators(vecs({{1, 0, 1}, {0, 1, 1}}), 3);
    std::vector<IntVector> hb = hilbert_basis(f);
    CHECK(hb == vecs({{0, 1, 1}, {1, 0, 1}}));
}

TEST_CASE("contains_point") {
    RationalCone quadrant = cone2({{1, 0}, {0, 1}});
    CHECK(contains_point(quadrant, vec({3, 5})));
    CHECK_FALSE(contains_point(quadrant, vec({-1, 0})));
    CHECK(contains_point(cone2({{0, 1}, {2, -1}}), vec({1, 0})));
}

TEST_CASE("membership agrees with nonnegative combinations of generators") {
    std::mt19937_64 rng(20240104);
    for (int t = 0; t < 5; ++t) {
        RationalCone c = testutil::random_pointed_cone(rng, 3, 3, -5, 5);
        std::uniform_int_distribution<long> coeff(0, 6);
        for (int k = 0; k < 1000; ++k) {
            IntVector p(3, Int(0));
            for (const IntVector& g : c.rays()) p = add(p, scale(coeff(rng), g));
            CHECK(c.contains_point(p));
        }
    }
}

TEST_CASE("dual cone passes the box oracle on random cones") {
    std::mt19937_64 rng(20240105);
    for (int t = 0; t < 20; ++t) {
        RationalCone c = testutil::random_pointed_cone(rng, 2, 3, -9, 9);
        CHECK(oracle::brute_dual_equivalence(c, dual_cone(c), 6));
    }
    for (int t = 0; t < 10; ++t) {
        RationalCone c = testutil::random_pointed_cone(rng, 3, 3, -9, 9);
        CHECK(oracle::brute_dual_equivalence(c, dual_cone(c), 6));
    }
}
