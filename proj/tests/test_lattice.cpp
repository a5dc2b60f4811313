#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "toritrans/lattice.hpp"

using namespace toritrans;
using testutil::vec;
using testutil::vecs;

TEST_CASE("primitive_part divides out the gcd") {
    CHECK(primitive_part(vec({2, 4})) == vec({1, 2}));
    CHECK(primitive_part(vec({3, -6, 9})) == vec({1, -2, 3}));
    CHECK_THROWS_AS(primitive_part(vec({0, 0})), DegenerateInput);
}

TEST_CASE("primitive_part is idempotent") {
    std::mt19937_64 rng(20240001);
    for (int t = 0; t < 200; ++t) {
        IntVector v = testutil::random_vector(rng, 3, -9, 9);
        if (is_zero_vector(v)) continue;
        IntVector p = primitive_part(v);
        CHECK(primitive_part(p) == p);
    }
}

static void check_smith(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    CHECK(s.u.mul(a).mul(s.v) == s.d);
    Int du = determinant(s.u), dv = determinant(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    std::vector<Int> diag = s.diagonal();
    bool seen_zero = false;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        CHECK(diag[i] >= 0);
        if (diag[i] == 0) seen_zero = true;
        if (seen_zero) CHECK(diag[i] == 0);
        if (i + 1 < diag.size() && diag[i] != 0 && diag[i + 1] != 0)
            CHECK(diag[i + 1] % diag[i] == 0);
    }
    // off-diagonal entries vanish
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) CHECK(s.d.at(i, j) == 0);
}

TEST_CASE("smith_normal_form on the stated examples") {
    IntMatrix id = IntMatrix::identity(2);
    CHECK(smith_normal_form(id).d == id);

    IntMatrix a = IntMatrix::from_rows(vecs({{1, 0}, {1, 2}}), 2);
    SmithDecomposition s = smith_normal_form(a);
    CHECK(s.d.at(0, 0) == 1);
    CHECK(s.d.at(1, 1) == 2);
    check_smith(a);

    IntMatrix b = IntMatrix::from_rows(vecs({{2}}), 1);
    CHECK(smith_normal_form(b).d.at(0, 0) == 2);
}

TEST_CASE("smith_normal_form on random matrices") {
    std::mt19937_64 rng(20240002);
    for (int t = 0; t < 60; ++t) {
        std::size_t rows = 1 + t % 4, cols = 1 + (t / 4) % 4;
        IntMatrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                a.at(i, j) = testutil::random_vector(rng, 1, -9, 9)[0];
        check_smith(a);
    }
}

TEST_CASE("saturation_basis") {
    CHECK(saturation_basis(vecs({{1, 0}}), 2) == vecs({{1, 0}}));
    CHECK(saturation_basis(vecs({{1, 1}, {-1, 1}}), 2) == vecs({{1, 0}, {0, 1}}));
    CHECK(saturation_basis({}, 2).empty());
}

TEST_CASE("saturation_basis output is saturated") {
    std::mt19937_64 rng(20240003);
    for (int t = 0; t < 50; ++t) {
        std::vector<IntVector> in;
        std::size_t n = 2 + t % 3;
        for (std::size_t i = 0; i < 1 + static_cast<std::size_t>(t) % 4; ++i)
            in.push_back(testutil::random_vector(rng, n, -6, 6));
        std::vector<IntVector> s = saturation_basis(in, n);
        CHECK(s.size() == rank_of(in, n));
        // re-saturating gives the same lattice back
        CHECK(saturation_basis(s, n) == hermite_basis(s, n));
        CHECK(s == hermite_basis(s, n));
    }
}

TEST_CASE("extends_to_basis") {
    CHECK(extends_to_basis(vecs({{1, 0}, {1, 1}}), 2));
    CHECK_FALSE(extends_to_basis(vecs({{1, 0}, {1, 2}}), 2));
    CHECK_FALSE(extends_to_basis(vecs({{2, 4}}), 2));
}

TEST_CASE("extends_to_basis of a single vector means primitive") {
    std::mt19937_64 rng(20240004);
    for (int t = 0; t < 100; ++t) {
        IntVector v = testutil::random_vector(rng, 3, -9, 9);
        if (is_zero_vector(v)) continue;
        CHECK(extends_to_basis({v}, 3) == (primitive_part(v) == v));
    }
}

TEST_CASE("express_in_basis recovers integer coordinates") {
    auto basis = vecs({{2, 1, 0}, {0, 1, 1}});
    IntVector v = add(scale(3, basis[0]), scale(-2, basis[1]));
    auto c = express_in_basis(v, basis, 3);
    REQUIRE(c.has_value());
    CHECK(*c == vec({3, -2}));
    CHECK_FALSE(express_in_basis(vec({1, 0, 0}), basis, 3).has_value());
}

TEST_CASE("unimodular_inverse") {
    std::mt19937_64 rng(20240005);
    for (int t = 0; t < 30; ++t) {
        IntMatrix m = testutil::random_unimodular(rng, 3);
        CHECK(m.mul(unimodular_inverse(m)) == IntMatrix::identity(3));
    }
}
