#include <catch2/catch_amalgamated.hpp>

#include "avvi/linalg.hpp"
#include "avvi/polynomial.hpp"
#include "test_util.hpp"

using namespace avvi;

TEST_CASE("solve_affine_system basic cases") {
    SECTION("rotation-like system has the unique point (-1, 1)") {
        const Matrix m{{0, 1}, {-1, 0}};
        const auto s = solve_affine_system(m, Vector{1, 1});
        REQUIRE(s);
        CHECK(s->base == Vector{-1, 1});
        CHECK(s->dimension() == 0);
    }
    SECTION("identity with zero rhs") {
        const auto s = solve_affine_system(Matrix::identity(3), Vector(3));
        REQUIRE(s);
        CHECK(s->base == Vector{0, 0, 0});
        CHECK(s->dimension() == 0);
    }
    SECTION("inconsistent zero system") {
        const Matrix m{{0, 0}, {0, 0}};
        CHECK_FALSE(solve_affine_system(m, Vector{1, 1}));
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(solve_affine_system(Matrix::identity(2), Vector{1, 2, 3}), DimensionError);
    }
    SECTION("solution set satisfies the system exactly") {
        test::Rng rng(11);
        for (int trial = 0; trial < 30; ++trial) {
            const int rows = static_cast<int>(rng.next_int(1, 5));
            const int cols = static_cast<int>(rng.next_int(1, 5));
            const Matrix m = test::random_matrix(rng, rows, cols, -3, 3);
            Vector rhs(rows);
            for (int i = 0; i < rows; ++i) rhs[i] = Rational(rng.next_int(-3, 3));
            const auto s = solve_affine_system(m, rhs);
            if (!s) continue;
            CHECK(m * s->base == rhs);
            for (const auto& d : s->directions) CHECK((m * d).is_zero());
        }
    }
}

TEST_CASE("determinant") {
    CHECK(determinant(Matrix{{0, 1}, {-1, 0}}) == 1);
    CHECK(determinant(Matrix{{0, 0}, {0, 0}}) == 0);
    // scalarized family matrix at parameter 0 (anti-diagonal -1,-2,2,1)
    const Matrix m_xi0{{0, 0, 0, -1}, {0, 0, -2, 0}, {0, 2, 0, 0}, {1, 0, 0, 0}};
    CHECK(determinant(m_xi0) == 4);
    CHECK_THROWS_AS(determinant(Matrix(2, 3)), DimensionError);

    test::Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = static_cast<int>(rng.next_int(1, 5));
        const Matrix m = test::random_matrix(rng, n, n, -4, 4);
        CHECK(determinant(m) == test::cofactor_det(m));
    }
}

TEST_CASE("pfaffian") {
    SECTION("2x2 convention") {
        CHECK(pfaffian(Matrix{{0, 3}, {-3, 0}}) == 3);
    }
    SECTION("family matrix M1 at n = 4") {
        const Matrix m1{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}};
        const Rational pf = pfaffian(m1);
        CHECK(pf * pf == test::cofactor_det(m1));
        CHECK(pf * pf == 1);
    }
    SECTION("odd dimension and non-skew inputs are rejected") {
        CHECK_THROWS_AS(pfaffian(Matrix{{0}}), DimensionError);
        CHECK_THROWS_AS(pfaffian(Matrix::identity(2)), DimensionError);
    }
    SECTION("pf^2 = det on random skew matrices") {
        test::Rng rng(7);
        for (int n : {2, 4, 6, 8}) {
            for (int trial = 0; trial < 50; ++trial) {
                const Matrix m = test::random_skew(rng, n);
                const Rational pf = pfaffian(m);
                CHECK(pf * pf == determinant(m));
            }
        }
    }
    SECTION("singular skew matrix") {
        CHECK(pfaffian(Matrix::zero(4, 4)) == 0);
    }
}

TEST_CASE("parametric determinant interpolation") {
    const Matrix j{{0, 1}, {-1, 0}};
    SECTION("family n = 2 gives (2t-1)^2") {
        const Matrix m2{{0, -1}, {1, 0}};
        const UniPoly p = interpolate_parametric_det(j, m2);
        CHECK(p == UniPoly{1, -4, 4});
    }
    SECTION("constant pencil") {
        CHECK(interpolate_parametric_det(j, j) == UniPoly::constant(1));
    }
    SECTION("family n = 4 gives (2t-1)^2 (3t-2)^2") {
        const Matrix m1{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}};
        const Matrix m2{{0, 0, 0, -1}, {0, 0, -2, 0}, {0, 2, 0, 0}, {1, 0, 0, 0}};
        const UniPoly a = UniPoly{-1, 2} * UniPoly{-1, 2};
        const UniPoly b = UniPoly{-2, 3} * UniPoly{-2, 3};
        CHECK(interpolate_parametric_det(m1, m2) == a * b);
    }
    SECTION("matches pointwise determinants at random parameters") {
        test::Rng rng(31);
        const Matrix m1 = test::random_skew(rng, 6), m2 = test::random_skew(rng, 6);
        const UniPoly p = interpolate_parametric_det(m1, m2);
        for (int trial = 0; trial < 5; ++trial) {
            const Rational t = rng.next_rational(-2, 2);
            Matrix a(6, 6);
            for (int i = 0; i < 6; ++i)
                for (int k = 0; k < 6; ++k) a(i, k) = t * m1(i, k) + (1 - t) * m2(i, k);
            CHECK(p.eval(t) == determinant(a));
        }
    }
}

TEST_CASE("parametric pfaffian interpolation") {
    const Matrix m1n2{{0, 1}, {-1, 0}}, m2n2{{0, -1}, {1, 0}};
    SECTION("family n = 2: square root of (2t-1)^2 anchored at t = 1") {
        const UniPoly pf = interpolate_parametric_pf(m1n2, m2n2);
        CHECK(pf * pf == interpolate_parametric_det(m1n2, m2n2));
        CHECK(pf.eval(1) == pfaffian(m1n2));
        CHECK(pf == UniPoly{-1, 2});
    }
    SECTION("family n = 4: (2t-1)(3t-2)") {
        const Matrix m1{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}};
        const Matrix m2{{0, 0, 0, -1}, {0, 0, -2, 0}, {0, 2, 0, 0}, {1, 0, 0, 0}};
        const UniPoly pf = interpolate_parametric_pf(m1, m2);
        CHECK(pf * pf == interpolate_parametric_det(m1, m2));
        CHECK(pf.eval(1) == pfaffian(m1));
        CHECK(pf == UniPoly{-1, 2} * UniPoly{-2, 3});
    }
    SECTION("identical skew inputs give the constant pfaffian") {
        CHECK(interpolate_parametric_pf(m1n2, m1n2) == UniPoly::constant(1));
    }
    SECTION("parity and skewness are enforced") {
        CHECK_THROWS_AS(interpolate_parametric_pf(Matrix::identity(2), Matrix::identity(2)), DimensionError);
    }
}
