#include <catch2/catch_amalgamated.hpp>

#include "avvi/polynomial.hpp"
#include "test_util.hpp"

using namespace avvi;

TEST_CASE("UniPoly basics") {
    const UniPoly p{1, -4, 4}; // (2t-1)^2
    CHECK(p.degree() == 2);
    CHECK(p.eval(make_rational(1, 2)) == 0);
    CHECK(p.eval(0) == 1);
    CHECK(p.derivative() == UniPoly{-4, 8});
    CHECK(UniPoly{}.degree() == -1);
    CHECK((UniPoly{1, 1} * UniPoly{-1, 1}) == UniPoly{-1, 0, 1});
}

TEST_CASE("divmod and exact division") {
    const UniPoly a = UniPoly{-1, 2} * UniPoly{-2, 3} * UniPoly{5, 0, 1};
    auto [q, r] = UniPoly::divmod(a, UniPoly{-1, 2});
    CHECK(r.is_zero());
    CHECK(q == UniPoly{-2, 3} * UniPoly{5, 0, 1});
    auto [q2, r2] = UniPoly::divmod(UniPoly{1, 0, 1}, UniPoly{1, 1});
    CHECK(q2 == UniPoly{-1, 1});
    CHECK(r2 == UniPoly::constant(2));
    CHECK_THROWS_AS(UniPoly::divmod(a, UniPoly{}), DimensionError);
}

TEST_CASE("gcd and square-free machinery") {
    const UniPoly f1{-1, 2}; // 2t-1
    const UniPoly f2{-2, 3}; // 3t-2
    SECTION("gcd of overlapping products") {
        const UniPoly g = poly_gcd(f1 * f1 * f2, f1 * f2 * f2);
        CHECK(g == primitive_part(f1 * f2));
    }
    SECTION("coprime gcd is constant") {
        CHECK(poly_gcd(f1, f2).degree() == 0);
    }
    SECTION("square-free part") {
        CHECK(square_free_part(f1 * f1 * f2 * f2) == primitive_part(f1 * f2));
    }
    SECTION("square-free decomposition of (2t-1)^2 (3t-2)^2 (t-5)") {
        const UniPoly p = f1 * f1 * f2 * f2 * UniPoly{-5, 1};
        const auto factors = square_free_decomposition(p);
        REQUIRE(factors.size() == 2);
        CHECK(primitive_part(factors[0]) == UniPoly{-5, 1});
        CHECK(primitive_part(factors[1]) == primitive_part(f1 * f2));
    }
}

TEST_CASE("interpolation reproduces polynomials") {
    test::Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> coeffs;
        const int deg = static_cast<int>(rng.next_int(0, 6));
        for (int i = 0; i <= deg; ++i) coeffs.push_back(rng.next_rational(-4, 4));
        const UniPoly p{std::vector<Rational>(coeffs)};
        std::vector<std::pair<Rational, Rational>> pts;
        for (int k = 0; k <= deg; ++k) pts.emplace_back(Rational(k), p.eval(Rational(k)));
        CHECK(interpolate_points(pts) == p);
    }
}

TEST_CASE("rational functions stay reduced") {
    const RatFun f(UniPoly{-1, 2} * UniPoly{-2, 3}, UniPoly{-1, 2}); // reduces to 3t-2
    CHECK(f.num == UniPoly{-2, 3});
    CHECK(f.den == UniPoly::constant(1));

    const RatFun g(UniPoly::constant(1), UniPoly{1, -2}); // 1/(1-2t), den made monic
    CHECK(g.den.lead() == 1);
    CHECK(g.eval(0) == 1);
    CHECK(g.eval(make_rational(1, 4)) == 2);
    CHECK_FALSE(g.defined_at(make_rational(1, 2)));

    const RatFun sum = g + RatFun::constant(1);
    CHECK(sum.eval(0) == 2);
    const RatFun prod = g * RatFun(UniPoly{1, -2}, UniPoly::constant(1));
    CHECK(prod.is_constant());
    CHECK(prod.eval(7) == 1);
    CHECK_THROWS_AS(g / RatFun{}, DimensionError);
}
