#include <catch2/catch_amalgamated.hpp>

#include "avvi/roots.hpp"
#include "test_util.hpp"

using namespace avvi;

TEST_CASE("isolate_roots on the family polynomial") {
    const UniPoly p = UniPoly{-1, 2} * UniPoly{-1, 2} * UniPoly{-2, 3} * UniPoly{-2, 3};
    const auto roots = isolate_roots(p, 0, 1);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].is_exact);
    CHECK(roots[0].value == make_rational(1, 2));
    CHECK(roots[0].multiplicity == 2);
    CHECK(roots[1].is_exact);
    CHECK(roots[1].value == make_rational(2, 3));
    CHECK(roots[1].multiplicity == 2);
}

TEST_CASE("isolate_roots edge cases") {
    CHECK(isolate_roots(UniPoly::constant(5), 0, 1).empty());
    CHECK_THROWS_AS(isolate_roots(UniPoly{}, 0, 1), DimensionError);

    SECTION("sqrt(2) as an isolating interval") {
        const auto roots = isolate_roots(UniPoly{-2, 0, 1}, 0, 2);
        REQUIRE(roots.size() == 1);
        const Root& r = roots[0];
        CHECK_FALSE(r.is_exact);
        CHECK(r.hi - r.lo <= make_rational(1, 1000000));
        CHECK(r.lo * r.lo < 2);
        CHECK(r.hi * r.hi > 2);
        CHECK(r.multiplicity == 1);
    }
    SECTION("roots at interval endpoints are found") {
        const auto roots = isolate_roots(UniPoly{0, 1} * UniPoly{-1, 1}, 0, 1);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0].value == 0);
        CHECK(roots[1].value == 1);
    }
    SECTION("exact roots divide the polynomial with multiplicity") {
        test::Rng rng(91);
        for (int trial = 0; trial < 10; ++trial) {
            UniPoly p = UniPoly::constant(1);
            for (int k = 0; k < 3; ++k) {
                const Rational r = rng.next_rational(0, 1, 5);
                const int mult = static_cast<int>(rng.next_int(1, 2));
                for (int i = 0; i < mult; ++i) p = p * UniPoly{-r, 1};
            }
            UniPoly rem = p;
            for (const auto& root : isolate_roots(p, 0, 1)) {
                REQUIRE(root.is_exact);
                for (int i = 0; i < root.multiplicity; ++i)
                    rem = UniPoly::exact_div(rem, UniPoly{-root.value, 1});
            }
            CHECK(rem.degree() == 0);
        }
    }
    SECTION("isolating intervals are pairwise disjoint") {
        // (t^2-2)(t^2-3)(2t-1): mixed rational and irrational roots
        const UniPoly p = UniPoly{-2, 0, 1} * UniPoly{-3, 0, 1} * UniPoly{-1, 2};
        const auto roots = isolate_roots(p, -2, 2);
        REQUIRE(roots.size() == 5);
        for (size_t i = 0; i + 1 < roots.size(); ++i) CHECK(roots[i].upper() <= roots[i + 1].lower());
    }
}

TEST_CASE("sign_at evaluates signs at algebraic points") {
    const auto roots = isolate_roots(UniPoly{-2, 0, 1}, 0, 2); // sqrt(2)
    REQUIRE(roots.size() == 1);
    const Root& sqrt2 = roots[0];
    CHECK(sign_at(UniPoly{-1, 1}, sqrt2) > 0);        // t-1 > 0
    CHECK(sign_at(UniPoly{-3, 1}, sqrt2) < 0);        // t-3 < 0
    CHECK(sign_at(UniPoly{-2, 0, 1}, sqrt2) == 0);    // its own polynomial
    CHECK(sign_at(UniPoly{-2, 0, 1} * UniPoly{1, 1}, sqrt2) == 0);
    CHECK(sign_at(UniPoly{5}, sqrt2) > 0);
    CHECK(sign_at(UniPoly{-1, 1}, Root::exact(make_rational(1, 2))) < 0);
}

TEST_CASE("root comparison and merging") {
    const auto s2 = isolate_roots(UniPoly{-2, 0, 1}, 0, 2)[0];
    const auto s3 = isolate_roots(UniPoly{-3, 0, 1}, 0, 2)[0];
    const auto s2_again = isolate_roots(UniPoly{-2, 0, 1} * UniPoly{-5, 1}, 0, 2)[0];
    CHECK(root_equal(s2, s2_again));
    CHECK_FALSE(root_equal(s2, s3));
    CHECK(root_less(s2, s3));
    CHECK_FALSE(root_less(s3, s2));
    CHECK(root_less(Root::exact(make_rational(7, 5)), s2));

    auto merged = merge_roots({s3, s2, s2_again, Root::exact(make_rational(1, 2))});
    REQUIRE(merged.size() == 3);
    CHECK(merged[0].is_exact);
    CHECK(merged[0].value == make_rational(1, 2));
    CHECK(root_equal(merged[1], s2));
    CHECK(root_equal(merged[2], s3));
}
