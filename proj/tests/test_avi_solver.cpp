#include <catch2/catch_amalgamated.hpp>

#include "avvi/avi_solver.hpp"
#include "avvi/instances.hpp"
#include "test_util.hpp"

using namespace avvi;

namespace {

const AvviProblem& family_n2_p1() {
    static const AvviProblem p = gen_family(2, 1);
    return p;
}

AffineOperator family_op(const AvviProblem& prob, const Rational& xi1) {
    return scalarize(prob, Weight::bicriteria(xi1));
}

} // namespace

TEST_CASE("solve_unconstrained") {
    SECTION("family n=2 at weight 1 has the point (-1, 1)") {
        const auto s = solve_unconstrained(family_op(gen_family(2, 0), 1));
        REQUIRE(s);
        CHECK(s->base == Vector{-1, 1});
        CHECK(s->dimension() == 0);
    }
    SECTION("identity with zero shift") {
        const auto s = solve_unconstrained(AffineOperator(Matrix::identity(3), Vector(3)));
        REQUIRE(s);
        CHECK(s->base.is_zero());
    }
    SECTION("zero matrix with nonzero shift is infeasible") {
        CHECK_FALSE(solve_unconstrained(AffineOperator(Matrix::zero(2, 2), Vector{-1, -1})));
    }
}

TEST_CASE("solve_pattern on the constrained family") {
    const AvviProblem& prob = family_n2_p1();
    const Polyhedron& k = *prob.constraint;
    SECTION("critical weight, active pattern {1}: the line x1 + x2 = 1") {
        const auto piece = solve_pattern(family_op(prob, make_rational(1, 2)), k, ActivePattern({0}));
        REQUIRE(piece);
        CHECK(piece->dimension == 1);
        CHECK(piece->xset.contains(Vector{5, -4}));
        CHECK(piece->xset.contains(Vector{make_rational(1, 2), make_rational(1, 2)}));
        CHECK_FALSE(piece->xset.contains(Vector{0, 0}));
    }
    SECTION("regular weight, active pattern {1} is empty") {
        CHECK_FALSE(solve_pattern(family_op(prob, make_rational(1, 4)), k, ActivePattern({0})));
    }
    SECTION("regular weight, interior pattern gives the curve point (2, -2)") {
        const auto piece = solve_pattern(family_op(prob, make_rational(1, 4)), k, ActivePattern{});
        REQUIRE(piece);
        CHECK(piece->dimension == 0);
        CHECK(piece->witness == Vector{2, -2});
    }
}

TEST_CASE("solve_avi") {
    const AvviProblem& prob = family_n2_p1();
    SECTION("critical weight: exactly the boundary line") {
        const auto sol = solve_avi(family_op(prob, make_rational(1, 2)), prob.constraint);
        REQUIRE(sol.pieces.size() == 1);
        CHECK(sol.pieces[0].pattern == ActivePattern({0}));
        CHECK(sol.pieces[0].dimension == 1);
    }
    SECTION("unconstrained family at weight 0: the single point (1, -1)") {
        const AvviProblem p1 = gen_family(2, 0);
        const auto sol = solve_avi(family_op(p1, 0), p1.constraint);
        REQUIRE(sol.pieces.size() == 1);
        CHECK(sol.pieces[0].witness == Vector{1, -1});
        CHECK(sol.pieces[0].dimension == 0);
    }
    SECTION("unconstrained family at the critical weight is empty") {
        const AvviProblem p1 = gen_family(2, 0);
        const auto sol = solve_avi(family_op(p1, make_rational(1, 2)), p1.constraint);
        CHECK(sol.pieces.empty());
    }
}

TEST_CASE("is_vi_solution") {
    const AvviProblem& prob = family_n2_p1();
    CHECK(is_vi_solution(family_op(prob, make_rational(1, 2)), prob.constraint, Vector{5, -4}));
    const AvviProblem p1 = gen_family(2, 0);
    CHECK(is_vi_solution(family_op(p1, 0), p1.constraint, Vector{1, -1}));
    CHECK_FALSE(is_vi_solution(family_op(p1, 0), p1.constraint, Vector{0, 0}));
}

TEST_CASE("kkt_witness recovers multipliers") {
    const AvviProblem& prob = family_n2_p1();
    const auto w = kkt_witness(family_op(prob, make_rational(1, 2)), prob.constraint, Vector{5, -4});
    REQUIRE(w);
    REQUIRE(w->lambda);
    CHECK((*w->lambda)[0] == 1);
    CHECK(w->pattern == ActivePattern({0}));
}

TEST_CASE("weak Pareto and Pareto membership") {
    const AvviProblem p1 = gen_family(2, 0);
    SECTION("curve point at an interior weight is Pareto and weak Pareto") {
        CHECK(is_weak_pareto(p1, Vector{2, -2}));
        CHECK(is_pareto(p1, Vector{2, -2}));
    }
    SECTION("the origin is neither") {
        CHECK_FALSE(is_weak_pareto(p1, Vector{0, 0}));
        CHECK_FALSE(is_pareto(p1, Vector{0, 0}));
    }
    SECTION("curve endpoint g(0) is weak but not Pareto") {
        CHECK(is_weak_pareto(p1, Vector{1, -1}));
        CHECK_FALSE(is_pareto(p1, Vector{1, -1}));
        CHECK(is_weak_pareto(p1, Vector{-1, 1})); // g(1)
        CHECK_FALSE(is_pareto(p1, Vector{-1, 1}));
    }
    SECTION("boundary line points pass both tests") {
        const AvviProblem& ps = family_n2_p1();
        CHECK(is_weak_pareto(ps, Vector{5, -4}));
        CHECK(is_pareto(ps, Vector{5, -4}));
    }
}

TEST_CASE("solver properties") {
    test::Rng rng(303);
    SECTION("KKT soundness: every returned witness passes is_vi_solution") {
        for (const auto& prob : {gen_family(2, 1), gen_family(4, 2)}) {
            for (int trial = 0; trial < 8; ++trial) {
                const Rational t = rng.next_rational(0, 1, 11);
                const auto op = family_op(prob, t);
                for (const auto& piece : solve_avi(op, prob.constraint).pieces) {
                    CHECK(is_vi_solution(op, prob.constraint, piece.witness));
                    CHECK(pseudo_face_system(*prob.constraint, piece.pattern).contains(piece.witness));
                }
            }
        }
    }
    SECTION("non-solutions lie in no piece") {
        const AvviProblem prob = gen_family(2, 1);
        int rejected = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const Rational t = rng.next_rational(0, 1, 7);
            const auto op = family_op(prob, t);
            Vector x{rng.next_rational(-3, 3), rng.next_rational(-3, 3)};
            if (is_vi_solution(op, prob.constraint, x)) continue;
            ++rejected;
            for (const auto& piece : solve_avi(op, prob.constraint).pieces)
                CHECK_FALSE(piece.xset.contains(x));
        }
        CHECK(rejected > 50);
    }
    SECTION("monotone solution sets are convex: midpoints stay solutions") {
        const AvviProblem prob = gen_family(4, 2);
        for (const Rational& t : {make_rational(1, 2), make_rational(2, 3)}) {
            const auto op = family_op(prob, t);
            const auto sol = solve_avi(op, prob.constraint);
            REQUIRE(!sol.pieces.empty());
            const auto& piece = sol.pieces[0];
            const auto dirs = affine_hull_directions(piece.xset.closure());
            REQUIRE(!dirs.empty());
            for (int k = 1; k <= 5; ++k) {
                const Vector a = piece.witness + Rational(k) * dirs[0];
                const Vector b = piece.witness - Rational(2 * k) * dirs[0];
                if (!piece.xset.contains(a) || !piece.xset.contains(b)) continue;
                const Vector mid = make_rational(1, 2) * (a + b);
                CHECK(is_vi_solution(op, prob.constraint, mid));
            }
        }
    }
    SECTION("scalarization inclusions: interior weights give Pareto points") {
        for (const auto& prob : {gen_family(2, 0), gen_family(2, 1), gen_family(4, 1)}) {
            for (int j = 1; j < 8; ++j) {
                const Rational t = make_rational(j, 8);
                const auto sol = solve_avi(family_op(prob, t), prob.constraint);
                for (const auto& piece : sol.pieces) {
                    CHECK(is_pareto(prob, piece.witness));
                    CHECK(is_weak_pareto(prob, piece.witness));
                }
            }
            for (const Rational t : {Rational(0), Rational(1)}) {
                const auto sol = solve_avi(family_op(prob, t), prob.constraint);
                for (const auto& piece : sol.pieces) CHECK(is_weak_pareto(prob, piece.witness));
            }
        }
    }
}
