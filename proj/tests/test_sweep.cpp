#include <catch2/catch_amalgamated.hpp>

#include "avvi/instances.hpp"
#include "avvi/sweep.hpp"
#include "test_util.hpp"

using namespace avvi;

namespace {

std::vector<Rational> exact_values(const std::vector<Root>& roots) {
    std::vector<Rational> out;
    for (const auto& r : roots) {
        REQUIRE(r.is_exact);
        out.push_back(r.value);
    }
    return out;
}

} // namespace

TEST_CASE("critical_values of the families") {
    CHECK(exact_values(critical_values(gen_family(4, 0))) ==
          std::vector<Rational>{make_rational(1, 2), make_rational(2, 3)});
    CHECK(exact_values(critical_values(gen_family(2, 0))) == std::vector<Rational>{make_rational(1, 2)});
    SECTION("constant nonsingular pencil has no criticals") {
        const Matrix j{{0, 1}, {-1, 0}};
        const AvviProblem prob({AffineOperator(j, Vector{-1, -1}), AffineOperator(j, Vector{-1, -1})},
                               std::nullopt);
        CHECK(critical_values(prob).empty());
    }
    SECTION("constrained families share the unconstrained criticals") {
        for (int p = 1; p <= 2; ++p)
            CHECK(exact_values(critical_values(gen_family(4, p))) ==
                  std::vector<Rational>{make_rational(1, 2), make_rational(2, 3)});
    }
    SECTION("m != 2 is rejected") {
        CHECK_THROWS_AS(critical_values(lift_criterion(gen_family(2, 0))), UnsupportedError);
    }
}

TEST_CASE("decompose_cells") {
    const std::vector<Root> crit{Root::exact(make_rational(1, 2))};
    SECTION("weak mode keeps the domain endpoints") {
        const auto cells = decompose_cells(crit, SweepMode::Weak);
        REQUIRE(cells.size() == 3);
        CHECK_FALSE(cells[0].is_point());
        CHECK(cells[0].closed_lo);
        CHECK_FALSE(cells[0].closed_hi);
        CHECK(cells[1].is_point());
        CHECK(cells[1].point.value == make_rational(1, 2));
        CHECK_FALSE(cells[2].is_point());
        CHECK(cells[2].closed_hi);
        CHECK(cells[0].sample < make_rational(1, 2));
        CHECK(cells[2].sample > make_rational(1, 2));
    }
    SECTION("pareto mode opens them") {
        const auto cells = decompose_cells(crit, SweepMode::Pareto);
        REQUIRE(cells.size() == 3);
        CHECK_FALSE(cells[0].closed_lo);
        CHECK_FALSE(cells[2].closed_hi);
    }
    SECTION("no criticals gives a single interval") {
        const auto cells = decompose_cells({}, SweepMode::Weak);
        REQUIRE(cells.size() == 1);
        CHECK(cells[0].closed_lo);
        CHECK(cells[0].closed_hi);
    }
    SECTION("a critical at zero produces no empty leading interval") {
        const auto cells = decompose_cells({Root::exact(0)}, SweepMode::Weak);
        REQUIRE(cells.size() == 2);
        CHECK(cells[0].is_point());
        CHECK_FALSE(cells[1].is_point());
        CHECK_FALSE(cells[1].closed_lo);
        const auto pareto = decompose_cells({Root::exact(0)}, SweepMode::Pareto);
        REQUIRE(pareto.size() == 1); // boundary critical excluded
        CHECK_FALSE(pareto[0].is_point());
    }
}

TEST_CASE("curve_pieces reproduce the closed-form curve") {
    SECTION("n=2 on the right cell: (1/(1-2t), -1/(1-2t))") {
        const AvviProblem prob = gen_family(2, 0);
        const auto cells = decompose_cells(critical_values(prob), SweepMode::Weak);
        const auto pieces = curve_pieces(prob, cells[2]);
        REQUIRE(pieces.size() == 1);
        const auto& c = pieces[0].curve;
        const Rational t = make_rational(3, 4);
        CHECK(c.eval(t) == Vector{-2, 2}); // 1/(1-3/2) = -2
        CHECK(c.coords[0] == RatFun(UniPoly::constant(1), UniPoly{1, -2}));
        CHECK(c.coords[1] == RatFun(UniPoly::constant(-1), UniPoly{1, -2}));
    }
    SECTION("n=4 on the left cell matches the ground-truth curve") {
        const AvviProblem prob = gen_family(4, 0);
        const GroundTruth gt = ground_truth(4, 0);
        const auto cells = decompose_cells(critical_values(prob), SweepMode::Weak);
        const auto pieces = curve_pieces(prob, cells[0]);
        REQUIRE(pieces.size() == 1);
        CHECK(pieces[0].curve.coords == gt.curve);
    }
    SECTION("constrained family: boundary pattern contributes no curve") {
        const AvviProblem prob = gen_family(2, 1);
        const auto cells = decompose_cells(critical_values(prob), SweepMode::Weak);
        for (const auto& cell : cells) {
            if (cell.is_point()) continue;
            for (const auto& piece : curve_pieces(prob, cell)) CHECK(piece.pattern.size() == 0);
        }
    }
}

TEST_CASE("point_pieces at critical parameters") {
    SECTION("unconstrained family: empty at the critical") {
        const AvviProblem prob = gen_family(2, 0);
        const auto cells = decompose_cells(critical_values(prob), SweepMode::Weak);
        REQUIRE(cells[1].is_point());
        CHECK(point_pieces(prob, cells[1]).empty());
    }
    SECTION("constrained family: the line S_1 at 1/2") {
        const AvviProblem prob = gen_family(2, 1);
        const auto cells = decompose_cells(critical_values(prob), SweepMode::Weak);
        REQUIRE(cells[1].is_point());
        const auto pieces = point_pieces(prob, cells[1]);
        REQUIRE(pieces.size() == 1);
        CHECK(pieces[0].dimension == 1);
        CHECK(pieces[0].fixed.xset.contains(Vector{7, -6}));
    }
    SECTION("family (4,2) at 2/3: the line S_2 through (-3,0,1,3)") {
        const AvviProblem prob = gen_family(4, 2);
        const auto cells = decompose_cells(critical_values(prob), SweepMode::Weak);
        // cells: [0,.), {1/2}, (.,.), {2/3}, (.,1]
        REQUIRE(cells.size() == 5);
        REQUIRE(cells[3].is_point());
        REQUIRE(cells[3].point.value == make_rational(2, 3));
        const auto pieces = point_pieces(prob, cells[3]);
        REQUIRE(pieces.size() == 1);
        const GroundTruth gt = ground_truth(4, 2);
        CHECK(pieces[0].dimension == 1);
        CHECK(pieces[0].fixed.xset.contains(gt.lines[1].base));
        CHECK(pieces[0].fixed.xset.contains(gt.lines[1].base + Rational(3) * gt.lines[1].directions[0]));
        CHECK(pieces[0].pattern == ActivePattern({1}));
        // expected pattern piece at 1/2 is S_1
        const auto at_half = point_pieces(prob, cells[1]);
        REQUIRE(at_half.size() == 1);
        CHECK(at_half[0].pattern == ActivePattern({0}));
        CHECK(at_half[0].fixed.xset.contains(gt.lines[0].base));
    }
}

TEST_CASE("limit_at") {
    const AvviProblem prob = gen_family(2, 0);
    const auto cells = decompose_cells(critical_values(prob), SweepMode::Weak);
    const auto pieces = curve_pieces(prob, cells[2]);
    REQUIRE(pieces.size() == 1);
    const RationalCurve& curve = pieces[0].curve;
    CHECK_FALSE(limit_at(curve, make_rational(1, 2)));   // divergent
    const auto at_one = limit_at(curve, 1);
    REQUIRE(at_one);
    CHECK(*at_one == Vector{-1, 1});
    const RationalCurve constant{{RatFun::constant(1), RatFun::constant(1)}};
    const auto c = limit_at(constant, make_rational(1, 2));
    REQUIRE(c);
    CHECK(*c == Vector{1, 1});
}

TEST_CASE("run_sweep assembles pieces in canonical order") {
    SECTION("family (4,1), weak: curves on 3 cells plus the line at 1/2") {
        const auto sweep = run_sweep(gen_family(4, 1), SweepMode::Weak);
        REQUIRE(sweep.cells.size() == 5);
        REQUIRE(sweep.pieces.size() == 4);
        CHECK_FALSE(sweep.degraded);
        CHECK(sweep.pieces[0].cell_index == 0);
        CHECK(sweep.pieces[1].cell_index == 1); // the line S_1
        CHECK(sweep.pieces[1].geometry == SolutionPiece::Geometry::FixedSet);
        CHECK(sweep.pieces[2].cell_index == 2);
        CHECK(sweep.pieces[3].cell_index == 4);
        for (int i = 0; i < 4; ++i) CHECK(sweep.pieces[static_cast<size_t>(i)].id == i);
    }
    SECTION("family (4,0), pareto mode has the same piece count") {
        const auto sweep = run_sweep(gen_family(4, 0), SweepMode::Pareto);
        CHECK(sweep.pieces.size() == 3);
    }
    SECTION("family point pieces appear exactly for k <= p") {
        for (int p = 0; p <= 2; ++p) {
            const auto sweep = run_sweep(gen_family(4, p), SweepMode::Weak);
            int fixed = 0;
            for (const auto& piece : sweep.pieces)
                if (piece.geometry == SolutionPiece::Geometry::FixedSet) ++fixed;
            CHECK(fixed == p);
        }
    }
}

TEST_CASE("curve values solve the scalarized problem") {
    test::Rng rng(404);
    for (const auto& prob : {gen_family(2, 0), gen_family(4, 1), gen_family(6, 3)}) {
        const auto sweep = run_sweep(prob, SweepMode::Weak);
        for (const auto& piece : sweep.pieces) {
            if (piece.geometry != SolutionPiece::Geometry::Curve) continue;
            const ParamCell& cell = sweep.cells[static_cast<size_t>(piece.cell_index)];
            for (int trial = 0; trial < 10; ++trial) {
                // random rational parameter inside the cell via bracket mixing
                const Rational lo = cell.lo_root ? cell.lo_root->upper() : Rational(0);
                const Rational hi = cell.hi_root ? cell.hi_root->lower() : Rational(1);
                const Rational mix = rng.next_rational(1, 99, 100) / 100;
                Rational t = lo + mix * (hi - lo);
                if (!piece.curve.defined_at(t)) continue;
                const Vector x = piece.curve.eval(t);
                const auto op = scalarize(prob, Weight::bicriteria(t));
                if (t == lo || t == hi) continue;
                CHECK(is_vi_solution(op, prob.constraint, x));
            }
        }
    }
}

TEST_CASE("sweep on a degenerate-but-solvable pencil") {
    // identically singular matrix with generically infeasible system: no
    // solutions anywhere, the sweep must report no pieces rather than fail
    const Matrix z = Matrix::zero(2, 2);
    const AvviProblem prob({AffineOperator(z, Vector{-1, -1}), AffineOperator(z, Vector{-1, -1})},
                           std::nullopt);
    const auto sweep = run_sweep(prob, SweepMode::Weak);
    CHECK(sweep.pieces.empty());
    CHECK(sweep.criticals.empty());
}

TEST_CASE("underdetermined parametric families are refused") {
    // M(t) = 0 with q = 0: every x solves for every weight
    const Matrix z = Matrix::zero(2, 2);
    const AvviProblem prob({AffineOperator(z, Vector(2)), AffineOperator(z, Vector(2))}, std::nullopt);
    CHECK_THROWS_AS(run_sweep(prob, SweepMode::Weak), UnsupportedError);
}

TEST_CASE("sign-condition numerator roots are all critical values") {
    // the invariant behind one-sample sign testing, re-verified per piece
    for (const auto& prob : {gen_family(4, 2), gen_family(6, 2)}) {
        const auto analysis = analyze_patterns(prob);
        const auto criticals = critical_values(prob);
        for (const auto& pa : analysis) {
            if (pa.kind != PatternParametric::Kind::Curve) continue;
            auto check_conds = [&](const std::vector<RatFun>& conds) {
                for (const auto& c : conds) {
                    if (c.num.degree() < 1) continue;
                    for (const auto& r : isolate_roots(c.num, 0, 1)) {
                        bool found = false;
                        for (const auto& known : criticals)
                            if (root_equal(known, r)) {
                                found = true;
                                break;
                            }
                        CHECK(found);
                    }
                }
            };
            check_conds(pa.strict_conds);
            check_conds(pa.nonneg_conds);
        }
    }
}
