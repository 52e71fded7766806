#include <catch2/catch_amalgamated.hpp>

#include "avvi/components.hpp"
#include "avvi/instances.hpp"
#include "test_util.hpp"

using namespace avvi;

TEST_CASE("build_piece_graph on family instances") {
    SECTION("unconstrained n=4: three separated curve pieces") {
        const auto g = build_piece_graph(gen_family(4, 0), SweepMode::Weak);
        CHECK(g.sweep.pieces.size() == 3);
        CHECK(g.edges.empty());
    }
    SECTION("constrained n=2 p=1: two curves and a line, no edges") {
        const auto g = build_piece_graph(gen_family(2, 1), SweepMode::Weak);
        CHECK(g.sweep.pieces.size() == 3);
        CHECK(g.edges.empty());
    }
    SECTION("constant-solution pencil: one piece, no edges") {
        const Matrix j{{0, 1}, {-1, 0}};
        const AvviProblem prob({AffineOperator(j, Vector{-1, -1}), AffineOperator(j, Vector{-1, -1})},
                               std::nullopt);
        const auto g = build_piece_graph(prob, SweepMode::Weak);
        CHECK(g.sweep.pieces.size() == 1);
        CHECK(g.edges.empty());
        const auto rep = count_components(g);
        CHECK(rep.count == 1);
        REQUIRE(rep.witnesses[0]);
        CHECK(*rep.witnesses[0] == Vector{-1, 1});
    }
}

TEST_CASE("edges appear when curve limits land in point pieces") {
    // pencil with a removable singularity: M(t) = diag(d(t), 1), q = (-d(t), -1)
    // where d(t) = 2t-1; the solution is constantly (1, 1), the critical
    // parameter 1/2 keeps it, so all pieces join into one component.
    const Matrix m1{{1, 0}, {0, 1}}, m2{{-1, 0}, {0, 1}};
    const Vector q1{-1, -1}, q2{1, -1};
    const AvviProblem prob({AffineOperator(m1, q1), AffineOperator(m2, q2)}, std::nullopt);
    const auto g = build_piece_graph(prob, SweepMode::Weak);
    REQUIRE(g.sweep.pieces.size() == 3); // curve, point set at 1/2, curve
    CHECK(g.edges.size() >= 2);
    CHECK(count_components(g).count == 1);
}

TEST_CASE("count_components on the families") {
    CHECK(count_components(build_piece_graph(gen_family(4, 0), SweepMode::Weak)).count == 3);
    CHECK(count_components(build_piece_graph(gen_family(4, 2), SweepMode::Weak)).count == 5);
    SECTION("groups partition the piece ids") {
        const auto g = build_piece_graph(gen_family(6, 2), SweepMode::Weak);
        const auto rep = count_components(g);
        CHECK(rep.count == 6); // 3 + 2 + 1
        size_t total = 0;
        for (const auto& grp : rep.groups) total += grp.size();
        CHECK(total == g.sweep.pieces.size());
        for (const auto& w : rep.witnesses) CHECK(w.has_value());
    }
}

TEST_CASE("pareto_weak_diff removes exactly the endpoint values") {
    for (auto [n, p] : {std::pair{2, 0}, std::pair{4, 1}}) {
        const auto diff = pareto_weak_diff(gen_family(n, p));
        const GroundTruth gt = ground_truth(n, p);
        CHECK(diff.piecewise_identical);
        CHECK(diff.chi_weak == diff.chi_pareto);
        REQUIRE(diff.removed.size() == 2);
        CHECK(diff.removed[0] == gt.g0);
        CHECK(diff.removed[1] == gt.g1);
    }
}

TEST_CASE("sampling oracle") {
    SECTION("family n=4 unconstrained: 3 clusters") {
        const auto res = sampling_oracle(gen_family(4, 0));
        CHECK(res.count == 3);
        CHECK(res.points > 1000);
    }
    SECTION("family n=4 p=1: 4 clusters, line clipped") {
        const auto res = sampling_oracle(gen_family(4, 1));
        CHECK(res.count == 4);
        CHECK(res.clipped);
    }
    SECTION("constant-solution problem: 1 cluster") {
        const Matrix j{{0, 1}, {-1, 0}};
        const AvviProblem prob({AffineOperator(j, Vector{-1, -1}), AffineOperator(j, Vector{-1, -1})},
                               std::nullopt);
        OracleOptions opt;
        opt.grid = 200;
        CHECK(sampling_oracle(prob, opt).count == 1);
    }
    SECTION("parameter validation") {
        OracleOptions bad;
        bad.eps = 0;
        CHECK_THROWS_AS(sampling_oracle(gen_family(2, 0), bad), DimensionError);
        bad = {};
        bad.grid = 0;
        CHECK_THROWS_AS(sampling_oracle(gen_family(2, 0), bad), DimensionError);
        bad = {};
        bad.clip = -1;
        CHECK_THROWS_AS(sampling_oracle(gen_family(2, 0), bad), DimensionError);
    }
}

TEST_CASE("separation invariant: squared distance from the curve to H_i is 1/2") {
    test::Rng rng(550);
    for (auto [n, p] : {std::pair{2, 1}, std::pair{4, 1}, std::pair{4, 2}}) {
        const AvviProblem prob = gen_family(n, p);
        const auto sweep = run_sweep(prob, SweepMode::Weak);
        const int s = n / 2;
        int samples = 0;
        for (const auto& piece : sweep.pieces) {
            if (piece.geometry != SolutionPiece::Geometry::Curve) continue;
            const ParamCell& cell = sweep.cells[static_cast<size_t>(piece.cell_index)];
            for (int trial = 0; trial < 7 && samples < 20; ++trial, ++samples) {
                const Rational lo = cell.lo_root ? cell.lo_root->upper() : Rational(0);
                const Rational hi = cell.hi_root ? cell.hi_root->lower() : Rational(1);
                const Rational t = lo + (rng.next_rational(1, 9, 10) / 10) * (hi - lo);
                if (!piece.curve.defined_at(t)) continue;
                const Vector x = piece.curve.eval(t);
                for (int i = 1; i <= s; ++i) {
                    Vector c(n);
                    c[i - 1] = -1;
                    c[n - i] = -1;
                    const Rational num = dot(c, x) - Rational(-1);
                    CHECK(num * num / dot(c, c) == make_rational(1, 2));
                }
            }
        }
        CHECK(samples > 0);
    }
}

TEST_CASE("oracle agrees with the structural count on small families") {
    for (auto [n, p] : {std::pair{2, 0}, std::pair{2, 1}, std::pair{4, 1}}) {
        const int structural = count_components(build_piece_graph(gen_family(n, p), SweepMode::Weak)).count;
        const auto oracle = sampling_oracle(gen_family(n, p));
        CHECK(structural == oracle.count);
        CHECK(structural == n / 2 + p + 1);
    }
}

TEST_CASE("degraded mode: irrational criticals still count exactly") {
    // generic integer skew pencils have irrational pfaffian roots; the
    // counter must stay within the structural upper bound n+1
    test::Rng rng(901);
    int degraded_seen = 0;
    for (int trial = 0; trial < 12 && degraded_seen < 3; ++trial) {
        const Matrix a = test::random_skew(rng, 4, -3, 3), b = test::random_skew(rng, 4, -3, 3);
        const AvviProblem rp({AffineOperator(a, Vector{-1, 0, 1, -1}), AffineOperator(b, Vector{0, -1, 1, 1})},
                             std::nullopt);
        if (!is_nondegenerate(rp)) continue;
        const auto sweep = run_sweep(rp, SweepMode::Weak);
        if (!sweep.degraded) continue;
        ++degraded_seen;
        const auto count = count_components(build_piece_graph(rp, SweepMode::Weak)).count;
        CHECK(count >= 1);
        CHECK(count <= 4 + 1);
    }
    CHECK(degraded_seen > 0);
}

TEST_CASE("constrained problems with irrational criticals are refused") {
    test::Rng rng(902);
    const Matrix a = test::random_skew(rng, 4, -3, 3), b = test::random_skew(rng, 4, -3, 3);
    Matrix rows(1, 4);
    rows(0, 0) = -1;
    rows(0, 3) = -1;
    const AvviProblem prob(
        {AffineOperator(a, Vector{-1, -1, -1, -1}), AffineOperator(b, Vector{-1, -1, -1, -1})},
        Polyhedron(rows, Vector{-1}));
    const auto criticals = critical_values(prob);
    bool irrational = false;
    for (const auto& r : criticals) irrational = irrational || !r.is_exact;
    if (irrational) CHECK_THROWS_AS(run_sweep(prob, SweepMode::Weak), UnsupportedError);
}
