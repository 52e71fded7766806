#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "avvi/avi_solver.hpp"
#include "avvi/components.hpp"
#include "avvi/instances.hpp"
#include "avvi/model.hpp"
#include "avvi/sweep.hpp"

namespace avvi {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // table-ish, one line per instance/case
};

namespace verify_detail {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}
    long next_int(long lo, long hi) {
        return lo + static_cast<long>(gen() % static_cast<unsigned long long>(hi - lo + 1));
    }
    Rational next_rational(long lo_num, long hi_num, long den) {
        return make_rational(next_int(lo_num, hi_num), den);
    }
};

inline Matrix random_skew(Rng& rng, int n, long lo, long hi) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Rational v(rng.next_int(lo, hi));
            m(i, j) = v;
            m(j, i) = -v;
        }
    return m;
}

inline std::vector<std::pair<int, int>> family_instances(int n_max_unconstrained, int n_max_constrained) {
    std::vector<std::pair<int, int>> out;
    for (int n = 2; n <= n_max_unconstrained; n += 2) out.emplace_back(n, 0);
    for (int n = 2; n <= n_max_constrained; n += 2)
        for (int p = 1; p <= n / 2; ++p) out.emplace_back(n, p);
    return out;
}

/// Several exact points of one pattern piece (witness plus hull-direction
/// multiples that stay inside the piece).
inline std::vector<Vector> piece_points(const PatternPiece& piece, int extra = 3) {
    std::vector<Vector> pts{piece.witness};
    if (piece.dimension == 0) return pts;
    for (const auto& d : affine_hull_directions(piece.xset.closure())) {
        for (int k = 1; k <= extra; ++k) {
            for (const Vector& cand : {piece.witness + Rational(k) * d, piece.witness - Rational(k) * d})
                if (piece.xset.contains(cand)) pts.push_back(cand);
        }
    }
    return pts;
}

} // namespace verify_detail

/// Criterion 1: unconstrained family counts chi = n/2 + 1 in both modes.
inline CheckResult criterion_family_counts(int n_max = 8) {
    CheckResult res{"family counts (unconstrained): chi = n/2 + 1", true, ""};
    std::ostringstream out;
    for (int n = 2; n <= n_max; n += 2) {
        const AvviProblem prob = gen_family(n, 0);
        const int expected = n / 2 + 1;
        const int weak = count_components(build_piece_graph(prob, SweepMode::Weak)).count;
        const int pareto = count_components(build_piece_graph(prob, SweepMode::Pareto)).count;
        const bool ok = weak == expected && pareto == expected;
        res.pass = res.pass && ok;
        out << "  P(" << n << ",0): expected " << expected << ", weak " << weak << ", pareto " << pareto
            << (ok ? "" : "  <-- MISMATCH") << "\n";
    }
    res.detail = out.str();
    return res;
}

/// Criterion 2: constrained family counts chi = n/2 + p + 1 in both modes.
inline CheckResult criterion_constrained_counts(int n_max = 6) {
    CheckResult res{"family counts (constrained): chi = n/2 + p + 1", true, ""};
    std::ostringstream out;
    for (int n = 2; n <= n_max; n += 2)
        for (int p = 1; p <= n / 2; ++p) {
            const AvviProblem prob = gen_family(n, p);
            const int expected = n / 2 + p + 1;
            const int weak = count_components(build_piece_graph(prob, SweepMode::Weak)).count;
            const int pareto = count_components(build_piece_graph(prob, SweepMode::Pareto)).count;
            const bool ok = weak == expected && pareto == expected;
            res.pass = res.pass && ok;
            out << "  P(" << n << "," << p << "): expected " << expected << ", weak " << weak << ", pareto "
                << pareto << (ok ? "" : "  <-- MISMATCH") << "\n";
        }
    res.detail = out.str();
    return res;
}

/// Criterion 3: the Pareto pieces equal the weak pieces minus the two
/// endpoint values g(0), g(1), verified symbolically.
inline CheckResult criterion_pareto_weak_diff(int n_max_unconstrained = 8, int n_max_constrained = 6) {
    CheckResult res{"Pareto set = weak set minus {g(0), g(1)}", true, ""};
    std::ostringstream out;
    for (const auto& [n, p] : verify_detail::family_instances(n_max_unconstrained, n_max_constrained)) {
        const auto diff = pareto_weak_diff(gen_family(n, p));
        const GroundTruth gt = ground_truth(n, p);
        const bool ok = diff.piecewise_identical && diff.chi_weak == diff.chi_pareto &&
                        diff.removed.size() == 2 && diff.removed[0] == gt.g0 && diff.removed[1] == gt.g1;
        res.pass = res.pass && ok;
        out << "  P(" << n << "," << p << "): pieces " << (diff.piecewise_identical ? "match" : "differ")
            << ", removed " << diff.removed.size() << " endpoint(s)" << (ok ? "" : "  <-- MISMATCH") << "\n";
    }
    res.detail = out.str();
    return res;
}

/// Criterion 4: pfaffian^2 = determinant on random integer skew matrices.
inline CheckResult criterion_cayley(int total = 200, unsigned long long seed = 12345) {
    CheckResult res{"Cayley identity: pf^2 = det on random skew matrices", true, ""};
    verify_detail::Rng rng(seed);
    const int sizes[] = {2, 4, 6, 8};
    int checked = 0, failed = 0;
    for (int trial = 0; trial < total; ++trial) {
        const int n = sizes[trial % 4];
        const Matrix m = verify_detail::random_skew(rng, n, -9, 9);
        const Rational pf = pfaffian(m);
        ++checked;
        if (pf * pf != determinant(m)) ++failed;
    }
    res.pass = failed == 0;
    std::ostringstream out;
    out << "  " << (checked - failed) << "/" << checked << " identities hold (n in {2,4,6,8})\n";
    res.detail = out.str();
    return res;
}

/// Criterion 5: critical values of every family instance are k/(k+1).
inline CheckResult criterion_critical_values(int n_max_unconstrained = 8, int n_max_constrained = 6) {
    CheckResult res{"critical values: {k/(k+1) : k <= n/2}", true, ""};
    std::ostringstream out;
    for (const auto& [n, p] : verify_detail::family_instances(n_max_unconstrained, n_max_constrained)) {
        const auto roots = critical_values(gen_family(n, p));
        const GroundTruth gt = ground_truth(n, p);
        bool ok = roots.size() == gt.criticals.size();
        if (ok)
            for (size_t i = 0; i < roots.size(); ++i)
                ok = ok && roots[i].is_exact && roots[i].value == gt.criticals[i];
        res.pass = res.pass && ok;
        out << "  P(" << n << "," << p << "): " << roots.size() << " critical value(s)"
            << (ok ? "" : "  <-- MISMATCH") << "\n";
    }
    res.detail = out.str();
    return res;
}

/// Criterion 6: random nondegenerate unconstrained skew bicriteria problems
/// obey chi <= n+1 and the general bound.
inline CheckResult criterion_upper_bounds(int instances = 50, unsigned long long seed = 777) {
    CheckResult res{"upper bounds: chi <= n+1 and the general bound (random skew)", true, ""};
    verify_detail::Rng rng(seed);
    const int sizes[] = {2, 4, 6, 8};
    std::ostringstream out;
    int made = 0, degraded = 0;
    while (made < instances) {
        const int n = sizes[made % 4];
        const Matrix m1 = verify_detail::random_skew(rng, n, -5, 5);
        const Matrix m2 = verify_detail::random_skew(rng, n, -5, 5);
        Vector q1(n), q2(n);
        for (int i = 0; i < n; ++i) {
            q1[i] = Rational(rng.next_int(-5, 5));
            q2[i] = Rational(rng.next_int(-5, 5));
        }
        const AvviProblem prob({AffineOperator(m1, q1), AffineOperator(m2, q2)}, std::nullopt);
        if (!is_nondegenerate(prob)) continue; // rejection sampling
        ++made;
        const auto sweep_weak = build_piece_graph(prob, SweepMode::Weak);
        const int chi_weak = count_components(sweep_weak).count;
        const int chi_pareto = count_components(build_piece_graph(prob, SweepMode::Pareto)).count;
        if (sweep_weak.sweep.degraded) ++degraded;
        const Integer general = *bounds(2, n, 0, BoundKind::GeneralUpper);
        const bool ok = chi_weak <= n + 1 && chi_pareto <= n + 1 && Integer(chi_weak) <= general &&
                        Integer(chi_pareto) <= general;
        if (!ok) {
            res.pass = false;
            out << "  instance " << made << " (n=" << n << "): chi_weak=" << chi_weak
                << " chi_pareto=" << chi_pareto << "  <-- BOUND VIOLATED\n";
        }
    }
    out << "  " << made << " random instances within bounds (" << degraded
        << " with irrational critical values)\n";
    res.detail = out.str();
    return res;
}

/// Criterion 7: solver witnesses at interior weights are Pareto, at boundary
/// weights weak Pareto.
inline CheckResult criterion_scalarization(int n_max_unconstrained = 8, int n_max_constrained = 6) {
    CheckResult res{"scalarization: interior witnesses Pareto, boundary weak Pareto", true, ""};
    std::ostringstream out;
    for (const auto& [n, p] : verify_detail::family_instances(n_max_unconstrained, n_max_constrained)) {
        const AvviProblem prob = gen_family(n, p);
        int checked = 0, failed = 0;
        for (int j = 0; j <= 19; ++j) {
            const Rational t = make_rational(j, 19); // 20 weights, two of them boundary
            const bool interior = j != 0 && j != 19;
            const auto sol = solve_avi(scalarize(prob, Weight::bicriteria(t)), prob.constraint);
            for (const auto& piece : sol.pieces)
                for (const auto& x : verify_detail::piece_points(piece, 2)) {
                    ++checked;
                    const bool ok = interior ? is_pareto(prob, x) : is_weak_pareto(prob, x);
                    if (!ok) ++failed;
                }
        }
        res.pass = res.pass && failed == 0;
        out << "  P(" << n << "," << p << "): " << (checked - failed) << "/" << checked << " witnesses pass"
            << (failed == 0 ? "" : "  <-- MISMATCH") << "\n";
    }
    res.detail = out.str();
    return res;
}

/// Criterion 8: midpoints of random witness pairs of one (monotone) AVI
/// solution set still solve it.
inline CheckResult criterion_convexity(int pairs = 100, unsigned long long seed = 4242) {
    CheckResult res{"convexity: witness-pair midpoints stay solutions", true, ""};
    verify_detail::Rng rng(seed);
    struct Pool {
        AffineOperator op;
        std::optional<Polyhedron> constraint;
        std::vector<Vector> points;
    };
    std::vector<Pool> pools;
    for (const auto& [n, p] : verify_detail::family_instances(6, 6)) {
        const AvviProblem prob = gen_family(n, p);
        std::vector<Rational> weights{make_rational(1, 3), make_rational(3, 4)};
        for (const auto& c : ground_truth(n, p).criticals) weights.push_back(c);
        for (const auto& t : weights) {
            const auto op = scalarize(prob, Weight::bicriteria(t));
            const auto sol = solve_avi(op, prob.constraint);
            Pool pool{op, prob.constraint, {}};
            for (const auto& piece : sol.pieces)
                for (const auto& x : verify_detail::piece_points(piece, 4)) pool.points.push_back(x);
            if (pool.points.size() >= 2) pools.push_back(std::move(pool));
        }
    }
    int checked = 0, failed = 0;
    while (checked < pairs && !pools.empty()) {
        const Pool& pool = pools[static_cast<size_t>(rng.next_int(0, static_cast<long>(pools.size()) - 1))];
        const auto& a = pool.points[static_cast<size_t>(rng.next_int(0, static_cast<long>(pool.points.size()) - 1))];
        const auto& b = pool.points[static_cast<size_t>(rng.next_int(0, static_cast<long>(pool.points.size()) - 1))];
        const Vector mid = make_rational(1, 2) * (a + b);
        ++checked;
        if (!is_vi_solution(pool.op, pool.constraint, mid)) ++failed;
    }
    res.pass = failed == 0 && checked == pairs;
    std::ostringstream out;
    out << "  " << (checked - failed) << "/" << checked << " midpoints solve their AVI\n";
    res.detail = out.str();
    return res;
}

/// Criterion 9: squared distance from curve samples to each hyperplane H_i
/// equals 1/2 exactly (constrained instances).
inline CheckResult criterion_separation(int n_max_constrained = 6) {
    CheckResult res{"separation: squared distance from the curve to H_i is 1/2", true, ""};
    std::ostringstream out;
    for (const auto& [n, p] : verify_detail::family_instances(0, n_max_constrained)) {
        const AvviProblem prob = gen_family(n, p);
        const auto sweep = run_sweep(prob, SweepMode::Weak);
        const int s = n / 2;
        int checked = 0, failed = 0;
        for (const auto& piece : sweep.pieces) {
            if (piece.geometry != SolutionPiece::Geometry::Curve || checked >= 20) continue;
            const ParamCell& cell = sweep.cells[static_cast<size_t>(piece.cell_index)];
            const Rational lo = cell.lo_root ? cell.lo_root->upper() : Rational(0);
            const Rational hi = cell.hi_root ? cell.hi_root->lower() : Rational(1);
            for (int j = 1; j <= 7 && checked < 20; ++j) {
                const Rational t = lo + Rational(j) * (hi - lo) / 8;
                if (!piece.curve.defined_at(t)) continue;
                const Vector x = piece.curve.eval(t);
                ++checked;
                for (int i = 1; i <= s; ++i) {
                    Vector c(n);
                    c[i - 1] = -1;
                    c[n - i] = -1;
                    const Rational num = dot(c, x) + 1;
                    if (num * num / dot(c, c) != make_rational(1, 2)) ++failed;
                }
            }
        }
        res.pass = res.pass && failed == 0 && checked > 0;
        out << "  P(" << n << "," << p << "): " << checked << " samples, " << failed << " violations\n";
    }
    res.detail = out.str();
    return res;
}

/// Criterion 10: lifting a variable or a criterion preserves component
/// counts (structural for m = 2, oracle for the m = 3 lift).
inline CheckResult criterion_lifting() {
    CheckResult res{"lifting preserves component counts", true, ""};
    std::ostringstream out;
    for (const auto& [n, p] : {std::pair{2, 0}, std::pair{4, 1}}) {
        const AvviProblem base = gen_family(n, p);
        const int chi = count_components(build_piece_graph(base, SweepMode::Weak)).count;

        const AvviProblem lifted_var = lift_variable(base);
        const int chi_var = count_components(build_piece_graph(lifted_var, SweepMode::Weak)).count;
        const bool var_ok = chi_var == chi;

        OracleOptions opt;
        opt.grid = 800;
        const AvviProblem lifted_crit = lift_criterion(base);
        const int chi_crit = sampling_oracle(lifted_crit, opt).count;
        const bool crit_ok = chi_crit == chi;

        res.pass = res.pass && var_ok && crit_ok;
        out << "  P(" << n << "," << p << "): chi " << chi << ", variable-lift " << chi_var
            << ", criterion-lift oracle " << chi_crit << ((var_ok && crit_ok) ? "" : "  <-- MISMATCH")
            << "\n";
    }
    res.detail = out.str();
    return res;
}

/// Criterion 11: the sampling oracle with default settings reproduces the
/// structural counts on every family instance.
inline CheckResult criterion_oracle_agreement(int n_max_unconstrained = 8, int n_max_constrained = 6) {
    CheckResult res{"oracle agreement with structural counts", true, ""};
    std::ostringstream out;
    for (const auto& [n, p] : verify_detail::family_instances(n_max_unconstrained, n_max_constrained)) {
        const AvviProblem prob = gen_family(n, p);
        const int structural = count_components(build_piece_graph(prob, SweepMode::Weak)).count;
        const auto oracle = sampling_oracle(prob);
        const bool ok = oracle.count == structural;
        res.pass = res.pass && ok;
        out << "  P(" << n << "," << p << "): structural " << structural << ", oracle " << oracle.count
            << (ok ? "" : "  <-- MISMATCH") << "\n";
    }
    res.detail = out.str();
    return res;
}

inline std::vector<CheckResult> run_all_criteria(unsigned long long seed = 12345) {
    return {
        criterion_family_counts(),
        criterion_constrained_counts(),
        criterion_pareto_weak_diff(),
        criterion_cayley(200, seed),
        criterion_critical_values(),
        criterion_upper_bounds(50, seed + 1),
        criterion_scalarization(),
        criterion_convexity(100, seed + 2),
        criterion_separation(),
        criterion_lifting(),
        criterion_oracle_agreement(),
    };
}

/// Named verification suites for the command line.
inline std::vector<CheckResult> run_suite(const std::string& suite, int n_max, unsigned long long seed) {
    const int ncon = std::min(n_max, 6);
    if (suite == "pp")
        return {criterion_family_counts(n_max), criterion_constrained_counts(ncon),
                criterion_pareto_weak_diff(n_max, ncon), criterion_critical_values(n_max, ncon),
                criterion_separation(ncon)};
    if (suite == "cayley") return {criterion_cayley(200, seed)};
    if (suite == "bounds") return {criterion_upper_bounds(50, seed)};
    if (suite == "scalarization") return {criterion_scalarization(n_max, ncon)};
    if (suite == "convexity") return {criterion_convexity(100, seed)};
    if (suite == "lift") return {criterion_lifting()};
    if (suite == "oracle") return {criterion_oracle_agreement(n_max, ncon)};
    if (suite == "all") return run_all_criteria(seed);
    throw ParseError("unknown suite: " + suite +
                     " (expected pp, cayley, bounds, scalarization, convexity, lift, oracle, all)");
}

} // namespace avvi
