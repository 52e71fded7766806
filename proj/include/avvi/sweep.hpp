#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "avvi/algebraic.hpp"
#include "avvi/avi_solver.hpp"
#include "avvi/errors.hpp"
#include "avvi/ineq.hpp"
#include "avvi/model.hpp"
#include "avvi/polynomial.hpp"
#include "avvi/roots.hpp"

namespace avvi {

enum class SweepMode { Weak, Pareto };

/// One cell of the parameter decomposition of [0,1] (weak) or (0,1)
/// (Pareto): an open interval between consecutive critical values (closed at
/// a domain endpoint in weak mode) or a single critical point.
struct ParamCell {
    enum class Kind { Interval, Point };
    Kind kind = Kind::Interval;

    Root point; // Point cells

    // Interval cells; absent root = domain endpoint (0 on the left, 1 on the
    // right). Closed flags can only be set at domain endpoints.
    std::optional<Root> lo_root, hi_root;
    bool closed_lo = false, closed_hi = false;
    Rational sample;                          // rational, strictly inside
    int left_critical = -1, right_critical = -1; // indices into the criticals list

    bool is_point() const { return kind == Kind::Point; }
};

/// Per-coordinate univariate rational functions of the sweep parameter,
/// valid on the open interior of their cell.
struct RationalCurve {
    std::vector<RatFun> coords;

    bool is_constant() const {
        for (const auto& c : coords)
            if (!c.is_constant()) return false;
        return true;
    }
    Vector eval(const Rational& t) const {
        Vector x(static_cast<int>(coords.size()));
        for (size_t i = 0; i < coords.size(); ++i) x[static_cast<int>(i)] = coords[i].eval(t);
        return x;
    }
    bool defined_at(const Rational& t) const {
        for (const auto& c : coords)
            if (!c.defined_at(t)) return false;
        return true;
    }
};

/// One relatively open chunk of the solution set, tagged by its parameter
/// cell and active pattern.
struct SolutionPiece {
    enum class Geometry { Curve, FixedSet, SymbolicPoint };

    int id = 0;
    int cell_index = 0;
    ActivePattern pattern;
    Geometry geometry = Geometry::Curve;
    RationalCurve curve; // Geometry::Curve
    PatternPiece fixed;  // Geometry::FixedSet (rational point cells)
    int dimension = 0;   // SymbolicPoint: solution-space dimension at the parameter
};

/// Weight-parametric description of one pattern's KKT system after the
/// multipliers are replaced by the facet description of cone(A_alpha^T).
struct PatternParametric {
    enum class Kind { Infeasible, Curve, Underdetermined };

    ActivePattern pattern;
    bool face_feasible = false;
    Kind kind = Kind::Infeasible;
    std::vector<RatFun> x;            // Kind::Curve: the unique solution
    std::vector<RatFun> strict_conds; // pseudo-face rows, must be > 0
    std::vector<RatFun> nonneg_conds; // cone facet rows, must be >= 0
    std::vector<UniPoly> critical_polys; // pivot/obstruction/sign numerators
};

namespace detail {

/// Facet description of the cone {A_alpha^T lambda : lambda >= 0}:
/// equalities <g, w> = 0 and inequalities <f, w> >= 0.
struct ConeFacets {
    std::vector<Vector> equalities;
    std::vector<Vector> inequalities;
};

inline ConeFacets cone_facets(const Polyhedron& k, const ActivePattern& alpha) {
    const int n = k.n();
    const int a = alpha.size();
    ConeFacets out;
    if (a == 0) {
        for (int i = 0; i < n; ++i) out.equalities.push_back(unit_vector(n, i));
        return out;
    }
    // variables (lambda_1..lambda_a, w_1..w_n)
    LinIneqSystem sys(a + n);
    for (int i = 0; i < n; ++i) {
        Vector c(a + n);
        for (int j = 0; j < a; ++j) c[j] = k.A(alpha.indices[static_cast<size_t>(j)], i);
        c[a + i] = -1;
        sys.add_equality(std::move(c), 0);
    }
    for (int j = 0; j < a; ++j) {
        Vector c(a + n);
        c[j] = 1;
        sys.add_nonstrict(std::move(c), 0);
    }
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) keep.push_back(a + i);
    const LinIneqSystem proj = fm_project(sys, keep);
    auto tail = [&](const LinTerm& t) {
        Vector c(n);
        for (int i = 0; i < n; ++i) c[i] = t.c[a + i];
        return c;
    };
    for (const auto& t : proj.equalities) {
        if (t.d != 0) throw InternalError("cone_facets: inhomogeneous row");
        out.equalities.push_back(tail(t));
    }
    for (const auto& t : proj.nonstrict) {
        if (t.d != 0) throw InternalError("cone_facets: inhomogeneous row");
        out.inequalities.push_back(tail(t));
    }
    if (!proj.strict.empty()) throw InternalError("cone_facets: strict row from nonstrict input");
    return out;
}

struct ParametricSolveResult {
    PatternParametric::Kind kind = PatternParametric::Kind::Infeasible;
    std::vector<RatFun> x;
    std::vector<UniPoly> exceptional; // pivot numerators/denominators, obstruction numerators
};

/// Gauss-Jordan over the rational-function field Q(t). The result describes
/// the system for every parameter at which none of the exceptional
/// polynomials vanishes.
inline ParametricSolveResult parametric_solve(std::vector<std::vector<RatFun>> rows, int ncols) {
    ParametricSolveResult res;
    auto note = [&](const UniPoly& p) {
        if (p.degree() >= 1) res.exceptional.push_back(p);
    };
    const int nr = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < ncols && r < nr; ++c) {
        int p = -1;
        for (int i = r; i < nr; ++i)
            if (!rows[static_cast<size_t>(i)][static_cast<size_t>(c)].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[static_cast<size_t>(r)], rows[static_cast<size_t>(p)]);
        const RatFun pv = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
        note(pv.num);
        note(pv.den);
        for (int j = c; j <= ncols; ++j)
            rows[static_cast<size_t>(r)][static_cast<size_t>(j)] = rows[static_cast<size_t>(r)][static_cast<size_t>(j)] / pv;
        for (int i = 0; i < nr; ++i) {
            if (i == r) continue;
            const RatFun f = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (f.is_zero()) continue;
            for (int j = c; j <= ncols; ++j)
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    rows[static_cast<size_t>(i)][static_cast<size_t>(j)] - f * rows[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        pivot_col.push_back(c);
        ++r;
    }
    bool feasible = true;
    for (int i = r; i < nr; ++i) {
        const RatFun& rhs = rows[static_cast<size_t>(i)][static_cast<size_t>(ncols)];
        if (!rhs.is_zero()) {
            feasible = false;
            note(rhs.num);
            note(rhs.den);
        }
    }
    if (!feasible) {
        res.kind = PatternParametric::Kind::Infeasible;
        return res;
    }
    if (r < ncols) {
        res.kind = PatternParametric::Kind::Underdetermined;
        return res;
    }
    res.kind = PatternParametric::Kind::Curve;
    res.x.assign(static_cast<size_t>(ncols), RatFun{});
    for (int k = 0; k < r; ++k)
        res.x[static_cast<size_t>(pivot_col[static_cast<size_t>(k)])] = rows[static_cast<size_t>(k)][static_cast<size_t>(ncols)];
    return res;
}

} // namespace detail

/// Weight-parametric scalarization for bicriteria problems: entries of
/// M(t) = t M1 + (1-t) M2 and q(t) as degree-<=1 polynomials.
struct BicriteriaPencil {
    std::vector<std::vector<UniPoly>> M;
    std::vector<UniPoly> q;
    int n = 0;

    static BicriteriaPencil of(const AvviProblem& problem) {
        if (problem.m() != 2) throw UnsupportedError("parametric sweep requires m = 2");
        const auto& a = problem.operators[0];
        const auto& b = problem.operators[1];
        BicriteriaPencil p;
        p.n = problem.n;
        p.M.assign(static_cast<size_t>(p.n), std::vector<UniPoly>(static_cast<size_t>(p.n)));
        p.q.assign(static_cast<size_t>(p.n), UniPoly{});
        for (int i = 0; i < p.n; ++i) {
            for (int j = 0; j < p.n; ++j)
                p.M[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    UniPoly::linear(b.M(i, j), a.M(i, j) - b.M(i, j));
            p.q[static_cast<size_t>(i)] = UniPoly::linear(b.q[i], a.q[i] - b.q[i]);
        }
        return p;
    }
};

/// Per-pattern parametric analysis of the bicriteria problem. The returned
/// critical polynomials cover every parameter at which a pattern's
/// contribution can change (pivot drops, feasibility switches, sign flips).
inline std::vector<PatternParametric> analyze_patterns(const AvviProblem& problem) {
    if (problem.m() != 2) throw UnsupportedError("analyze_patterns requires m = 2");
    const int p = problem.p();
    if (p > 16) throw UnsupportedError("analyze_patterns: more than 16 constraints");
    const auto pencil = BicriteriaPencil::of(problem);
    const int n = problem.n;

    std::vector<PatternParametric> out;
    for (unsigned long mask = 0; mask < (1ul << p); ++mask) {
        PatternParametric pa;
        pa.pattern = ActivePattern::from_mask(mask, p);
        if (problem.constraint) {
            pa.face_feasible = is_feasible(pseudo_face_system(*problem.constraint, pa.pattern));
        } else {
            pa.face_feasible = true;
        }
        if (!pa.face_feasible) {
            out.push_back(std::move(pa));
            continue;
        }

        detail::ConeFacets cone;
        if (problem.constraint)
            cone = detail::cone_facets(*problem.constraint, pa.pattern);
        else
            for (int i = 0; i < n; ++i) cone.equalities.push_back(unit_vector(n, i));

        // parametric equality system over x: active rows + cone equalities
        // applied to M(t) x + q(t)
        std::vector<std::vector<RatFun>> rows;
        if (problem.constraint)
            for (int idx : pa.pattern.indices) {
                std::vector<RatFun> row;
                for (int j = 0; j < n; ++j)
                    row.push_back(RatFun::poly(UniPoly::constant(problem.constraint->A(idx, j))));
                row.push_back(RatFun::poly(UniPoly::constant(problem.constraint->b[idx])));
                rows.push_back(std::move(row));
            }
        for (const auto& g : cone.equalities) {
            std::vector<RatFun> row;
            for (int j = 0; j < n; ++j) {
                UniPoly cj;
                for (int i = 0; i < n; ++i)
                    cj = cj + g[i] * pencil.M[static_cast<size_t>(i)][static_cast<size_t>(j)];
                row.push_back(RatFun::poly(std::move(cj)));
            }
            UniPoly rhs;
            for (int i = 0; i < n; ++i) rhs = rhs - g[i] * pencil.q[static_cast<size_t>(i)];
            row.push_back(RatFun::poly(std::move(rhs)));
            rows.push_back(std::move(row));
        }

        auto solved = detail::parametric_solve(std::move(rows), n);
        pa.kind = solved.kind;
        pa.critical_polys = std::move(solved.exceptional);
        if (pa.kind == PatternParametric::Kind::Curve) {
            pa.x = std::move(solved.x);
            if (problem.constraint) {
                for (int i = 0; i < p; ++i) {
                    if (pa.pattern.contains(i)) continue;
                    RatFun v = RatFun::constant(-problem.constraint->b[i]);
                    for (int j = 0; j < n; ++j)
                        v = v + problem.constraint->A(i, j) * pa.x[static_cast<size_t>(j)];
                    pa.strict_conds.push_back(std::move(v));
                }
                for (const auto& f : cone.inequalities) {
                    RatFun v;
                    for (int i = 0; i < n; ++i) {
                        RatFun wi = RatFun::poly(pencil.q[static_cast<size_t>(i)]);
                        for (int j = 0; j < n; ++j)
                            wi = wi + RatFun::poly(pencil.M[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
                                          pa.x[static_cast<size_t>(j)];
                        v = v + f[i] * wi;
                    }
                    pa.nonneg_conds.push_back(std::move(v));
                }
            }
            for (const auto& c : pa.strict_conds)
                if (c.num.degree() >= 1) pa.critical_polys.push_back(c.num);
            for (const auto& c : pa.nonneg_conds)
                if (c.num.degree() >= 1) pa.critical_polys.push_back(c.num);
        }
        out.push_back(std::move(pa));
    }
    return out;
}

namespace detail {

inline std::vector<Root> collect_criticals(const std::vector<PatternParametric>& analysis) {
    std::vector<Root> all;
    for (const auto& pa : analysis)
        for (const auto& poly : pa.critical_polys)
            for (auto& r : isolate_roots(poly, 0, 1)) all.push_back(std::move(r));
    return merge_roots(std::move(all));
}

} // namespace detail

/// Ordered critical values of the bicriteria sweep on [0,1]: every parameter
/// where some pattern's elimination pivots, feasibility obstructions or sign
/// conditions can vanish.
inline std::vector<Root> critical_values(const AvviProblem& problem) {
    return detail::collect_criticals(analyze_patterns(problem));
}

/// Splits the weight segment into interval cells between consecutive
/// criticals and point cells at them. Weak mode keeps the domain endpoints 0
/// and 1 (closed interval ends); Pareto mode excludes them.
inline std::vector<ParamCell> decompose_cells(const std::vector<Root>& criticals, SweepMode mode) {
    std::vector<ParamCell> cells;
    const Root zero = Root::exact(0), one = Root::exact(1);

    auto real_less = [](const Root& a, const Root& b) { return !root_equal(a, b) && root_less(a, b); };

    for (size_t k = 0; k <= criticals.size(); ++k) {
        const bool has_left = k > 0;
        const bool has_right = k < criticals.size();
        const Root& left = has_left ? criticals[k - 1] : zero;
        const Root& right = has_right ? criticals[k] : one;
        if (real_less(left, right)) {
            ParamCell cell;
            cell.kind = ParamCell::Kind::Interval;
            if (has_left) {
                cell.lo_root = left;
                cell.left_critical = static_cast<int>(k) - 1;
            }
            if (has_right) {
                cell.hi_root = right;
                cell.right_critical = static_cast<int>(k);
            }
            cell.closed_lo = !has_left && mode == SweepMode::Weak;
            cell.closed_hi = !has_right && mode == SweepMode::Weak;

            Root lo_b = has_left ? left : zero, hi_b = has_right ? right : one;
            Rational lb = lo_b.upper(), ub = hi_b.lower();
            while (lb >= ub) {
                if (lo_b.is_exact && hi_b.is_exact) throw InternalError("decompose_cells: empty interval");
                refine_root(lo_b);
                refine_root(hi_b);
                lb = lo_b.upper();
                ub = hi_b.lower();
            }
            cell.sample = (lb + ub) / 2;
            cells.push_back(std::move(cell));
        }
        if (has_right) {
            const Root& c = criticals[k];
            const bool interior = real_less(zero, c) && real_less(c, one);
            if (mode == SweepMode::Weak || interior) {
                ParamCell cell;
                cell.kind = ParamCell::Kind::Point;
                cell.point = c;
                cell.left_critical = static_cast<int>(k);
                cell.right_critical = static_cast<int>(k);
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

namespace detail {

/// True iff some root of g lies strictly between the cell's bounding reals.
inline bool has_root_inside_cell(const UniPoly& g, const ParamCell& cell) {
    if (g.degree() < 1) return false;
    const Root zero = Root::exact(0), one = Root::exact(1);
    const Root& left = cell.lo_root ? *cell.lo_root : zero;
    const Root& right = cell.hi_root ? *cell.hi_root : one;
    for (const auto& r : isolate_roots(g, 0, 1)) {
        const bool above = !root_equal(left, r) && root_less(left, r);
        const bool below = !root_equal(r, right) && root_less(r, right);
        if (above && below) return true;
    }
    return false;
}

inline std::vector<SolutionPiece> curve_pieces_impl(const std::vector<PatternParametric>& analysis,
                                                    const ParamCell& cell) {
    if (cell.is_point()) throw DimensionError("curve_pieces: expected an interval cell");
    std::vector<SolutionPiece> out;
    for (const auto& pa : analysis) {
        if (!pa.face_feasible || pa.kind != PatternParametric::Kind::Curve) continue;
        for (const auto& c : pa.x)
            if (!c.defined_at(cell.sample))
                throw InternalError("curve piece undefined at the cell sample: missing critical value");
        bool ok = true;
        for (const auto& c : pa.strict_conds)
            if (!c.defined_at(cell.sample) || c.eval(cell.sample) <= 0) {
                ok = false;
                break;
            }
        if (ok)
            for (const auto& c : pa.nonneg_conds)
                if (!c.defined_at(cell.sample) || c.eval(cell.sample) < 0) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        // one-sample sign tests are sound only if no sign polynomial flips
        // inside the cell; every such flip must already be a critical value
        for (const auto& c : pa.strict_conds)
            if (has_root_inside_cell(c.num, cell))
                throw InternalError("sign condition changes inside a cell: missing critical value");
        for (const auto& c : pa.nonneg_conds)
            if (has_root_inside_cell(c.num, cell))
                throw InternalError("sign condition changes inside a cell: missing critical value");

        SolutionPiece piece;
        piece.pattern = pa.pattern;
        piece.geometry = SolutionPiece::Geometry::Curve;
        piece.curve.coords = pa.x;
        piece.dimension = piece.curve.is_constant() ? 0 : 1;
        out.push_back(std::move(piece));
    }
    return out;
}

inline std::vector<SolutionPiece> point_pieces_impl(const AvviProblem& problem, const ParamCell& cell) {
    if (!cell.is_point()) throw DimensionError("point_pieces: expected a point cell");
    std::vector<SolutionPiece> out;
    if (cell.point.is_exact) {
        const auto op = scalarize(problem, Weight::bicriteria(cell.point.value));
        for (auto& pp : solve_avi(op, problem.constraint).pieces) {
            SolutionPiece piece;
            piece.pattern = pp.pattern;
            piece.geometry = SolutionPiece::Geometry::FixedSet;
            piece.dimension = pp.dimension;
            piece.fixed = std::move(pp);
            out.push_back(std::move(piece));
        }
        return out;
    }
    if (problem.constraint)
        throw UnsupportedError("constrained problem with a non-rational critical value: "
                               "exact point-cell solutions are unavailable");
    // unconstrained: decide feasibility of M(t) x = -q(t) at the algebraic
    // parameter; the explicit solution set is not computed
    const auto pencil = BicriteriaPencil::of(problem);
    std::vector<UniPoly> rhs;
    for (const auto& qi : pencil.q) rhs.push_back(-qi);
    const auto r = solve_linear_at_root(pencil.M, rhs, cell.point);
    if (r.feasible) {
        SolutionPiece piece;
        piece.geometry = SolutionPiece::Geometry::SymbolicPoint;
        piece.dimension = problem.n - r.rank;
        out.push_back(std::move(piece));
    }
    return out;
}

} // namespace detail

/// Curve pieces of one interval cell: for every pattern whose parametric
/// system has a unique solution, the per-coordinate rational functions,
/// kept iff all sign conditions hold throughout the cell.
inline std::vector<SolutionPiece> curve_pieces(const AvviProblem& problem, const ParamCell& cell) {
    return detail::curve_pieces_impl(analyze_patterns(problem), cell);
}

/// Solution pieces at a single critical parameter (exact scalarized solve at
/// rational values; symbolic feasibility for unconstrained problems at
/// irrational ones).
inline std::vector<SolutionPiece> point_pieces(const AvviProblem& problem, const ParamCell& cell) {
    return detail::point_pieces_impl(problem, cell);
}

/// Exact one-sided limit of a curve at a rational parameter: the value when
/// every reduced denominator is nonzero there, divergence otherwise.
inline std::optional<Vector> limit_at(const RationalCurve& curve, const Rational& endpoint) {
    if (!curve.defined_at(endpoint)) return std::nullopt;
    return curve.eval(endpoint);
}

/// Divergence test at an algebraic parameter (reduced denominators make the
/// vanishing test exact).
inline bool limit_exists_at(const RationalCurve& curve, const Root& r) {
    for (const auto& c : curve.coords)
        if (sign_at(c.den, r) == 0) return false;
    return true;
}

struct SweepResult {
    SweepMode mode = SweepMode::Weak;
    std::vector<PatternParametric> patterns;
    std::vector<Root> criticals;
    std::vector<ParamCell> cells;
    std::vector<SolutionPiece> pieces;
    bool degraded = false; // some critical value is irrational
};

/// Full bicriteria sweep: critical values, cell decomposition and all
/// solution pieces with canonical ids (cell order, then pattern mask).
inline SweepResult run_sweep(const AvviProblem& problem, SweepMode mode) {
    SweepResult res;
    res.mode = mode;
    res.patterns = analyze_patterns(problem);
    for (const auto& pa : res.patterns)
        if (pa.face_feasible && pa.kind == PatternParametric::Kind::Underdetermined)
            throw UnsupportedError("pattern with a multi-dimensional parametric solution family");
    res.criticals = detail::collect_criticals(res.patterns);
    for (const auto& r : res.criticals)
        if (!r.is_exact) res.degraded = true;
    res.cells = decompose_cells(res.criticals, mode);
    for (size_t ci = 0; ci < res.cells.size(); ++ci) {
        std::vector<SolutionPiece> pieces = res.cells[ci].is_point()
                                                ? detail::point_pieces_impl(problem, res.cells[ci])
                                                : detail::curve_pieces_impl(res.patterns, res.cells[ci]);
        for (auto& piece : pieces) {
            piece.cell_index = static_cast<int>(ci);
            piece.id = static_cast<int>(res.pieces.size());
            res.pieces.push_back(std::move(piece));
        }
    }
    return res;
}

} // namespace avvi
