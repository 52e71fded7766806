#pragma once

#include <optional>
#include <vector>

#include "avvi/errors.hpp"
#include "avvi/ineq.hpp"
#include "avvi/model.hpp"

namespace avvi {

/// A point certified by the Lagrange-multiplier system.
struct KktWitness {
    Vector x;
    std::optional<Vector> lambda; // absent for unconstrained problems
    ActivePattern pattern;
};

/// Sol(AVI) restricted to one pseudo-face, described over x only (the
/// multipliers are eliminated).
struct PatternPiece {
    ActivePattern pattern;
    LinIneqSystem xset;
    int dimension = 0; // affine dimension of the closure's affine hull
    Vector witness;
};

struct AviSolutionSet {
    std::vector<PatternPiece> pieces; // one per nonempty pattern, ascending mask order
};

/// Remark-style fast path: Sol = {x : M x + q = 0}.
inline std::optional<AffineSet> solve_unconstrained(const AffineOperator& op) {
    return solve_affine_system(op.M, -op.q);
}

/// KKT system restricted to one pseudo-face: M x - A^T lambda + q = 0 with
/// lambda supported on the pattern, lambda >= 0, the pattern rows tight and
/// the others strict. Multipliers are eliminated by Fourier-Motzkin; the
/// returned system describes the piece in x-space.
inline std::optional<PatternPiece> solve_pattern(const AffineOperator& op, const Polyhedron& k,
                                                 const ActivePattern& pattern) {
    if (op.n() != k.n()) throw DimensionError("solve_pattern: operator/constraint dimension mismatch");
    const int n = op.n();
    const int a = pattern.size();
    LinIneqSystem sys(n + a);

    for (int i = 0; i < n; ++i) {
        Vector c(n + a);
        for (int j = 0; j < n; ++j) c[j] = op.M(i, j);
        for (int j = 0; j < a; ++j) c[n + j] = -k.A(pattern.indices[static_cast<size_t>(j)], i);
        sys.add_equality(std::move(c), -op.q[i]);
    }
    for (int i = 0; i < k.p(); ++i) {
        Vector c(n + a);
        for (int j = 0; j < n; ++j) c[j] = k.A(i, j);
        if (pattern.contains(i))
            sys.add_equality(std::move(c), k.b[i]);
        else
            sys.add_strict(std::move(c), k.b[i]);
    }
    for (int j = 0; j < a; ++j) {
        Vector c(n + a);
        c[n + j] = 1;
        sys.add_nonstrict(std::move(c), 0);
    }

    std::vector<int> keep(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) keep[static_cast<size_t>(i)] = i;
    LinIneqSystem xsys = restrict_to_prefix(fm_project(sys, keep), n);

    const auto w = feasible_point(xsys);
    if (!w) return std::nullopt;
    PatternPiece piece;
    piece.pattern = pattern;
    piece.xset = std::move(xsys);
    piece.dimension = affine_dimension(piece.xset.closure());
    piece.witness = *w;
    return piece;
}

/// Full pattern enumeration (2^p pieces checked, ascending mask order).
inline AviSolutionSet solve_avi(const AffineOperator& op, const std::optional<Polyhedron>& constraint) {
    AviSolutionSet out;
    if (!constraint) {
        const auto s = solve_unconstrained(op);
        if (!s) return out;
        PatternPiece piece;
        piece.pattern = ActivePattern{};
        piece.xset = LinIneqSystem(op.n());
        for (int i = 0; i < op.n(); ++i) piece.xset.add_equality(op.M.row(i), -op.q[i]);
        piece.dimension = s->dimension();
        piece.witness = s->base;
        out.pieces.push_back(std::move(piece));
        return out;
    }
    const int p = constraint->p();
    if (p > 16) throw UnsupportedError("solve_avi: more than 16 constraints");
    for (unsigned long mask = 0; mask < (1ul << p); ++mask) {
        auto piece = solve_pattern(op, *constraint, ActivePattern::from_mask(mask, p));
        if (piece) out.pieces.push_back(std::move(*piece));
    }
    return out;
}

/// Direct KKT membership test (independent of the enumeration above).
inline bool is_vi_solution(const AffineOperator& op, const std::optional<Polyhedron>& constraint,
                           const Vector& x) {
    if (x.size() != op.n()) throw DimensionError("is_vi_solution: wrong dimension");
    const Vector v = op.eval(x);
    if (!constraint) return v.is_zero();
    const auto active = active_pattern_of(*constraint, x);
    if (!active) return false;
    const int p = constraint->p();
    LinIneqSystem sys(p);
    for (int j = 0; j < op.n(); ++j) {
        Vector c(p);
        for (int i = 0; i < p; ++i) c[i] = constraint->A(i, j);
        sys.add_equality(std::move(c), v[j]);
    }
    for (int i = 0; i < p; ++i) {
        Vector c(p);
        c[i] = 1;
        if (active->contains(i))
            sys.add_nonstrict(std::move(c), 0);
        else
            sys.add_equality(std::move(c), 0);
    }
    return is_feasible(sys);
}

/// Multipliers for a known solution (reporting helper).
inline std::optional<KktWitness> kkt_witness(const AffineOperator& op,
                                             const std::optional<Polyhedron>& constraint, const Vector& x) {
    if (!is_vi_solution(op, constraint, x)) return std::nullopt;
    KktWitness w;
    w.x = x;
    if (!constraint) return w;
    const auto active = active_pattern_of(*constraint, x);
    const Vector v = op.eval(x);
    const int p = constraint->p();
    LinIneqSystem sys(p);
    for (int j = 0; j < op.n(); ++j) {
        Vector c(p);
        for (int i = 0; i < p; ++i) c[i] = constraint->A(i, j);
        sys.add_equality(std::move(c), v[j]);
    }
    for (int i = 0; i < p; ++i) {
        Vector c(p);
        c[i] = 1;
        if (active->contains(i))
            sys.add_nonstrict(std::move(c), 0);
        else
            sys.add_equality(std::move(c), 0);
    }
    w.lambda = feasible_point(sys);
    w.pattern = *active;
    return w;
}

namespace detail {

inline LinIneqSystem constraint_rows(const AvviProblem& problem) {
    LinIneqSystem sys(problem.n);
    if (problem.constraint)
        for (int i = 0; i < problem.constraint->p(); ++i)
            sys.add_nonstrict(problem.constraint->A.row(i), problem.constraint->b[i]);
    return sys;
}

} // namespace detail

/// Definition-level test: x in K and no y in K improves every criterion
/// strictly. Serves as an independent oracle against the scalarized solver.
inline bool is_weak_pareto(const AvviProblem& problem, const Vector& x) {
    if (x.size() != problem.n) throw DimensionError("is_weak_pareto: wrong dimension");
    if (problem.constraint && !problem.constraint->contains(x)) return false;
    LinIneqSystem sys = detail::constraint_rows(problem);
    for (const auto& op : problem.operators) {
        const Vector f = op.eval(x);
        sys.add_strict(-f, -dot(f, x)); // <f, y - x> < 0
    }
    return !is_feasible(sys);
}

/// Definition-level Pareto test: no y in K weakly improves all criteria and
/// strictly improves one.
inline bool is_pareto(const AvviProblem& problem, const Vector& x) {
    if (x.size() != problem.n) throw DimensionError("is_pareto: wrong dimension");
    if (problem.constraint && !problem.constraint->contains(x)) return false;
    for (int i = 0; i < problem.m(); ++i) {
        LinIneqSystem sys = detail::constraint_rows(problem);
        for (int j = 0; j < problem.m(); ++j) {
            const Vector f = problem.operators[static_cast<size_t>(j)].eval(x);
            if (j == i)
                sys.add_strict(-f, -dot(f, x)); // <f_i, y - x> < 0
            else
                sys.add_nonstrict(-f, -dot(f, x)); // <f_j, y - x> <= 0
        }
        if (is_feasible(sys)) return false;
    }
    return true;
}

} // namespace avvi
