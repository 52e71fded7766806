#pragma once

#include <optional>
#include <vector>

#include "avvi/errors.hpp"
#include "avvi/model.hpp"
#include "avvi/polynomial.hpp"

namespace avvi {

/// Closed-form description of a family instance: component count, critical
/// values, the solution curve, the boundary lines, and the curve endpoints.
struct GroundTruth {
    int n = 0, p = 0, s = 0;
    int expected_chi = 0;              // both Pareto and weak
    std::vector<Rational> criticals;   // k/(k+1), k = 1..s
    std::vector<RatFun> curve;         // x_i = 1/(i - (i+1) t) for i <= s, mirrored negated
    std::vector<AffineSet> lines;      // S_k for k = 1..p
    Vector g0, g1;                     // curve values at the weight-interval endpoints
};

namespace detail {

inline Vector family_u(int n, int k1) { // u_k, 1-based k
    Vector u(n);
    u[k1 - 1] = 1;
    u[n - k1] = -1;
    return u;
}

} // namespace detail

/// Bicriteria skew family: anti-diagonal M1 (+1 top half, -1 bottom), M2
/// (-1..-s top half outside-in, +s..+1 bottom), q = (-1,...,-1), and p rows
/// -x_k - x_{n+1-k} >= -1. p = 0 yields the unconstrained variant.
inline AvviProblem gen_family(int n, int p) {
    if (n < 2 || n % 2 != 0) throw DimensionError("gen_family: n must be even and >= 2");
    const int s = n / 2;
    if (p < 0 || p > s) throw DimensionError("gen_family: p must satisfy 0 <= p <= n/2");
    if (n > 24) throw UnsupportedError("gen_family: n capped at 24");

    Matrix m1(n, n), m2(n, n);
    for (int i = 1; i <= n; ++i) {
        const int j = n + 1 - i;
        m1(i - 1, j - 1) = i <= s ? 1 : -1;
        m2(i - 1, j - 1) = i <= s ? Rational(-i) : Rational(j);
    }
    Vector q(n);
    for (int i = 0; i < n; ++i) q[i] = -1;

    std::optional<Polyhedron> constraint;
    if (p > 0) {
        Matrix a(p, n);
        Vector b(p);
        for (int k = 1; k <= p; ++k) {
            a(k - 1, k - 1) = -1;
            a(k - 1, n - k) = -1;
            b[k - 1] = -1;
        }
        constraint = Polyhedron(std::move(a), std::move(b));
    }
    return AvviProblem({AffineOperator(m1, q), AffineOperator(m2, q)}, std::move(constraint));
}

inline GroundTruth ground_truth(int n, int p) {
    (void)gen_family(n, p); // parameter validation
    const int s = n / 2;
    GroundTruth gt;
    gt.n = n;
    gt.p = p;
    gt.s = s;
    gt.expected_chi = s + p + 1;
    for (int k = 1; k <= s; ++k) gt.criticals.push_back(make_rational(k, k + 1));

    gt.curve.resize(static_cast<size_t>(n));
    for (int i = 1; i <= s; ++i) {
        // x_i = 1/(i - (i+1) t), x_{n+1-i} = -x_i
        const RatFun f(UniPoly::constant(1), UniPoly{Rational(i), Rational(-(i + 1))});
        gt.curve[static_cast<size_t>(i - 1)] = f;
        gt.curve[static_cast<size_t>(n - i)] = -f;
    }
    gt.g0 = Vector(n);
    gt.g1 = Vector(n);
    for (int i = 0; i < n; ++i) {
        gt.g0[i] = gt.curve[static_cast<size_t>(i)].eval(0);
        gt.g1[i] = gt.curve[static_cast<size_t>(i)].eval(1);
    }
    for (int k = 1; k <= p; ++k) {
        AffineSet line;
        line.base = unit_vector(n, n - k); // e_{2s+1-k}
        for (int j = 1; j <= s; ++j) {
            if (j == k) continue;
            const Rational beta = make_rational(k + 1, j - k); // 1/(j - (j+1) k/(k+1))
            line.base = line.base + beta * detail::family_u(n, j);
        }
        line.directions.push_back(detail::family_u(n, k));
        gt.lines.push_back(std::move(line));
    }
    return gt;
}

/// Embeds the problem one dimension up, pinning the new coordinate to zero
/// with a pair of opposite inequalities (p grows by 2).
inline AvviProblem lift_variable(const AvviProblem& problem) {
    const int n = problem.n;
    std::vector<AffineOperator> ops;
    for (const auto& op : problem.operators) {
        Matrix m(n + 1, n + 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = op.M(i, j);
        Vector q(n + 1);
        for (int i = 0; i < n; ++i) q[i] = op.q[i];
        ops.emplace_back(std::move(m), std::move(q));
    }
    const int p = problem.p();
    Matrix a(p + 2, n + 1);
    Vector b(p + 2);
    if (problem.constraint)
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < n; ++j) a(i, j) = problem.constraint->A(i, j);
            b[i] = problem.constraint->b[i];
        }
    a(p, n) = 1;      // x_{n+1} >= 0
    a(p + 1, n) = -1; // -x_{n+1} >= 0
    return AvviProblem(std::move(ops), Polyhedron(std::move(a), std::move(b)));
}

/// Duplicates the last criterion; the constraint set is unchanged.
inline AvviProblem lift_criterion(const AvviProblem& problem) {
    std::vector<AffineOperator> ops = problem.operators;
    ops.push_back(ops.back());
    return AvviProblem(std::move(ops), problem.constraint);
}

enum class BoundKind { GeneralUpper, SkewBicriteriaUpper, LowerMonotone };

/// Bound formulas; nullopt when the hypotheses fail for (m, n, p).
inline std::optional<Integer> bounds(int m, int n, int p, BoundKind kind) {
    if (m < 1 || n < 1 || p < 0) throw DimensionError("bounds: need m, n >= 1 and p >= 0");
    switch (kind) {
    case BoundKind::GeneralUpper: {
        Integer v = 1;
        const int e = 2 * m + 2 * n + 3 * p + 1;
        for (int i = 0; i < e; ++i) v *= 3;
        return Integer(2 * v);
    }
    case BoundKind::SkewBicriteriaUpper:
        if (m != 2 || p != 0 || n < 2 || n % 2 != 0) return std::nullopt;
        return Integer(n + 1);
    case BoundKind::LowerMonotone:
        if (m < 2 || n < 2 || p > n / 2) return std::nullopt;
        return Integer(n / 2 + p + 1);
    }
    throw InternalError("bounds: unknown kind");
}

} // namespace avvi
