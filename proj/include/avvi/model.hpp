#pragma once

#include <optional>
#include <vector>

#include "avvi/errors.hpp"
#include "avvi/ineq.hpp"
#include "avvi/linalg.hpp"
#include "avvi/polynomial.hpp"
#include "avvi/rational.hpp"

namespace avvi {

/// K = {x : A x >= b}.
struct Polyhedron {
    Matrix A;
    Vector b;

    Polyhedron() = default;
    Polyhedron(Matrix a, Vector bb) : A(std::move(a)), b(std::move(bb)) {
        if (A.rows() != b.size()) throw DimensionError("Polyhedron: row count of A != length of b");
    }
    int p() const { return A.rows(); }
    int n() const { return A.cols(); }

    bool contains(const Vector& x) const {
        if (x.size() != n()) throw DimensionError("Polyhedron::contains: wrong dimension");
        for (int i = 0; i < p(); ++i)
            if (dot(A.row(i), x) < b[i]) return false;
        return true;
    }
};

/// F(x) = M x + q.
struct AffineOperator {
    Matrix M;
    Vector q;

    AffineOperator() = default;
    AffineOperator(Matrix m, Vector qq) : M(std::move(m)), q(std::move(qq)) {
        if (!M.is_square()) throw DimensionError("AffineOperator: M must be square");
        if (M.rows() != q.size()) throw DimensionError("AffineOperator: q length != dimension");
    }
    int n() const { return M.rows(); }

    Vector eval(const Vector& x) const { return M * x + q; }
};

/// m affine operators over a common space, with an optional polyhedral
/// constraint set (absent = unconstrained).
struct AvviProblem {
    std::vector<AffineOperator> operators;
    std::optional<Polyhedron> constraint;
    int n = 0;

    AvviProblem() = default;
    AvviProblem(std::vector<AffineOperator> ops, std::optional<Polyhedron> k)
        : operators(std::move(ops)), constraint(std::move(k)) {
        if (operators.empty()) throw DimensionError("AvviProblem: needs at least one operator");
        n = operators.front().n();
        for (const auto& op : operators)
            if (op.n() != n) throw DimensionError("AvviProblem: operators of mixed dimension");
        if (constraint && constraint->n() != n)
            throw DimensionError("AvviProblem: constraint dimension mismatch");
    }

    int m() const { return static_cast<int>(operators.size()); }
    int p() const { return constraint ? constraint->p() : 0; }
    bool unconstrained() const { return !constraint.has_value(); }
};

/// Simplex weight: nonnegative entries summing to one.
struct Weight {
    std::vector<Rational> xi;

    explicit Weight(std::vector<Rational> entries) : xi(std::move(entries)) {
        Rational sum = 0;
        for (const auto& v : xi) {
            if (v < 0) throw DimensionError("Weight: negative entry");
            sum += v;
        }
        if (sum != 1) throw DimensionError("Weight: entries must sum to 1");
    }

    static Weight bicriteria(const Rational& xi1) { return Weight({xi1, 1 - xi1}); }

    int m() const { return static_cast<int>(xi.size()); }
    bool relative_interior() const {
        for (const auto& v : xi)
            if (v == 0) return false;
        return true;
    }
};

/// Index set of active constraints (0-based internally).
struct ActivePattern {
    std::vector<int> indices; // sorted ascending

    ActivePattern() = default;
    explicit ActivePattern(std::vector<int> idx) : indices(std::move(idx)) {
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    }
    static ActivePattern from_mask(unsigned long mask, int p) {
        std::vector<int> idx;
        for (int i = 0; i < p; ++i)
            if (mask & (1ul << i)) idx.push_back(i);
        return ActivePattern(std::move(idx));
    }

    unsigned long mask() const {
        unsigned long m = 0;
        for (int i : indices) m |= 1ul << i;
        return m;
    }
    bool contains(int i) const { return std::binary_search(indices.begin(), indices.end(), i); }
    int size() const { return static_cast<int>(indices.size()); }
    bool operator==(const ActivePattern& o) const { return indices == o.indices; }
};

inline bool is_skew(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("is_skew: non-square matrix");
    return is_skew_entrywise(m);
}

/// Positive semidefiniteness of the symmetric part, decided exactly by
/// pivoted symmetric elimination: pivot on positive diagonal entries; a zero
/// diagonal entry forces its whole row to vanish.
inline bool is_psd(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("is_psd: non-square matrix");
    const int n = m.rows();
    std::vector<std::vector<Rational>> s(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[i][j] = (m(i, j) + m(j, i)) / 2;

    std::vector<int> live(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) live[static_cast<size_t>(i)] = i;

    while (!live.empty()) {
        int pivot = -1;
        for (size_t k = 0; k < live.size(); ++k) {
            const int i = live[k];
            if (s[i][i] < 0) return false;
            if (s[i][i] > 0 && pivot < 0) pivot = static_cast<int>(k);
        }
        if (pivot < 0) {
            // all remaining diagonal entries are zero: PSD iff block is zero
            for (int i : live)
                for (int j : live)
                    if (s[i][j] != 0) return false;
            return true;
        }
        const int p = live[static_cast<size_t>(pivot)];
        live.erase(live.begin() + pivot);
        const Rational d = s[p][p];
        for (int i : live)
            for (int j : live) s[i][j] -= s[i][p] * s[p][j] / d;
    }
    return true;
}

/// A problem is monotone iff every operator matrix is positive semidefinite.
inline bool is_monotone(const AvviProblem& problem) {
    for (const auto& op : problem.operators)
        if (!is_psd(op.M)) return false;
    return true;
}

/// Bicriteria nondegeneracy: det(xi1*M1 + (1-xi1)*M2) not identically zero.
inline bool is_nondegenerate(const AvviProblem& problem) {
    if (problem.m() != 2) throw UnsupportedError("is_nondegenerate: implemented for m = 2 only");
    return !interpolate_parametric_det(problem.operators[0].M, problem.operators[1].M).is_zero();
}

/// (sum xi_i M_i, sum xi_i q_i), exact.
inline AffineOperator scalarize(const AvviProblem& problem, const Weight& w) {
    if (w.m() != problem.m()) throw DimensionError("scalarize: weight length != m");
    Matrix m(problem.n, problem.n);
    Vector q(problem.n);
    for (int k = 0; k < problem.m(); ++k) {
        const auto& op = problem.operators[static_cast<size_t>(k)];
        for (int i = 0; i < problem.n; ++i) {
            for (int j = 0; j < problem.n; ++j) m(i, j) += w.xi[static_cast<size_t>(k)] * op.M(i, j);
            q[i] += w.xi[static_cast<size_t>(k)] * op.q[i];
        }
    }
    return AffineOperator(std::move(m), std::move(q));
}

/// Active index set of x in K, or nullopt when x violates some constraint.
inline std::optional<ActivePattern> active_pattern_of(const Polyhedron& k, const Vector& x) {
    if (x.size() != k.n()) throw DimensionError("active_pattern_of: wrong dimension");
    std::vector<int> idx;
    for (int i = 0; i < k.p(); ++i) {
        const Rational v = dot(k.A.row(i), x);
        if (v < k.b[i]) return std::nullopt;
        if (v == k.b[i]) idx.push_back(i);
    }
    return ActivePattern(std::move(idx));
}

/// Pseudo-face F_alpha as a linear system over x.
inline LinIneqSystem pseudo_face_system(const Polyhedron& k, const ActivePattern& alpha) {
    LinIneqSystem sys(k.n());
    for (int i = 0; i < k.p(); ++i) {
        if (alpha.contains(i))
            sys.add_equality(k.A.row(i), k.b[i]);
        else
            sys.add_strict(k.A.row(i), k.b[i]);
    }
    return sys;
}

} // namespace avvi
