#pragma once

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "avvi/errors.hpp"
#include "avvi/rational.hpp"

namespace avvi {

class Vector {
public:
    Vector() = default;
    explicit Vector(int n) : e_(static_cast<size_t>(n)) {}
    Vector(std::initializer_list<Rational> xs) : e_(xs) {}
    explicit Vector(std::vector<Rational> xs) : e_(std::move(xs)) {}

    int size() const { return static_cast<int>(e_.size()); }
    const Rational& operator[](int i) const { return e_[static_cast<size_t>(i)]; }
    Rational& operator[](int i) { return e_[static_cast<size_t>(i)]; }
    const std::vector<Rational>& entries() const { return e_; }

    bool operator==(const Vector& o) const { return e_ == o.e_; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (x != 0) return false;
        return true;
    }

private:
    std::vector<Rational> e_;
};

inline Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("vector sizes differ");
    Vector r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("vector sizes differ");
    Vector r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector operator-(const Vector& a) {
    Vector r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Vector operator*(const Rational& s, const Vector& a) {
    Vector r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("vector sizes differ");
    Rational s = 0;
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vector unit_vector(int n, int i) {
    Vector r(n);
    r[i] = 1;
    return r;
}

// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        e_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw DimensionError("ragged matrix literal");
            for (const auto& x : r) e_.push_back(x);
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Rational& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    Rational& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

    Vector row(int i) const {
        Vector r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix zero(int n, int m) { return Matrix(n, m); }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> e_;
};

inline Matrix transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

inline Vector operator*(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw DimensionError("matrix-vector size mismatch");
    Vector r(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        Rational s = 0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sizes differ");
    Matrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

/// Solution set of a consistent linear system: a particular point plus a
/// basis of the parallel subspace. dimension() == number of directions.
struct AffineSet {
    Vector base;
    std::vector<Vector> directions;

    int dimension() const { return static_cast<int>(directions.size()); }
};

/// Exact Gauss-Jordan solve of M x = rhs. Returns the full solution set
/// (free variables produce nullspace directions) or nullopt if inconsistent.
inline std::optional<AffineSet> solve_affine_system(const Matrix& m, const Vector& rhs) {
    if (m.rows() != rhs.size()) throw DimensionError("solve_affine_system: rhs length != row count");
    const int nr = m.rows(), nc = m.cols();

    // augmented [M | rhs]
    std::vector<std::vector<Rational>> a(static_cast<size_t>(nr), std::vector<Rational>(static_cast<size_t>(nc) + 1));
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nc; ++j) a[i][j] = m(i, j);
        a[i][nc] = rhs[i];
    }

    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int p = -1;
        for (int i = r; i < nr; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        const Rational inv = a[r][c];
        for (int j = c; j <= nc; ++j) a[r][j] /= inv;
        for (int i = 0; i < nr; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (int j = c; j <= nc; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < nr; ++i)
        if (a[i][nc] != 0) return std::nullopt;

    AffineSet s;
    s.base = Vector(nc);
    for (int k = 0; k < r; ++k) s.base[pivot_col[k]] = a[k][nc];

    std::vector<bool> is_pivot(static_cast<size_t>(nc), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    for (int c = 0; c < nc; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        Vector d(nc);
        d[c] = 1;
        for (int k = 0; k < r; ++k) d[pivot_col[k]] = -a[k][c];
        s.directions.push_back(std::move(d));
    }
    return s;
}

/// Exact determinant via fraction-free (Bareiss) elimination.
inline Rational determinant(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;

    std::vector<std::vector<Rational>> a(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j);

    int sign = 1;
    Rational prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

inline bool is_skew_entrywise(const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != -m(j, i)) return false;
    return true;
}

/// Pfaffian of an exactly skew-symmetric matrix of even dimension, under the
/// convention pf([[0,a],[-a,0]]) = a, computed by Parlett-Reid-style
/// elimination with exact pivoting. Satisfies pfaffian(m)^2 == determinant(m).
inline Rational pfaffian(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("pfaffian of non-square matrix");
    const int n = m.rows();
    if (n % 2 != 0) throw DimensionError("pfaffian requires even dimension");
    if (!is_skew_entrywise(m)) throw DimensionError("pfaffian requires a skew-symmetric matrix");
    if (n == 0) return 1;

    std::vector<std::vector<Rational>> a(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j);

    Rational result = 1;
    for (int k = 0; k < n - 1; k += 2) {
        int p = -1;
        for (int i = k + 1; i < n; ++i)
            if (a[k][i] != 0) { p = i; break; }
        if (p < 0) return 0; // row k zero in the trailing block => singular
        if (p != k + 1) {
            // symmetric swap of row/column p with k+1 flips the sign
            std::swap(a[p], a[k + 1]);
            for (int i = 0; i < n; ++i) std::swap(a[i][p], a[i][k + 1]);
            result = -result;
        }
        const Rational pivot = a[k][k + 1];
        result *= pivot;
        for (int i = k + 2; i < n; ++i) {
            const Rational tau = a[k][i] / pivot;
            if (tau == 0) continue;
            for (int j = k + 2; j < n; ++j) a[i][j] += tau * a[j][k + 1];
        }
        // repeat for the column side to keep the trailing block skew
        for (int j = k + 2; j < n; ++j) {
            const Rational tau = a[k][j] / pivot;
            if (tau == 0) continue;
            for (int i = k + 2; i < n; ++i) a[i][j] -= tau * a[i][k + 1];
        }
    }
    return result;
}

/// Rank by plain Gaussian elimination.
inline int rank_of(const Matrix& m) {
    const int nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Rational>> a(static_cast<size_t>(nr), std::vector<Rational>(static_cast<size_t>(nc)));
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) a[i][j] = m(i, j);
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int p = -1;
        for (int i = r; i < nr; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        for (int i = r + 1; i < nr; ++i) {
            if (a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[r][c];
            for (int j = c; j < nc; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

/// Basis of {x : M x = 0}.
inline std::vector<Vector> nullspace(const Matrix& m) {
    const auto s = solve_affine_system(m, Vector(m.rows()));
    return s ? s->directions : std::vector<Vector>{};
}

} // namespace avvi
