#pragma once

#include <random>

#include "avvi/linalg.hpp"
#include "avvi/rational.hpp"

namespace avvi::test {

// Deterministic across standard library implementations (std distributions
// are not), so frozen expected values stay valid.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}
    long next_int(long lo, long hi) { // inclusive
        const unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
        return lo + static_cast<long>(gen() % span);
    }
    Rational next_rational(long lo, long hi, long max_den = 7) {
        const long den = next_int(1, max_den);
        return make_rational(next_int(lo * den, hi * den), den);
    }
};

inline Matrix random_skew(Rng& rng, int n, long lo = -5, long hi = 5) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Rational v(rng.next_int(lo, hi));
            m(i, j) = v;
            m(j, i) = -v;
        }
    return m;
}

inline Matrix random_matrix(Rng& rng, int rows, int cols, long lo = -5, long hi = 5) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Rational(rng.next_int(lo, hi));
    return m;
}

// Independent determinant oracle (cofactor expansion), kept free of the
// elimination code it cross-checks.
inline Rational cofactor_det(const Matrix& m) {
    const int n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Rational acc = 0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        Matrix minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, cc++) = m(i, k);
            }
        }
        const Rational term = m(0, j) * cofactor_det(minor);
        acc += (j % 2 == 0) ? term : Rational(-term);
    }
    return acc;
}

} // namespace avvi::test
