#pragma once

#include <tuple>
#include <vector>

#include "avvi/errors.hpp"
#include "avvi/polynomial.hpp"
#include "avvi/roots.hpp"

namespace avvi {

/// Extended Euclid over Q[t]: returns (d, u, v) with u*a + v*b = d, d monic
/// (or zero when both inputs are zero).
inline std::tuple<UniPoly, UniPoly, UniPoly> poly_ext_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly r0 = a, r1 = b;
    UniPoly u0 = UniPoly::constant(1), u1;
    UniPoly v0, v1 = UniPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = UniPoly::divmod(r0, r1);
        UniPoly u2 = u0 - q * u1;
        UniPoly v2 = v0 - q * v1;
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    if (r0.is_zero()) return {r0, u0, v0};
    const Rational l = r0.lead();
    const Rational inv = Rational(1) / l;
    return {inv * r0, inv * u0, inv * v0};
}

/// Exact arithmetic "at" a real algebraic number alpha given by an isolating
/// interval. The defining polynomial may split during inversion (dynamic
/// evaluation); the context keeps the factor that still vanishes at alpha.
class AlgebraicContext {
public:
    explicit AlgebraicContext(const Root& alpha) : root_(alpha) {
        if (alpha.is_exact) throw InternalError("AlgebraicContext expects an interval root");
    }

    const Root& root() const { return root_; }

    UniPoly reduce(const UniPoly& g) const { return UniPoly::divmod(g, root_.defining).second; }

    int sign(const UniPoly& g) const { return sign_at(g, root_); }
    bool vanishes(const UniPoly& g) const { return sign(g) == 0; }

    /// Multiplicative inverse of g modulo the defining polynomial; requires
    /// g(alpha) != 0. May replace the defining polynomial by a proper factor.
    UniPoly inverse(const UniPoly& g0) {
        UniPoly g = reduce(g0);
        while (true) {
            auto [d, u, v] = poly_ext_gcd(g, root_.defining);
            (void)v;
            if (d.is_zero()) throw InternalError("AlgebraicContext::inverse of zero");
            if (d.degree() == 0) return reduce((Rational(1) / d.coeff(0)) * u);
            // alpha is not a root of d (g(alpha) != 0), so it is a root of f/d
            root_.defining = UniPoly::exact_div(root_.defining, d);
            if (root_.defining.degree() == 0)
                throw InternalError("AlgebraicContext: defining polynomial lost its root");
            g = reduce(g);
        }
    }

private:
    Root root_;
};

struct AlgebraicLinearResult {
    bool feasible = false;
    int rank = 0;
};

/// Feasibility and rank of A(alpha) x = b(alpha) for polynomial-entry data
/// at an isolated real algebraic parameter, fully exact.
inline AlgebraicLinearResult solve_linear_at_root(const std::vector<std::vector<UniPoly>>& a,
                                                  const std::vector<UniPoly>& b, const Root& alpha) {
    if (alpha.is_exact) throw InternalError("solve_linear_at_root expects an interval root");
    const int nr = static_cast<int>(a.size());
    const int nc = nr == 0 ? 0 : static_cast<int>(a[0].size());
    if (static_cast<int>(b.size()) != nr) throw DimensionError("solve_linear_at_root: rhs length");

    AlgebraicContext ctx(alpha);
    std::vector<std::vector<UniPoly>> e(static_cast<size_t>(nr));
    for (int i = 0; i < nr; ++i) {
        e[static_cast<size_t>(i)].reserve(static_cast<size_t>(nc) + 1);
        for (int j = 0; j < nc; ++j) e[static_cast<size_t>(i)].push_back(ctx.reduce(a[static_cast<size_t>(i)][static_cast<size_t>(j)]));
        e[static_cast<size_t>(i)].push_back(ctx.reduce(b[static_cast<size_t>(i)]));
    }

    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int p = -1;
        for (int i = r; i < nr; ++i)
            if (!ctx.vanishes(e[static_cast<size_t>(i)][static_cast<size_t>(c)])) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(e[static_cast<size_t>(r)], e[static_cast<size_t>(p)]);
        const UniPoly inv = ctx.inverse(e[static_cast<size_t>(r)][static_cast<size_t>(c)]);
        for (int j = c; j <= nc; ++j)
            e[static_cast<size_t>(r)][static_cast<size_t>(j)] = ctx.reduce(e[static_cast<size_t>(r)][static_cast<size_t>(j)] * inv);
        for (int i = 0; i < nr; ++i) {
            if (i == r) continue;
            const UniPoly f = e[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (f.is_zero()) continue;
            for (int j = c; j <= nc; ++j)
                e[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    ctx.reduce(e[static_cast<size_t>(i)][static_cast<size_t>(j)] - f * e[static_cast<size_t>(r)][static_cast<size_t>(j)]);
        }
        ++r;
    }
    AlgebraicLinearResult res;
    res.rank = r;
    res.feasible = true;
    for (int i = r; i < nr; ++i)
        if (!ctx.vanishes(e[static_cast<size_t>(i)][static_cast<size_t>(nc)])) {
            res.feasible = false;
            break;
        }
    return res;
}

} // namespace avvi
