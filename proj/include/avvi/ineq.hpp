#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "avvi/errors.hpp"
#include "avvi/linalg.hpp"
#include "avvi/rational.hpp"

namespace avvi {

/// One affine condition c.x (rel) d; the relation is determined by which list
/// of LinIneqSystem the term sits in.
struct LinTerm {
    Vector c;
    Rational d;
};

/// Finite system of strict (c.x > d), nonstrict (c.x >= d) and equality
/// (c.x = d) conditions over a fixed ambient dimension.
struct LinIneqSystem {
    int dim = 0;
    std::vector<LinTerm> strict;
    std::vector<LinTerm> nonstrict;
    std::vector<LinTerm> equalities;

    explicit LinIneqSystem(int dimension = 0) : dim(dimension) {}

    void check(const Vector& c) const {
        if (c.size() != dim) throw DimensionError("LinIneqSystem: row has wrong ambient dimension");
    }
    void add_strict(Vector c, Rational d) {
        check(c);
        strict.push_back({std::move(c), std::move(d)});
    }
    void add_nonstrict(Vector c, Rational d) {
        check(c);
        nonstrict.push_back({std::move(c), std::move(d)});
    }
    void add_equality(Vector c, Rational d) {
        check(c);
        equalities.push_back({std::move(c), std::move(d)});
    }

    size_t row_count() const { return strict.size() + nonstrict.size() + equalities.size(); }

    /// Relaxes strict rows to nonstrict ones (a superset of the closure).
    LinIneqSystem closure() const {
        LinIneqSystem s(dim);
        s.nonstrict = nonstrict;
        s.equalities = equalities;
        for (const auto& t : strict) s.nonstrict.push_back(t);
        return s;
    }

    bool contains(const Vector& x) const {
        if (x.size() != dim) throw DimensionError("LinIneqSystem::contains: wrong dimension");
        for (const auto& t : equalities)
            if (dot(t.c, x) != t.d) return false;
        for (const auto& t : nonstrict)
            if (dot(t.c, x) < t.d) return false;
        for (const auto& t : strict)
            if (dot(t.c, x) <= t.d) return false;
        return true;
    }

    /// Appends all rows of another system over the same ambient space.
    void append(const LinIneqSystem& o) {
        if (o.dim != dim) throw DimensionError("LinIneqSystem::append: dimension mismatch");
        strict.insert(strict.end(), o.strict.begin(), o.strict.end());
        nonstrict.insert(nonstrict.end(), o.nonstrict.begin(), o.nonstrict.end());
        equalities.insert(equalities.end(), o.equalities.begin(), o.equalities.end());
    }
};

namespace detail {

// canonical positively-scaled integer-primitive form, used for dedup
inline std::vector<Rational> row_key(const LinTerm& t) {
    Integer l = 1;
    for (int i = 0; i < t.c.size(); ++i) l = lcm(l, denominator(t.c[i]));
    l = lcm(l, denominator(t.d));
    Integer g = 0;
    for (int i = 0; i < t.c.size(); ++i) g = gcd(g, numerator(t.c[i]) * (l / denominator(t.c[i])));
    g = gcd(g, numerator(t.d) * (l / denominator(t.d)));
    Rational s = g == 0 ? Rational(1) : make_rational(l, g);
    std::vector<Rational> key;
    key.reserve(static_cast<size_t>(t.c.size()) + 1);
    for (int i = 0; i < t.c.size(); ++i) key.push_back(s * t.c[i]);
    key.push_back(s * t.d);
    return key;
}

struct RowDedup {
    std::set<std::pair<int, std::vector<Rational>>> seen;
    bool insert(int kind, const LinTerm& t) { return seen.insert({kind, row_key(t)}).second; }
};

inline bool is_zero_row(const LinTerm& t) { return t.c.is_zero(); }

} // namespace detail

/// Eliminates variable j by substitution (when an equality pins it) or by
/// Fourier-Motzkin combination. Ambient dimension is preserved; the
/// eliminated coordinate no longer occurs in any row. Tautologies are
/// dropped, contradictory ground rows are kept.
inline LinIneqSystem eliminate_variable(const LinIneqSystem& s, int j) {
    if (j < 0 || j >= s.dim) throw DimensionError("eliminate_variable: index out of range");
    LinIneqSystem out(s.dim);
    detail::RowDedup dedup;

    auto push = [&](int kind, LinTerm t) {
        if (detail::is_zero_row(t)) {
            // ground row: drop tautologies, keep contradictions
            if (kind == 0 && t.d == 0) return;
            if (kind == 1 && t.d <= 0) return;
            if (kind == 2 && t.d < 0) return;
        }
        if (!dedup.insert(kind, t)) return;
        if (kind == 0)
            out.equalities.push_back(std::move(t));
        else if (kind == 1)
            out.nonstrict.push_back(std::move(t));
        else
            out.strict.push_back(std::move(t));
        if (out.row_count() > 200000) throw UnsupportedError("Fourier-Motzkin blowup");
    };

    // substitution via an equality that mentions x_j
    int pivot = -1;
    for (size_t i = 0; i < s.equalities.size(); ++i)
        if (s.equalities[i].c[j] != 0) {
            pivot = static_cast<int>(i);
            break;
        }
    if (pivot >= 0) {
        const LinTerm& e = s.equalities[static_cast<size_t>(pivot)];
        auto substitute = [&](const LinTerm& t) {
            LinTerm r = t;
            if (t.c[j] != 0) {
                const Rational f = t.c[j] / e.c[j];
                r.c = t.c - f * e.c;
                r.d = t.d - f * e.d;
            }
            return r;
        };
        for (size_t i = 0; i < s.equalities.size(); ++i)
            if (static_cast<int>(i) != pivot) push(0, substitute(s.equalities[i]));
        for (const auto& t : s.nonstrict) push(1, substitute(t));
        for (const auto& t : s.strict) push(2, substitute(t));
        return out;
    }

    for (const auto& t : s.equalities) push(0, t); // none mention x_j

    // lower rows: c_j > 0, upper rows: c_j < 0
    struct Ineq {
        const LinTerm* t;
        bool is_strict;
    };
    std::vector<Ineq> lower, upper;
    auto classify = [&](const LinTerm& t, bool strict_row) {
        if (t.c[j] > 0)
            lower.push_back({&t, strict_row});
        else if (t.c[j] < 0)
            upper.push_back({&t, strict_row});
        else
            push(strict_row ? 2 : 1, t);
    };
    for (const auto& t : s.nonstrict) classify(t, false);
    for (const auto& t : s.strict) classify(t, true);

    for (const auto& l : lower)
        for (const auto& u : upper) {
            // multipliers -u.c[j] > 0 and l.c[j] > 0 cancel x_j
            const Rational a = -u.t->c[j], b = l.t->c[j];
            LinTerm r;
            r.c = a * l.t->c + b * u.t->c;
            r.d = a * l.t->d + b * u.t->d;
            push((l.is_strict || u.is_strict) ? 2 : 1, std::move(r));
        }
    return out;
}

/// Fourier-Motzkin projection onto the kept coordinates (ambient dimension
/// preserved; eliminated coordinates stop occurring). Strictness propagates:
/// combining a strict row yields a strict row.
inline LinIneqSystem fm_project(const LinIneqSystem& s, const std::vector<int>& keep) {
    std::vector<bool> kept(static_cast<size_t>(s.dim), false);
    for (int k : keep) {
        if (k < 0 || k >= s.dim) throw DimensionError("fm_project: keep index out of range");
        kept[static_cast<size_t>(k)] = true;
    }
    LinIneqSystem cur = s;
    for (int j = s.dim - 1; j >= 0; --j)
        if (!kept[static_cast<size_t>(j)]) cur = eliminate_variable(cur, j);
    return cur;
}

namespace detail {

inline bool ground_feasible(const LinIneqSystem& s) {
    for (const auto& t : s.equalities)
        if (is_zero_row(t) && t.d != 0) return false;
    for (const auto& t : s.nonstrict)
        if (is_zero_row(t) && t.d > 0) return false;
    for (const auto& t : s.strict)
        if (is_zero_row(t) && t.d >= 0) return false;
    return true;
}

} // namespace detail

/// Decides nonemptiness exactly; on success returns a rational witness.
inline std::optional<Vector> feasible_point(const LinIneqSystem& s) {
    std::vector<LinIneqSystem> levels;
    levels.reserve(static_cast<size_t>(s.dim) + 1);
    levels.push_back(s);
    for (int j = s.dim - 1; j >= 0; --j) levels.push_back(eliminate_variable(levels.back(), j));
    // levels[k] has variables 0..dim-k-1 live; levels[dim] is ground
    if (!detail::ground_feasible(levels.back())) return std::nullopt;

    Vector x(s.dim);
    for (int j = 0; j < s.dim; ++j) {
        const LinIneqSystem& lvl = levels[static_cast<size_t>(s.dim - 1 - j)];
        // value for x_j given x_0..x_{j-1}; rows of lvl involve vars 0..j only
        auto rest = [&](const LinTerm& t) {
            Rational v = t.d;
            for (int i = 0; i < j; ++i) v -= t.c[i] * x[i];
            return v; // t.c[j]*x_j (rel) v
        };
        std::optional<Rational> fixed;
        for (const auto& t : lvl.equalities)
            if (t.c[j] != 0) {
                fixed = rest(t) / t.c[j];
                break;
            }
        if (fixed) {
            x[j] = *fixed;
            continue;
        }
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        auto scan = [&](const LinTerm& t, bool strict_row) {
            if (t.c[j] == 0) return;
            const Rational bound = rest(t) / t.c[j];
            if (t.c[j] > 0) {
                if (!lo || bound > *lo || (bound == *lo && strict_row)) {
                    lo_strict = !lo || bound > *lo ? strict_row : (lo_strict || strict_row);
                    lo = bound;
                }
            } else {
                if (!hi || bound < *hi || (bound == *hi && strict_row)) {
                    hi_strict = !hi || bound < *hi ? strict_row : (hi_strict || strict_row);
                    hi = bound;
                }
            }
        };
        for (const auto& t : lvl.nonstrict) scan(t, false);
        for (const auto& t : lvl.strict) scan(t, true);
        if (!lo && !hi)
            x[j] = 0;
        else if (lo && !hi)
            x[j] = lo_strict ? Rational(*lo + 1) : *lo;
        else if (!lo && hi)
            x[j] = hi_strict ? Rational(*hi - 1) : *hi;
        else if (*lo < *hi)
            x[j] = (*lo + *hi) / 2;
        else if (*lo == *hi && !lo_strict && !hi_strict)
            x[j] = *lo;
        else
            throw InternalError("feasible_point: empty bound interval after projection");
    }
    return x;
}

inline bool is_feasible(const LinIneqSystem& s) { return feasible_point(s).has_value(); }

/// Nonstrict rows that hold with equality on the entire solution set.
inline std::vector<int> implicit_equalities(const LinIneqSystem& s) {
    std::vector<int> out;
    for (size_t i = 0; i < s.nonstrict.size(); ++i) {
        LinIneqSystem probe = s;
        probe.strict.push_back(probe.nonstrict[i]);
        probe.nonstrict.erase(probe.nonstrict.begin() + static_cast<long>(i));
        if (!is_feasible(probe)) out.push_back(static_cast<int>(i));
    }
    return out;
}

/// Dimension of the affine hull of the solution set (-1 when empty).
inline int affine_dimension(const LinIneqSystem& s) {
    if (!is_feasible(s)) return -1;
    std::vector<LinTerm> eqs = s.equalities;
    for (int i : implicit_equalities(s)) eqs.push_back(s.nonstrict[static_cast<size_t>(i)]);
    if (eqs.empty()) return s.dim;
    Matrix m(static_cast<int>(eqs.size()), s.dim);
    for (size_t i = 0; i < eqs.size(); ++i)
        for (int jj = 0; jj < s.dim; ++jj) m(static_cast<int>(i), jj) = eqs[i].c[jj];
    return s.dim - rank_of(m);
}

/// Basis of the affine hull's direction space.
inline std::vector<Vector> affine_hull_directions(const LinIneqSystem& s) {
    std::vector<LinTerm> eqs = s.equalities;
    for (int i : implicit_equalities(s)) eqs.push_back(s.nonstrict[static_cast<size_t>(i)]);
    if (eqs.empty()) {
        std::vector<Vector> basis;
        for (int j = 0; j < s.dim; ++j) basis.push_back(unit_vector(s.dim, j));
        return basis;
    }
    Matrix m(static_cast<int>(eqs.size()), s.dim);
    for (size_t i = 0; i < eqs.size(); ++i)
        for (int jj = 0; jj < s.dim; ++jj) m(static_cast<int>(i), jj) = eqs[i].c[jj];
    return nullspace(m);
}

/// Keeps only the first n coordinates; every row must already have zero
/// coefficients beyond them (e.g. after fm_project).
inline LinIneqSystem restrict_to_prefix(const LinIneqSystem& s, int n) {
    LinIneqSystem out(n);
    auto cut = [&](const LinTerm& t) {
        for (int i = n; i < s.dim; ++i)
            if (t.c[i] != 0) throw InternalError("restrict_to_prefix: residual coefficient");
        Vector c(n);
        for (int i = 0; i < n; ++i) c[i] = t.c[i];
        return LinTerm{std::move(c), t.d};
    };
    for (const auto& t : s.equalities) out.equalities.push_back(cut(t));
    for (const auto& t : s.nonstrict) out.nonstrict.push_back(cut(t));
    for (const auto& t : s.strict) out.strict.push_back(cut(t));
    return out;
}

} // namespace avvi
