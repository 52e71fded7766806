#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "avvi/errors.hpp"
#include "avvi/polynomial.hpp"
#include "avvi/rational.hpp"

namespace avvi {

/// A real root of a univariate polynomial: either an exact rational value or
/// an open isolating interval (lo, hi) of a square-free defining polynomial
/// that has no rational roots and changes sign over the interval.
struct Root {
    bool is_exact = true;
    Rational value;   // exact case
    Rational lo, hi;  // interval case
    UniPoly defining; // interval case
    int multiplicity = 1;

    static Root exact(const Rational& v, int mult = 1) {
        Root r;
        r.is_exact = true;
        r.value = v;
        r.multiplicity = mult;
        return r;
    }
    static Root interval(const Rational& lo, const Rational& hi, UniPoly defining, int mult = 1) {
        Root r;
        r.is_exact = false;
        r.lo = lo;
        r.hi = hi;
        r.defining = std::move(defining);
        r.multiplicity = mult;
        return r;
    }

    Rational lower() const { return is_exact ? value : lo; }
    Rational upper() const { return is_exact ? value : hi; }
    double approx() const { return is_exact ? to_double(value) : to_double((lo + hi) / 2); }
};

namespace detail {

inline std::vector<UniPoly> sturm_chain(const UniPoly& f) {
    std::vector<UniPoly> chain;
    chain.push_back(f);
    UniPoly d = f.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (chain.back().degree() > 0) {
        const UniPoly& a = chain[chain.size() - 2];
        const UniPoly& b = chain.back();
        auto [q, r] = UniPoly::divmod(a, b);
        (void)q;
        if (r.is_zero()) break;
        // positive rescaling only: Sturm counting depends on signs
        UniPoly nr = -r;
        Integer l = 1;
        for (const auto& c : nr.coeffs()) l = lcm(l, denominator(c));
        Integer g = 0;
        for (const auto& c : nr.coeffs()) g = gcd(g, numerator(c) * (l / denominator(c)));
        chain.push_back(make_rational(l, g) * nr);
    }
    return chain;
}

inline int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
    int v = 0, prev = 0;
    for (const auto& p : chain) {
        const int s = sign_of(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

/// Number of distinct roots in (a, b] for a square-free polynomial with
/// f(a) != 0.
inline int roots_in(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
}

/// Divisors of |n| (n != 0); nullopt if factoring would need more than a
/// bounded amount of trial division.
inline std::optional<std::vector<Integer>> divisors_of(Integer n, size_t max_divisors = 4096) {
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    std::vector<std::pair<Integer, int>> factors;
    Integer m = n;
    long steps = 0;
    for (Integer p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (++steps > 300000) return std::nullopt;
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
    }
    if (m > 1) factors.emplace_back(m, 1);
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factors) {
        const size_t base = divs.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > max_divisors) return std::nullopt;
            }
        }
    }
    return divs;
}

/// Rational roots of a square-free primitive integer polynomial with nonzero
/// constant term, via divisor candidates; nullopt when enumeration is too big.
inline std::optional<std::vector<Rational>> rational_roots(const UniPoly& f) {
    std::vector<Rational> out;
    if (f.degree() <= 0) return out;
    const auto dp = divisors_of(numerator(f.coeff(0)));
    const auto dq = divisors_of(numerator(f.lead()));
    if (!dp || !dq) return std::nullopt;
    for (const Integer& p : *dp) {
        for (const Integer& q : *dq) {
            const Rational cand = make_rational(p, q);
            if (f.eval(cand) == 0) out.push_back(cand);
            if (f.eval(-cand) == 0) out.push_back(Rational(-cand));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

/// Halves the isolating interval (no-op on exact roots).
inline void refine_root(Root& r) {
    if (r.is_exact) return;
    const Rational mid = (r.lo + r.hi) / 2;
    // defining has no rational roots, so mid is never a root
    if (sign_of(r.defining.eval(r.lo)) != sign_of(r.defining.eval(mid)))
        r.hi = mid;
    else
        r.lo = mid;
}

inline void refine_root_below(Root& r, const Rational& width) {
    while (!r.is_exact && r.hi - r.lo > width) refine_root(r);
}

/// Exact sign of g at the real algebraic number described by r.
inline int sign_at(const UniPoly& g, const Root& r0) {
    if (g.is_zero()) return 0;
    if (r0.is_exact) return sign_of(g.eval(r0.value));
    Root r = r0;
    const UniPoly h = poly_gcd(g, r.defining);
    if (h.degree() > 0 && sign_of(h.eval(r.lo)) != sign_of(h.eval(r.hi))) return 0;
    const UniPoly gs = square_free_part(g);
    const auto chain = detail::sturm_chain(gs);
    while (true) {
        if (sign_of(gs.eval(r.lo)) != 0 && sign_of(gs.eval(r.hi)) != 0 &&
            detail::roots_in(chain, r.lo, r.hi) == 0)
            return sign_of(g.eval(r.hi));
        refine_root(r);
    }
}

/// True iff both describe the same real number.
inline bool root_equal(const Root& a0, const Root& b0) {
    if (a0.is_exact && b0.is_exact) return a0.value == b0.value;
    if (a0.is_exact != b0.is_exact) {
        const Root& ex = a0.is_exact ? a0 : b0;
        const Root& iv = a0.is_exact ? b0 : a0;
        // interval definings carry no rational roots
        return iv.defining.eval(ex.value) == 0 && iv.lo < ex.value && ex.value < iv.hi;
    }
    Root a = a0, b = b0;
    const UniPoly h = poly_gcd(a.defining, b.defining);
    if (h.degree() <= 0) return false;
    while (true) {
        const Rational jlo = std::max(a.lo, b.lo), jhi = std::min(a.hi, b.hi);
        if (jlo >= jhi) return false;
        if (sign_of(h.eval(jlo)) != sign_of(h.eval(jhi))) return true;
        refine_root(a);
        refine_root(b);
    }
}

/// Strict order on roots as real numbers.
inline bool root_less(const Root& a0, const Root& b0) {
    if (a0.is_exact && b0.is_exact) return a0.value < b0.value;
    if (root_equal(a0, b0)) return false;
    Root a = a0, b = b0;
    while (true) {
        if (a.upper() <= b.lower()) return true;
        if (b.upper() <= a.lower()) return false;
        refine_root(a);
        refine_root(b);
    }
}

/// All real roots of p in [lo, hi], sorted ascending. Exact rational roots
/// are extracted first (with multiplicity); the rest are isolated by Sturm
/// bisection on the square-free factors, refined to width <= max_width, and
/// returned with pairwise disjoint intervals that avoid every exact root.
inline std::vector<Root> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi,
                                       const Rational& max_width = make_rational(1, 1000000)) {
    if (p.is_zero()) throw DimensionError("isolate_roots: zero polynomial");
    if (lo > hi) throw DimensionError("isolate_roots: empty interval");
    std::vector<Root> out;
    const auto factors = square_free_decomposition(p);
    for (size_t fi = 0; fi < factors.size(); ++fi) {
        UniPoly f = primitive_part(factors[fi]);
        if (f.degree() <= 0) continue;
        const int mult = static_cast<int>(fi) + 1;
        if (f.coeff(0) == 0) { // square-free: t divides exactly once
            f = UniPoly::exact_div(f, UniPoly::linear(0, 1));
            if (lo <= 0 && 0 <= hi) out.push_back(Root::exact(0, mult));
        }
        const auto rats = detail::rational_roots(f);
        if (rats) {
            for (const auto& r : *rats) {
                if (lo <= r && r <= hi) out.push_back(Root::exact(r, mult));
                f = UniPoly::exact_div(f, UniPoly::linear(-r, 1));
            }
        }
        if (f.degree() <= 0) continue;

        // Sturm bisection. When rational-root extraction was skipped, a probe
        // point can still hit a rational root: deflate and restart then, so
        // the defining polynomial of every emitted interval is root-free at
        // rationals.
        bool restart = true;
        while (restart) {
            restart = false;
            if (f.degree() <= 0) break;
            if (f.eval(lo) == 0) {
                out.push_back(Root::exact(lo, mult));
                f = UniPoly::exact_div(f, UniPoly::linear(-lo, 1));
                restart = true;
                continue;
            }
            if (f.eval(hi) == 0) {
                out.push_back(Root::exact(hi, mult));
                f = UniPoly::exact_div(f, UniPoly::linear(-hi, 1));
                restart = true;
                continue;
            }
            const auto chain = detail::sturm_chain(f);
            std::vector<Root> found;
            std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
            while (!stack.empty()) {
                auto [a, b] = stack.back();
                stack.pop_back();
                const int k = detail::roots_in(chain, a, b);
                if (k == 0) continue;
                if (k == 1 && sign_of(f.eval(a)) != sign_of(f.eval(b))) {
                    found.push_back(Root::interval(a, b, f, mult));
                    continue;
                }
                const Rational m = (a + b) / 2;
                if (f.eval(m) == 0) {
                    out.push_back(Root::exact(m, mult));
                    f = UniPoly::exact_div(f, UniPoly::linear(-m, 1));
                    restart = true;
                    break;
                }
                stack.push_back({a, m});
                stack.push_back({m, b});
            }
            if (!restart) {
                for (auto& r : found) {
                    refine_root_below(r, max_width);
                    out.push_back(std::move(r));
                }
            }
        }
    }
    // separate isolating intervals from exact roots and from each other
    for (auto& r : out) {
        if (r.is_exact) continue;
        for (const auto& other : out)
            if (other.is_exact)
                while (r.lo < other.value && other.value < r.hi) refine_root(r);
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            if (out[i].is_exact && out[j].is_exact) continue;
            while (std::max(out[i].lower(), out[j].lower()) < std::min(out[i].upper(), out[j].upper())) {
                refine_root(out[i]);
                refine_root(out[j]);
            }
        }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return root_less(a, b); });
    return out;
}

/// Sorted union of root lists, deduplicated as real numbers; the first
/// occurrence of a repeated root wins. Intervals end up pairwise disjoint.
inline std::vector<Root> merge_roots(std::vector<Root> roots) {
    std::vector<Root> out;
    for (auto& r : roots) {
        bool dup = false;
        for (const auto& kept : out)
            if (root_equal(kept, r)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(r));
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            if (out[i].is_exact && out[j].is_exact) continue;
            while (std::max(out[i].lower(), out[j].lower()) < std::min(out[i].upper(), out[j].upper())) {
                refine_root(out[i]);
                refine_root(out[j]);
            }
        }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return root_less(a, b); });
    return out;
}

} // namespace avvi
