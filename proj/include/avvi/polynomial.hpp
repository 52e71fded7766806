#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "avvi/errors.hpp"
#include "avvi/linalg.hpp"
#include "avvi/rational.hpp"

namespace avvi {

// Univariate polynomial over the rationals, coefficients stored ascending.
// The zero polynomial is the empty coefficient list; degree() reports -1
// for it (standing in for "minus infinity").
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(std::initializer_list<Rational> ascending) : c_(ascending) { trim(); }
    explicit UniPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

    static UniPoly constant(const Rational& a) { return UniPoly({a}); }
    /// a0 + a1*t
    static UniPoly linear(const Rational& a0, const Rational& a1) { return UniPoly({a0, a1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<size_t>(k)];
    }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational lead() const { return is_zero() ? Rational(0) : c_.back(); }

    Rational eval(const Rational& t) const {
        Rational v = 0;
        for (size_t i = c_.size(); i-- > 0;) v = v * t + c_[i];
        return v;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
        return UniPoly(std::move(d));
    }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a) {
        std::vector<Rational> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = -a.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const Rational& s, const UniPoly& a) {
        std::vector<Rational> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = s * a.c_[i];
        return UniPoly(std::move(r));
    }

    /// Field division with remainder: a = q*b + r, deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw DimensionError("polynomial division by zero");
        std::vector<Rational> rem(a.c_.begin(), a.c_.end());
        const int db = b.degree();
        std::vector<Rational> quo;
        int dr = static_cast<int>(rem.size()) - 1;
        if (dr >= db) quo.assign(static_cast<size_t>(dr - db + 1), Rational(0));
        while (dr >= db) {
            if (rem[static_cast<size_t>(dr)] != 0) {
                const Rational f = rem[static_cast<size_t>(dr)] / b.lead();
                quo[static_cast<size_t>(dr - db)] = f;
                for (int i = 0; i <= db; ++i) rem[static_cast<size_t>(dr - db + i)] -= f * b.coeff(i);
            }
            --dr;
        }
        return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
    }

    /// Exact quotient; throws InternalError if b does not divide a.
    static UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw InternalError("exact_div: nonzero remainder");
        return q;
    }

    UniPoly monic() const {
        if (is_zero()) return UniPoly();
        return (Rational(1) / lead()) * (*this);
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const Rational a = coeff(k);
            if (a == 0) continue;
            if (!s.empty()) s += a > 0 ? " + " : " - ";
            else if (a < 0) s += "-";
            const Rational m = abs_of(a);
            if (m != 1 || k == 0) s += to_string(m);
            if (k >= 1) {
                if (m != 1) s += "*";
                s += var;
                if (k > 1) s += "^" + std::to_string(k);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Scales to integer coefficients with content 1 and positive leading
/// coefficient (identity on the zero polynomial).
inline UniPoly primitive_part(const UniPoly& p) {
    if (p.is_zero()) return p;
    Integer l = 1;
    for (const auto& a : p.coeffs()) l = lcm(l, denominator(a));
    Integer g = 0;
    for (const auto& a : p.coeffs()) g = gcd(g, numerator(a) * (l / denominator(a)));
    Rational scale = make_rational(l, g);
    if (p.lead() < 0) scale = -scale;
    return scale * p;
}

inline UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = primitive_part(a), y = primitive_part(b);
    while (!y.is_zero()) {
        auto [q, r] = UniPoly::divmod(x, y);
        (void)q;
        x = y;
        y = primitive_part(r);
    }
    if (x.is_zero()) return x;
    return x.degree() == 0 ? UniPoly::constant(1) : x;
}

inline UniPoly square_free_part(const UniPoly& p) {
    if (p.is_zero()) throw DimensionError("square-free part of zero polynomial");
    const UniPoly g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return primitive_part(p);
    return primitive_part(UniPoly::exact_div(primitive_part(p), g));
}

/// Yun square-free decomposition: p ~ prod_i f[i]^(i+1) with the f[i]
/// square-free and pairwise coprime (constant factors dropped).
inline std::vector<UniPoly> square_free_decomposition(const UniPoly& p0) {
    if (p0.is_zero()) throw DimensionError("square-free decomposition of zero polynomial");
    const UniPoly p = primitive_part(p0);
    std::vector<UniPoly> out;
    if (p.degree() == 0) return out;
    UniPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) {
        out.push_back(p);
        return out;
    }
    UniPoly w = UniPoly::exact_div(p, g);
    UniPoly y = UniPoly::exact_div(p.derivative(), g);
    UniPoly z = y - w.derivative();
    while (w.degree() > 0) {
        UniPoly gi = poly_gcd(w, z);
        out.push_back(gi.degree() > 0 ? primitive_part(gi) : UniPoly::constant(1));
        w = UniPoly::exact_div(w, gi);
        y = UniPoly::exact_div(z, gi);
        z = y - w.derivative();
    }
    return out;
}

/// Exact interpolation through distinct nodes (Lagrange form).
inline UniPoly interpolate_points(const std::vector<std::pair<Rational, Rational>>& pts) {
    UniPoly acc;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].second == 0) continue;
        UniPoly li = UniPoly::constant(1);
        Rational denom = 1;
        for (size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            li = li * UniPoly::linear(-pts[j].first, 1);
            denom *= pts[i].first - pts[j].first;
        }
        acc = acc + (pts[i].second / denom) * li;
    }
    return acc;
}

/// Coefficients of t -> det(t*M1 + (1-t)*M2), exact, degree <= n.
inline UniPoly interpolate_parametric_det(const Matrix& m1, const Matrix& m2) {
    if (!m1.is_square() || !m2.is_square() || m1.rows() != m2.rows())
        throw DimensionError("interpolate_parametric_det: dimension mismatch");
    const int n = m1.rows();
    std::vector<std::pair<Rational, Rational>> pts;
    for (int k = 0; k <= n; ++k) {
        const Rational t(k);
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = t * m1(i, j) + (1 - t) * m2(i, j);
        pts.emplace_back(t, determinant(a));
    }
    return interpolate_points(pts);
}

/// Polynomial pf(t) with pf(t)^2 = det(t*M1 + (1-t)*M2) for skew-symmetric
/// M1, M2 of even dimension; degree <= n/2.
inline UniPoly interpolate_parametric_pf(const Matrix& m1, const Matrix& m2) {
    if (!m1.is_square() || !m2.is_square() || m1.rows() != m2.rows())
        throw DimensionError("interpolate_parametric_pf: dimension mismatch");
    if (m1.rows() % 2 != 0) throw DimensionError("interpolate_parametric_pf: odd dimension");
    if (!is_skew_entrywise(m1) || !is_skew_entrywise(m2))
        throw DimensionError("interpolate_parametric_pf: inputs must be skew-symmetric");
    const int n = m1.rows();
    std::vector<std::pair<Rational, Rational>> pts;
    for (int k = 0; k <= n / 2; ++k) {
        const Rational t(k);
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = t * m1(i, j) + (1 - t) * m2(i, j);
        pts.emplace_back(t, pfaffian(a));
    }
    return interpolate_points(pts);
}

// Univariate rational function, kept reduced with a monic denominator.
struct RatFun {
    UniPoly num;
    UniPoly den = UniPoly::constant(1);

    RatFun() = default;
    RatFun(UniPoly n, UniPoly d) : num(std::move(n)), den(std::move(d)) { reduce(); }
    static RatFun constant(const Rational& a) { return RatFun(UniPoly::constant(a), UniPoly::constant(1)); }
    static RatFun poly(UniPoly p) { return RatFun(std::move(p), UniPoly::constant(1)); }

    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return num.is_constant() && den.is_constant(); }

    /// Defined wherever den(t) != 0; callers are responsible for that check.
    Rational eval(const Rational& t) const {
        const Rational d = den.eval(t);
        if (d == 0) throw InternalError("RatFun::eval at a pole");
        return num.eval(t) / d;
    }

    bool defined_at(const Rational& t) const { return den.eval(t) != 0; }

    bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) {
        return RatFun(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFun operator-(const RatFun& a) { return RatFun(-a.num, a.den); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num * b.num, a.den * b.den); }
    friend RatFun operator*(const Rational& s, const RatFun& a) { return RatFun(s * a.num, a.den); }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw DimensionError("RatFun division by zero");
        return RatFun(a.num * b.den, a.den * b.num);
    }

private:
    void reduce() {
        if (den.is_zero()) throw DimensionError("RatFun with zero denominator");
        if (num.is_zero()) {
            den = UniPoly::constant(1);
            return;
        }
        const UniPoly g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = UniPoly::exact_div(num, g);
            den = UniPoly::exact_div(den, g);
        }
        const Rational l = den.lead();
        if (l != 1) {
            const Rational inv = Rational(1) / l;
            num = inv * num;
            den = inv * den;
        }
    }
};

} // namespace avvi
