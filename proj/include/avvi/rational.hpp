#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "avvi/errors.hpp"

namespace avvi {

using Integer = boost::multiprecision::mpz_int;

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator (GMP canonical form). Arithmetic is exact; division by zero
// throws std::overflow_error.
using Rational = boost::multiprecision::mpq_rational;

// The two-integer mpq constructor mishandles negative denominators, so all
// fraction construction goes through mpz_int (which canonicalizes).
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    return Rational(num, den);
}

inline Rational make_rational(long long num, long long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline int sign_of(const Rational& r) { return r.sign(); }

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Parses an integer literal or "num/den" (den nonzero). Whitespace is not
/// accepted; this is the wire format used by instance files and reports.
inline Rational parse_rational(std::string_view s) {
    if (s.empty()) throw ParseError("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(Integer(std::string(s)));
        }
        const Integer num{std::string(s.substr(0, slash))};
        const Integer den{std::string(s.substr(slash + 1))};
        return make_rational(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed rational literal: '" + std::string(s) + "'");
    }
}

/// Formats as "num" or "num/den"; inverse of parse_rational.
inline std::string to_string(const Rational& r) { return r.str(); }

inline Integer floor_of(const Rational& r) {
    Integer q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace avvi
