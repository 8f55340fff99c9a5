#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "error.hpp"

namespace hullkit {

// Arbitrary-precision rational scalar.  All geometry in this library is
// evaluated exactly; the backing type keeps gcd-reduced canonical form and a
// positive denominator after every operation.
using Exact = boost::multiprecision::mpq_rational;
using ExactInt = boost::multiprecision::mpz_int;

inline int sign(const Exact& v) { return v.sign(); }

// Parses "p/q", an integer, or a finite decimal ("-1.25") exactly.
inline Exact parse_exact(std::string_view text) {
    if (text.empty()) throw ContractViolation("parse_exact: empty token");
    std::string s(text);
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            ExactInt num(s.substr(0, slash));
            ExactInt den(s.substr(slash + 1));
            if (den == 0) throw ContractViolation("parse_exact: zero denominator");
            return Exact(num, den);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Exact(ExactInt(s));
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (frac_len == 0) return Exact(ExactInt(digits));
        ExactInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        bool neg = !digits.empty() && digits[0] == '-';
        if (neg) digits = digits.substr(1);
        Exact v(ExactInt(digits), den);
        return neg ? Exact(-v) : v;
    } catch (const std::exception&) {
        throw ContractViolation("parse_exact: malformed number '" + s + "'");
    }
}

// Integers print bare; proper rationals print as "p/q".
inline std::string format_exact(const Exact& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

} // namespace hullkit
