#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "eulerset/errors.hpp"

namespace eulerset {

// All formula arithmetic is exact: arbitrary-precision integers and
// rationals in canonical lowest terms (denominator > 0, zero is 0/1).
using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// Working type for truncated Euler products: 50 significant decimal digits,
// well above the 30 the brackets require.
using real50 = boost::multiprecision::cpp_bin_float_50;

inline integer ipow(const integer& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

// floor(sqrt(x)) for x >= 0
inline integer isqrt(const integer& x) {
    if (x < 0)
        throw domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(x);
}

inline bool is_perfect_square(const integer& x, integer& root) {
    if (x < 0)
        return false;
    root = boost::multiprecision::sqrt(x);
    return root * root == x;
}

inline integer binomial(unsigned n, unsigned k) {
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    integer result = 1;
    for (unsigned j = 1; j <= k; ++j) {
        result *= n - k + j;
        result /= j; // exact at every step: result is C(n-k+j, j)
    }
    return result;
}

inline bool is_integral(const rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

// Requires denominator 1; used wherever a theorem guarantees integrality.
inline integer to_integer(const rational& q, const char* context) {
    if (!is_integral(q))
        throw internal_error(std::string(context) + ": expected integral value, got " +
                             q.str());
    return boost::multiprecision::numerator(q);
}

inline std::string integer_string(const integer& v) { return v.str(); }

// Canonical "num/den" form; integers appear as "x/1".
inline std::string rational_string(const rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

inline std::string real_string(const real50& v, unsigned significant_digits) {
    return v.str(significant_digits);
}

inline real50 to_real(const rational& q) {
    return real50(boost::multiprecision::numerator(q)) /
           real50(boost::multiprecision::denominator(q));
}

} // namespace eulerset
