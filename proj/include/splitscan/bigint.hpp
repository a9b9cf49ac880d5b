#pragma once

// Unbounded integer support. Coefficients of transformed Weil polynomials grow
// like q^(g*m), far past any machine word, so everything downstream of the
// zeta module routes through this alias.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace splitscan {

using Int = boost::multiprecision::cpp_int;

inline Int int_pow(const Int& base, unsigned exp) {
    Int r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw precondition_error("isqrt of negative value");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

// log|n| computed without overflowing double conversion; n must be nonzero.
inline double log_abs(const Int& n) {
    Int a = abs(n);
    if (a == 0) throw precondition_error("log_abs(0)");
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(a));
    if (bits <= 900) return std::log(a.convert_to<double>());
    unsigned shift = bits - 900;
    Int top = a >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

// Signed value of n / q^(e/2) as a double; exact in spirit, used only to scale
// Weil polynomials whose raw coefficients overflow double.
inline double scaled_to_double(const Int& n, const Int& q, unsigned e) {
    if (n == 0) return 0.0;
    double lg = log_abs(n) - 0.5 * static_cast<double>(e) * log_abs(q);
    double mag = std::exp(lg);
    return n < 0 ? -mag : mag;
}

inline std::string to_decimal(const Int& n) { return n.str(); }

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i; // always exact: r is binomial(n-k+i, i)
    }
    return r;
}

} // namespace splitscan
