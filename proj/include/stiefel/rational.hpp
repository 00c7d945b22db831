#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace stiefel {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

inline long double to_long_double(const Integer& z) {
    // double-double split keeps ~106 bits, enough for the 64-bit long double mantissa
    const double hi = z.get_d();
    if (!std::isfinite(hi)) return static_cast<long double>(hi);
    const Integer rest = z - Integer(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

inline long double to_long_double(const Rational& q) {
    const double hi = q.get_d();
    if (!std::isfinite(hi)) return static_cast<long double>(hi);
    const Rational rest = q - Rational(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

/// Exact rational from a finite binary float.
inline Rational from_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite value");
    return Rational(d);
}

inline Rational from_long_double(long double v) {
    const double hi = static_cast<double>(v);
    const double lo = static_cast<double>(v - static_cast<long double>(hi));
    return from_double(hi) + from_double(lo);
}

inline Integer pow10(unsigned e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

/// floor(sqrt(q) * 10^digits) / 10^digits, i.e. a lower approximation within 10^-digits.
inline Rational sqrt_lower(const Rational& q, unsigned digits) {
    if (q < 0) throw std::domain_error("square root of a negative rational");
    const Integer scale = pow10(digits);
    // floor(sqrt(num * scale^2 / den))
    Integer scaled = q.get_num() * scale * scale / q.get_den();
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rational r(root, scale);
    r.canonicalize();
    return r;
}

inline Rational abs(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

inline int sign(const Rational& q) {
    return sgn(q);
}

}  // namespace stiefel
