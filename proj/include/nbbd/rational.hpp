#ifndef NBBD_RATIONAL_HPP
#define NBBD_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbbd {

/*
 * Exact scalar types. mpq_class keeps every arithmetic result in canonical
 * reduced form (gcd(|num|, den) = 1, den >= 1, zero is 0/1); the only way to
 * leave that form is an un-canonicalized constructor call, so construction
 * goes through rat() / rational_from_string() below.
 */
using Rational = mpq_class;
using Integer = mpz_class;

using VectorQ = std::vector<Rational>;
using VectorD = std::vector<double>;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p" (base 10). Throws std::invalid_argument on bad input.
inline Rational rational_from_string(const std::string& text) {
    Rational q;
    if (text.empty() || mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("malformed rational: '" + text + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw std::invalid_argument("rational with zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

// Exact: every binary64 is a rational with a power-of-two denominator.
inline Rational rational_from_double(double x) { return Rational(x); }

// "p/q", denominator omitted when it is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

// GMP rounds toward zero; at most 1 ulp from the nearest binary64.
inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace nbbd

#endif // NBBD_RATIONAL_HPP
