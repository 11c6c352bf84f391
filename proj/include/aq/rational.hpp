#ifndef AQ_RATIONAL_HPP
#define AQ_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace aq {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sgn(const Int& n) { return n.sign(); }
inline int sgn(const Rational& q) { return q.sign(); }

inline Int abs_int(const Int& n) { return n < 0 ? Int(-n) : n; }

/// Floor of the integer square root; input must be >= 0.
inline Int isqrt(const Int& n)
{
    if (n < 0) throw std::domain_error("isqrt: negative input");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n)
{
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

/// True iff q is the square of a rational.
inline bool is_square(const Rational& q)
{
    return q >= 0 && is_square(num(q)) && is_square(den(q));
}

/// Exact square root of a rational known to be a square.
inline Rational sqrt_exact(const Rational& q)
{
    if (!is_square(q)) throw std::domain_error("sqrt_exact: not a square");
    return Rational(isqrt(num(q)), isqrt(den(q)));
}

inline Int pow_int(Int base, unsigned e)
{
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline std::string to_string(const Int& n) { return n.str(); }

/// Bit-exact "num/den" serialization (plain integer when den == 1).
inline std::string to_string(const Rational& q)
{
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

}  // namespace aq

#endif
