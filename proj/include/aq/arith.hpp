#ifndef AQ_ARITH_HPP
#define AQ_ARITH_HPP

#include "aq/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace aq::arith {

/// Canonical representative of q * (Q*)^2: sign and squarefree positive radical.
struct SquareClass {
    int sign = 1;            // +1 or -1
    Int radical = 1;         // squarefree, positive

    bool operator==(const SquareClass& o) const { return sign == o.sign && radical == o.radical; }
    bool operator!=(const SquareClass& o) const { return !(*this == o); }

    /// The canonical rational representative sign * radical.
    Rational representative() const { return Rational(sign * radical); }
};

/// A place of Q: the real place or a finite prime.
struct Place {
    enum class Kind { Real, Finite };
    Kind kind = Kind::Real;
    Int p = 0;  // prime when kind == Finite

    static Place real() { return Place{Kind::Real, 0}; }
    static Place finite(Int prime);

    bool is_real() const { return kind == Kind::Real; }
    bool operator==(const Place& o) const { return kind == o.kind && p == o.p; }
    bool operator<(const Place& o) const
    {
        if (kind != o.kind) return kind == Kind::Real;
        return p < o.p;
    }
    std::string str() const { return is_real() ? "oo" : p.str(); }
};

struct Factorization {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> primes;  // distinct primes, ascending

    Int value() const
    {
        Int v = sign;
        for (auto& [p, e] : primes) v *= pow_int(p, e);
        return v;
    }
};

/// Raised when an input has a prime factor beyond the configured bound.
struct FactorizationBudgetExceeded : std::runtime_error {
    explicit FactorizationBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline const Int kDefaultFactorBound = Int(1) << 40;

/// Deterministic primality test (Miller-Rabin with the 64-bit-proven base set;
/// Baillie-style fallback bases for larger inputs at desk scale).
bool is_prime(const Int& n);

/// Factor a nonzero integer. Trial division plus Pollard-Brent splitting with
/// deterministic parameters; any prime factor above `bound` raises
/// FactorizationBudgetExceeded.
Factorization factorize(const Int& n, const Int& bound = kDefaultFactorBound);

/// Square class of a nonzero rational.
SquareClass square_class(const Rational& q, const Int& bound = kDefaultFactorBound);

/// p-adic valuation of a nonzero rational (p prime).
long valuation(const Rational& q, const Int& p);

/// The unit part q / p^{v_p(q)} of a nonzero rational.
Rational unit_part(const Rational& q, const Int& p);

/// Jacobi symbol (a/n) for odd positive n.
int jacobi(Int a, Int n);

/// Legendre symbol of a rational unit at an odd prime p.
int legendre_unit(const Rational& u, const Int& p);

/// Residue of a rational unit mod 8 (p = 2 unit classes).
int unit_mod8(const Rational& u);

/// True iff q is a square in the completion at v.
bool is_square_at(const Rational& q, const Place& v);

/// Hilbert symbol (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
/// solution over the completion at v.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// The finite places where (a, b)_v could be nontrivial: 2 and the primes
/// dividing numerator or denominator of a or b.
std::vector<Place> hilbert_bad_places(const Rational& a, const Rational& b);

/// Square classes of the completion at v. Indices are stable:
///   real number: 0 = positive, 1 = negative;
///   odd p: bit0 = nonresidue unit, bit1 = odd valuation (4 classes);
///   p = 2: bit0,bit1 = unit mod 8 in {1,3,5,7} -> {0,1,2,3}, bit2 = odd
///   valuation (8 classes).
struct LocalSquareClasses {
    Place v;
    explicit LocalSquareClasses(Place place) : v(std::move(place)) {}

    int count() const { return v.is_real() ? 2 : (v.p == 2 ? 8 : 4); }
    int index_of(const Rational& q) const;     // class index of a nonzero rational
    Rational representative(int idx) const;    // small rational representative
};

}  // namespace aq::arith

#endif
