#ifndef AQ_NUMFIELD_HPP
#define AQ_NUMFIELD_HPP

#include "aq/arith.hpp"
#include "aq/forms.hpp"
#include "aq/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aq::nf {

/// The quadratic number field Q(sqrt(m)), m squarefree, m not in {0, 1}.
struct QuadField {
    Int m;

    explicit QuadField(Int m_in);
    Int discriminant() const { return ((m % 4 + 4) % 4 == 1) ? m : 4 * m; }
    bool is_real() const { return m > 0; }
    std::string str() const { return "Q(sqrt(" + m.str() + "))"; }
};

/// Element a + b*sqrt(m). A value with b == 0 carries m == 0 and is
/// compatible with every field, so rational constants embed everywhere.
struct QuadElem {
    Rational a{0}, b{0};
    Int m{0};

    QuadElem() = default;
    QuadElem(int x) : a(x) {}  // NOLINT: implicit for field-template ergonomics
    explicit QuadElem(Rational x) : a(std::move(x)) {}
    QuadElem(Rational a_in, Rational b_in, Int m_in);

    bool is_rational() const { return b == 0; }
    QuadElem conj() const { return QuadElem(a, -b, m); }
    Rational norm() const { return a * a - Rational(m) * b * b; }
    Rational trace() const { return 2 * a; }

    QuadElem operator-() const { return QuadElem(-a, -b, m); }
    QuadElem& operator+=(const QuadElem& o);
    QuadElem& operator-=(const QuadElem& o);
    QuadElem& operator*=(const QuadElem& o);
    QuadElem& operator/=(const QuadElem& o);
    friend QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
    friend QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
    friend QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
    friend QuadElem operator/(QuadElem x, const QuadElem& y) { return x /= y; }
    friend bool operator==(const QuadElem& x, const QuadElem& y)
    {
        return x.a == y.a && x.b == y.b && (x.b == 0 || x.m == y.m);
    }
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

    std::string str() const;
};

/// sqrt(m) in Q(sqrt(m)).
inline QuadElem sqrt_of(const QuadField& K) { return QuadElem(Rational(0), Rational(1), K.m); }

enum class SplittingType { Split, Inert, Ramified };

SplittingType splitting_type(const Int& p, const QuadField& K);

std::string splitting_name(SplittingType t);

/// Verdict for isotropy of a rational form over Q(sqrt(m)).
struct IsotropyVerdict {
    enum class Outcome { Isotropic, Anisotropic, Unknown };
    Outcome outcome = Outcome::Unknown;
    std::optional<std::vector<QuadElem>> witness;
    // obstruction for Anisotropic: either every real embedding keeps the form
    // definite, or a finite place of Q under which the local form stays
    // anisotropic
    bool real_embedding_obstruction = false;
    std::optional<arith::Place> obstruction_place;
    std::string reason;
};

/// Decide isotropy of a rational diagonal form over K = Q(sqrt(m));
/// exact for this family of fields. A bounded search attaches witnesses.
IsotropyVerdict is_isotropic_over(const forms::QuadraticForm& form, const QuadField& K,
                                  long witness_height = 40);

/// Evaluate the form at a K-vector.
QuadElem eval_form(const forms::QuadraticForm& form, const std::vector<QuadElem>& v);

/// True iff the rational number r is a square in K.
bool is_square_in(const Rational& r, const QuadField& K);

/// Exact square root in K of a rational r known to be a square there.
QuadElem sqrt_in(const Rational& r, const QuadField& K);

}  // namespace aq::nf

#endif
