#ifndef AQ_FORMS_HPP
#define AQ_FORMS_HPP

#include "aq/arith.hpp"
#include "aq/matrix.hpp"
#include "aq/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aq::forms {

using arith::Place;

/// Regular diagonal quadratic form over Q: nonzero diagonal entries a_1..a_n.
class QuadraticForm {
  public:
    QuadraticForm() = default;
    explicit QuadraticForm(std::vector<Rational> coeffs);

    std::size_t dim() const { return c_.size(); }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    /// Evaluate sum a_i v_i^2.
    Rational operator()(const std::vector<Rational>& v) const;
    /// Polar bilinear form sum a_i v_i w_i.
    Rational bilinear(const std::vector<Rational>& v, const std::vector<Rational>& w) const;

    Rational discriminant() const;  // product of the entries
    QuadraticForm scaled(const Rational& c) const;
    QuadraticForm negated() const;
    QuadraticForm concat(const QuadraticForm& o) const;    // orthogonal sum
    QuadraticForm tail(std::size_t from) const;            // entries from..end
    QuadraticForm with_appended(const Rational& a) const;  // form | <a>

    bool operator==(const QuadraticForm& o) const { return c_ == o.c_; }
    std::string str() const;

  private:
    std::vector<Rational> c_;
};

using QMatrix = Mat<Rational>;

Mat<Rational> gram_of(const QuadraticForm& f);

struct DiagonalizeResult {
    QuadraticForm form;       // nonzero diagonal entries, in pivot order
    QMatrix transform;        // invertible; transform^T * G * transform = diag(form, 0..0)
    std::size_t radical_dim;  // number of stripped zero entries
};

/// Symmetric congruence diagonalization with deterministic pivoting.
DiagonalizeResult diagonalize(const QMatrix& gram);

/// Hasse invariant prod_{i<j} (a_i, a_j)_v.
int hasse_invariant(const QuadraticForm& f, const Place& v);

/// Isotropy over the completion at v (exact, via the rank 1-4 criteria).
bool is_isotropic_at(const QuadraticForm& f, const Place& v);

/// The places where local isotropy can fail: real, 2, and primes dividing a
/// numerator or denominator of a coefficient.
std::vector<Place> bad_places(const QuadraticForm& f);

/// Isotropy over Q by the local-global principle.
bool is_isotropic(const QuadraticForm& f);

/// A primitive integer isotropic vector, or nullopt when the form is
/// anisotropic. Staged: height-ordered search, binary shortcut, ternary
/// descent, dimension splitting.
std::optional<std::vector<Rational>> isotropic_vector(const QuadraticForm& f);

struct WittDecomposition {
    std::size_t witt_index = 0;
    QuadraticForm kernel;          // anisotropic part (may be empty)
    QMatrix transform;             // T with T^T G T = diag(1,-1,...,1,-1, kernel)
    std::vector<Rational> target;  // that diagonal, for re-verification
};

WittDecomposition witt_decompose(const QuadraticForm& f);

/// Does the form represent d over Q? Returns a witness vector on success.
std::optional<std::vector<Rational>> represents(const QuadraticForm& f, const Rational& d);

/// <D(form over Q_v)> as a subgroup of the local square classes at v.
struct LocalValueGroup {
    Place place{Place::real()};
    bool full = false;
    std::vector<int> represented;  // class indices represented by the localized form
    std::vector<int> members;      // the subgroup they generate (sorted indices)

    bool contains(int class_index) const;
};

LocalValueGroup local_value_group(const QuadraticForm& f, const Place& v);

struct MembershipOptions {
    int max_factors = 3;
    long candidate_budget = 4000;  // candidate values tried in certificate search
};

/// Three-valued membership of d in the subgroup <D(form)> of Q*.
struct GroupMembershipVerdict {
    enum class Outcome { Member, NonMember, Unknown };
    Outcome outcome = Outcome::Unknown;
    std::vector<Rational> factors;  // each in D(form); product equals d exactly
    std::vector<std::vector<Rational>> factor_witnesses;
    Rational square_scale = 1;  // recorded scaling convention (factors multiply to d*scale^2)
    Place obstruction{Place::real()};
    std::string note;
};

GroupMembershipVerdict value_group_membership(const QuadraticForm& f, const Rational& d,
                                              const MembershipOptions& opts = {});

/// Re-check a Member/NonMember verdict from first principles.
bool verify_membership(const QuadraticForm& f, const Rational& d,
                       const GroupMembershipVerdict& verdict);

}  // namespace aq::forms

#endif
