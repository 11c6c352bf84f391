#ifndef AQ_QVT_HPP
#define AQ_QVT_HPP

#include "aq/arith.hpp"
#include "aq/forms.hpp"
#include "aq/numfield.hpp"
#include "aq/polynomial.hpp"
#include "aq/quadrics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aq::qvt {

using forms::QuadraticForm;
using quadrics::QuadricModel;

/// Valuation of f at the closed point cut out by the monic irreducible P.
long valuation_at(const RationalFunction& f, const QPoly& p);

/// Verdict for membership of f in a*<D(phi_{Q(t)})> for some constant a.
struct QvtVerdict {
    enum class Outcome { InGroupUpToConstant, No, Unknown };
    Outcome outcome = Outcome::Unknown;

    // InGroupUpToConstant: a candidate square class for the constant (the
    // value at the smallest non-pole rational argument; never canonical)
    std::optional<arith::SquareClass> candidate_constant;

    // No: odd-valuation closed point with anisotropic residue form
    std::optional<QPoly> witness;
    long witness_valuation = 0;
    std::string residue_note;

    // Unknown: residue fields of degree >= 3 the artifact cannot decide
    std::vector<QPoly> undecided;

    std::string note;
};

struct QvtOptions {
    long degree_budget = 12;
};

/// The Quadratic Value Theorem test: f is in a*<D(phi)> for some constant
/// iff every odd-valuation closed point has isotropic residue form.
QvtVerdict qvt_decide(const QuadraticForm& phi, const RationalFunction& f,
                      const QvtOptions& opts = {});

/// Re-check a No verdict from first principles.
bool verify_qvt_no(const QuadraticForm& phi, const RationalFunction& f,
                   const QvtVerdict& verdict);

/// A rational curve on a quadric model: n components in Q(t) satisfying the
/// model equation identically.
class RationalCurveOnQuadric {
  public:
    RationalCurveOnQuadric(QuadricModel model, std::vector<RationalFunction> components);

    const QuadricModel& model() const { return model_; }
    const std::vector<RationalFunction>& components() const { return comps_; }
    bool is_constant() const;

    /// Evaluate at a parameter; nullopt at poles.
    std::optional<std::vector<Rational>> at(const Rational& t) const;

  private:
    QuadricModel model_;
    std::vector<RationalFunction> comps_;
};

/// Valuation data of a curve at a closed point, with the valuation relations
/// of the model (meaningful when the residue form is anisotropic).
struct CurvePoleProfile {
    QPoly point;
    std::vector<std::optional<long>> valuations;  // nullopt for zero components
    bool extends = false;                         // all valuations >= 0
    bool relation_holds = false;                  // the model's valuation relation
    std::string relation;
};

CurvePoleProfile curve_pole_profile(const RationalCurveOnQuadric& curve, const QPoly& p);

/// Good-rational-curve test on the psi-model (psi = <1> | (-phi)):
/// qvt_decide(phi, f1 - 1), cross-checked against f1 + 1.
QvtVerdict is_good_curve(const RationalCurveOnQuadric& curve, const QvtOptions& opts = {});

}  // namespace aq::qvt

#endif
