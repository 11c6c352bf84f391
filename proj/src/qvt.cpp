#include "aq/qvt.hpp"

#include <algorithm>

namespace aq::qvt {

long valuation_at(const RationalFunction& f, const QPoly& p)
{
    if (f.is_zero()) throw std::domain_error("valuation_at: zero function");
    if (p.degree() < 1 || !p.is_monic())
        throw std::domain_error("valuation_at: point must be a monic irreducible polynomial");
    auto count = [&](QPoly g) {
        long v = 0;
        while (true) {
            auto [q, r] = divmod(g, p);
            if (!r.is_zero()) break;
            g = q;
            ++v;
        }
        return v;
    };
    return count(f.num()) - count(f.den());
}

namespace {

std::string residue_field_name(const QPoly& p)
{
    if (p.degree() == 1) return "Q";
    if (p.degree() == 2) {
        Rational disc = p.coeff(1) * p.coeff(1) - 4 * p.coeff(0);
        auto sc = arith::square_class(disc);
        return "Q(sqrt(" + to_string(sc.representative()) + "))";
    }
    return "residue field of degree " + std::to_string(p.degree());
}

/// Isotropy of phi over the residue field of P; nullopt for degree >= 3.
std::optional<bool> residue_isotropic(const QuadraticForm& phi, const QPoly& p,
                                      std::string* note)
{
    if (p.degree() == 1) {
        bool iso = forms::is_isotropic(phi);
        if (note) *note = "residue field Q at " + p.str() + ": " + (iso ? "isotropic" : "anisotropic");
        return iso;
    }
    if (p.degree() == 2) {
        Rational disc = p.coeff(1) * p.coeff(1) - 4 * p.coeff(0);
        auto sc = arith::square_class(disc);
        if (sc == arith::SquareClass{1, 1})
            throw std::logic_error("residue_isotropic: quadratic point is not irreducible");
        nf::QuadField k(Int(sc.sign) * sc.radical);
        auto verdict = nf::is_isotropic_over(phi, k);
        bool iso = verdict.outcome == nf::IsotropyVerdict::Outcome::Isotropic;
        if (note)
            *note = "residue field " + k.str() + " at " + p.str() + ": " +
                    (iso ? "isotropic" : "anisotropic");
        return iso;
    }
    return std::nullopt;
}

}  // namespace

QvtVerdict qvt_decide(const QuadraticForm& phi, const RationalFunction& f,
                      const QvtOptions& opts)
{
    if (f.is_zero()) throw std::domain_error("qvt_decide: zero function");
    QvtVerdict v;
    if (forms::is_isotropic(phi)) {
        v.outcome = QvtVerdict::Outcome::InGroupUpToConstant;
        v.candidate_constant = arith::SquareClass{1, 1};
        v.note = "phi is isotropic over Q, hence over every residue field; <D> is everything";
        return v;
    }
    const auto& fact = f.factorization(opts.degree_budget);
    for (const auto& [p, e] : fact.factors) {
        if (e % 2 == 0) continue;
        std::string note;
        auto iso = residue_isotropic(phi, p, &note);
        if (!iso) {
            v.undecided.push_back(p);
            continue;
        }
        if (!*iso) {
            v.outcome = QvtVerdict::Outcome::No;
            v.witness = p;
            v.witness_valuation = e;
            v.residue_note = note;
            return v;
        }
    }
    if (!v.undecided.empty()) {
        v.outcome = QvtVerdict::Outcome::Unknown;
        v.note = "odd points with residue fields of degree >= 3 are undecided";
        return v;
    }
    v.outcome = QvtVerdict::Outcome::InGroupUpToConstant;
    for (long k = 0;; ++k) {
        Rational t0 = (k % 2 == 1) ? Rational((k + 1) / 2) : Rational(-(k / 2));
        auto val = f(t0);
        if (val && *val != 0) {
            v.candidate_constant = arith::square_class(*val);
            v.note = "candidate constant from evaluation at t = " + to_string(t0);
            break;
        }
    }
    // the theorem ranges over closed points of the affine line only; an odd
    // valuation at infinity is flagged for downstream heuristics, not decided
    if ((f.num().degree() - f.den().degree()) % 2 != 0)
        v.note += "; valuation at infinity is odd (outside the criterion's point set)";
    return v;
}

bool verify_qvt_no(const QuadraticForm& phi, const RationalFunction& f,
                   const QvtVerdict& verdict)
{
    if (verdict.outcome != QvtVerdict::Outcome::No || !verdict.witness) return false;
    const QPoly& p = *verdict.witness;
    long val = valuation_at(f, p);
    if (val % 2 == 0) return false;
    auto iso = residue_isotropic(phi, p, nullptr);
    return iso.has_value() && !*iso;
}

RationalCurveOnQuadric::RationalCurveOnQuadric(QuadricModel model,
                                               std::vector<RationalFunction> components)
    : model_(std::move(model)), comps_(std::move(components))
{
    if (comps_.size() != model_.ambient())
        throw std::domain_error("RationalCurveOnQuadric: wrong number of components");
    RationalFunction defect;
    if (model_.kind == QuadricModel::Kind::Qpsi) {
        for (std::size_t i = 0; i < model_.form.size(); ++i)
            defect = defect + RationalFunction(model_.form[i]) * comps_[i] * comps_[i];
        defect = defect - RationalFunction(Rational(1));
    } else {
        defect = comps_[0] * comps_[1] - RationalFunction(model_.form[0]);
        for (std::size_t i = 1; i < model_.form.size(); ++i)
            defect = defect - RationalFunction(model_.form[i]) * comps_[i + 1] * comps_[i + 1];
    }
    if (!defect.is_zero())
        throw std::domain_error("RationalCurveOnQuadric: components do not satisfy the model "
                                "equation");
}

bool RationalCurveOnQuadric::is_constant() const
{
    return std::all_of(comps_.begin(), comps_.end(),
                       [](const RationalFunction& f) { return f.is_constant(); });
}

std::optional<std::vector<Rational>> RationalCurveOnQuadric::at(const Rational& t) const
{
    std::vector<Rational> out;
    for (const auto& f : comps_) {
        auto v = f(t);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

CurvePoleProfile curve_pole_profile(const RationalCurveOnQuadric& curve, const QPoly& p)
{
    CurvePoleProfile prof;
    prof.point = p;
    bool all_nonneg = true;
    std::optional<long> min_val;
    for (const auto& f : curve.components()) {
        if (f.is_zero()) {
            prof.valuations.push_back(std::nullopt);
            continue;
        }
        long v = valuation_at(f, p);
        prof.valuations.push_back(v);
        all_nonneg = all_nonneg && v >= 0;
        if (!min_val || v < *min_val) min_val = v;
    }
    prof.extends = all_nonneg;
    const auto& vals = prof.valuations;
    if (curve.model().kind == QuadricModel::Kind::Qpsi) {
        if (prof.extends) {
            prof.relation = "extends: v(f1) >= 0";
            prof.relation_holds = !vals[0] || *vals[0] >= 0;
        } else {
            prof.relation = "not extending: v(f1) < 0 and v(f1) = min_i v(f_i)";
            prof.relation_holds = vals[0] && *vals[0] < 0 && min_val && *vals[0] == *min_val;
        }
    } else {
        if (prof.extends) {
            prof.relation = "extends: v(f1) = v(f2) = 0";
            prof.relation_holds = vals[0] && vals[1] && *vals[0] == 0 && *vals[1] == 0;
        } else {
            prof.relation = "not extending";
            prof.relation_holds = true;
        }
    }
    return prof;
}

QvtVerdict is_good_curve(const RationalCurveOnQuadric& curve, const QvtOptions& opts)
{
    const QuadricModel& model = curve.model();
    if (model.kind != QuadricModel::Kind::Qpsi)
        throw std::domain_error("is_good_curve: psi-model curves only");
    if (model.form.empty() || model.form[0] != 1)
        throw std::domain_error("is_good_curve: psi must be <1> | (-phi)");
    if (curve.is_constant()) throw std::domain_error("is_good_curve: constant curve");

    std::vector<Rational> phi_coeffs;
    for (std::size_t i = 1; i < model.form.size(); ++i) phi_coeffs.push_back(-model.form[i]);
    QuadraticForm phi(phi_coeffs);

    if (forms::is_isotropic(phi)) {
        QvtVerdict v;
        v.outcome = QvtVerdict::Outcome::InGroupUpToConstant;
        v.candidate_constant = arith::SquareClass{1, 1};
        v.note = "phi isotropic: every rational curve is good";
        return v;
    }

    const RationalFunction& f1 = curve.components()[0];
    RationalFunction minus = f1 - RationalFunction(Rational(1));
    RationalFunction plus = f1 + RationalFunction(Rational(1));
    if (minus.is_zero() || plus.is_zero())
        throw std::logic_error("is_good_curve: f1 = +-1 on a non-constant curve with phi "
                               "anisotropic (bug)");
    QvtVerdict a = qvt_decide(phi, minus, opts);
    QvtVerdict b = qvt_decide(phi, plus, opts);
    auto decided = [](const QvtVerdict& v) { return v.outcome != QvtVerdict::Outcome::Unknown; };
    if (decided(a) && decided(b) && a.outcome != b.outcome)
        throw std::logic_error("is_good_curve: f1-1 and f1+1 tests disagree (bug)");
    if (decided(a)) return a;
    if (decided(b)) return b;
    a.undecided.insert(a.undecided.end(), b.undecided.begin(), b.undecided.end());
    return a;
}

}  // namespace aq::qvt
