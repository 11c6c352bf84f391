#ifndef AQ_HOMOTOPY_HPP
#define AQ_HOMOTOPY_HPP

#include "aq/forms.hpp"
#include "aq/polynomial.hpp"
#include "aq/quadrics.hpp"
#include "aq/qvt.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aq::homotopy {

using forms::QuadraticForm;
using quadrics::ModelT;
using quadrics::QuadricModel;

/// A polynomial map A^1 -> model; the model equation holds identically.
template <class K>
struct PolynomialMapT {
    ModelT<K> model;
    std::vector<Poly<K>> comps;

    PolynomialMapT(ModelT<K> m, std::vector<Poly<K>> components)
        : model(std::move(m)), comps(std::move(components))
    {
        if (!identity_holds(model, comps))
            throw std::domain_error("PolynomialMap: model equation violated");
    }

    static bool identity_holds(const ModelT<K>& model, const std::vector<Poly<K>>& comps)
    {
        if (comps.size() != model.ambient()) return false;
        Poly<K> defect;
        if (model.kind == ModelT<K>::Kind::Qpsi) {
            for (std::size_t i = 0; i < model.form.size(); ++i)
                defect = defect + Poly<K>(model.form[i]) * comps[i] * comps[i];
            defect = defect - Poly<K>(K(1));
        } else {
            defect = comps[0] * comps[1] - Poly<K>(model.form[0]);
            for (std::size_t i = 1; i < model.form.size(); ++i)
                defect = defect - Poly<K>(model.form[i]) * comps[i + 1] * comps[i + 1];
        }
        return defect.is_zero();
    }

    std::vector<K> at(const K& t) const
    {
        std::vector<K> p(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) p[i] = comps[i](t);
        return p;
    }

    bool is_constant() const
    {
        for (const auto& c : comps)
            if (!c.is_constant()) return false;
        return true;
    }
};

using PolynomialMap = PolynomialMapT<Rational>;

/// Section of the x1-projection through the degenerate fiber of X^phi: for
/// phi = <1, b_3..b_n> and y with phi(1, y) = 0, the map
/// s(t) = (t, sum b_i (t + 2 y_i), t + y_3, ..., t + y_n).
template <class K>
PolynomialMapT<K> section_through(const std::vector<K>& phi, const std::vector<K>& y)
{
    if (phi.empty() || !(phi[0] == K(1)))
        throw std::domain_error("section_through: phi must have leading entry 1");
    if (y.size() + 1 != phi.size())
        throw std::domain_error("section_through: wrong witness length");
    K check = phi[0];
    for (std::size_t i = 0; i < y.size(); ++i) check += phi[i + 1] * y[i] * y[i];
    if (!(check == K(0))) throw std::domain_error("section_through: phi(1, y) != 0");

    const std::size_t n = phi.size() + 1;
    std::vector<Poly<K>> comps;
    comps.push_back(Poly<K>::t());
    Poly<K> s2;
    for (std::size_t i = 0; i < y.size(); ++i)
        s2 = s2 + Poly<K>(phi[i + 1]) * (Poly<K>::t() + Poly<K>(K(2) * y[i]));
    comps.push_back(s2);
    for (std::size_t i = 0; i < y.size(); ++i) comps.push_back(Poly<K>::t() + Poly<K>(y[i]));
    ModelT<K> model;
    model.kind = ModelT<K>::Kind::Xphi;
    model.form = phi;
    (void)n;
    return PolynomialMapT<K>(std::move(model), std::move(comps));
}

/// Witness lambda = phi(d, z) for the chain construction.
struct RepresentationWitness {
    Rational c = 1;       // base fiber value
    Rational d = 0;       // first argument of phi
    std::vector<Rational> z;
    Rational lambda = 0;  // phi(d, z), nonzero
};

RepresentationWitness make_witness(const QuadraticForm& phi, const Rational& c,
                                   const Rational& d, std::vector<Rational> z);

/// Rewrite a witness with d = 0 to one with d != 0 and the same lambda.
RepresentationWitness normalize_d_nonzero(const QuadraticForm& phi,
                                          const RepresentationWitness& w);

struct MarkedMap {
    PolynomialMap map;
    Rational t0, t1;  // marked parameters
};

/// STEP 1 map: fiber value c*d^2 at t=0 and c*lambda at t=1.
MarkedMap step1_homotopy(const QuadraticForm& phi, const RepresentationWitness& w);

struct Step2Pair {
    PolynomialMap f, g;
    Rational a, b;  // f1(a) = g1(b), from the two linear equations
};

/// STEP 2 maps joining the fibers over c*d1^2 and c.
Step2Pair step2_pair(const QuadraticForm& phi, const Rational& c, const Rational& d1);

/// Chain of polynomial maps with exactly matching junctions.
struct HomotopyChain {
    QuadricModel model;  // X^phi
    std::vector<PolynomialMap> maps;
    std::vector<std::pair<Rational, Rational>> junctions;  // (t in map i, t in map i+1)
    Rational start_param = 0, end_param = 0;
    std::vector<Rational> start_point, end_point;
    Rational declared_c = 1, declared_lambda = 1;
    Rational square_scale = 1;  // declared_lambda = c * prod(lambda_i) * square_scale^2
};

/// Chain from the fiber over c to the fiber over lambda, through the given
/// represented-value witnesses (scaling and junction homotopies joined by
/// fiber bridges).
HomotopyChain build_chain(const QuadraticForm& phi, const Rational& c, const Rational& lambda,
                          const std::vector<RepresentationWitness>& factors);

struct ChainCheck {
    bool ok = false;
    std::string locus;
};

/// Re-verify every map identity, junction equality, and endpoint claim.
ChainCheck verify_chain(const HomotopyChain& chain);

/// Straight-line homotopy inside the fiber x1 = v (v != 0) of X^phi.
PolynomialMap fiber_bridge(const QuadraticForm& phi, const std::vector<Rational>& from,
                           const std::vector<Rational>& to);

/// Search for a good rational curve through P and Q on Q^psi (psi
/// anisotropic): plane sections through P, Q in budgeted direction order.
struct ConicSearchResult {
    bool found = false;
    std::optional<qvt::RationalCurveOnQuadric> curve;  // original psi coordinates
    Rational param_p, param_q;                         // curve(param_p) = P etc.
    std::optional<qvt::QvtVerdict> goodness;
    long planes_tried = 0;
    std::string note;
};

ConicSearchResult conic_good_curve_search(const QuadraticForm& psi,
                                          const std::vector<Rational>& p,
                                          const std::vector<Rational>& q, long budget = 200);

}  // namespace aq::homotopy

#endif
