#include "aq/connect.hpp"
#include "aq/parse.hpp"
#include "aq/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace aq;
using report::Json;

namespace {

forms::QuadraticForm form_of(const std::string& text) { return parse::parse_form(text); }

std::string dump(const Json& j) { return j.dump(); }

std::string py_normalize(const std::string& poly)
{
    auto nf = quadrics::normalize(parse::parse_polynomial(poly));
    return dump(report::envelope("normalize", poly, report::json_of(nf)));
}

bool py_is_isotropic(const std::string& form) { return forms::is_isotropic(form_of(form)); }

std::optional<std::vector<std::string>> py_isotropic_vector(const std::string& form)
{
    auto v = forms::isotropic_vector(form_of(form));
    if (!v) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& x : *v) out.push_back(to_string(x));
    return out;
}

std::string py_witt(const std::string& form)
{
    return dump(report::envelope("witt", form, report::json_of(forms::witt_decompose(form_of(form)))));
}

std::optional<std::vector<std::string>> py_represents(const std::string& form,
                                                      const std::string& d)
{
    auto w = forms::represents(form_of(form), parse::parse_rational(d));
    if (!w) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& x : *w) out.push_back(to_string(x));
    return out;
}

std::string py_value_group(const std::string& form, const std::string& d, int max_factors)
{
    forms::MembershipOptions mo;
    mo.max_factors = max_factors;
    Rational dr = parse::parse_rational(d);
    auto v = forms::value_group_membership(form_of(form), dr, mo);
    return dump(report::envelope("value-group", Json{{"form", form}, {"d", d}},
                                 report::json_of(v, dr)));
}

int py_hilbert(const std::string& a, const std::string& b, const std::string& place)
{
    arith::Place v = place == "oo" ? arith::Place::real() : arith::Place::finite(Int(place));
    return arith::hilbert_symbol(parse::parse_rational(a), parse::parse_rational(b), v);
}

py::tuple py_square_class(const std::string& q)
{
    auto sc = arith::square_class(parse::parse_rational(q));
    return py::make_tuple(sc.sign, sc.radical.str());
}

std::string py_qvt(const std::string& phi, const std::string& f)
{
    auto v = qvt::qvt_decide(form_of(phi), parse::parse_rational_function(f));
    return dump(report::envelope("qvt", Json{{"phi", phi}, {"f", f}}, report::json_of(v)));
}

std::string py_good_curve(const std::string& psi, const std::string& curve)
{
    auto form = form_of(psi);
    quadrics::QuadricModel model;
    model.kind = quadrics::QuadricModel::Kind::Qpsi;
    model.form = form.coeffs();
    qvt::RationalCurveOnQuadric c(model, parse::parse_curve_components(curve));
    auto v = qvt::is_good_curve(c);
    return dump(report::envelope("good-curve", Json{{"psi", psi}, {"curve", curve}},
                                 Json{{"curve", report::json_of(c)}, {"goodness", report::json_of(v)}}));
}

std::string py_connected(const std::string& input, bool quadratically_closed)
{
    connect::ConnectOptions opts;
    opts.quadratically_closed = quadratically_closed;
    forms::QuadraticForm psi;
    if (input.find('x') != std::string::npos) {
        auto nf = quadrics::normalize(parse::parse_polynomial(input));
        if (nf.shape == quadrics::NormalForm::Shape::FullAffineSpace)
            return dump(report::envelope("connected", input,
                                         Json{{"verdict", "connected"},
                                              {"fired_condition", "full affine space"}}));
        if (nf.shape == quadrics::NormalForm::Shape::NonSmooth)
            return dump(report::envelope("connected", input,
                                         Json{{"verdict", "connected"},
                                              {"fired_condition", "non-smooth cone"}}));
        psi = nf.psi;
    } else {
        psi = form_of(input);
    }
    if (psi.dim() <= 2)
        return dump(report::envelope("low-dimension", input,
                                     report::json_of(connect::low_dimension_report(psi, opts))));
    return dump(
        report::envelope("connected", input, report::json_of(connect::a1_connected(psi, opts))));
}

std::string py_pi0(const std::string& input, const std::string& field)
{
    connect::FieldSel f = connect::FieldSel::rational();
    if (field == "R") f = connect::FieldSel::real();
    else if (field.rfind("Qp:", 0) == 0) f = connect::FieldSel::p_adic(Int(field.substr(3)));
    forms::QuadraticForm psi;
    if (input.find('x') != std::string::npos) {
        auto nf = quadrics::normalize(parse::parse_polynomial(input));
        psi = nf.psi;
    } else {
        psi = form_of(input);
    }
    return dump(report::envelope("pi0", input, report::json_of(connect::pi0_isotropic(psi, f))));
}

std::string py_chain(const std::string& phi_text, const std::string& c_text,
                     const std::string& lambda_text, int max_factors)
{
    auto phi = form_of(phi_text);
    Rational c = parse::parse_rational(c_text);
    Rational lambda = parse::parse_rational(lambda_text);
    forms::MembershipOptions mo;
    mo.max_factors = max_factors;
    auto membership = forms::value_group_membership(phi, lambda / c, mo);
    Json body{{"membership", report::json_of(membership, lambda / c)}};
    if (membership.outcome == forms::GroupMembershipVerdict::Outcome::Member) {
        std::vector<homotopy::RepresentationWitness> ws;
        for (std::size_t i = 0; i < membership.factors.size(); ++i) {
            homotopy::RepresentationWitness w;
            w.c = c;
            w.d = membership.factor_witnesses[i][0];
            w.z.assign(membership.factor_witnesses[i].begin() + 1,
                       membership.factor_witnesses[i].end());
            w.lambda = membership.factors[i];
            ws.push_back(w);
        }
        auto chain = homotopy::build_chain(phi, c, lambda, ws);
        body["chain"] = report::json_of(chain);
        body["verified"] = homotopy::verify_chain(chain).ok;
    }
    return dump(report::envelope(
        "chain", Json{{"phi", phi_text}, {"c", c_text}, {"lambda", lambda_text}}, body));
}

bool py_verify_chain(const std::string& chain_json)
{
    auto chain = report::chain_from(Json::parse(chain_json));
    return homotopy::verify_chain(chain).ok;
}

std::string py_connect_points(const std::string& psi, const std::string& p, const std::string& q,
                              long budget)
{
    connect::ConnectOptions opts;
    opts.budget = budget;
    auto v = connect::s2_connect_points(form_of(psi), parse::parse_point(p),
                                        parse::parse_point(q), opts);
    return dump(report::envelope("connect-points", Json{{"psi", psi}, {"p", p}, {"q", q}},
                                 report::json_of(v)));
}

std::string py_isotropy_over(const std::string& form, long m)
{
    nf::QuadField k{Int(m)};
    auto v = nf::is_isotropic_over(form_of(form), k);
    return dump(report::envelope("isotropy-over", Json{{"form", form}, {"m", m}},
                                 report::json_of(v)));
}

std::string py_splitting(long p, long m)
{
    return nf::splitting_name(nf::splitting_type(Int(p), nf::QuadField(Int(m))));
}

}  // namespace

PYBIND11_MODULE(pyaq, module)
{
    module.doc() = "affine quadrics over Q: classification, pi0 invariants, and "
                   "A^1-connectedness certificates";
    module.attr("__version__") = "1.0.0";
    module.def("normalize", &py_normalize, py::arg("polynomial"),
               "normal form of a quadric polynomial (JSON report)");
    module.def("is_isotropic", &py_is_isotropic, py::arg("form"));
    module.def("isotropic_vector", &py_isotropic_vector, py::arg("form"));
    module.def("witt", &py_witt, py::arg("form"), "Witt decomposition (JSON report)");
    module.def("represents", &py_represents, py::arg("form"), py::arg("d"));
    module.def("value_group_membership", &py_value_group, py::arg("form"), py::arg("d"),
               py::arg("max_factors") = 3, "membership of d in <D(form)> (JSON report)");
    module.def("hilbert_symbol", &py_hilbert, py::arg("a"), py::arg("b"), py::arg("place"),
               "Hilbert symbol at a finite prime or 'oo'");
    module.def("square_class", &py_square_class, py::arg("q"));
    module.def("qvt", &py_qvt, py::arg("phi"), py::arg("f"),
               "Quadratic Value Theorem decision (JSON report)");
    module.def("good_curve", &py_good_curve, py::arg("psi"), py::arg("curve"));
    module.def("connected", &py_connected, py::arg("input"),
               py::arg("quadratically_closed") = false,
               "A^1-connectedness verdict (JSON report)");
    module.def("pi0", &py_pi0, py::arg("input"), py::arg("field") = "Q");
    module.def("chain", &py_chain, py::arg("phi"), py::arg("c"), py::arg("lam"),
               py::arg("max_factors") = 3, "homotopy chain between fibers (JSON report)");
    module.def("verify_chain", &py_verify_chain, py::arg("chain_json"),
               "re-verify a serialized chain certificate");
    module.def("connect_points", &py_connect_points, py::arg("psi"), py::arg("p"), py::arg("q"),
               py::arg("budget") = 200);
    module.def("is_isotropic_over", &py_isotropy_over, py::arg("form"), py::arg("m"),
               "isotropy over Q(sqrt(m)) (JSON report)");
    module.def("splitting_type", &py_splitting, py::arg("p"), py::arg("m"));
}
