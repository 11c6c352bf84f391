#include "aq/connect.hpp"
#include "aq/parse.hpp"
#include "aq/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace aq;
using report::Json;

constexpr int kExitDecided = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUnknown = 2;

struct Options {
    std::string field = "Q";
    long budget = 200;
    bool quadratically_closed = false;
    std::string format = "text";
    int max_factors = 3;
};

struct Outcome {
    int exit_code = kExitDecided;
    Json structured;
    std::string text;
};

connect::FieldSel field_of(const std::string& selector)
{
    if (selector == "Q") return connect::FieldSel::rational();
    if (selector == "R") return connect::FieldSel::real();
    if (selector.rfind("Qp:", 0) == 0) {
        Int p(selector.substr(3));
        return connect::FieldSel::p_adic(p);
    }
    throw std::runtime_error("bad --field value (use Q, R, or Qp:<p>): " + selector);
}

std::string verdict_word(connect::ConnectivityVerdict::Verdict v)
{
    switch (v) {
        case connect::ConnectivityVerdict::Verdict::Connected: return "Connected";
        case connect::ConnectivityVerdict::Verdict::NotConnected: return "NotConnected";
        default: return "Unknown";
    }
}

/// "connected" accepts either a polynomial (with x's) or a diagonal form.
bool looks_like_polynomial(const std::string& s) { return s.find('x') != std::string::npos; }

Outcome run_normalize(const std::string& input, const Options&)
{
    Outcome out;
    auto poly = parse::parse_polynomial(input);
    auto nf = quadrics::normalize(poly);
    out.structured = report::envelope("normalize", input, report::json_of(nf));
    std::ostringstream t;
    switch (nf.shape) {
        case quadrics::NormalForm::Shape::FullAffineSpace:
            t << "full affine space A^" << nf.affine_dim << " (residual linear term)";
            break;
        case quadrics::NormalForm::Shape::Product:
            t << "Q^psi x A^" << nf.affine_factor << " with psi = " << nf.psi.str()
              << "; change verified, scalar " << to_string(nf.scalar);
            break;
        case quadrics::NormalForm::Shape::NonSmooth: t << nf.report; break;
    }
    out.text = t.str();
    return out;
}

Outcome run_invariants(const std::string& input, const Options& opts)
{
    Outcome out;
    auto form = parse::parse_form(input);
    connect::ConnectOptions copts;
    copts.quadratically_closed = opts.quadratically_closed;
    Json body;
    body["dimension"] = form.dim();
    body["discriminant"] = report::json_of(form.discriminant());
    body["discriminant_class"] = report::json_of(arith::square_class(form.discriminant()));
    std::size_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < form.dim(); ++i) (form[i] > 0 ? pos : neg) += 1;
    body["signature"] = Json{{"positive", pos}, {"negative", neg}};
    body["isotropic_over_Q"] = forms::is_isotropic(form);
    if (form.dim() >= 2) body["witt"] = report::json_of(connect::witt_report(form, copts));
    out.structured = report::envelope("invariants", input, body);
    std::ostringstream t;
    t << form.str() << ": dim " << form.dim() << ", disc "
      << to_string(arith::square_class(form.discriminant()).representative()) << ", signature ("
      << pos << "," << neg << "), " << (forms::is_isotropic(form) ? "isotropic" : "anisotropic")
      << " over Q";
    if (form.dim() >= 2) {
        auto w = connect::witt_report(form, copts);
        t << "; i0 = " << w.i0;
        if (w.i1_kind == connect::WittIndexReport::I1::Exact) t << ", i1 = " << w.i1_lo;
        if (w.i1_kind == connect::WittIndexReport::I1::Interval)
            t << ", i1 in [" << w.i1_lo << "," << w.i1_hi << "]";
    }
    out.text = t.str();
    return out;
}

Outcome run_isotropy(const std::string& input, const Options& opts)
{
    Outcome out;
    auto form = parse::parse_form(input);
    auto field = field_of(opts.field);
    Json body;
    bool iso = false;
    if (field.kind == connect::FieldSel::Kind::Q) {
        iso = forms::is_isotropic(form);
        body["isotropic"] = iso;
        if (iso) {
            auto v = forms::isotropic_vector(form);
            Json w = Json::array();
            for (const auto& x : *v) w.push_back(report::json_of(x));
            body["witness"] = w;
        }
    } else if (field.kind == connect::FieldSel::Kind::R) {
        iso = forms::is_isotropic_at(form, arith::Place::real());
        body["isotropic"] = iso;
    } else {
        iso = forms::is_isotropic_at(form, arith::Place::finite(field.p));
        body["isotropic"] = iso;
    }
    body["field"] = field.str();
    out.structured = report::envelope("isotropy", input, body);
    out.text = form.str() + " is " + (iso ? "isotropic" : "anisotropic") + " over " + field.str();
    return out;
}

Outcome run_witt(const std::string& input, const Options&)
{
    Outcome out;
    auto form = parse::parse_form(input);
    auto w = forms::witt_decompose(form);
    out.structured = report::envelope("witt", input, report::json_of(w));
    std::ostringstream t;
    t << form.str() << ": i0 = " << w.witt_index << ", anisotropic kernel "
      << (w.kernel.dim() ? w.kernel.str() : "<>");
    out.text = t.str();
    return out;
}

Outcome run_represents(const std::string& form_text, const std::string& d_text, const Options&)
{
    Outcome out;
    auto form = parse::parse_form(form_text);
    Rational d = parse::parse_rational(d_text);
    auto w = forms::represents(form, d);
    Json body;
    body["represents"] = w.has_value();
    if (w) {
        Json wit = Json::array();
        for (const auto& x : *w) wit.push_back(report::json_of(x));
        body["witness"] = wit;
    }
    out.structured = report::envelope("represents", Json{{"form", form_text}, {"d", d_text}}, body);
    std::ostringstream t;
    t << form.str() << (w ? " represents " : " does not represent ") << to_string(d);
    if (w) {
        t << " at (";
        for (std::size_t i = 0; i < w->size(); ++i) t << (i ? "," : "") << to_string((*w)[i]);
        t << ")";
    }
    out.text = t.str();
    return out;
}

Outcome run_value_group(const std::string& form_text, const std::string& d_text,
                        const Options& opts)
{
    Outcome out;
    auto form = parse::parse_form(form_text);
    Rational d = parse::parse_rational(d_text);
    forms::MembershipOptions mo;
    mo.max_factors = opts.max_factors;
    auto v = forms::value_group_membership(form, d, mo);
    out.structured =
        report::envelope("value-group", Json{{"form", form_text}, {"d", d_text}},
                         report::json_of(v, d));
    using Outc = forms::GroupMembershipVerdict::Outcome;
    std::ostringstream t;
    if (v.outcome == Outc::Member) {
        t << to_string(d) << " in <D(" << form.str() << ")>; certificate:";
        for (const auto& f : v.factors) t << " " << to_string(f);
    } else if (v.outcome == Outc::NonMember) {
        t << to_string(d) << " not in <D(" << form.str() << ")>; obstruction at "
          << v.obstruction.str();
    } else {
        t << "membership of " << to_string(d) << " undecided: " << v.note;
        out.exit_code = kExitUnknown;
    }
    out.text = t.str();
    return out;
}

Outcome run_pi0(const std::string& input, const Options& opts)
{
    Outcome out;
    forms::QuadraticForm psi;
    if (looks_like_polynomial(input)) {
        auto nf = quadrics::normalize(parse::parse_polynomial(input));
        if (nf.shape != quadrics::NormalForm::Shape::Product)
            throw std::runtime_error("pi0: input does not normalize to Q^psi x A^k");
        psi = nf.psi;
    } else {
        psi = parse::parse_form(input);
    }
    connect::ConnectOptions copts;
    copts.quadratically_closed = opts.quadratically_closed;
    copts.budget = opts.budget;
    auto d = connect::pi0_isotropic(psi, field_of(opts.field), copts);
    out.structured = report::envelope("pi0", input, report::json_of(d));
    std::ostringstream t;
    t << "pi0(Q^" << psi.str() << ")(" << d.field.str() << ") is "
      << (d.triviality == connect::Pi0Description::Triviality::Trivial ? "trivial"
                                                                       : "non-trivial");
    if (d.rank_kind == connect::Pi0Description::RankKind::Finite)
        t << "; local-description rank " << d.rank;
    else
        t << "; rank infinite-or-unknown (dim phi = 2)";
    out.text = t.str();
    return out;
}

Outcome run_connected(const std::string& input, const Options& opts)
{
    Outcome out;
    connect::ConnectOptions copts;
    copts.quadratically_closed = opts.quadratically_closed;
    copts.budget = opts.budget;

    forms::QuadraticForm psi;
    std::size_t affine_factor = 0;
    Json trace = Json::array();
    if (looks_like_polynomial(input)) {
        auto nf = quadrics::normalize(parse::parse_polynomial(input));
        if (nf.shape == quadrics::NormalForm::Shape::FullAffineSpace) {
            Json body{{"verdict", "connected"},
                      {"fired_condition", "hypersurface is a full affine space"},
                      {"normal_form", report::json_of(nf)}};
            out.structured = report::envelope("connected", input, body);
            out.text = "Connected (the hypersurface is A^" + std::to_string(nf.affine_dim) + ")";
            return out;
        }
        if (nf.shape == quadrics::NormalForm::Shape::NonSmooth) {
            Json body{{"verdict", "connected"},
                      {"fired_condition", "non-smooth cone: naive components are trivial"},
                      {"normal_form", report::json_of(nf)}};
            out.structured = report::envelope("connected", input, body);
            out.text = "Connected trivially (singular cone); " + nf.report;
            return out;
        }
        psi = nf.psi;
        affine_factor = nf.affine_factor;
        trace.push_back("normalized to Q^psi x A^" + std::to_string(affine_factor) +
                        " with psi = " + psi.str());
    } else {
        psi = parse::parse_form(input);
    }

    if (psi.dim() <= 2) {
        auto rep = connect::low_dimension_report(psi, copts);
        Json body = report::json_of(rep);
        body["trace"] = trace;
        out.structured = report::envelope("low-dimension", input, body);
        out.text = "n = " + std::to_string(rep.n) + ": " + rep.classification;
        return out;
    }
    auto v = connect::a1_connected(psi, copts);
    Json body = report::json_of(v);
    body["trace"] = trace;
    out.structured = report::envelope("connected", input, body);
    std::ostringstream t;
    t << verdict_word(v.verdict) << " [" << v.fired_condition << "] " << v.evidence;
    out.text = t.str();
    if (v.verdict == connect::ConnectivityVerdict::Verdict::Unknown) out.exit_code = kExitUnknown;
    return out;
}

Outcome run_qvt(const std::string& phi_text, const std::string& f_text, const Options&)
{
    Outcome out;
    auto phi = parse::parse_form(phi_text);
    auto f = parse::parse_rational_function(f_text);
    auto v = qvt::qvt_decide(phi, f);
    out.structured =
        report::envelope("qvt", Json{{"phi", phi_text}, {"f", f_text}}, report::json_of(v));
    std::ostringstream t;
    switch (v.outcome) {
        case qvt::QvtVerdict::Outcome::InGroupUpToConstant:
            t << "f lies in a*<D(phi_{Q(t)})>; candidate constant class "
              << to_string(v.candidate_constant->representative());
            break;
        case qvt::QvtVerdict::Outcome::No:
            t << "No: odd point " << v.witness->str() << " with " << v.residue_note;
            break;
        default:
            t << "Unknown: undecided residue fields of degree >= 3";
            out.exit_code = kExitUnknown;
    }
    out.text = t.str();
    return out;
}

Outcome run_good_curve(const std::string& psi_text, const std::string& curve_text,
                       const Options&)
{
    Outcome out;
    auto psi = parse::parse_form(psi_text);
    auto comps = parse::parse_curve_components(curve_text);
    quadrics::QuadricModel model;
    model.kind = quadrics::QuadricModel::Kind::Qpsi;
    model.form = psi.coeffs();
    qvt::RationalCurveOnQuadric curve(model, comps);
    auto v = qvt::is_good_curve(curve);
    Json body{{"curve", report::json_of(curve)}, {"goodness", report::json_of(v)}};
    out.structured =
        report::envelope("good-curve", Json{{"psi", psi_text}, {"curve", curve_text}}, body);
    switch (v.outcome) {
        case qvt::QvtVerdict::Outcome::InGroupUpToConstant: out.text = "good rational curve"; break;
        case qvt::QvtVerdict::Outcome::No:
            out.text = "not a good rational curve: odd point " + v.witness->str() + " with " +
                       v.residue_note;
            break;
        default:
            out.text = "goodness undecided (degree >= 3 residue fields)";
            out.exit_code = kExitUnknown;
    }
    return out;
}

Outcome run_connect_points(const std::string& psi_text, const std::string& p_text,
                           const std::string& q_text, const Options& opts)
{
    Outcome out;
    auto psi = parse::parse_form(psi_text);
    auto p = parse::parse_point(p_text);
    auto q = parse::parse_point(q_text);
    connect::ConnectOptions copts;
    copts.budget = opts.budget;
    auto v = connect::s2_connect_points(psi, p, q, copts);
    out.structured = report::envelope(
        "connect-points", Json{{"psi", psi_text}, {"p", p_text}, {"q", q_text}},
        report::json_of(v));
    if (v.outcome == connect::S2Verdict::Outcome::SameClass) {
        out.text = "SameClass: certificate with " + std::to_string(v.hops.size()) +
                   " good curve(s)";
    } else {
        out.text = "Unknown: " + v.note;
        out.exit_code = kExitUnknown;
    }
    return out;
}

Outcome run_chain(const std::string& phi_text, const std::string& c_text,
                  const std::string& lambda_text, const Options& opts)
{
    Outcome out;
    auto phi = parse::parse_form(phi_text);
    Rational c = parse::parse_rational(c_text);
    Rational lambda = parse::parse_rational(lambda_text);
    if (c == 0 || lambda == 0) throw std::runtime_error("chain: c and lambda must be nonzero");

    // factor lambda/c into represented values via the membership oracle
    forms::MembershipOptions mo;
    mo.max_factors = opts.max_factors;
    auto membership = forms::value_group_membership(phi, lambda / c, mo);
    using Outc = forms::GroupMembershipVerdict::Outcome;
    if (membership.outcome == Outc::NonMember) {
        Json body{{"membership", report::json_of(membership, lambda / c)}};
        out.structured = report::envelope(
            "chain", Json{{"phi", phi_text}, {"c", c_text}, {"lambda", lambda_text}}, body);
        out.text = "no chain: lambda/c is not in <D(phi)> (obstruction at " +
                   membership.obstruction.str() + ")";
        return out;
    }
    if (membership.outcome == Outc::Unknown) {
        Json body{{"membership", report::json_of(membership, lambda / c)}};
        out.structured = report::envelope(
            "chain", Json{{"phi", phi_text}, {"c", c_text}, {"lambda", lambda_text}}, body);
        out.text = "membership of lambda/c in <D(phi)> undecided; no chain emitted";
        out.exit_code = kExitUnknown;
        return out;
    }
    // build witnesses from the certificate factors
    std::vector<homotopy::RepresentationWitness> ws;
    for (std::size_t i = 0; i < membership.factors.size(); ++i) {
        const auto& wvec = membership.factor_witnesses[i];
        homotopy::RepresentationWitness w;
        w.c = c;
        w.d = wvec[0];
        w.z.assign(wvec.begin() + 1, wvec.end());
        w.lambda = membership.factors[i];
        ws.push_back(w);
    }
    auto chain = homotopy::build_chain(phi, c, lambda, ws);
    auto check = homotopy::verify_chain(chain);
    if (!check.ok) throw std::logic_error("chain: verification failed at " + check.locus);
    Json body{{"membership", report::json_of(membership, lambda / c)},
              {"chain", report::json_of(chain)},
              {"verified", true}};
    out.structured = report::envelope(
        "chain", Json{{"phi", phi_text}, {"c", c_text}, {"lambda", lambda_text}}, body);
    out.text = "chain with " + std::to_string(chain.maps.size()) + " map(s) from fiber " +
               to_string(c) + " to fiber " + to_string(chain.end_point[0]) + "; verified";
    return out;
}

int run_request(const std::vector<std::string>& args, const Options& base, std::ostream& os);

Outcome run_batch(const Options& opts)
{
    Outcome out;
    std::string line;
    int worst = kExitDecided;
    std::ostringstream sink;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        // naive shell-like split honoring double quotes
        std::vector<std::string> args;
        std::string cur;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') {
                quoted = !quoted;
            } else if (!quoted && std::isspace(static_cast<unsigned char>(ch))) {
                if (!cur.empty()) args.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) args.push_back(cur);
        if (args.empty()) continue;
        int code = run_request(args, opts, std::cout);
        worst = std::max(worst, code);
    }
    out.exit_code = worst;
    out.text = "";
    out.structured = nullptr;
    return out;
}

int run_request(const std::vector<std::string>& args, const Options& base, std::ostream& os)
{
    CLI::App app{"affine quadrics over Q: classification, pi0 data, and A^1-connectedness "
                 "certificates"};
    app.require_subcommand(0, 1);
    Options opts = base;
    app.add_option("--field", opts.field, "base field: Q, R, or Qp:<p>");
    app.add_option("--budget", opts.budget, "search budget (planes / candidates)");
    app.add_flag("--quadratically-closed", opts.quadratically_closed,
                 "treat every element as a square");
    app.add_option("--format", opts.format, "output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--max-factors", opts.max_factors, "certificate length bound for <D(phi)>");

    std::string input, second, third;
    auto* cmd_normalize = app.add_subcommand("normalize", "normal form of a quadric polynomial");
    cmd_normalize->add_option("polynomial", input)->required();
    auto* cmd_invariants = app.add_subcommand("invariants", "classical invariants of a form");
    cmd_invariants->add_option("form", input)->required();
    auto* cmd_isotropy = app.add_subcommand("isotropy", "isotropy over the selected field");
    cmd_isotropy->add_option("form", input)->required();
    auto* cmd_witt = app.add_subcommand("witt", "Witt decomposition");
    cmd_witt->add_option("form", input)->required();
    auto* cmd_repr = app.add_subcommand("represents", "does the form represent d?");
    cmd_repr->add_option("form", input)->required();
    cmd_repr->add_option("d", second)->required();
    auto* cmd_vg = app.add_subcommand("value-group", "membership of d in <D(form)>");
    cmd_vg->add_option("form", input)->required();
    cmd_vg->add_option("d", second)->required();
    auto* cmd_pi0 = app.add_subcommand("pi0", "pi0 description in the isotropic case");
    cmd_pi0->add_option("input", input)->required();
    auto* cmd_conn = app.add_subcommand("connected", "A^1-connectedness verdict");
    cmd_conn->add_option("input", input)->required();
    auto* cmd_qvt = app.add_subcommand("qvt", "Quadratic Value Theorem decision");
    cmd_qvt->add_option("--phi", input)->required();
    cmd_qvt->add_option("--f", second)->required();
    auto* cmd_gc = app.add_subcommand("good-curve", "good rational curve test");
    cmd_gc->add_option("--psi", input)->required();
    cmd_gc->add_option("--curve", second)->required();
    auto* cmd_cp = app.add_subcommand("connect-points", "S^2 search between rational points");
    cmd_cp->add_option("--psi", input)->required();
    cmd_cp->add_option("--p", second)->required();
    cmd_cp->add_option("--q", third)->required();
    auto* cmd_chain = app.add_subcommand("chain", "homotopy chain between fibers");
    cmd_chain->add_option("--phi", input)->required();
    cmd_chain->add_option("--c", second)->required();
    cmd_chain->add_option("--lambda", third)->required();
    auto* cmd_batch = app.add_subcommand("batch", "read one request per line from stdin");
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            os << app.help();
            return kExitDecided;
        }
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        Outcome out;
        if (cmd_normalize->parsed()) out = run_normalize(input, opts);
        else if (cmd_invariants->parsed()) out = run_invariants(input, opts);
        else if (cmd_isotropy->parsed()) out = run_isotropy(input, opts);
        else if (cmd_witt->parsed()) out = run_witt(input, opts);
        else if (cmd_repr->parsed()) out = run_represents(input, second, opts);
        else if (cmd_vg->parsed()) out = run_value_group(input, second, opts);
        else if (cmd_pi0->parsed()) out = run_pi0(input, opts);
        else if (cmd_conn->parsed()) out = run_connected(input, opts);
        else if (cmd_qvt->parsed()) out = run_qvt(input, second, opts);
        else if (cmd_gc->parsed()) out = run_good_curve(input, second, opts);
        else if (cmd_cp->parsed()) out = run_connect_points(input, second, third, opts);
        else if (cmd_chain->parsed()) out = run_chain(input, second, third, opts);
        else if (cmd_batch->parsed()) return run_batch(opts).exit_code;
        else {
            os << app.help();
            return kExitDecided;
        }
        if (opts.format == "structured") {
            os << out.structured.dump(2) << "\n";
        } else {
            os << out.text << "\n";
        }
        return out.exit_code;
    } catch (const parse::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_request(args, Options{}, std::cout);
}
