#include "aq/report.hpp"

namespace aq::report {

Json json_of(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j)
{
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

Json json_of(const forms::QuadraticForm& f)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < f.dim(); ++i) a.push_back(json_of(f[i]));
    return a;
}

forms::QuadraticForm form_from(const Json& j)
{
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from(x));
    return forms::QuadraticForm(c);
}

Json json_of(const arith::SquareClass& sc)
{
    return Json{{"sign", sc.sign}, {"radical", sc.radical.str()}};
}

Json json_of(const arith::Place& v)
{
    if (v.is_real()) return Json{{"kind", "real"}};
    return Json{{"kind", "finite"}, {"p", v.p.str()}};
}

Json json_of(const arith::Factorization& f)
{
    Json primes = Json::array();
    for (auto& [p, e] : f.primes) primes.push_back(Json{{"p", p.str()}, {"e", e}});
    return Json{{"sign", f.sign}, {"primes", primes}};
}

Json json_of(const QPoly& p)
{
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(json_of(c));
    return a;
}

QPoly qpoly_from(const Json& j)
{
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from(x));
    return QPoly(c);
}

Json json_of(const RationalFunction& f)
{
    return Json{{"num", json_of(f.num())}, {"den", json_of(f.den())}, {"text", f.str()}};
}

RationalFunction rf_from(const Json& j)
{
    return RationalFunction(qpoly_from(j.at("num")), qpoly_from(j.at("den")));
}

Json json_of(const forms::WittDecomposition& w)
{
    Json t = Json::array();
    for (std::size_t i = 0; i < w.transform.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j2 = 0; j2 < w.transform.cols; ++j2)
            row.push_back(json_of(w.transform(i, j2)));
        t.push_back(row);
    }
    return Json{{"witt_index", w.witt_index},
                {"anisotropic_kernel", json_of(w.kernel)},
                {"transform", t}};
}

Json json_of(const forms::LocalValueGroup& g)
{
    arith::LocalSquareClasses cls(g.place);
    Json rep = Json::array(), mem = Json::array();
    for (int i : g.represented) rep.push_back(to_string(cls.representative(i)));
    for (int i : g.members) mem.push_back(to_string(cls.representative(i)));
    return Json{{"place", json_of(g.place)},
                {"full", g.full},
                {"represented_classes", rep},
                {"generated_subgroup", mem}};
}

Json json_of(const forms::GroupMembershipVerdict& v, const Rational& d)
{
    Json out;
    out["query"] = json_of(d);
    switch (v.outcome) {
        case forms::GroupMembershipVerdict::Outcome::Member: out["outcome"] = "member"; break;
        case forms::GroupMembershipVerdict::Outcome::NonMember:
            out["outcome"] = "non-member";
            break;
        default: out["outcome"] = "unknown";
    }
    if (v.outcome == forms::GroupMembershipVerdict::Outcome::Member) {
        Json fs = Json::array();
        for (std::size_t i = 0; i < v.factors.size(); ++i) {
            Json wt = Json::array();
            for (const auto& x : v.factor_witnesses[i]) wt.push_back(json_of(x));
            fs.push_back(Json{{"value", json_of(v.factors[i])}, {"witness", wt}});
        }
        out["certificate"] = fs;
        out["square_scale"] = json_of(v.square_scale);
    }
    if (v.outcome == forms::GroupMembershipVerdict::Outcome::NonMember)
        out["obstruction"] = json_of(v.obstruction);
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

forms::GroupMembershipVerdict membership_from(const Json& j)
{
    forms::GroupMembershipVerdict v;
    std::string outcome = j.at("outcome").get<std::string>();
    if (outcome == "member") {
        v.outcome = forms::GroupMembershipVerdict::Outcome::Member;
        for (const auto& f : j.at("certificate")) {
            v.factors.push_back(rational_from(f.at("value")));
            std::vector<Rational> wt;
            for (const auto& x : f.at("witness")) wt.push_back(rational_from(x));
            v.factor_witnesses.push_back(wt);
        }
        v.square_scale = rational_from(j.at("square_scale"));
    } else if (outcome == "non-member") {
        v.outcome = forms::GroupMembershipVerdict::Outcome::NonMember;
        const Json& o = j.at("obstruction");
        v.obstruction = o.at("kind") == "real" ? arith::Place::real()
                                               : arith::Place::finite(Int(o.at("p").get<std::string>()));
    } else {
        v.outcome = forms::GroupMembershipVerdict::Outcome::Unknown;
    }
    return v;
}

Json json_of(const nf::QuadElem& x)
{
    return Json{{"a", json_of(x.a)}, {"b", json_of(x.b)}, {"m", x.m.str()}, {"text", x.str()}};
}

Json json_of(const nf::IsotropyVerdict& v)
{
    Json out;
    switch (v.outcome) {
        case nf::IsotropyVerdict::Outcome::Isotropic: out["outcome"] = "isotropic"; break;
        case nf::IsotropyVerdict::Outcome::Anisotropic: out["outcome"] = "anisotropic"; break;
        default: out["outcome"] = "unknown";
    }
    if (v.witness) {
        Json w = Json::array();
        for (const auto& x : *v.witness) w.push_back(json_of(x));
        out["witness"] = w;
    }
    if (v.real_embedding_obstruction) out["obstruction"] = "real embeddings";
    else if (v.obstruction_place) out["obstruction"] = json_of(*v.obstruction_place);
    if (!v.reason.empty()) out["reason"] = v.reason;
    return out;
}

Json json_of(const qvt::QvtVerdict& v)
{
    Json out;
    switch (v.outcome) {
        case qvt::QvtVerdict::Outcome::InGroupUpToConstant:
            out["outcome"] = "in-group-up-to-constant";
            break;
        case qvt::QvtVerdict::Outcome::No: out["outcome"] = "no"; break;
        default: out["outcome"] = "unknown";
    }
    if (v.candidate_constant) out["candidate_constant"] = json_of(*v.candidate_constant);
    if (v.witness) {
        out["witness_point"] = json_of(*v.witness);
        out["witness_point_text"] = v.witness->str();
        out["witness_valuation"] = v.witness_valuation;
        out["residue"] = v.residue_note;
    }
    if (!v.undecided.empty()) {
        Json u = Json::array();
        for (const auto& p : v.undecided) u.push_back(json_of(p));
        out["undecided_points"] = u;
    }
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

qvt::QvtVerdict qvt_from(const Json& j)
{
    qvt::QvtVerdict v;
    std::string outcome = j.at("outcome").get<std::string>();
    if (outcome == "no") {
        v.outcome = qvt::QvtVerdict::Outcome::No;
        v.witness = qpoly_from(j.at("witness_point"));
        v.witness_valuation = j.at("witness_valuation").get<long>();
    } else if (outcome == "in-group-up-to-constant") {
        v.outcome = qvt::QvtVerdict::Outcome::InGroupUpToConstant;
    } else {
        v.outcome = qvt::QvtVerdict::Outcome::Unknown;
    }
    return v;
}

Json json_of(const quadrics::QuadricModel& m)
{
    Json form = Json::array();
    for (const auto& c : m.form) form.push_back(json_of(c));
    return Json{{"kind", m.kind == quadrics::QuadricModel::Kind::Qpsi ? "Qpsi" : "Xphi"},
                {"form", form}};
}

quadrics::QuadricModel model_from(const Json& j)
{
    quadrics::QuadricModel m;
    m.kind = j.at("kind") == "Qpsi" ? quadrics::QuadricModel::Kind::Qpsi
                                    : quadrics::QuadricModel::Kind::Xphi;
    for (const auto& x : j.at("form")) m.form.push_back(rational_from(x));
    return m;
}

Json json_of(const quadrics::NormalForm& nf)
{
    Json out;
    out["ambient_dimension"] = nf.ambient_n;
    switch (nf.shape) {
        case quadrics::NormalForm::Shape::FullAffineSpace:
            out["shape"] = "full-affine-space";
            out["affine_dimension"] = nf.affine_dim;
            break;
        case quadrics::NormalForm::Shape::Product: {
            out["shape"] = "product";
            out["psi"] = json_of(nf.psi);
            out["affine_factor"] = nf.affine_factor;
            out["scalar"] = json_of(nf.scalar);
            Json a = Json::array(), s = Json::array();
            for (std::size_t i = 0; i < nf.change.a.rows; ++i) {
                Json row = Json::array();
                for (std::size_t j2 = 0; j2 < nf.change.a.cols; ++j2)
                    row.push_back(json_of(nf.change.a(i, j2)));
                a.push_back(row);
            }
            for (const auto& x : nf.change.shift) s.push_back(json_of(x));
            out["change"] = Json{{"matrix", a}, {"shift", s}};
            break;
        }
        case quadrics::NormalForm::Shape::NonSmooth:
            out["shape"] = "non-smooth";
            out["cone_form"] = json_of(nf.cone_form);
            out["report"] = nf.report;
            break;
    }
    return out;
}

Json json_of(const qvt::RationalCurveOnQuadric& c)
{
    Json comps = Json::array();
    for (const auto& f : c.components()) comps.push_back(json_of(f));
    return Json{{"model", json_of(c.model())}, {"components", comps}};
}

qvt::RationalCurveOnQuadric curve_from(const Json& j)
{
    std::vector<RationalFunction> comps;
    for (const auto& x : j.at("components")) comps.push_back(rf_from(x));
    return qvt::RationalCurveOnQuadric(model_from(j.at("model")), comps);
}

Json json_of(const homotopy::HomotopyChain& chain)
{
    Json maps = Json::array();
    for (const auto& m : chain.maps) {
        Json comps = Json::array();
        for (const auto& p : m.comps) comps.push_back(json_of(p));
        maps.push_back(comps);
    }
    Json junctions = Json::array();
    for (const auto& [a, b] : chain.junctions)
        junctions.push_back(Json{{"t_prev", json_of(a)}, {"t_next", json_of(b)}});
    Json sp = Json::array(), ep = Json::array();
    for (const auto& x : chain.start_point) sp.push_back(json_of(x));
    for (const auto& x : chain.end_point) ep.push_back(json_of(x));
    return Json{{"model", json_of(chain.model)},
                {"maps", maps},
                {"junctions", junctions},
                {"start_param", json_of(chain.start_param)},
                {"end_param", json_of(chain.end_param)},
                {"start_point", sp},
                {"end_point", ep},
                {"c", json_of(chain.declared_c)},
                {"lambda", json_of(chain.declared_lambda)},
                {"square_scale", json_of(chain.square_scale)}};
}

homotopy::HomotopyChain chain_from(const Json& j)
{
    homotopy::HomotopyChain chain;
    chain.model = model_from(j.at("model"));
    for (const auto& mj : j.at("maps")) {
        std::vector<QPoly> comps;
        for (const auto& p : mj) comps.push_back(qpoly_from(p));
        chain.maps.emplace_back(chain.model, comps);
    }
    for (const auto& x : j.at("junctions"))
        chain.junctions.emplace_back(rational_from(x.at("t_prev")), rational_from(x.at("t_next")));
    chain.start_param = rational_from(j.at("start_param"));
    chain.end_param = rational_from(j.at("end_param"));
    for (const auto& x : j.at("start_point")) chain.start_point.push_back(rational_from(x));
    for (const auto& x : j.at("end_point")) chain.end_point.push_back(rational_from(x));
    chain.declared_c = rational_from(j.at("c"));
    chain.declared_lambda = rational_from(j.at("lambda"));
    chain.square_scale = rational_from(j.at("square_scale"));
    return chain;
}

Json json_of(const connect::WittIndexReport& r)
{
    Json out{{"i0", r.i0}};
    switch (r.i1_kind) {
        case connect::WittIndexReport::I1::None: out["i1"] = nullptr; break;
        case connect::WittIndexReport::I1::Exact: out["i1"] = Json{{"exact", r.i1_lo}}; break;
        case connect::WittIndexReport::I1::Interval:
            out["i1"] = Json{{"lo", r.i1_lo}, {"hi", r.i1_hi}};
            break;
    }
    if (!r.provenance.empty()) out["provenance"] = r.provenance;
    return out;
}

Json json_of(const connect::Pi0Description& d)
{
    Json out;
    out["field"] = d.field.str();
    switch (d.triviality) {
        case connect::Pi0Description::Triviality::Trivial: out["triviality"] = "trivial"; break;
        case connect::Pi0Description::Triviality::NonTrivial:
            out["triviality"] = "non-trivial";
            break;
        default: out["triviality"] = "unknown";
    }
    if (d.phi) out["phi"] = json_of(*d.phi);
    Json locals = Json::array();
    for (const auto& l : d.local_data) locals.push_back(json_of(l.group));
    out["local_data"] = locals;
    out["rank"] = d.rank_kind == connect::Pi0Description::RankKind::Finite
                      ? Json{{"kind", "finite"}, {"value", d.rank}}
                      : Json{{"kind", "infinite-or-unknown"}};
    Json gens = Json::array();
    for (const auto& g : d.generators) gens.push_back(json_of(g));
    out["generators"] = gens;
    if (!d.note.empty()) out["note"] = d.note;
    return out;
}

Json json_of(const connect::ConnectivityVerdict& v)
{
    Json out;
    switch (v.verdict) {
        case connect::ConnectivityVerdict::Verdict::Connected: out["verdict"] = "connected"; break;
        case connect::ConnectivityVerdict::Verdict::NotConnected:
            out["verdict"] = "not-connected";
            break;
        default: out["verdict"] = "unknown";
    }
    out["fired_condition"] = v.fired_condition;
    out["i0_kappa"] = v.i0_kappa;
    out["i0_psi"] = v.i0_psi;
    if (v.i1_psi) out["i1_psi"] = json_of(*v.i1_psi);
    if (v.phi) out["phi"] = json_of(*v.phi);
    if (v.qvt_witness) out["qvt_witness"] = json_of(*v.qvt_witness);
    out["evidence"] = v.evidence;
    return out;
}

Json json_of(const connect::LowDimReport& r)
{
    return Json{{"variables", r.n},
                {"classification", r.classification},
                {"gm_type", r.gm_type},
                {"details", r.details}};
}

Json json_of(const connect::S2Verdict& v)
{
    Json out;
    out["outcome"] =
        v.outcome == connect::S2Verdict::Outcome::SameClass ? "same-class" : "unknown";
    Json hops = Json::array();
    for (const auto& h : v.hops)
        hops.push_back(Json{{"curve", json_of(h.curve)},
                            {"t_from", json_of(h.t_from)},
                            {"t_to", json_of(h.t_to)},
                            {"goodness", json_of(h.goodness)}});
    out["hops"] = hops;
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

Json envelope(const std::string& kind, Json input, Json body)
{
    Json out;
    out["schema"] = kSchema;
    out["kind"] = kind;
    out["input"] = std::move(input);
    out["result"] = std::move(body);
    return out;
}

}  // namespace aq::report
