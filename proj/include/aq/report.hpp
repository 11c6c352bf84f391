#ifndef AQ_REPORT_HPP
#define AQ_REPORT_HPP

#include "aq/connect.hpp"
#include "aq/forms.hpp"
#include "aq/homotopy.hpp"
#include "aq/numfield.hpp"
#include "aq/quadrics.hpp"
#include "aq/qvt.hpp"

#include <json.hpp>

#include <string>

namespace aq::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "aq.report/1";

// bit-exact "num/den" strings
Json json_of(const Rational& q);
Rational rational_from(const Json& j);

Json json_of(const forms::QuadraticForm& f);
forms::QuadraticForm form_from(const Json& j);

Json json_of(const arith::SquareClass& sc);
Json json_of(const arith::Place& v);
Json json_of(const arith::Factorization& f);

Json json_of(const QPoly& p);
QPoly qpoly_from(const Json& j);
Json json_of(const RationalFunction& f);
RationalFunction rf_from(const Json& j);

Json json_of(const forms::WittDecomposition& w);
Json json_of(const forms::LocalValueGroup& g);
Json json_of(const forms::GroupMembershipVerdict& v, const Rational& d);
forms::GroupMembershipVerdict membership_from(const Json& j);

Json json_of(const nf::QuadElem& x);
Json json_of(const nf::IsotropyVerdict& v);

Json json_of(const qvt::QvtVerdict& v);
qvt::QvtVerdict qvt_from(const Json& j);

Json json_of(const quadrics::NormalForm& nf);
Json json_of(const quadrics::QuadricModel& m);
quadrics::QuadricModel model_from(const Json& j);
Json json_of(const qvt::RationalCurveOnQuadric& c);
qvt::RationalCurveOnQuadric curve_from(const Json& j);

Json json_of(const homotopy::HomotopyChain& chain);
homotopy::HomotopyChain chain_from(const Json& j);

Json json_of(const connect::WittIndexReport& r);
Json json_of(const connect::Pi0Description& d);
Json json_of(const connect::ConnectivityVerdict& v);
Json json_of(const connect::LowDimReport& r);
Json json_of(const connect::S2Verdict& v);

/// Standard report envelope: {"schema", "kind", "input", ...body}.
Json envelope(const std::string& kind, Json input, Json body);

}  // namespace aq::report

#endif
