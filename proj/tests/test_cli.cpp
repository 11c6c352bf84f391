#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aq/parse.hpp"
#include "aq/report.hpp"

#include <random>

using namespace aq;
using namespace aq::parse;

TEST_CASE("parse_polynomial basics")
{
    auto p = parse_polynomial("x1^2 + x2^2 - x3^2 - 1");
    CHECK(p.n == 3);
    CHECK(p.quad(0, 0) == 1);
    CHECK(p.quad(2, 2) == -1);
    CHECK(p.cst == -1);

    auto q = parse_polynomial("2*x1*x2 - 3");
    CHECK(q.quad(0, 1) == 1);  // symmetrized
    CHECK(q.quad(1, 0) == 1);
    CHECK(q.cst == -3);

    CHECK_THROWS_AS(parse_polynomial("x1^3 - 1"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1 + @"), ParseError);
    CHECK_THROWS_AS(parse_polynomial(""), ParseError);
    CHECK_THROWS_AS(parse_polynomial("3 - 1"), ParseError);  // no variables

    // juxtaposition and rationals
    auto r = parse_polynomial("1/2x1^2 + 3x1x2 - 7/3");
    CHECK(r.quad(0, 0) == Rational(1, 2));
    CHECK(r.quad(0, 1) == Rational(3, 2));
    CHECK(r.cst == Rational(-7, 3));

    // position information survives
    try {
        parse_polynomial("x1^2 + x2^3");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 7);
    }
}

TEST_CASE("printer/parser round-trip fuzz")
{
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> d(-9, 9);
    std::uniform_int_distribution<int> dim(1, 5);
    int cases = 0;
    while (cases < 500) {
        std::size_t n = dim(rng);
        forms::QMatrix quad(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Rational c(d(rng), 1 + (rng() % 3));
                quad(i, j) = c;
                quad(j, i) = c;
            }
        std::vector<Rational> lin(n);
        for (auto& x : lin) x = Rational(d(rng), 1 + (rng() % 2));
        quadrics::AffineQuadricPoly poly(quad, lin, Rational(d(rng)));
        std::string text = poly.str();
        auto back = parse_polynomial(text);
        // the parser trims trailing unused variables, so compare on the
        // common prefix and demand the tail be zero
        REQUIRE(back.n <= poly.n);
        for (std::size_t i = 0; i < poly.n; ++i)
            for (std::size_t j = 0; j < poly.n; ++j) {
                Rational expect = (i < back.n && j < back.n) ? back.quad(i, j) : Rational(0);
                CHECK(poly.quad(i, j) == expect);
            }
        for (std::size_t i = 0; i < poly.n; ++i)
            CHECK(poly.lin[i] == (i < back.n ? back.lin[i] : Rational(0)));
        CHECK(poly.cst == back.cst);
        ++cases;
    }
}

TEST_CASE("parse_rational_function")
{
    auto f = parse_rational_function("t^2/(t+1)");
    CHECK(f.num() == QPoly::t() * QPoly::t());
    CHECK(f.den() == QPoly::t() + QPoly(Rational(1)));
    auto g = parse_rational_function("(t^2+1)*t^2");
    CHECK(g.den() == QPoly(Rational(1)));
    CHECK(g.num().degree() == 4);
    auto h = parse_rational_function("-3/2");
    CHECK(*h(Rational(0)) == Rational(-3, 2));
    CHECK_THROWS_AS(parse_rational_function("t/(t-t)"), ParseError);
    CHECK_THROWS_AS(parse_rational_function("t +"), ParseError);

    auto curve = parse_curve_components("(1-t^2)/(1+t^2);2t/(1+t^2);0");
    CHECK(curve.size() == 3);
}

TEST_CASE("structured output re-validates: membership")
{
    forms::QuadraticForm phi({Rational(1), Rational(1)});
    auto v = forms::value_group_membership(phi, 10);
    auto j = report::json_of(v, Rational(10));
    auto back = report::membership_from(j);
    CHECK(forms::verify_membership(phi, 10, back));

    auto nm = forms::value_group_membership(phi, 21);
    auto jn = report::json_of(nm, Rational(21));
    auto backn = report::membership_from(jn);
    CHECK(forms::verify_membership(phi, 21, backn));
}

TEST_CASE("structured output re-validates: chains")
{
    forms::QuadraticForm phi({Rational(1), Rational(1)});
    auto w = homotopy::make_witness(phi, 1, 1, {Rational(2)});
    auto chain = homotopy::build_chain(phi, 1, 5, {w});
    auto j = report::json_of(chain);
    auto back = report::chain_from(j);
    auto check = homotopy::verify_chain(back);
    CHECK_MESSAGE(check.ok, check.locus);
    CHECK(back.end_point == chain.end_point);

    // a tampered serialization fails re-verification
    auto tampered = j;
    tampered["maps"][0][0][0] = "2";
    bool failed = false;
    try {
        auto bad = report::chain_from(tampered);
        failed = !homotopy::verify_chain(bad).ok;
    } catch (const std::domain_error&) {
        failed = true;  // map constructor already rejects the broken identity
    }
    CHECK(failed);
}

TEST_CASE("structured output re-validates: qvt witnesses")
{
    forms::QuadraticForm phi({Rational(2), Rational(3)});
    auto v = qvt::qvt_decide(phi, RationalFunction::t());
    auto j = report::json_of(v);
    auto back = report::qvt_from(j);
    CHECK(qvt::verify_qvt_no(phi, RationalFunction::t(), back));
}

TEST_CASE("structured output re-validates: curves")
{
    quadrics::QuadricModel model;
    model.kind = quadrics::QuadricModel::Kind::Qpsi;
    model.form = {1, 1, 1};
    auto comps = parse_curve_components("(1-t^2)/(1+t^2);2t/(1+t^2);0");
    qvt::RationalCurveOnQuadric circle(model, comps);
    auto j = report::json_of(circle);
    auto back = report::curve_from(j);  // constructor re-verifies the identity
    CHECK(back.components() == circle.components());
}

TEST_CASE("rational serialization is bit-exact")
{
    for (Rational q : {Rational(0), Rational(-7, 3), Rational(22, 7), Rational(1) / 998244353}) {
        auto j = report::json_of(q);
        CHECK(report::rational_from(j) == q);
    }
}
