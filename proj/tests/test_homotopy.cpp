#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aq/homotopy.hpp"
#include "aq/numfield.hpp"

#include <random>

using namespace aq;
using namespace aq::homotopy;
using forms::QuadraticForm;
using nf::QuadElem;

namespace {

QuadraticForm F(std::vector<int> v)
{
    std::vector<Rational> c(v.begin(), v.end());
    return QuadraticForm(c);
}

std::vector<Rational> R(std::vector<int> v) { return std::vector<Rational>(v.begin(), v.end()); }

}  // namespace

TEST_CASE("section_through: worked cases")
{
    // phi = <1,-1>, y3 = 1 -> s(t) = (t, -(t+2), t+1), s(0) = (0,-2,1)
    auto s = section_through<Rational>({1, -1}, {1});
    REQUIRE(s.comps.size() == 3);
    CHECK(s.comps[0] == Poly<Rational>::t());
    CHECK(s.comps[1] == -(Poly<Rational>::t() + Poly<Rational>(Rational(2))));
    CHECK(s.comps[2] == Poly<Rational>::t() + Poly<Rational>(Rational(1)));
    CHECK(s.at(Rational(0)) == R({0, -2, 1}));

    // phi = <1,-4>, y3 = 1/2 -> s2 = -(4t+4)
    auto s2 = section_through<Rational>({1, -4}, {Rational(1, 2)});
    CHECK(s2.comps[1] == Poly<Rational>(std::vector<Rational>{-4, -4}));

    // rejection when phi(1, y) != 0
    CHECK_THROWS_AS(section_through<Rational>({1, -1}, {2}), std::domain_error);
}

TEST_CASE("section_through over a quadratic field")
{
    // phi = <1, -2> over Q(sqrt(2)): y = 1/sqrt(2) = (sqrt(2))/2 has
    // phi(1, y) = 1 - 2 * (1/2) = 0
    QuadElem y(Rational(0), Rational(1, 2), 2);
    std::vector<QuadElem> phi{QuadElem(1), QuadElem(-2)};
    auto s = section_through<QuadElem>(phi, {y});
    auto p0 = s.at(QuadElem(0));
    CHECK(p0[0] == QuadElem(0));
    CHECK(p0[2] == y);
    // model identity is enforced by the constructor; evaluate a few params
    for (int k = -2; k <= 2; ++k) {
        auto p = s.at(QuadElem(k));
        QuadElem eq = p[0] * p[1] - (phi[0] + phi[1] * p[2] * p[2]);
        CHECK(eq == QuadElem(0));
    }
}

TEST_CASE("normalize_d_nonzero")
{
    QuadraticForm phi = F({1, 3});
    // lambda = phi(0, 1) = 3
    auto w = make_witness(phi, 1, 0, {Rational(1)});
    CHECK(w.lambda == 3);
    auto w2 = normalize_d_nonzero(phi, w);
    CHECK(w2.d == Rational(6, 4));
    CHECK(w2.z[0] == Rational(-2, 4));
    CHECK(w2.lambda == 3);

    // already nonzero d is the identity
    auto w3 = make_witness(phi, 1, 2, {Rational(1)});
    CHECK(normalize_d_nonzero(phi, w3).d == 2);

    // all z = 0 with d = 0 is rejected at construction (lambda would vanish)
    CHECK_THROWS_AS(make_witness(phi, 1, 0, {Rational(0)}), std::domain_error);

    // coefficient -1 is guarded (phi would be isotropic)
    QuadraticForm bad = F({1, -1});
    RepresentationWitness wb;
    wb.c = 1;
    wb.d = 0;
    wb.z = {Rational(1)};
    wb.lambda = -1;
    CHECK_THROWS_AS(normalize_d_nonzero(bad, wb), std::domain_error);
}

TEST_CASE("step1_homotopy")
{
    QuadraticForm phi = F({1, 1});
    auto w = make_witness(phi, 1, 1, {Rational(2)});
    CHECK(w.lambda == 5);
    auto m = step1_homotopy(phi, w);
    // f1(t) = 1 + 4t^2, endpoints 1 and 5
    CHECK(m.map.comps[0] == Poly<Rational>(std::vector<Rational>{1, 0, 4}));
    CHECK(m.map.comps[0](Rational(0)) == 1);
    CHECK(m.map.comps[0](Rational(1)) == 5);

    // z = 0: constant first component
    auto wz = make_witness(phi, 1, 3, {Rational(0)});
    auto mz = step1_homotopy(phi, wz);
    CHECK(mz.map.comps[0].is_constant());

    // c=3, d=2, z=(1): endpoints 12 and 3*5
    auto w3 = make_witness(phi, 3, 2, {Rational(1)});
    auto m3 = step1_homotopy(phi, w3);
    CHECK(m3.map.comps[0](Rational(0)) == 12);
    CHECK(m3.map.comps[0](Rational(1)) == 15);
}

TEST_CASE("step2_pair")
{
    QuadraticForm phi = F({1, 1});
    auto p = step2_pair(phi, 1, 2);
    CHECK(p.f.comps[0](p.a) == p.g.comps[0](p.b));

    auto p1 = step2_pair(phi, 5, 1);  // d1 = 1: trivial junction
    CHECK(p1.f.comps[0](p1.a) == p1.g.comps[0](p1.b));

    auto pm = step2_pair(phi, Rational(2, 3), -1);
    CHECK(pm.f.comps[0](pm.a) == pm.g.comps[0](pm.b));
}

TEST_CASE("build_chain and verify_chain")
{
    QuadraticForm phi = F({1, 1});

    // empty factorization: equal endpoints
    auto empty = build_chain(phi, 7, 7, {});
    CHECK(empty.maps.empty());
    CHECK(empty.start_point == empty.end_point);
    CHECK(verify_chain(empty).ok);

    // lambda = 5 via one witness
    auto w5 = make_witness(phi, 1, 1, {Rational(2)});
    auto chain5 = build_chain(phi, 1, 5, {w5});
    CHECK(verify_chain(chain5).ok);
    CHECK(chain5.start_point[0] == 1);
    CHECK(chain5.end_point[0] == 5);

    // lambda = 10 via [2, 5]
    auto w2 = make_witness(phi, 1, 1, {Rational(1)});
    CHECK(w2.lambda == 2);
    auto chain10 = build_chain(phi, 1, 10, {w2, w5});
    CHECK(verify_chain(chain10).ok);
    CHECK(chain10.end_point[0] == 10);

    // square scaling is recorded
    auto chain40 = build_chain(phi, 1, 40, {w2, w5});
    CHECK(chain40.square_scale == 2);
    CHECK(chain40.end_point[0] == 10);

    // perturbed chains fail with a locus
    auto broken = chain10;
    broken.end_point[0] = 11;
    auto check = verify_chain(broken);
    CHECK_FALSE(check.ok);
    CHECK(check.locus == "last endpoint mismatch");

    auto broken2 = chain10;
    broken2.junctions[0].first += 1;
    CHECK_FALSE(verify_chain(broken2).ok);

    // factor not represented: rejected
    RepresentationWitness fake;
    fake.c = 1;
    fake.d = 1;
    fake.z = {Rational(0)};
    fake.lambda = 3;  // phi(1,0) = 1 != 3
    CHECK_THROWS_AS(build_chain(phi, 1, 3, {fake}), std::domain_error);
}

TEST_CASE("build_chain fuzz: anisotropic phi, dim <= 3")
{
    std::mt19937 rng(2025);
    std::uniform_int_distribution<int> coef(-5, 5);
    int done = 0;
    while (done < 100) {
        std::size_t dim = 2 + rng() % 2;
        std::vector<Rational> pc{1};
        for (std::size_t i = 1; i < dim; ++i) {
            int x = coef(rng);
            if (x == 0) x = 1;
            pc.push_back(x);
        }
        QuadraticForm phi(pc);
        if (forms::is_isotropic(phi)) continue;
        Rational c(coef(rng));
        if (c == 0) c = 1;
        std::vector<RepresentationWitness> ws;
        int nf = 1 + rng() % 3;
        bool bad = false;
        for (int i = 0; i < nf; ++i) {
            Rational d(coef(rng));
            std::vector<Rational> z(dim - 1);
            for (auto& x : z) x = coef(rng);
            try {
                ws.push_back(make_witness(phi, c, d, z));
            } catch (const std::domain_error&) {
                bad = true;
                break;
            }
        }
        if (bad) continue;
        Rational lambda = c;
        for (auto& w : ws) lambda *= w.lambda;
        auto chain = build_chain(phi, c, lambda, ws);
        auto check = verify_chain(chain);
        CHECK_MESSAGE(check.ok, check.locus);
        CHECK(chain.start_point[0] == c);
        CHECK(chain.end_point[0] == lambda);
        ++done;
    }
}

TEST_CASE("conic_good_curve_search standardizes non-unit leading forms")
{
    // psi = <4,1,1>: anisotropic, psi(P) = 1 at P = (1/2, 0, 0)
    QuadraticForm psi = F({4, 1, 1});
    std::vector<Rational> p{Rational(1, 2), 0, 0}, q{0, 1, 0};
    auto res = conic_good_curve_search(psi, p, q, 200);
    REQUIRE(res.found);
    auto at_p = res.curve->at(res.param_p);
    auto at_q = res.curve->at(res.param_q);
    REQUIRE(at_p.has_value());
    REQUIRE(at_q.has_value());
    CHECK(*at_p == p);
    CHECK(*at_q == q);
    CHECK(res.goodness->outcome == qvt::QvtVerdict::Outcome::InGroupUpToConstant);
}

TEST_CASE("conic_good_curve_search on the sphere")
{
    QuadraticForm psi = F({1, 1, 1});
    auto res = conic_good_curve_search(psi, R({1, 0, 0}), R({-1, 0, 0}), 200);
    REQUIRE(res.found);
    REQUIRE(res.curve.has_value());
    auto at_p = res.curve->at(res.param_p);
    auto at_q = res.curve->at(res.param_q);
    REQUIRE(at_p.has_value());
    REQUIRE(at_q.has_value());
    CHECK(*at_p == R({1, 0, 0}));
    CHECK(*at_q == R({-1, 0, 0}));
    CHECK(res.goodness->outcome == qvt::QvtVerdict::Outcome::InGroupUpToConstant);

    CHECK_THROWS_AS(conic_good_curve_search(psi, R({1, 0, 0}), R({1, 0, 0}), 10),
                    std::domain_error);
    auto none = conic_good_curve_search(psi, R({1, 0, 0}), R({0, 1, 0}), 0);
    CHECK_FALSE(none.found);
}
