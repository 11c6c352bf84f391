#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aq/quadrics.hpp"

#include <random>

using namespace aq;
using namespace aq::quadrics;
using forms::QuadraticForm;

namespace {

QuadraticForm F(std::vector<int> v)
{
    std::vector<Rational> c(v.begin(), v.end());
    return QuadraticForm(c);
}

AffineQuadricPoly diag_poly(std::vector<int> diag, std::vector<int> lin, int cst)
{
    std::size_t n = diag.size();
    QMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i) q(i, i) = diag[i];
    std::vector<Rational> b(lin.begin(), lin.end());
    return AffineQuadricPoly(q, b, Rational(cst));
}

}  // namespace

TEST_CASE("normalize: x^2 + y^2 - z^2 - 1")
{
    auto nf = normalize(diag_poly({1, 1, -1}, {0, 0, 0}, -1));
    REQUIRE(nf.shape == NormalForm::Shape::Product);
    CHECK(nf.psi == F({1, 1, -1}));
    CHECK(nf.affine_factor == 0);
    CHECK(nf.change.a == QMatrix::identity(3));
    CHECK(nf.scalar == 1);
}

TEST_CASE("normalize: residual linear term gives affine space")
{
    // x^2 + y in ambient dimension 2
    auto nf = normalize(diag_poly({1, 0}, {0, 1}, 0));
    CHECK(nf.shape == NormalForm::Shape::FullAffineSpace);
    CHECK(nf.affine_dim == 1);
}

TEST_CASE("normalize: 2x^2 + 2xy + 2y^2 - 3")
{
    QMatrix q(2, 2);
    q(0, 0) = q(1, 1) = 2;
    q(0, 1) = q(1, 0) = 1;
    AffineQuadricPoly poly(q, {Rational(0), Rational(0)}, Rational(-3));
    auto nf = normalize(poly);
    REQUIRE(nf.shape == NormalForm::Shape::Product);
    CHECK(nf.psi.dim() == 2);
    CHECK(nf.affine_factor == 0);
    CHECK(verify_normal_form(poly, nf));
    // the pushed canonical polynomial is exactly the input
    CHECK(push_canonical(nf) == poly);
}

TEST_CASE("normalize: cone is reported non-smooth")
{
    auto nf = normalize(diag_poly({1, -1}, {0, 0}, 0));
    CHECK(nf.shape == NormalForm::Shape::NonSmooth);
    CHECK(nf.cone_form.dim() == 2);
}

TEST_CASE("normalize: absorbed linear terms")
{
    // (x-1)^2 + y^2 - 2 expanded: x^2 + y^2 - 2x - 1
    auto poly = diag_poly({1, 1}, {-2, 0}, -1);
    auto nf = normalize(poly);
    REQUIRE(nf.shape == NormalForm::Shape::Product);
    CHECK(nf.psi == QuadraticForm({Rational(1, 2), Rational(1, 2)}));
    CHECK(verify_normal_form(poly, nf));
    CHECK(push_canonical(nf) == poly);
    CHECK_THROWS_AS(normalize(diag_poly({0, 0}, {1, 1}, -1)), std::domain_error);
}

TEST_CASE("normalize is idempotent on canonical Product outputs")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-6, 6);
    int done = 0;
    while (done < 30) {
        std::size_t n = 2 + rng() % 3;
        QMatrix q(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) q(i, j) = q(j, i) = d(rng);
        std::vector<Rational> b(n);
        for (auto& x : b) x = d(rng);
        AffineQuadricPoly poly;
        try {
            poly = AffineQuadricPoly(q, b, Rational(d(rng)));
            auto nf = normalize(poly);
            if (nf.shape != NormalForm::Shape::Product) continue;
            CHECK(verify_normal_form(poly, nf));
            // canonical polynomial psi(y) - 1 re-normalizes to the same psi
            std::size_t m = nf.psi.dim();
            QMatrix qc(m, m);
            for (std::size_t i = 0; i < m; ++i) qc(i, i) = nf.psi[i];
            AffineQuadricPoly canon(qc, std::vector<Rational>(m, Rational(0)), Rational(-1));
            auto nf2 = normalize(canon);
            REQUIRE(nf2.shape == NormalForm::Shape::Product);
            CHECK(nf2.psi == nf.psi);
            CHECK(nf2.change.a == QMatrix::identity(m));
            ++done;
        } catch (const std::domain_error&) {
            continue;  // degree < 2 sample
        }
    }
}

TEST_CASE("to_Xphi_model")
{
    // <1,-1,-1> -> phi = <1,1>
    auto iso = to_Xphi_model(F({1, -1, -1}));
    CHECK(iso.dst.form == std::vector<Rational>{1, 1});
    CHECK(iso.verify());

    auto iso2 = to_Xphi_model(F({1, 1, -1}));
    CHECK(iso2.dst.form.size() == 2);
    CHECK(iso2.verify());

    auto iso3 = to_Xphi_model(F({1, -1}));
    CHECK(iso3.dst.form == std::vector<Rational>{1});
    CHECK(iso3.verify());

    CHECK_THROWS_AS(to_Xphi_model(F({1, 1, 1})), std::domain_error);

    // points transport: pick a point on Q^psi and push it
    QuadraticForm psi = F({1, 1, -1});
    std::vector<Rational> y{1, 0, 0};
    auto x = iso2.push(y);
    CHECK(on_quadric(iso2.dst, x));
    CHECK(iso2.pull(x) == y);
}

TEST_CASE("on_quadric")
{
    QuadricModel qpsi;
    qpsi.kind = QuadricModel::Kind::Qpsi;
    qpsi.form = {1, 1, 1};
    CHECK(on_quadric(qpsi, std::vector<Rational>{1, 0, 0}));
    CHECK_FALSE(on_quadric(qpsi, std::vector<Rational>{1, 1, 0}));

    QuadricModel xphi;
    xphi.kind = QuadricModel::Kind::Xphi;
    xphi.form = {1, -1};
    CHECK(on_quadric(xphi, std::vector<Rational>{0, -2, 1}));
    CHECK_THROWS_AS(on_quadric(qpsi, std::vector<Rational>{1, 0}), std::invalid_argument);
}

TEST_CASE("change_coords_JF over a quadratic field")
{
    using nf::QuadElem;
    using nf::QuadField;
    // psi = <1, -2, 6> = <1> | (-phi), phi = <2, -6>; anisotropic over Q
    // (2-adic obstruction), isotropic over Q(sqrt(2)).
    QuadraticForm psi = F({1, -2, 6});
    REQUIRE_FALSE(forms::is_isotropic(psi));
    QuadField k(2);
    // phi(witness) = 1 with witness = (sqrt(2)/2, 0)
    std::vector<QuadElem> phi_wit{QuadElem(Rational(0), Rational(1, 2), 2), QuadElem(0)};
    auto iso = change_coords_JF(psi, k, phi_wit);
    CHECK(iso.verify());
    CHECK(iso.dst.form[0] == QuadElem(1));

    // a K-point of Q^psi transports to the X-model exactly
    std::vector<QuadElem> on_psi{QuadElem(1), QuadElem(0), QuadElem(0)};
    auto z = iso.push(on_psi);
    CHECK(on_quadric(iso.dst, z));
    CHECK(iso.pull(z) == on_psi);

    // the library's own isotropy witness also converts to a valid input
    auto verdict = nf::is_isotropic_over(psi, k);
    REQUIRE(verdict.outcome == nf::IsotropyVerdict::Outcome::Isotropic);
    REQUIRE(verdict.witness.has_value());
    auto& w = *verdict.witness;
    if (!(w[0] == QuadElem(0))) {
        std::vector<QuadElem> wit2{w[1] / w[0], w[2] / w[0]};
        auto iso2 = change_coords_JF(psi, k, wit2);
        CHECK(iso2.verify());
    }

    // invalid witness is rejected
    std::vector<QuadElem> bad{QuadElem(1), QuadElem(1)};
    CHECK_THROWS_AS(change_coords_JF(psi, k, bad), std::domain_error);
}

TEST_CASE("change_coords_JF transports K-points both ways")
{
    using nf::QuadElem;
    using nf::QuadField;
    QuadraticForm psi = F({1, -2, 6});
    QuadField k(2);
    std::vector<QuadElem> wit{QuadElem(Rational(0), Rational(1, 2), 2), QuadElem(0)};
    auto iso = change_coords_JF(psi, k, wit);
    // a genuinely irrational point of Q^psi_F: x1 = 3, x2 = 2*sqrt(2), x3 = 0
    // checks 9 - 2*8 + 0 = -7... adjust: need x1^2 - 2x2^2 + 6x3^2 = 1.
    // x1 = 3, x2 = 2: 9 - 8 = 1 (rational works too); irrational:
    // x1 = 1 + sqrt(2), x2 = ?: (3 + 2rt2) - 2 x2^2 = 1 -> x2^2 = 1 + rt2:
    // not a square. Use x2 = sqrt(2)/2 t-style: x1 = sqrt(2), x2 = 1/sqrt(2):
    // 2 - 2*(1/2) = 1. 
    std::vector<QuadElem> pt{QuadElem(Rational(0), Rational(1), 2),
                             QuadElem(Rational(0), Rational(1, 2), 2), QuadElem(0)};
    REQUIRE(nf::eval_form(psi, pt) == QuadElem(1));
    auto z = iso.push(pt);
    CHECK(on_quadric(iso.dst, z));
    CHECK(iso.pull(z) == pt);
}

TEST_CASE("standardize_with_point")
{
    QuadraticForm psi = F({2, -1});
    std::vector<Rational> p{1, 1};  // 2 - 1 = 1
    auto s = standardize_with_point(psi, p);
    CHECK(s.std_form[0] == 1);
    // congruence: psi(U x) = std(x) checked entrywise on basis vectors
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<Rational> e(2, Rational(0));
        e[i] = 1;
        auto col = s.u * e;
        CHECK(psi(col) == s.std_form[i]);
    }
    CHECK_THROWS_AS(standardize_with_point(psi, {1, 0}), std::domain_error);
}
