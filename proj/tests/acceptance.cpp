// Acceptance suite: runs every criterion and prints one pass/fail line each.
#include "aq/connect.hpp"
#include "aq/numfield.hpp"
#include "aq/parse.hpp"
#include "aq/report.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <unordered_set>

using namespace aq;
using forms::QuadraticForm;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void outcome(int n, bool ok, const std::string& what)
{
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << n << ": " << what << "\n";
    if (!ok) ++failures;
}

long ms_since(Clock::time_point t0)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

QuadraticForm ones(std::size_t n) { return QuadraticForm(std::vector<Rational>(n, Rational(1))); }

// deterministic corpus of random quadric polynomials (ambient <= 6, |coeff| <= 10)
std::vector<quadrics::AffineQuadricPoly> quadric_corpus(std::size_t count, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coeff(-10, 10);
    std::uniform_int_distribution<int> dims(2, 6);
    std::vector<quadrics::AffineQuadricPoly> out;
    while (out.size() < count) {
        std::size_t n = dims(rng);
        forms::QMatrix quad(n, n);
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                int a = coeff(rng);
                // polynomial coefficient a_ij on x_i x_j (i < j) is an integer
                Rational entry = (i == j) ? Rational(a) : Rational(a, 2);
                quad(i, j) = entry;
                quad(j, i) = entry;
                nonzero = nonzero || a != 0;
            }
        if (!nonzero) continue;
        std::vector<Rational> lin(n);
        for (auto& x : lin) x = coeff(rng);
        quadrics::AffineQuadricPoly poly(quad, lin, Rational(coeff(rng)));
        auto nf = quadrics::normalize(poly);
        if (nf.shape == quadrics::NormalForm::Shape::NonSmooth) continue;  // smooth corpus
        out.push_back(poly);
    }
    return out;
}

// --------------------------------------------------------------------------
// criterion 1: normalization soundness
// --------------------------------------------------------------------------
void criterion1()
{
    auto t0 = Clock::now();
    auto corpus = quadric_corpus(200, 1001);
    long max_case_ms = 0;
    std::size_t verified = 0;
    for (const auto& poly : corpus) {
        auto c0 = Clock::now();
        auto nf = quadrics::normalize(poly);
        if (nf.shape == quadrics::NormalForm::Shape::Product) {
            if (!quadrics::verify_normal_form(poly, nf)) break;
            if (!(quadrics::push_canonical(nf) == poly)) break;
        } else if (nf.shape == quadrics::NormalForm::Shape::FullAffineSpace) {
            // independent re-check: the diagonalized quadratic part must leave
            // a linear term on a radical coordinate
            auto diag = forms::diagonalize(poly.quad);
            auto b = diag.transform.transposed() * poly.lin;
            bool residual = false;
            for (std::size_t i = diag.form.dim(); i < poly.n; ++i)
                residual = residual || b[i] != 0;
            if (!residual) break;
        } else {
            break;  // non-smooth members were excluded
        }
        max_case_ms = std::max(max_case_ms, ms_since(c0));
        ++verified;
    }
    bool ok = verified == corpus.size() && max_case_ms < 1000;
    outcome(1, ok,
            "normalization soundness on 200 random smooth quadrics (" + std::to_string(verified) +
                "/200 exact, max case " + std::to_string(max_case_ms) + " ms, total " +
                std::to_string(ms_since(t0)) + " ms)");
}

// --------------------------------------------------------------------------
// criterion 2: local-global vs brute force
// --------------------------------------------------------------------------

/// Is a[0] x^2 = rhs solvable in integers x?
bool divides_to_square(long a0, __int128 rhs)
{
    if (rhs % a0 != 0) return false;
    __int128 x2 = rhs / a0;
    if (x2 < 0) return false;
    long x = static_cast<long>(std::sqrt(static_cast<double>(x2)));
    for (long d = -1; d <= 1; ++d) {
        long c = x + d;
        if (c >= 0 && static_cast<__int128>(c) * c == x2) return true;
    }
    return false;
}

/// Exhaustive isotropy oracle (signs are irrelevant inside squares, so the
/// sweep runs over nonnegative tuples; the last variable is solved for).
bool oracle_isotropic(const std::vector<long>& a, long height)
{
    const std::size_t n = a.size();
    if (n == 1) return false;
    if (n == 2) {
        for (long y = 1; y <= height; ++y)
            if (divides_to_square(a[0], -static_cast<__int128>(a[1]) * y * y)) return true;
        return false;
    }
    if (n == 3) {
        for (long y = 0; y <= height; ++y)
            for (long z = 0; z <= height; ++z) {
                if (y == 0 && z == 0) continue;
                __int128 rhs = -(static_cast<__int128>(a[1]) * y * y +
                                 static_cast<__int128>(a[2]) * z * z);
                if (divides_to_square(a[0], rhs)) return true;
            }
        return false;
    }
    // n == 4: hash the first binary form's values
    std::unordered_set<long long> s1;
    for (long x = 0; x <= height; ++x)
        for (long y = 0; y <= height; ++y) {
            if (x == 0 && y == 0) continue;
            s1.insert(a[0] * x * x + a[1] * y * y);
        }
    if (s1.count(0)) return true;
    for (long z = 0; z <= height; ++z)
        for (long w = 0; w <= height; ++w) {
            long long v = a[2] * z * z + a[3] * w * w;
            if (z == 0 && w == 0) {
                continue;
            }
            if (v == 0) return true;
            if (s1.count(-v)) return true;
        }
    return false;
}

void criterion2()
{
    auto t0 = Clock::now();
    const long coefs[] = {1, -1, 2, -2, 3, -3, 5, -5};
    std::set<std::vector<long>> corpus;  // sorted multisets (isotropy is permutation-invariant)
    for (std::size_t dim = 1; dim <= 4; ++dim) {
        std::vector<std::size_t> idx(dim, 0);
        while (true) {
            std::vector<long> f;
            for (std::size_t i = 0; i < dim; ++i) f.push_back(coefs[idx[i]]);
            std::sort(f.begin(), f.end());
            corpus.insert(f);
            std::size_t i = 0;
            while (i < dim && idx[i] == 7) idx[i++] = 0;
            if (i == dim) break;
            ++idx[i];
        }
    }
    std::size_t checked = 0, agreed = 0;
    for (const auto& coeffs : corpus) {
        std::vector<Rational> c(coeffs.begin(), coeffs.end());
        QuadraticForm f(c);
        bool claimed = forms::is_isotropic(f);
        long sweep = coeffs.size() <= 2 ? 10000 : (coeffs.size() == 3 ? 1000 : 400);
        bool found = oracle_isotropic(coeffs, sweep);
        bool agree;
        if (claimed && !found) {
            // staged deeper search must eventually find a vector; the library
            // witness confirms directly
            auto v = forms::isotropic_vector(f);
            agree = v.has_value() && f(*v) == 0;
        } else {
            agree = claimed == found;
        }
        ++checked;
        if (agree) ++agreed;
    }
    long ms = ms_since(t0);
    bool ok = agreed == checked && ms < 300000;
    outcome(2, ok,
            "Hasse-Minkowski vs exhaustive search on dim <= 4, coefficients {±1,±2,±3,±5} (" +
                std::to_string(agreed) + "/" + std::to_string(checked) +
                " agree; anisotropy sweeps to height 10^4/10^3/400 by dimension, witnesses "
                "confirm the rest; " +
                std::to_string(ms) + " ms)");
}

// --------------------------------------------------------------------------
// criteria 3 and 4: all-ones families
// --------------------------------------------------------------------------
void criterion3()
{
    auto t0 = Clock::now();
    bool ok = true;
    for (std::size_t n : {3u, 5u, 9u}) {
        auto c0 = Clock::now();
        auto v = connect::a1_connected(ones(n));
        ok = ok && v.verdict == connect::ConnectivityVerdict::Verdict::NotConnected;
        ok = ok && ms_since(c0) < 1000;
    }
    outcome(3, ok,
            "sums of squares in dimensions 3, 5, 9 are NotConnected (" +
                std::to_string(ms_since(t0)) + " ms)");
}

void criterion4()
{
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (std::size_t n : {6u, 7u, 8u, 10u, 11u, 12u, 13u, 14u, 15u, 16u}) {
        auto c0 = Clock::now();
        auto v = connect::a1_connected(ones(n));
        std::size_t p = 1;
        while (2 * p < n) p *= 2;
        std::size_t l = n - p;
        bool good = v.verdict == connect::ConnectivityVerdict::Verdict::Connected &&
                    v.i1_psi.has_value() &&
                    v.i1_psi->i1_kind == connect::WittIndexReport::I1::Exact &&
                    v.i1_psi->i1_lo == l && ms_since(c0) < 1000;
        if (!good) detail += " dim" + std::to_string(n);
        ok = ok && good;
    }
    outcome(4, ok,
            "all-ones forms of dimension 2^n+l (l >= 2) up to 16 are Connected with i1 = l" +
                (detail.empty() ? "" : " (failures:" + detail + ")") + " (" +
                std::to_string(ms_since(t0)) + " ms)");
}

// --------------------------------------------------------------------------
// criterion 5: quadratically closed mode
// --------------------------------------------------------------------------
void criterion5()
{
    auto t0 = Clock::now();
    connect::ConnectOptions qc;
    qc.quadratically_closed = true;
    auto corpus = quadric_corpus(120, 5005);
    std::size_t total = 0, good = 0, gm_members = 0;
    for (const auto& poly : corpus) {
        auto nf = quadrics::normalize(poly);
        ++total;
        if (nf.shape == quadrics::NormalForm::Shape::FullAffineSpace) {
            ++good;  // affine space: connected
            continue;
        }
        if (nf.psi.dim() >= 3) {
            auto v = connect::a1_connected(nf.psi, qc);
            if (v.verdict == connect::ConnectivityVerdict::Verdict::Connected) ++good;
        } else if (nf.psi.dim() == 2) {
            auto rep = connect::low_dimension_report(nf.psi, qc);
            ++gm_members;
            if (rep.gm_type) ++good;
        } else {
            auto rep = connect::low_dimension_report(nf.psi, qc);
            if (rep.classification == "two rational points") ++good;
        }
    }
    bool ok = good == total;
    outcome(5, ok,
            "quadratically closed mode: " + std::to_string(good) + "/" + std::to_string(total) +
                " corpus members Connected or G_m-type (" + std::to_string(gm_members) +
                " two-variable members; " + std::to_string(ms_since(t0)) + " ms)");
}

// --------------------------------------------------------------------------
// criterion 6: membership oracle instance (psi = <1,-1,-1>)
// --------------------------------------------------------------------------

/// Independent oracle: d in <D(<1,1>)> iff d > 0 and v_p(d) is even for every
/// prime p = 3 mod 4 (sum-of-two-squares norm criterion).
bool two_squares_group_oracle(const Rational& d)
{
    if (d <= 0) return false;
    auto fac = arith::factorize(num(d) * den(d));
    for (auto& [p, e] : fac.primes)
        if (p % 4 == 3 && e % 2 == 1) return false;
    return true;
}

void criterion6()
{
    auto t0 = Clock::now();
    auto desc = connect::pi0_isotropic(QuadraticForm({1, -1, -1}), connect::FieldSel::rational());
    bool ok = desc.phi.has_value() && desc.phi->coeffs() == std::vector<Rational>{1, 1};
    const QuadraticForm& phi = *desc.phi;
    std::size_t verified = 0, expected = 0;
    for (int d : {2, 5, 10, 13, -1, 3, 21}) {
        ++expected;
        auto v = forms::value_group_membership(phi, d);
        bool member = v.outcome == forms::GroupMembershipVerdict::Outcome::Member;
        bool nonmember = v.outcome == forms::GroupMembershipVerdict::Outcome::NonMember;
        bool oracle = two_squares_group_oracle(d);
        if (member != oracle || nonmember != !oracle) continue;
        if (!forms::verify_membership(phi, d, v)) continue;
        ++verified;
    }
    ok = ok && verified == expected;
    outcome(6, ok,
            "membership oracle for psi = <1,-1,-1> (phi = <1,1>): " + std::to_string(verified) +
                "/" + std::to_string(expected) +
                " verdicts match the sum-of-two-squares criterion with verified "
                "certificates (" +
                std::to_string(ms_since(t0)) + " ms)");
}

// --------------------------------------------------------------------------
// criterion 7: QVT regression
// --------------------------------------------------------------------------
void criterion7()
{
    auto t0 = Clock::now();
    bool ok = true;
    auto v = qvt::qvt_decide(QuadraticForm({2, 3}), RationalFunction::t());
    ok = ok && v.outcome == qvt::QvtVerdict::Outcome::No && v.witness &&
         *v.witness == QPoly::t() &&
         qvt::verify_qvt_no(QuadraticForm({2, 3}), RationalFunction::t(), v);

    std::mt19937 rng(7007);
    std::uniform_int_distribution<int> c(-6, 6);
    QuadraticForm iso_phis[] = {QuadraticForm({1, -1}), QuadraticForm({1, 2, -3}),
                                QuadraticForm({2, -2}), QuadraticForm({1, 1, -2})};
    std::size_t cases = 0;
    while (cases < 50) {
        std::vector<Rational> nc(1 + rng() % 4), dc(1 + rng() % 3);
        for (auto& x : nc) x = c(rng);
        for (auto& x : dc) x = c(rng);
        QPoly n(nc), den(dc);
        if (n.is_zero() || den.is_zero()) continue;
        RationalFunction f(n, den);
        if (f.is_zero()) continue;
        const QuadraticForm& phi = iso_phis[cases % 4];
        auto a = qvt::qvt_decide(phi, f);
        auto b = qvt::qvt_decide(phi, RationalFunction(Rational(1)) / f);
        ok = ok && a.outcome == qvt::QvtVerdict::Outcome::InGroupUpToConstant;
        ok = ok && a.outcome == b.outcome;
        ++cases;
    }
    outcome(7, ok,
            "QVT regression: (phi=<2,3>, f=t) -> No with witness t; 50 isotropic fuzz cases in "
            "the group with inverse consistency (" +
                std::to_string(ms_since(t0)) + " ms)");
}

// --------------------------------------------------------------------------
// criterion 8: homotopy certificates
// --------------------------------------------------------------------------
void criterion8()
{
    auto t0 = Clock::now();
    std::mt19937 rng(8008);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::size_t done = 0, good = 0;
    long max_ms = 0;
    while (done < 100) {
        std::size_t dim = 2 + rng() % 2;
        std::vector<Rational> pc{1};
        for (std::size_t i = 1; i < dim; ++i) {
            int x = coef(rng);
            pc.push_back(x == 0 ? 1 : x);
        }
        QuadraticForm phi(pc);
        if (forms::is_isotropic(phi)) continue;
        Rational c(coef(rng));
        if (c == 0) c = 1;
        std::vector<homotopy::RepresentationWitness> ws;
        int nfac = 1 + rng() % 3;
        bool bad = false;
        for (int i = 0; i < nfac; ++i) {
            Rational d(coef(rng));
            std::vector<Rational> z(dim - 1);
            for (auto& x : z) x = coef(rng);
            try {
                ws.push_back(homotopy::make_witness(phi, c, d, z));
            } catch (const std::domain_error&) {
                bad = true;
                break;
            }
        }
        if (bad) continue;
        auto c0 = Clock::now();
        Rational lambda = c;
        for (auto& w : ws) lambda *= w.lambda;
        auto chain = homotopy::build_chain(phi, c, lambda, ws);
        bool pass = homotopy::verify_chain(chain).ok;
        // endpoint cosets: x1/c and x1_end/lambda are members via certificates
        auto m0 = forms::value_group_membership(phi, chain.start_point[0] / c);
        auto m1 = forms::value_group_membership(phi, chain.end_point[0] / lambda);
        pass = pass && m0.outcome == forms::GroupMembershipVerdict::Outcome::Member &&
               forms::verify_membership(phi, chain.start_point[0] / c, m0);
        pass = pass && m1.outcome == forms::GroupMembershipVerdict::Outcome::Member &&
               forms::verify_membership(phi, chain.end_point[0] / lambda, m1);
        max_ms = std::max(max_ms, ms_since(c0));
        ++done;
        if (pass) ++good;
    }
    bool ok = good == done && max_ms < 1000;
    outcome(8, ok,
            "homotopy certificates: " + std::to_string(good) +
                "/100 fuzzed chains verify with endpoint cosets certified (max case " +
                std::to_string(max_ms) + " ms)");
}

// --------------------------------------------------------------------------
// criterion 9: sections through the degenerate fiber
// --------------------------------------------------------------------------
void criterion9()
{
    auto t0 = Clock::now();
    std::mt19937 rng(9009);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::size_t done = 0, good = 0;

    // rational pairs
    while (done < 10) {
        std::size_t vars = 1 + rng() % 3;  // y has `vars` entries
        std::vector<Rational> y(vars);
        for (auto& x : y) x = Rational(coef(rng), 1 + rng() % 3);
        std::vector<Rational> phi{1};
        Rational rest = 1;
        bool abort = false;
        for (std::size_t i = 1; i < vars; ++i) {
            int b = coef(rng);
            if (b == 0) b = 2;
            phi.push_back(b);
            rest += Rational(b) * y[i] * y[i];
        }
        if (y[0] == 0 || rest == 0) continue;
        phi.insert(phi.begin() + 1, -rest / (y[0] * y[0]));
        std::vector<Rational> yy{y};
        (void)abort;
        try {
            auto s = homotopy::section_through<Rational>(phi, yy);
            auto p0 = s.at(Rational(0));
            bool pass = p0[0] == 0;
            for (std::size_t i = 0; i < yy.size(); ++i) pass = pass && p0[i + 2] == yy[i];
            ++done;
            if (pass) ++good;
        } catch (const std::domain_error&) {
            continue;
        }
    }
    // quadratic-field pairs
    using nf::QuadElem;
    const Int ms[] = {Int(2), Int(-1), Int(3), Int(5), Int(-2)};
    std::size_t kdone = 0;
    while (kdone < 10) {
        Int m = ms[kdone % 5];
        std::size_t vars = 1 + rng() % 2;
        std::vector<QuadElem> y(vars);
        for (auto& x : y)
            x = QuadElem(Rational(coef(rng)), Rational(coef(rng), 1 + rng() % 2), m);
        std::vector<QuadElem> phi{QuadElem(1)};
        QuadElem rest(1);
        for (std::size_t i = 1; i < vars; ++i) {
            QuadElem b(Rational(coef(rng)), Rational(coef(rng)), m);
            if (b == QuadElem(0)) b = QuadElem(2);
            phi.push_back(b);
            rest += b * y[i] * y[i];
        }
        if (y[0] == QuadElem(0) || rest == QuadElem(0)) continue;
        QuadElem b1 = QuadElem(0) - rest / (y[0] * y[0]);
        phi.insert(phi.begin() + 1, b1);
        try {
            auto s = homotopy::section_through<QuadElem>(phi, y);
            auto p0 = s.at(QuadElem(0));
            bool pass = p0[0] == QuadElem(0);
            for (std::size_t i = 0; i < y.size(); ++i) pass = pass && p0[i + 2] == y[i];
            ++kdone;
            ++done;
            if (pass) ++good;
        } catch (const std::domain_error&) {
            continue;
        }
    }
    bool ok = good == done && done == 20;
    outcome(9, ok,
            "degenerate-fiber sections: " + std::to_string(good) + "/20 over Q and quadratic fields "
            "satisfy the model identity with s(0) on L_y (" +
                std::to_string(ms_since(t0)) + " ms)");
}

// --------------------------------------------------------------------------
// criterion 10: cross-consistency sweep
// --------------------------------------------------------------------------
void criterion10()
{
    auto t0 = Clock::now();
    std::mt19937 rng(1010);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::size_t done = 0, consistent = 0, padded_ok = 0;
    while (done < 100) {
        std::size_t n = 3 + rng() % 3;
        std::vector<Rational> c;
        for (std::size_t i = 0; i < n; ++i) {
            int x = coef(rng);
            c.push_back(x == 0 ? 1 : x);
        }
        QuadraticForm psi(c);
        if (!forms::is_isotropic(psi)) continue;
        auto pi0 = connect::pi0_isotropic(psi, connect::FieldSel::rational());
        auto conn = connect::a1_connected(psi);
        bool trivial = pi0.triviality == connect::Pi0Description::Triviality::Trivial;
        bool connected = conn.verdict == connect::ConnectivityVerdict::Verdict::Connected;
        if (trivial == connected) ++consistent;
        auto padded = connect::a1_connected(psi.concat(QuadraticForm({1, -1})));
        if (padded.verdict == connect::ConnectivityVerdict::Verdict::Connected) ++padded_ok;
        ++done;
    }
    bool ok = consistent == done && padded_ok == done;
    outcome(10, ok,
            "cross-consistency: pi0 triviality iff Connected on " + std::to_string(consistent) +
                "/100 random isotropic psi; hyperbolic padding Connected on " +
                std::to_string(padded_ok) + "/100 (" + std::to_string(ms_since(t0)) + " ms)");
}

}  // namespace

int main()
{
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
