#include "aq/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace aq::homotopy {

namespace {

QuadricModel xphi_model(const QuadraticForm& phi)
{
    QuadricModel m;
    m.kind = QuadricModel::Kind::Xphi;
    m.form = phi.coeffs();
    return m;
}

void require_chain_phi(const QuadraticForm& phi)
{
    if (phi.dim() < 2)
        throw std::domain_error("chain construction needs dim(phi) >= 2");
    if (phi[0] != 1)
        throw std::domain_error("chain construction needs phi with leading entry 1");
}

/// phi(1, a_2 t, ..., a_{n-1} t) as a polynomial for the scaled arguments.
QPoly phi_of_scaled_line(const QuadraticForm& phi, const std::vector<Rational>& slopes)
{
    QPoly t2 = QPoly::t() * QPoly::t();
    QPoly s(phi[0]);
    for (std::size_t i = 0; i + 1 < phi.dim(); ++i)
        s = s + QPoly(phi[i + 1] * slopes[i] * slopes[i]) * t2;
    return s;
}

}  // namespace

RepresentationWitness make_witness(const QuadraticForm& phi, const Rational& c,
                                   const Rational& d, std::vector<Rational> z)
{
    require_chain_phi(phi);
    if (c == 0) throw std::domain_error("make_witness: c must be nonzero");
    if (z.size() + 1 != phi.dim()) throw std::domain_error("make_witness: wrong z length");
    RepresentationWitness w;
    w.c = c;
    w.d = d;
    w.z = std::move(z);
    std::vector<Rational> arg{d};
    arg.insert(arg.end(), w.z.begin(), w.z.end());
    w.lambda = phi(arg);
    if (w.lambda == 0) throw std::domain_error("make_witness: lambda = phi(d, z) vanishes");
    return w;
}

RepresentationWitness normalize_d_nonzero(const QuadraticForm& phi,
                                          const RepresentationWitness& w)
{
    require_chain_phi(phi);
    if (w.d != 0) return w;
    std::size_t idx = 0;
    while (idx < w.z.size() && w.z[idx] == 0) ++idx;
    if (idx == w.z.size())
        throw std::domain_error("normalize_d_nonzero: d = 0 with z = 0 (lambda would vanish)");
    Rational b = phi[idx + 1];
    if (b == -1)
        throw std::domain_error("normalize_d_nonzero: coefficient -1 (phi would be isotropic)");
    Rational y = w.z[idx];
    RepresentationWitness out = w;
    out.d = 2 * b * y / (1 + b);
    out.z[idx] = (1 - b) * y / (1 + b);
    // identity: b y^2 = d1^2 + b z^2
    if (out.d * out.d + b * out.z[idx] * out.z[idx] != b * y * y)
        throw std::logic_error("normalize_d_nonzero: identity failed (bug)");
    std::vector<Rational> arg{out.d};
    arg.insert(arg.end(), out.z.begin(), out.z.end());
    if (phi(arg) != w.lambda) throw std::logic_error("normalize_d_nonzero: lambda changed (bug)");
    return out;
}

MarkedMap step1_homotopy(const QuadraticForm& phi, const RepresentationWitness& w)
{
    require_chain_phi(phi);
    if (w.d == 0) throw std::domain_error("step1_homotopy: d must be nonzero");
    const std::size_t n = phi.dim() + 1;
    Rational cd2 = w.c * w.d * w.d;
    std::vector<Rational> slopes(phi.dim() - 1);
    for (std::size_t i = 0; i + 1 < phi.dim(); ++i) slopes[i] = w.z[i] / w.d;
    std::vector<QPoly> comps(n);
    comps[0] = QPoly(cd2) * phi_of_scaled_line(phi, slopes);
    comps[1] = QPoly(Rational(1) / cd2);
    for (std::size_t i = 2; i < n; ++i) comps[i] = QPoly(slopes[i - 2]) * QPoly::t();
    MarkedMap m{PolynomialMap(xphi_model(phi), std::move(comps)), Rational(0), Rational(1)};
    if (m.map.comps[0](Rational(0)) != cd2 || m.map.comps[0](Rational(1)) != w.c * w.lambda)
        throw std::logic_error("step1_homotopy: endpoint check failed (bug)");
    return m;
}

Step2Pair step2_pair(const QuadraticForm& phi, const Rational& c, const Rational& d1)
{
    require_chain_phi(phi);
    if (c == 0 || d1 == 0) throw std::domain_error("step2_pair: c and d1 must be nonzero");
    const Rational b1 = phi[1];
    const std::size_t n = phi.dim() + 1;
    std::vector<Rational> line(phi.dim() - 1, Rational(0));
    line[0] = 1;  // phi(1, t, 0, ..., 0)
    QPoly base = phi_of_scaled_line(phi, line);

    std::vector<QPoly> fc(n), gc(n);
    Rational cd2 = c * d1 * d1;
    fc[0] = QPoly(cd2) * base;
    fc[1] = QPoly(Rational(1) / cd2);
    fc[2] = QPoly::t();
    gc[0] = QPoly(c) * base;
    gc[1] = QPoly(Rational(1) / c);
    gc[2] = QPoly::t();

    Step2Pair out{PolynomialMap(xphi_model(phi), std::move(fc)),
                  PolynomialMap(xphi_model(phi), std::move(gc)), 0, 0};
    // d1 a - b = (1 - d1^2)/b1 and d1 a + b = 1
    Rational rhs = (1 - d1 * d1) / b1;
    out.a = (rhs + 1) / (2 * d1);
    out.b = (1 - rhs) / 2;
    if (out.f.comps[0](out.a) != out.g.comps[0](out.b))
        throw std::logic_error("step2_pair: junction equation failed (bug)");
    return out;
}

PolynomialMap fiber_bridge(const QuadraticForm& phi, const std::vector<Rational>& from,
                           const std::vector<Rational>& to)
{
    require_chain_phi(phi);
    const std::size_t n = phi.dim() + 1;
    if (from.size() != n || to.size() != n)
        throw std::domain_error("fiber_bridge: wrong point length");
    if (from[0] != to[0] || from[0] == 0)
        throw std::domain_error("fiber_bridge: endpoints must share a nonzero fiber value");
    Rational v = from[0];
    std::vector<QPoly> comps(n);
    comps[0] = QPoly(v);
    QPoly one_minus_t = QPoly(Rational(1)) - QPoly::t();
    for (std::size_t i = 2; i < n; ++i)
        comps[i] = one_minus_t * QPoly(from[i]) + QPoly::t() * QPoly(to[i]);
    QPoly s(phi[0]);
    for (std::size_t i = 2; i < n; ++i)
        s = s + QPoly(phi[i - 1]) * comps[i] * comps[i];
    comps[1] = s / v;
    PolynomialMap map(xphi_model(phi), std::move(comps));
    if (map.at(Rational(0)) != from || map.at(Rational(1)) != to)
        throw std::logic_error("fiber_bridge: endpoint check failed (bug)");
    return map;
}

namespace {

std::vector<Rational> canonical_fiber_point(const QuadraticForm& phi, const Rational& v)
{
    std::vector<Rational> p(phi.dim() + 1, Rational(0));
    p[0] = v;
    p[1] = phi[0] / v;  // phi(1, 0, ..., 0)/v
    return p;
}

}  // namespace

HomotopyChain build_chain(const QuadraticForm& phi, const Rational& c, const Rational& lambda,
                          const std::vector<RepresentationWitness>& factors)
{
    require_chain_phi(phi);
    if (c == 0 || lambda == 0) throw std::domain_error("build_chain: c, lambda must be nonzero");
    HomotopyChain chain;
    chain.model = xphi_model(phi);
    chain.declared_c = c;
    chain.declared_lambda = lambda;

    Rational product = c;
    for (const auto& w : factors) {
        std::vector<Rational> arg{w.d};
        arg.insert(arg.end(), w.z.begin(), w.z.end());
        if (phi(arg) != w.lambda || w.lambda == 0)
            throw std::domain_error("build_chain: factor witness fails represents() check");
        product *= w.lambda;
    }
    Rational ratio = lambda / product;
    if (!is_square(ratio))
        throw std::domain_error("build_chain: lambda != c * prod(lambda_i) modulo squares");
    chain.square_scale = sqrt_exact(ratio);

    chain.start_point = canonical_fiber_point(phi, c);
    if (factors.empty()) {
        chain.end_point = chain.start_point;
        return chain;
    }

    auto push_map = [&](PolynomialMap map, const Rational& t_in, const Rational& t_out,
                        std::vector<Rational>* cursor) {
        // junction against the previous map's exit
        if (!chain.maps.empty()) {
            chain.junctions.emplace_back(chain.end_param, t_in);
        } else {
            chain.start_param = t_in;
        }
        chain.end_param = t_out;
        *cursor = map.at(t_out);
        chain.maps.push_back(std::move(map));
    };

    Rational cur = c;
    std::vector<Rational> cursor = chain.start_point;
    for (const auto& raw : factors) {
        RepresentationWitness w = raw;
        w.c = cur;
        if (w.d == 0) w = normalize_d_nonzero(phi, w);

        Step2Pair pair = step2_pair(phi, cur, w.d);
        MarkedMap s1 = step1_homotopy(phi, w);

        // g: from the canonical point over cur (t=0) to the junction (t=b)
        std::vector<Rational> gstart = pair.g.at(Rational(0));
        if (gstart != cursor) {
            PolynomialMap bridge = fiber_bridge(phi, cursor, gstart);
            push_map(std::move(bridge), Rational(0), Rational(1), &cursor);
        }
        push_map(pair.g, Rational(0), pair.b, &cursor);
        // bridge from g(b) to f(a) inside the fiber over the junction value
        std::vector<Rational> fa = pair.f.at(pair.a);
        if (fa != cursor) {
            PolynomialMap bridge = fiber_bridge(phi, cursor, fa);
            push_map(std::move(bridge), Rational(0), Rational(1), &cursor);
        }
        // f: from the junction (t=a) back to the fiber over cur*d^2 (t=0)
        push_map(pair.f, pair.a, Rational(0), &cursor);
        // STEP 1: from cur*d^2 (t=0) to cur*lambda_i (t=1); f(0) = s1(0) exactly
        push_map(s1.map, s1.t0, s1.t1, &cursor);

        cur *= w.lambda;
    }
    // land on the canonical point of the final fiber
    std::vector<Rational> target = canonical_fiber_point(phi, cur);
    if (cursor != target) {
        PolynomialMap bridge = fiber_bridge(phi, cursor, target);
        push_map(std::move(bridge), Rational(0), Rational(1), &cursor);
    }
    chain.end_point = cursor;
    return chain;
}

ChainCheck verify_chain(const HomotopyChain& chain)
{
    ChainCheck check;
    if (chain.maps.empty()) {
        if (chain.start_point != chain.end_point) {
            check.locus = "empty chain with distinct endpoints";
            return check;
        }
        check.ok = true;
        return check;
    }
    for (std::size_t i = 0; i < chain.maps.size(); ++i) {
        if (!PolynomialMap::identity_holds(chain.maps[i].model, chain.maps[i].comps)) {
            check.locus = "map " + std::to_string(i) + " violates the model identity";
            return check;
        }
    }
    if (chain.junctions.size() + 1 != chain.maps.size()) {
        check.locus = "junction count mismatch";
        return check;
    }
    for (std::size_t i = 0; i + 1 < chain.maps.size(); ++i) {
        auto left = chain.maps[i].at(chain.junctions[i].first);
        auto right = chain.maps[i + 1].at(chain.junctions[i].second);
        if (left != right) {
            check.locus = "junction " + std::to_string(i) + " does not match";
            return check;
        }
    }
    if (chain.maps.front().at(chain.start_param) != chain.start_point) {
        check.locus = "first endpoint mismatch";
        return check;
    }
    if (chain.maps.back().at(chain.end_param) != chain.end_point) {
        check.locus = "last endpoint mismatch";
        return check;
    }
    check.ok = true;
    return check;
}

// ---------------------------------------------------------------------------
// conic search
// ---------------------------------------------------------------------------

namespace {

/// Height-ordered integer direction vectors: content 1, first nonzero > 0.
class DirectionEnumerator {
  public:
    explicit DirectionEnumerator(std::size_t n) : n_(n), h_(0) {}

    std::optional<std::vector<Int>> next()
    {
        while (true) {
            if (queue_.empty()) {
                ++h_;
                if (h_ > 64) return std::nullopt;  // practically unreachable
                fill_level();
                if (queue_.empty()) continue;
            }
            auto v = queue_.back();
            queue_.pop_back();
            return v;
        }
    }

  private:
    std::size_t n_;
    long h_;
    std::vector<std::vector<Int>> queue_;

    void fill_level()
    {
        std::vector<long> x(n_, 0);
        std::vector<std::vector<Int>> out;
        std::function<void(std::size_t, bool)> rec = [&](std::size_t idx, bool attained) {
            if (idx == n_) {
                if (!attained) return;
                // content 1, first nonzero positive
                long g = 0;
                for (long v : x) g = std::gcd(g, std::abs(v));
                if (g != 1) return;
                for (long v : x) {
                    if (v == 0) continue;
                    if (v < 0) return;
                    break;
                }
                std::vector<Int> vec(n_);
                for (std::size_t i = 0; i < n_; ++i) vec[i] = x[i];
                out.push_back(std::move(vec));
                return;
            }
            for (long k = 0; k <= 2 * h_; ++k) {
                long val = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
                x[idx] = val;
                rec(idx + 1, attained || val == h_ || val == -h_);
            }
        };
        rec(0, false);
        std::reverse(out.begin(), out.end());
        queue_ = std::move(out);
    }
};

}  // namespace

ConicSearchResult conic_good_curve_search(const QuadraticForm& psi,
                                          const std::vector<Rational>& p,
                                          const std::vector<Rational>& q, long budget)
{
    ConicSearchResult res;
    const std::size_t n = psi.dim();
    if (p.size() != n || q.size() != n)
        throw std::domain_error("conic_good_curve_search: point length mismatch");
    if (psi(p) != 1 || psi(q) != 1)
        throw std::domain_error("conic_good_curve_search: points not on Q^psi");
    if (p == q) throw std::domain_error("conic_good_curve_search: P = Q");
    if (forms::is_isotropic(psi))
        throw std::domain_error("conic_good_curve_search: psi must be anisotropic");

    // standardize so psi = <1> | (-phi) with P at e_1 (goodness is defined in
    // that presentation)
    auto std_data = quadrics::standardize_with_point(psi, p);
    const QuadraticForm& psi_std = std_data.std_form;
    std::vector<Rational> p_std(n, Rational(0));
    p_std[0] = 1;
    std::vector<Rational> q_std = std_data.u_inv * q;

    std::vector<Rational> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = q_std[i] - p_std[i];

    DirectionEnumerator dirs(n);
    while (res.planes_tried < budget) {
        auto wi = dirs.next();
        if (!wi) break;
        std::vector<Rational> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = (*wi)[i];
        // skip directions parallel to u
        {
            std::optional<Rational> ratio;
            bool parallel = true;
            for (std::size_t i = 0; i < n && parallel; ++i) {
                if (u[i] == 0 && w[i] == 0) continue;
                if (u[i] == 0 || w[i] == 0) parallel = false;
                else if (!ratio) ratio = w[i] / u[i];
                else if (*ratio != w[i] / u[i]) parallel = false;
            }
            if (parallel) continue;
        }
        Rational lr = 2 * psi_std.bilinear(p_std, w);
        if (lr == 0) continue;  // P must sit at a finite parameter
        ++res.planes_tried;

        Rational ls = 2 * psi_std.bilinear(p_std, u);
        Rational qa = psi_std(u);          // = -ls
        Rational qh = psi_std.bilinear(u, w);
        Rational qb = psi_std(w);

        // t(m) = -(ls + lr m) / (qa + 2 qh m + qb m^2); x(m) = P + t*u + m*t*w
        QPoly m = QPoly::t();
        QPoly numer = -(QPoly(ls) + QPoly(lr) * m);
        QPoly denom = QPoly(qa) + QPoly(2 * qh) * m + QPoly(qb) * m * m;
        if (denom.is_zero()) continue;
        RationalFunction t(numer, denom);
        std::vector<RationalFunction> comps(n);
        for (std::size_t i = 0; i < n; ++i) {
            RationalFunction mi = RationalFunction(QPoly(w[i]) * m, QPoly(Rational(1)));
            comps[i] = RationalFunction(Rational(p_std[i])) + t * RationalFunction(Rational(u[i])) +
                       t * mi;
        }
        Rational param_q = 0;
        Rational param_p = -ls / lr;
        std::optional<qvt::RationalCurveOnQuadric> curve;
        try {
            QuadricModel model;
            model.kind = QuadricModel::Kind::Qpsi;
            model.form = psi_std.coeffs();
            curve.emplace(model, comps);
        } catch (const std::domain_error&) {
            continue;  // degenerate section
        }
        auto at_p = curve->at(param_p);
        auto at_q = curve->at(param_q);
        if (!at_p || !at_q || *at_p != p_std || *at_q != q_std) continue;
        if (curve->is_constant()) continue;

        qvt::QvtVerdict good;
        try {
            good = qvt::is_good_curve(*curve);
        } catch (const std::runtime_error&) {
            continue;  // factorization budget; try another plane
        }
        if (good.outcome != qvt::QvtVerdict::Outcome::InGroupUpToConstant) continue;

        // transport back to the original coordinates
        std::vector<RationalFunction> orig(n);
        for (std::size_t i = 0; i < n; ++i) {
            RationalFunction s;
            for (std::size_t j = 0; j < n; ++j)
                s = s + RationalFunction(std_data.u(i, j)) * comps[j];
            orig[i] = s;
        }
        QuadricModel model_orig;
        model_orig.kind = QuadricModel::Kind::Qpsi;
        model_orig.form = psi.coeffs();
        res.curve.emplace(model_orig, orig);
        res.found = true;
        res.param_p = param_p;
        res.param_q = param_q;
        res.goodness = good;
        res.note = "good conic section in the standardized presentation " + psi_std.str();
        return res;
    }
    res.note = "no good conic section within budget (" + std::to_string(res.planes_tried) +
               " planes tried)";
    return res;
}

}  // namespace aq::homotopy
