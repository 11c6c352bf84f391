#include "aq/connect.hpp"

#include "aq/numfield.hpp"
#include "aq/quadrics.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace aq::connect {

using arith::Place;

namespace {

std::pair<std::size_t, std::size_t> signature(const QuadraticForm& f)
{
    std::size_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < f.dim(); ++i) (f[i] > 0 ? pos : neg) += 1;
    return {pos, neg};
}

/// dim = 2^n + l with 1 <= l <= 2^n; returns l.
std::size_t hoffmann_l(std::size_t dim)
{
    std::size_t p = 1;
    while (2 * p < dim) p *= 2;
    return dim - p;
}

bool uniform_square_class(const QuadraticForm& f)
{
    auto first = arith::square_class(f[0]);
    for (std::size_t i = 1; i < f.dim(); ++i)
        if (!(arith::square_class(f[i]) == first)) return false;
    return true;
}

}  // namespace

WittIndexReport witt_report(const QuadraticForm& psi, const ConnectOptions& opts)
{
    if (psi.dim() < 2) throw std::domain_error("witt_report: dimension >= 2 required");
    WittIndexReport rep;
    if (opts.quadratically_closed) {
        rep.i0 = psi.dim() / 2;
        rep.provenance = "quadratically closed base: i0 = floor(dim/2)";
        return rep;
    }
    rep.i0 = forms::witt_decompose(psi).witt_index;
    if (rep.i0 > 0) return rep;

    const std::size_t dim = psi.dim();
    const std::size_t l = hoffmann_l(dim);
    if (l == 1) {
        rep.i1_kind = WittIndexReport::I1::Exact;
        rep.i1_lo = rep.i1_hi = 1;
        rep.provenance = "dim = 2^n + 1: i1 = 1 (Hoffmann bound attained below)";
        return rep;
    }
    if (dim == 4) {
        bool square_disc = arith::square_class(psi.discriminant()) == arith::SquareClass{1, 1};
        rep.i1_kind = WittIndexReport::I1::Exact;
        rep.i1_lo = rep.i1_hi = square_disc ? 2 : 1;
        rep.provenance = square_disc
                             ? "dim 4, square discriminant: similar to a 2-fold Pfister form, "
                               "i1 = 2 (imported classical criterion)"
                             : "dim 4, non-square discriminant: i1 = 1 (imported classical "
                               "criterion)";
        return rep;
    }
    if (uniform_square_class(psi)) {
        rep.i1_kind = WittIndexReport::I1::Exact;
        rep.i1_lo = rep.i1_hi = l;
        rep.provenance = "similar to a neighbor of the all-ones Pfister form: i1 = dim - 2^n";
        return rep;
    }
    rep.i1_kind = WittIndexReport::I1::Interval;
    rep.i1_lo = 1;
    rep.i1_hi = l;
    rep.provenance = "Hoffmann bound: 1 <= i1 <= dim - 2^n";
    return rep;
}

// ---------------------------------------------------------------------------
// local form data from invariants (for completions where psi has no rational
// Witt splitting)
// ---------------------------------------------------------------------------

namespace {

struct LocalFormData {
    std::size_t rank = 0;
    Rational disc = 1;
    int hasse = 1;
};

LocalFormData local_data_of(const QuadraticForm& f, const Place& v)
{
    return {f.dim(), f.discriminant(), forms::hasse_invariant(f, v)};
}

LocalFormData extend(const LocalFormData& d, const Rational& e, const Place& v)
{
    // q | <e>: disc multiplies, hasse picks up (disc, e)_v
    return {d.rank + 1, d.disc * e, d.hasse * arith::hilbert_symbol(d.disc, e, v)};
}

bool isotropic_local(const LocalFormData& d, const Place& v)
{
    if (v.is_real()) throw std::logic_error("isotropic_local: finite places only");
    if (d.rank <= 1) return false;
    if (d.rank == 2) return arith::is_square_at(-d.disc, v);
    if (d.rank == 3) return d.hasse == arith::hilbert_symbol(-1, -d.disc, v);
    if (d.rank == 4)
        return !arith::is_square_at(d.disc, v) ||
               d.hasse == arith::hilbert_symbol(-1, -1, v);
    return true;
}

/// phi-data from psi-data over the completion at v, using psi ~ <1> | (-phi)
/// (valid whenever psi is isotropic over that completion).
LocalFormData phi_data_from_psi(const QuadraticForm& psi, const Place& v)
{
    LocalFormData psi_d = local_data_of(psi, v);
    std::size_t m = psi.dim() - 1;  // rank of rho and of phi
    // rho: psi ~ <1> | rho, so disc(rho) = disc(psi), hasse(rho) = hasse(psi)
    // (hasse(<1> | q) = hasse(q) * (1, disc q) = hasse(q))
    Rational disc_rho = psi_d.disc;
    int hasse_rho = psi_d.hasse;
    // phi = -rho
    Rational disc_phi = (m % 2 == 0) ? disc_rho : -disc_rho;
    long c2 = static_cast<long>(m) * (static_cast<long>(m) - 1) / 2;
    int hasse_phi = hasse_rho;
    if (c2 % 2 != 0) hasse_phi *= arith::hilbert_symbol(-1, -1, v);
    if ((m - 1) % 2 != 0) hasse_phi *= arith::hilbert_symbol(-1, disc_rho, v);
    return {m, disc_phi, hasse_phi};
}

/// Quotient structure of the local square classes modulo a subgroup (indices
/// carry the XOR group law).
struct LocalQuotient {
    Place place{Place::real()};
    forms::LocalValueGroup group;
    std::vector<int> basis;  // class indices spanning a complement

    std::vector<int> coords_of(int idx) const
    {
        // brute force over subsets (group order <= 8)
        for (unsigned mask = 0; mask < (1u << basis.size()); ++mask) {
            int acc = idx;
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (mask & (1u << i)) acc ^= basis[i];
            if (group.contains(acc)) {
                std::vector<int> bits(basis.size());
                for (std::size_t i = 0; i < basis.size(); ++i)
                    bits[i] = (mask >> i) & 1;
                return bits;
            }
        }
        throw std::logic_error("LocalQuotient: class not reachable (bug)");
    }
};

LocalQuotient make_quotient(const Place& v, forms::LocalValueGroup group)
{
    LocalQuotient q;
    q.place = v;
    q.group = std::move(group);
    arith::LocalSquareClasses cls(v);
    std::set<int> span(q.group.members.begin(), q.group.members.end());
    for (int idx = 0; idx < cls.count(); ++idx) {
        if (span.count(idx)) continue;
        q.basis.push_back(idx);
        std::set<int> bigger;
        for (int s : span) {
            bigger.insert(s);
            bigger.insert(s ^ idx);
        }
        span = bigger;
    }
    return q;
}

}  // namespace

Pi0Description pi0_isotropic(const QuadraticForm& psi, const FieldSel& field,
                             const ConnectOptions& opts)
{
    (void)opts;
    Pi0Description out;
    out.field = field;
    const std::size_t n = psi.dim();
    if (n < 3) throw std::domain_error("pi0_isotropic: psi must have >= 3 variables");

    if (field.kind == FieldSel::Kind::Q) {
        if (!forms::is_isotropic(psi))
            throw std::domain_error("pi0_isotropic: psi is anisotropic over Q");
        auto iso = quadrics::to_Xphi_model(psi);
        QuadraticForm phi{iso.dst.form};
        out.phi = phi;
        bool phi_iso = forms::is_isotropic(phi);
        out.triviality =
            phi_iso ? Pi0Description::Triviality::Trivial : Pi0Description::Triviality::NonTrivial;
        std::vector<LocalQuotient> quots;
        for (const Place& v : forms::bad_places(phi)) {
            auto lvg = forms::local_value_group(phi, v);
            out.local_data.push_back({v, lvg});
            quots.push_back(make_quotient(v, lvg));
        }
        if (phi.dim() == 2) {
            out.rank_kind = Pi0Description::RankKind::InfiniteOrUnknown;
            Rational m = -phi[0] * phi[1];
            out.note = "dim(phi) = 2: <D(phi)> is the group generated by " + to_string(phi[0]) +
                       " and the norms of Q(sqrt(" +
                       to_string(arith::square_class(m).representative()) +
                       ")); the quotient has one Z/2 per inert obstruction and is typically "
                       "infinite";
            return out;
        }
        // rank of the product of the local quotients (local description; the
        // global group <D(phi)> may be smaller, see the membership oracle)
        std::size_t total = 0;
        for (auto& q : quots) total += q.basis.size();
        out.rank_kind = Pi0Description::RankKind::Finite;
        out.rank = total;
        if (total > 0) {
            // find squarefree rationals with independent images
            std::vector<std::vector<int>> rows;
            std::vector<Int> pool;
            for (auto& q : quots)
                if (!q.place.is_real()) pool.push_back(q.place.p);
            for (Int extra : {Int(2), Int(3), Int(5), Int(7), Int(11), Int(13), Int(17), Int(19),
                              Int(23), Int(29)})
                if (std::find(pool.begin(), pool.end(), extra) == pool.end())
                    pool.push_back(extra);
            auto image = [&](const Rational& d) {
                std::vector<int> bits;
                for (auto& q : quots) {
                    arith::LocalSquareClasses cls(q.place);
                    auto co = q.coords_of(cls.index_of(d));
                    bits.insert(bits.end(), co.begin(), co.end());
                }
                return bits;
            };
            auto independent = [&](std::vector<int> v) {
                // reduce against chosen rows (GF2)
                for (auto& r : rows) {
                    std::size_t piv = 0;
                    while (piv < r.size() && r[piv] == 0) ++piv;
                    if (piv < v.size() && v[piv]) {
                        for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= r[i];
                    }
                }
                return std::any_of(v.begin(), v.end(), [](int b) { return b != 0; });
            };
            std::vector<Rational> candidates{Rational(-1)};
            for (std::size_t i = 0; i < pool.size(); ++i) {
                candidates.push_back(Rational(pool[i]));
                candidates.push_back(Rational(-pool[i]));
                for (std::size_t j = i + 1; j < pool.size(); ++j) {
                    candidates.push_back(Rational(pool[i] * pool[j]));
                    candidates.push_back(Rational(-pool[i] * pool[j]));
                }
            }
            for (const Rational& d : candidates) {
                if (out.generators.size() == total) break;
                auto img = image(d);
                if (independent(img)) {
                    // store the reduced row for the next independence checks
                    std::vector<int> v = img;
                    for (auto& r : rows) {
                        std::size_t piv = 0;
                        while (piv < r.size() && r[piv] == 0) ++piv;
                        if (piv < v.size() && v[piv])
                            for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= r[i];
                    }
                    rows.push_back(v);
                    out.generators.push_back(d);
                }
            }
            if (out.generators.size() < total)
                out.note = "generator search incomplete; rank from the local description";
        }
        if (!phi_iso && total == 0)
            out.note = "local description is trivial although phi is anisotropic over Q; the "
                       "quotient may still collapse (open local-global question for <D(phi)>)";
        return out;
    }

    if (field.kind == FieldSel::Kind::R) {
        auto [pos, neg] = signature(psi);
        if (pos == 0 || neg == 0)
            throw std::domain_error("pi0_isotropic: psi is anisotropic over R");
        bool phi_iso = pos >= 2;  // sig(phi) = (neg, pos - 1)
        out.triviality =
            phi_iso ? Pi0Description::Triviality::Trivial : Pi0Description::Triviality::NonTrivial;
        forms::LocalValueGroup g;
        g.place = Place::real();
        if (phi_iso) {
            g.full = true;
            g.represented = {0, 1};
            g.members = {0, 1};
            out.rank_kind = Pi0Description::RankKind::Finite;
            out.rank = 0;
        } else {
            g.full = false;
            g.represented = {0};
            g.members = {0};
            out.rank_kind = Pi0Description::RankKind::Finite;
            out.rank = 1;
            out.generators = {Rational(-1)};
            out.note = "phi is positive definite over R: the quotient is {+-1}";
        }
        out.local_data.push_back({Place::real(), g});
        return out;
    }

    // F = Q_p
    Place v = Place::finite(field.p);
    if (!forms::is_isotropic_at(psi, v))
        throw std::domain_error("pi0_isotropic: psi is anisotropic over " + field.str());
    LocalFormData phi_d = phi_data_from_psi(psi, v);
    bool phi_iso = isotropic_local(phi_d, v);
    out.triviality =
        phi_iso ? Pi0Description::Triviality::Trivial : Pi0Description::Triviality::NonTrivial;
    arith::LocalSquareClasses cls(v);
    forms::LocalValueGroup g;
    g.place = v;
    if (phi_iso) {
        g.full = true;
        for (int i = 0; i < cls.count(); ++i) {
            g.represented.push_back(i);
            g.members.push_back(i);
        }
    } else {
        for (int i = 0; i < cls.count(); ++i) {
            LocalFormData ext = extend(phi_d, -cls.representative(i), v);
            if (isotropic_local(ext, v)) g.represented.push_back(i);
        }
        std::set<int> span{0};
        for (int r : g.represented) {
            std::set<int> next = span;
            for (int s : span) next.insert(s ^ r);
            span = next;
        }
        g.members.assign(span.begin(), span.end());
        g.full = static_cast<int>(g.members.size()) == cls.count();
    }
    out.local_data.push_back({v, g});
    auto quot = make_quotient(v, g);
    out.rank_kind = Pi0Description::RankKind::Finite;
    out.rank = quot.basis.size();
    for (int idx : quot.basis) out.generators.push_back(cls.representative(idx));
    if (!phi_iso && quot.basis.empty())
        out.note = "the localized quotient is trivial although phi_F is anisotropic (rank >= 3 "
                   "local forms generate everything); triviality above follows the "
                   "phi-isotropy contract";
    return out;
}

ConnectivityVerdict a1_connected(const QuadraticForm& psi, const ConnectOptions& opts)
{
    const std::size_t n = psi.dim();
    if (n < 3)
        throw std::domain_error("a1_connected: n >= 3 required (use low_dimension_report)");
    ConnectivityVerdict out;
    QuadraticForm kappa = psi.with_appended(Rational(-1));

    if (opts.quadratically_closed) {
        out.i0_kappa = (n + 1) / 2;
        out.i0_psi = n / 2;
        out.verdict = ConnectivityVerdict::Verdict::Connected;
        out.fired_condition = "branch (1): i0(kappa) >= 2 (quadratically closed base)";
        out.evidence = "i0 = floor(dim/2) over a quadratically closed field; dim(kappa) = " +
                       std::to_string(n + 1);
        return out;
    }

    out.i0_kappa = forms::witt_decompose(kappa).witt_index;
    if (out.i0_kappa == 0) {
        out.verdict = ConnectivityVerdict::Verdict::NotConnected;
        out.fired_condition = "i0(kappa) = 0: Q^psi has no rational point";
        out.evidence = "kappa = psi | <-1> is anisotropic; the section sets are empty";
        return out;
    }
    if (out.i0_kappa >= 2) {
        out.verdict = ConnectivityVerdict::Verdict::Connected;
        out.fired_condition = "branch (1): i0(kappa) >= 2";
        out.evidence = "i0(kappa) = " + std::to_string(out.i0_kappa);
        return out;
    }
    // i0(kappa) = 1
    out.i0_psi = forms::witt_decompose(psi).witt_index;
    if (out.i0_psi >= 1) {
        // psi isotropic with anisotropic phi: the function-field obstruction
        auto iso = quadrics::to_Xphi_model(psi);
        QuadraticForm phi{iso.dst.form};
        out.phi = phi;
        auto w = qvt::qvt_decide(phi, RationalFunction::t());
        out.qvt_witness = w;
        if (w.outcome != qvt::QvtVerdict::Outcome::No)
            throw std::logic_error("a1_connected: expected QVT obstruction is missing (bug)");
        out.verdict = ConnectivityVerdict::Verdict::NotConnected;
        out.fired_condition = "i0(kappa) = 1 and i0(psi) = 1";
        out.evidence =
            "t is not in <D(phi_{Q(t)})>: odd point t with anisotropic residue form " + phi.str();
        return out;
    }
    auto i1 = witt_report(psi, opts);
    out.i1_psi = i1;
    if (i1.i1_kind == WittIndexReport::I1::Exact) {
        if (i1.i1_lo >= 2) {
            out.verdict = ConnectivityVerdict::Verdict::Connected;
            out.fired_condition = "branch (2): i0(kappa) = 1, i0(psi) = 0, i1(psi) >= 2";
            out.evidence = "i1(psi) = " + std::to_string(i1.i1_lo) + " (" + i1.provenance + ")";
        } else {
            out.verdict = ConnectivityVerdict::Verdict::NotConnected;
            out.fired_condition = "i0(kappa) = 1, i0(psi) = 0, i1(psi) = 1";
            out.evidence = "i1(psi) = 1 (" + i1.provenance +
                           "); the subform phi stays anisotropic over k(psi) and t obstructs "
                           "over k(psi)(t)";
        }
        return out;
    }
    out.verdict = ConnectivityVerdict::Verdict::Unknown;
    out.fired_condition = "i0(kappa) = 1, i0(psi) = 0, i1(psi) undetermined";
    out.evidence = "i1 in [" + std::to_string(i1.i1_lo) + ", " + std::to_string(i1.i1_hi) + "] (" +
                   i1.provenance + "); branch (2) needs i1 >= 2";
    return out;
}

LowDimReport low_dimension_report(const QuadraticForm& psi, const ConnectOptions& opts)
{
    const std::size_t n = psi.dim();
    if (n > 2) throw std::domain_error("low_dimension_report: n <= 2 only");
    LowDimReport rep;
    rep.n = n;
    if (n == 1) {
        bool sq = opts.quadratically_closed ||
                  arith::square_class(psi[0]) == arith::SquareClass{1, 1};
        rep.classification = sq ? "two rational points" : "Spec Q(sqrt(a)): no rational point";
        rep.details = "pi_0(Q^psi)(K) = S(Q^psi)(K) = Q^psi(K) for every K";
        return rep;
    }
    rep.details = "pi_0(Q^psi)(K) = S(Q^psi)(K) = Q^psi(K) for every K";
    if (opts.quadratically_closed) {
        rep.gm_type = true;
        rep.classification = "isomorphic to G_m x A^0 (quadratically closed base)";
        return rep;
    }
    QuadraticForm kappa = psi.with_appended(Rational(-1));
    bool has_point = forms::is_isotropic(kappa);
    rep.classification = has_point
                             ? "punctured affine line over Q (rational points exist)"
                             : "no rational points over Q; sections appear over extensions";
    return rep;
}

S2Verdict s2_connect_points(const QuadraticForm& psi, const std::vector<Rational>& p,
                            const std::vector<Rational>& q, const ConnectOptions& opts)
{
    S2Verdict out;
    if (psi(p) != 1 || psi(q) != 1)
        throw std::domain_error("s2_connect_points: points not on Q^psi");
    if (forms::is_isotropic(psi))
        throw std::domain_error("s2_connect_points: psi must be anisotropic over Q");
    if (p == q) {
        out.outcome = S2Verdict::Outcome::SameClass;
        out.note = "equal points: empty certificate";
        return out;
    }
    auto direct = homotopy::conic_good_curve_search(psi, p, q, opts.budget);
    if (direct.found) {
        out.outcome = S2Verdict::Outcome::SameClass;
        out.hops.push_back({*direct.curve, direct.param_p, direct.param_q, *direct.goodness});
        out.note = direct.note;
        return out;
    }
    if (opts.budget <= 0) {
        out.note = "budget exhausted";
        return out;
    }
    // one intermediate hop through small rational points of Q^psi
    const std::size_t n = psi.dim();
    std::vector<std::vector<Rational>> intermediates;
    std::vector<long> x(n, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t idx, long h) {
        if (intermediates.size() >= 24) return;
        if (idx == n) {
            std::vector<Rational> v(x.begin(), x.end());
            Rational val = psi(v);
            if (val <= 0 || !is_square(val)) return;
            Rational s = sqrt_exact(val);
            for (auto& c : v) c = c / s;
            if (v != p && v != q &&
                std::find(intermediates.begin(), intermediates.end(), v) == intermediates.end())
                intermediates.push_back(v);
            return;
        }
        for (long k = 0; k <= 2 * h; ++k) {
            long val = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
            x[idx] = val;
            rec(idx + 1, h);
        }
    };
    for (long h = 1; h <= 3 && intermediates.size() < 24; ++h) rec(0, h);
    for (const auto& r : intermediates) {
        auto first = homotopy::conic_good_curve_search(psi, p, r, opts.budget);
        if (!first.found) continue;
        auto second = homotopy::conic_good_curve_search(psi, r, q, opts.budget);
        if (!second.found) continue;
        out.outcome = S2Verdict::Outcome::SameClass;
        out.hops.push_back({*first.curve, first.param_p, first.param_q, *first.goodness});
        out.hops.push_back({*second.curve, second.param_p, second.param_q, *second.goodness});
        out.note = "two-hop chain through " +
                   [&] {
                       std::string s = "(";
                       for (std::size_t i = 0; i < r.size(); ++i)
                           s += (i ? "," : "") + to_string(r[i]);
                       return s + ")";
                   }();
        return out;
    }
    out.note = "no good-curve chain found within budget (the search is a semi-decision; this is "
               "not a distinctness proof)";
    return out;
}

}  // namespace aq::connect
