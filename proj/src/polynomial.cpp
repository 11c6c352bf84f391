#include "aq/polynomial.hpp"

#include "aq/arith.hpp"

#include <algorithm>
#include <map>

namespace aq {

// ---------------------------------------------------------------------------
// integer polynomial helpers (local to factorization)
// ---------------------------------------------------------------------------

namespace {

using IPoly = std::vector<Int>;  // ascending, trimmed

void itrim(IPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long ideg(const IPoly& a) { return static_cast<long>(a.size()) - 1; }

IPoly iadd(const IPoly& a, const IPoly& b)
{
    IPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = (i < a.size() ? a[i] : Int(0)) + (i < b.size() ? b[i] : Int(0));
    itrim(r);
    return r;
}

IPoly isub(const IPoly& a, const IPoly& b)
{
    IPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = (i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0));
    itrim(r);
    return r;
}

IPoly imul(const IPoly& a, const IPoly& b)
{
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    itrim(r);
    return r;
}

/// Exact division by a monic polynomial; nullopt if not divisible over Z.
std::optional<IPoly> idiv_monic_exact(IPoly a, const IPoly& b)
{
    if (b.empty() || b.back() != 1) throw std::logic_error("idiv_monic_exact: divisor not monic");
    IPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Int(0));
    while (ideg(a) >= ideg(b)) {
        Int f = a.back();
        std::size_t shift = static_cast<std::size_t>(ideg(a) - ideg(b));
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        itrim(a);
    }
    if (!a.empty()) return std::nullopt;
    itrim(q);
    return q;
}

Int max_abs_coeff(const IPoly& a)
{
    Int m = 0;
    for (auto& c : a) m = std::max(m, abs_int(c));
    return m;
}

Int mod_sym(Int x, const Int& M)
{
    x %= M;
    if (x < 0) x += M;
    if (2 * x > M) x -= M;
    return x;
}

IPoly reduce_sym(IPoly a, const Int& M)
{
    for (auto& c : a) c = mod_sym(c, M);
    itrim(a);
    return a;
}

IPoly reduce_mod(IPoly a, const Int& M)
{
    for (auto& c : a) {
        c %= M;
        if (c < 0) c += M;
    }
    itrim(a);
    return a;
}

Int inv_mod(const Int& x, const Int& M)
{
    Int a = ((x % M) + M) % M, b = M, u = 1, v = 0;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = u - q * v;
        u = v;
        v = t;
    }
    if (a != 1) throw std::logic_error("inv_mod: not invertible");
    return ((u % M) + M) % M;
}

/// Division with remainder mod M; the divisor's lc must be invertible mod M.
std::pair<IPoly, IPoly> idivmod_mod(IPoly a, const IPoly& b, const Int& M)
{
    if (b.empty()) throw std::logic_error("idivmod_mod: zero divisor");
    Int lcinv = inv_mod(b.back(), M);
    IPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Int(0));
    a = reduce_mod(std::move(a), M);
    while (ideg(a) >= ideg(b)) {
        Int f = (a.back() * lcinv) % M;
        std::size_t shift = static_cast<std::size_t>(ideg(a) - ideg(b));
        q[shift] = (q[shift] + f) % M;
        for (std::size_t i = 0; i < b.size(); ++i) {
            Int& t = a[shift + i];
            t = ((t - f * b[i]) % M + M) % M;
        }
        itrim(a);
    }
    itrim(q);
    return {q, a};
}

// ---------------------------------------------------------------------------
// arithmetic over F_p (small p)
// ---------------------------------------------------------------------------

using FPoly = std::vector<long>;  // ascending mod p

void ftrim(FPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long fdeg(const FPoly& a) { return static_cast<long>(a.size()) - 1; }

FPoly fmul(const FPoly& a, const FPoly& b, long p)
{
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    ftrim(r);
    return r;
}

FPoly fsub(const FPoly& a, const FPoly& b, long p)
{
    FPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        long x = i < a.size() ? a[i] : 0;
        long y = i < b.size() ? b[i] : 0;
        r[i] = ((x - y) % p + p) % p;
    }
    ftrim(r);
    return r;
}

long f_inv(long x, long p)
{
    long a = ((x % p) + p) % p, b = p, u = 1, v = 0;
    while (b) {
        long q = a / b;
        long t = a - q * b;
        a = b;
        b = t;
        t = u - q * v;
        u = v;
        v = t;
    }
    return ((u % p) + p) % p;
}

std::pair<FPoly, FPoly> fdivmod(FPoly a, const FPoly& b, long p)
{
    long lcinv = f_inv(b.back(), p);
    FPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    while (fdeg(a) >= fdeg(b)) {
        long f = a.back() * lcinv % p;
        std::size_t shift = static_cast<std::size_t>(fdeg(a) - fdeg(b));
        q[shift] = (q[shift] + f) % p;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = ((a[shift + i] - f * b[i]) % p + p) % p;
        ftrim(a);
    }
    ftrim(q);
    return {q, a};
}

FPoly fgcd(FPoly a, FPoly b, long p)
{
    while (!b.empty()) {
        auto [q, r] = fdivmod(a, b, p);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        long inv = f_inv(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

FPoly fderiv(const FPoly& a, long p)
{
    if (a.size() <= 1) return {};
    FPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i % p) % p;
    ftrim(r);
    return r;
}

FPoly fpow_mod(FPoly base, Int e, const FPoly& mod, long p)
{
    FPoly r{1};
    base = fdivmod(base, mod, p).second;
    while (e > 0) {
        if (e % 2 == 1) r = fdivmod(fmul(r, base, p), mod, p).second;
        base = fdivmod(fmul(base, base, p), mod, p).second;
        e /= 2;
    }
    return r;
}

/// Berlekamp factorization of a squarefree monic polynomial mod p.
std::vector<FPoly> berlekamp(const FPoly& f, long p)
{
    long n = fdeg(f);
    if (n <= 1) return {f};
    std::vector<FPoly> rows;
    FPoly xp = fpow_mod(FPoly{0, 1}, Int(p), f, p);
    FPoly cur{1};
    for (long i = 0; i < n; ++i) {
        rows.push_back(cur);
        cur = fdivmod(fmul(cur, xp, p), f, p).second;
    }
    // nullspace of (M - I)^T where row i of M is x^{ip} mod f
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j <= fdeg(rows[i]); ++j) a[j][i] = rows[i][j];
        a[i][i] = ((a[i][i] - 1) % p + p) % p;
    }
    std::vector<long> where(n, -1);
    long row = 0;
    for (long col = 0; col < n && row < n; ++col) {
        long sel = -1;
        for (long i = row; i < n; ++i)
            if (a[i][col]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[sel], a[row]);
        long inv = f_inv(a[row][col], p);
        for (long j = 0; j < n; ++j) a[row][j] = a[row][j] * inv % p;
        for (long i = 0; i < n; ++i)
            if (i != row && a[i][col]) {
                long f2 = a[i][col];
                for (long j = 0; j < n; ++j)
                    a[i][j] = ((a[i][j] - f2 * a[row][j]) % p + p) % p;
            }
        where[col] = row;
        ++row;
    }
    std::vector<FPoly> basis;
    for (long col = 0; col < n; ++col) {
        if (where[col] != -1) continue;
        FPoly v(n, 0);
        v[col] = 1;
        for (long c2 = 0; c2 < n; ++c2)
            if (where[c2] != -1) v[c2] = ((-a[where[c2]][col]) % p + p) % p;
        ftrim(v);
        basis.push_back(v);
    }
    const std::size_t r = basis.size();  // number of irreducible factors
    std::vector<FPoly> factors{f};
    for (const FPoly& h : basis) {
        if (factors.size() >= r) break;
        if (fdeg(h) <= 0) continue;
        std::vector<FPoly> next;
        for (FPoly& g : factors) {
            FPoly rem = g;
            for (long c = 0; c < p && fdeg(rem) > 0; ++c) {
                FPoly shifted = h;
                shifted.resize(std::max<std::size_t>(shifted.size(), 1), 0);
                shifted[0] = ((shifted[0] - c) % p + p) % p;
                ftrim(shifted);
                if (shifted.empty()) continue;
                FPoly d = fgcd(rem, shifted, p);
                if (fdeg(d) > 0 && fdeg(d) < fdeg(rem)) {
                    next.push_back(d);
                    rem = fdivmod(rem, d, p).first;
                }
            }
            if (fdeg(rem) > 0) next.push_back(rem);
        }
        factors = next;
    }
    return factors;
}

// ---------------------------------------------------------------------------
// Hensel lifting (monic factors, quadratic steps)
// ---------------------------------------------------------------------------

/// Lift f = g*h (mod p) with s*g + t*h = 1 (mod p) to modulus >= target.
/// All of f, g, h monic. Returns the working modulus reached.
Int hensel_pair(const IPoly& f, IPoly& g, IPoly& h, IPoly& s, IPoly& t, const Int& p,
                const Int& target)
{
    Int m = p;
    while (m < target) {
        Int m2 = m * m;
        auto mul = [&](const IPoly& x, const IPoly& y) { return reduce_mod(imul(x, y), m2); };
        IPoly e = reduce_mod(isub(f, imul(g, h)), m2);
        auto [q, r] = idivmod_mod(mul(s, e), h, m2);
        g = reduce_mod(iadd(g, iadd(mul(t, e), mul(q, g))), m2);
        h = reduce_mod(iadd(h, r), m2);
        IPoly b = reduce_mod(isub(iadd(mul(s, g), mul(t, h)), IPoly{Int(1)}), m2);
        auto [c, d] = idivmod_mod(mul(s, b), h, m2);
        s = reduce_mod(isub(s, d), m2);
        t = reduce_mod(isub(t, iadd(mul(t, b), mul(c, g))), m2);
        m = m2;
        if (g.empty() || g.back() != 1 || h.empty() || h.back() != 1)
            throw std::logic_error("hensel_pair: lost monicity");
    }
    return m;
}

IPoly from_fpoly(const FPoly& a)
{
    IPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    itrim(r);
    return r;
}

FPoly to_fpoly(const IPoly& a, long p)
{
    FPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = static_cast<long>(((a[i] % p) + p) % p);
    ftrim(r);
    return r;
}

std::pair<IPoly, IPoly> bezout_mod_p(const IPoly& g, const IPoly& h, long p)
{
    FPoly a = to_fpoly(g, p), b = to_fpoly(h, p);
    FPoly sa{1}, sb, ta, tb{1};
    while (!b.empty()) {
        auto [q, r] = fdivmod(a, b, p);
        FPoly s2 = fsub(sa, fmul(q, sb, p), p);
        FPoly t2 = fsub(ta, fmul(q, tb, p), p);
        a = b;
        b = r;
        sa = sb;
        sb = s2;
        ta = tb;
        tb = t2;
    }
    if (fdeg(a) != 0) throw std::logic_error("bezout_mod_p: factors not coprime mod p");
    long inv = f_inv(a[0], p);
    for (auto& c : sa) c = c * inv % p;
    for (auto& c : ta) c = c * inv % p;
    return {from_fpoly(sa), from_fpoly(ta)};
}

/// Lift the full list of pairwise coprime monic mod-p factors of monic f to
/// factors mod >= target, by recursive two-way splits.
std::vector<IPoly> hensel_tree(const IPoly& f, const std::vector<FPoly>& facs, long p,
                               const Int& target)
{
    if (facs.size() == 1) return {f};
    std::size_t half = facs.size() / 2;
    FPoly gp{1}, hp{1};
    for (std::size_t i = 0; i < facs.size(); ++i) {
        if (i < half)
            gp = fmul(gp, facs[i], p);
        else
            hp = fmul(hp, facs[i], p);
    }
    IPoly g = from_fpoly(gp), h = from_fpoly(hp);
    auto [s, t] = bezout_mod_p(g, h, p);
    IPoly fred = f;
    hensel_pair(fred, g, h, s, t, Int(p), target);
    std::vector<FPoly> left(facs.begin(), facs.begin() + half);
    std::vector<FPoly> right(facs.begin() + half, facs.end());
    std::vector<IPoly> out = hensel_tree(g, left, p, target);
    std::vector<IPoly> rightout = hensel_tree(h, right, p, target);
    out.insert(out.end(), rightout.begin(), rightout.end());
    return out;
}

// ---------------------------------------------------------------------------
// Zassenhaus on squarefree monic integer polynomials
// ---------------------------------------------------------------------------

std::vector<IPoly> zassenhaus_monic(const IPoly& f)
{
    const long n = ideg(f);
    if (n <= 1) return {f};
    // choose a prime where f stays squarefree
    static const long primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    long p = 0;
    FPoly fp;
    for (long cand : primes) {
        fp = to_fpoly(f, cand);
        if (fdeg(fp) != n) continue;  // lc divisible (cannot happen: monic)
        if (fdeg(fgcd(fp, fderiv(fp, cand), cand)) == 0) {
            p = cand;
            break;
        }
    }
    if (p == 0) throw std::runtime_error("factor_poly: no suitable prime found");

    std::vector<FPoly> modular = berlekamp(fp, p);
    std::sort(modular.begin(), modular.end());
    if (modular.size() == 1) return {f};

    // Mignotte-style bound for coefficients of monic factors
    Int bound = (Int(n) + 1) * max_abs_coeff(f);
    bound <<= static_cast<unsigned>(n + 1);
    Int target = 2 * bound + 1;
    std::vector<IPoly> lifted = hensel_tree(f, modular, p, target);
    Int modulus = Int(p);
    while (modulus < target) modulus *= modulus;

    // recombination
    std::vector<IPoly> result;
    std::vector<IPoly> pool = lifted;
    IPoly rem = f;
    bool progress = true;
    while (pool.size() > 1 && progress) {
        progress = false;
        std::size_t r = pool.size();
        for (std::size_t size = 1; size <= r / 2 && !progress; ++size) {
            // iterate over subsets of the pool of the given size
            std::vector<std::size_t> idx(size);
            for (std::size_t i = 0; i < size; ++i) idx[i] = i;
            while (true) {
                IPoly candm{Int(1)};
                for (std::size_t i : idx) candm = reduce_mod(imul(candm, pool[i]), modulus);
                IPoly cand = reduce_sym(candm, modulus);
                if (!cand.empty() && cand.back() == 1) {
                    if (auto q = idiv_monic_exact(rem, cand)) {
                        result.push_back(cand);
                        rem = *q;
                        std::vector<IPoly> np;
                        for (std::size_t i = 0; i < pool.size(); ++i)
                            if (std::find(idx.begin(), idx.end(), i) == idx.end())
                                np.push_back(pool[i]);
                        pool = np;
                        progress = true;
                        break;
                    }
                }
                // next combination
                long pos = static_cast<long>(size) - 1;
                while (pos >= 0 && idx[pos] == r - size + pos) --pos;
                if (pos < 0) break;
                ++idx[pos];
                for (std::size_t i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
    }
    if (ideg(rem) > 0) result.push_back(rem);
    return result;
}

QPoly to_qpoly(const IPoly& a)
{
    std::vector<Rational> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = Rational(a[i]);
    return QPoly(v);
}

/// Clear denominators and content: returns primitive integer polynomial with
/// positive leading coefficient equal (up to positive scalar) to the input.
IPoly to_primitive(const QPoly& f)
{
    Int l = 1;
    for (auto& c : f.coeffs()) l = boost::multiprecision::lcm(l, den(c));
    IPoly a(f.coeffs().size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = num(f.coeffs()[i]) * (l / den(f.coeffs()[i]));
    Int g = 0;
    for (auto& c : a) g = boost::multiprecision::gcd(g, c);
    if (g != 0)
        for (auto& c : a) c /= g;
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

/// Irreducible monic rational factors of a squarefree monic rational poly.
std::vector<QPoly> factor_squarefree(const QPoly& h)
{
    IPoly F = to_primitive(h);
    const long n = ideg(F);
    if (n == 1) return {h};
    Int L = F.back();
    IPoly Ft;
    if (L == 1) {
        Ft = F;
    } else {
        // y = L x: Ft(y) = L^{n-1} F(y / L), monic integer
        Ft.resize(F.size());
        Ft[n] = 1;
        Int pw = 1;  // L^{n-1-i}
        for (long i = n - 1; i >= 0; --i) {
            Ft[i] = F[i] * pw;
            pw *= L;
        }
    }
    std::vector<IPoly> facs = zassenhaus_monic(Ft);
    std::vector<QPoly> out;
    for (const IPoly& Gj : facs) {
        QPoly g = to_qpoly(Gj);
        if (L != 1) {
            // map back: g_j(x) = G_j(L x) / L^{deg G_j}
            g = g.scale_var(Rational(L)).monic();
        }
        out.push_back(g.monic());
    }
    return out;
}

bool qpoly_less(const QPoly& a, const QPoly& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
        auto ai = a.coeff(static_cast<std::size_t>(i));
        auto bi = b.coeff(static_cast<std::size_t>(i));
        if (ai != bi) return ai < bi;
    }
    return false;
}

}  // namespace

PolyFactorization factor_poly(const QPoly& f, long degree_budget)
{
    if (f.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
    if (f.degree() > degree_budget)
        throw std::runtime_error("factor_poly: degree " + std::to_string(f.degree()) +
                                 " exceeds budget " + std::to_string(degree_budget));
    PolyFactorization out;
    out.unit = f.lc();
    QPoly g = f.monic();
    if (g.is_constant()) return out;

    // Yun's squarefree decomposition
    std::vector<std::pair<QPoly, unsigned>> squarefree;
    QPoly gp = g.derivative();
    QPoly a0 = gcd_monic(g, gp);
    QPoly b = divmod(g, a0).first;
    QPoly c = divmod(gp, a0).first;
    QPoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        QPoly P = gcd_monic(b, d);
        if (P.degree() > 0) squarefree.emplace_back(P, i);
        b = divmod(b, P).first;
        c = divmod(d, P).first;
        d = c - b.derivative();
        ++i;
    }

    std::map<std::vector<Rational>, unsigned> acc;
    for (auto& [h, mult] : squarefree)
        for (const QPoly& irr : factor_squarefree(h)) {
            // exactness guard
            if (!divmod(g, irr).second.is_zero())
                throw std::logic_error("factor_poly: non-divisor factor (bug)");
            acc[irr.coeffs()] += mult;
        }
    for (auto& [coeffs, mult] : acc) out.factors.emplace_back(QPoly(coeffs), mult);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& x, const auto& y) { return qpoly_less(x.first, y.first); });

    // final exactness: unit * prod factors^mult == f
    QPoly check(out.unit);
    for (auto& [fac, mult] : out.factors)
        for (unsigned k = 0; k < mult; ++k) check = check * fac;
    if (check != f) throw std::logic_error("factor_poly: product check failed (bug)");
    return out;
}

// ---------------------------------------------------------------------------
// RationalFunction
// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(QPoly numerator, QPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator))
{
    if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    if (num_.is_zero()) {
        den_ = QPoly(Rational(1));
        return;
    }
    QPoly g = gcd_monic(num_, den_);
    if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    Rational l = den_.lc();
    num_ = num_ / l;
    den_ = den_ / l;
}

const RationalFunction::Factorization& RationalFunction::factorization(long degree_budget) const
{
    if (!fact_) {
        if (num_.is_zero()) throw std::domain_error("RationalFunction: factorization of 0");
        Factorization f;
        auto fn = factor_poly(num_, degree_budget);
        auto fd = factor_poly(den_, degree_budget);
        f.unit = fn.unit / fd.unit;
        for (auto& [p, e] : fn.factors) f.factors.emplace_back(p, static_cast<long>(e));
        for (auto& [p, e] : fd.factors) f.factors.emplace_back(p, -static_cast<long>(e));
        std::sort(f.factors.begin(), f.factors.end(),
                  [](const auto& x, const auto& y) { return qpoly_less(x.first, y.first); });
        fact_ = std::move(f);
    }
    return *fact_;
}

std::string RationalFunction::str(const std::string& var) const
{
    if (den_ == QPoly(Rational(1))) return num_.str(var);
    std::string n = num_.str(var);
    std::string d = den_.str(var);
    return "(" + n + ")/(" + d + ")";
}

}  // namespace aq
