#include "aq/forms.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace aq::forms {

using arith::Place;

QuadraticForm::QuadraticForm(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    for (const auto& a : c_)
        if (a == 0) throw std::domain_error("QuadraticForm: zero diagonal entry (degenerate)");
}

Rational QuadraticForm::operator()(const std::vector<Rational>& v) const
{
    if (v.size() != c_.size()) throw std::invalid_argument("QuadraticForm: wrong vector length");
    Rational s = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * v[i] * v[i];
    return s;
}

Rational QuadraticForm::bilinear(const std::vector<Rational>& v,
                                 const std::vector<Rational>& w) const
{
    if (v.size() != c_.size() || w.size() != c_.size())
        throw std::invalid_argument("QuadraticForm: wrong vector length");
    Rational s = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * v[i] * w[i];
    return s;
}

Rational QuadraticForm::discriminant() const
{
    Rational d = 1;
    for (const auto& a : c_) d *= a;
    return d;
}

QuadraticForm QuadraticForm::scaled(const Rational& c) const
{
    if (c == 0) throw std::domain_error("QuadraticForm::scaled: zero scalar");
    std::vector<Rational> v = c_;
    for (auto& a : v) a *= c;
    return QuadraticForm(v);
}

QuadraticForm QuadraticForm::negated() const { return scaled(-1); }

QuadraticForm QuadraticForm::concat(const QuadraticForm& o) const
{
    std::vector<Rational> v = c_;
    v.insert(v.end(), o.c_.begin(), o.c_.end());
    return QuadraticForm(v);
}

QuadraticForm QuadraticForm::tail(std::size_t from) const
{
    return QuadraticForm(std::vector<Rational>(c_.begin() + from, c_.end()));
}

QuadraticForm QuadraticForm::with_appended(const Rational& a) const
{
    std::vector<Rational> v = c_;
    v.push_back(a);
    return QuadraticForm(v);
}

std::string QuadraticForm::str() const
{
    std::string s = "<";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += to_string(c_[i]);
    }
    return s + ">";
}

Mat<Rational> gram_of(const QuadraticForm& f)
{
    QMatrix g(f.dim(), f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) g(i, i) = f[i];
    return g;
}

// ---------------------------------------------------------------------------
// diagonalization
// ---------------------------------------------------------------------------

DiagonalizeResult diagonalize(const QMatrix& gram)
{
    if (gram.rows != gram.cols) throw std::domain_error("diagonalize: not square");
    const std::size_t n = gram.rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram(i, j) != gram(j, i)) throw std::domain_error("diagonalize: not symmetric");

    QMatrix g = gram;
    QMatrix t = QMatrix::identity(n);
    auto add_col = [&](std::size_t dst, std::size_t src, const Rational& factor) {
        // column op C_dst += factor*C_src, mirrored on rows to keep congruence
        for (std::size_t r = 0; r < n; ++r) g(r, dst) += factor * g(r, src);
        for (std::size_t ccol = 0; ccol < n; ++ccol) g(dst, ccol) += factor * g(src, ccol);
        for (std::size_t r = 0; r < n; ++r) t(r, dst) += factor * t(r, src);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) std::swap(g(r, i), g(r, j));
        for (std::size_t ccol = 0; ccol < n; ++ccol) std::swap(g(i, ccol), g(j, ccol));
        for (std::size_t r = 0; r < n; ++r) std::swap(t(r, i), t(r, j));
    };

    for (std::size_t k = 0; k < n; ++k) {
        // pivot: first nonzero diagonal entry at or after k
        std::size_t piv = k;
        while (piv < n && g(piv, piv) == 0) ++piv;
        if (piv == n) {
            // all remaining diagonal entries vanish; symmetric completion on the
            // first nonzero off-diagonal entry, if any
            bool found = false;
            for (std::size_t i = k; i < n && !found; ++i)
                for (std::size_t j = i + 1; j < n && !found; ++j)
                    if (g(i, j) != 0) {
                        add_col(i, j, 1);  // now g(i,i) = 2*g(i,j) != 0
                        piv = i;
                        found = true;
                    }
            if (!found) break;  // remaining block is zero: radical
        }
        if (piv != k) swap_cols(k, piv);
        const Rational d = g(k, k);
        for (std::size_t j = k + 1; j < n; ++j)
            if (g(k, j) != 0) add_col(j, k, -g(k, j) / d);
    }

    DiagonalizeResult res;
    std::vector<Rational> entries;
    std::size_t radical = 0;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
        if (g(i, i) != 0) {
            entries.push_back(g(i, i));
            order.push_back(i);
        } else {
            ++radical;
        }
    }
    // move radical columns to the back of the transform
    QMatrix tt(n, n);
    std::size_t col = 0;
    for (std::size_t i : order) {
        for (std::size_t r = 0; r < n; ++r) tt(r, col) = t(r, i);
        ++col;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (g(i, i) == 0) {
            for (std::size_t r = 0; r < n; ++r) tt(r, col) = t(r, i);
            ++col;
        }
    }
    res.form = QuadraticForm(entries);
    res.transform = tt;
    res.radical_dim = radical;
    return res;
}

// ---------------------------------------------------------------------------
// local and global isotropy
// ---------------------------------------------------------------------------

int hasse_invariant(const QuadraticForm& f, const Place& v)
{
    int e = 1;
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = i + 1; j < f.dim(); ++j)
            e *= arith::hilbert_symbol(f[i], f[j], v);
    return e;
}

bool is_isotropic_at(const QuadraticForm& f, const Place& v)
{
    const std::size_t n = f.dim();
    if (n <= 1) return false;
    if (v.is_real()) {
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) (f[i] > 0 ? pos : neg) = true;
        return pos && neg;
    }
    if (n == 2) return arith::is_square_at(-f[0] * f[1], v);
    Rational d = f.discriminant();
    int eps = hasse_invariant(f, v);
    if (n == 3) return eps == arith::hilbert_symbol(-1, -d, v);
    if (n == 4)
        return !arith::is_square_at(d, v) || eps == arith::hilbert_symbol(-1, -1, v);
    return true;  // rank >= 5 over Q_p
}

std::vector<Place> bad_places(const QuadraticForm& f)
{
    std::set<Int> primes{2};
    for (std::size_t i = 0; i < f.dim(); ++i) {
        for (const Int& part : {num(f[i]), den(f[i])}) {
            auto fac = arith::factorize(part);
            for (auto& [p, e] : fac.primes) primes.insert(p);
        }
    }
    std::vector<Place> out{Place::real()};
    for (const Int& p : primes) out.push_back(Place::finite(p));
    return out;
}

bool is_isotropic(const QuadraticForm& f)
{
    const std::size_t n = f.dim();
    if (n <= 1) return false;
    if (n == 2) return is_square(-f[0] * f[1]);
    if (!is_isotropic_at(f, Place::real())) return false;
    if (n >= 5) return true;  // real place alone decides
    for (const Place& v : bad_places(f))
        if (!v.is_real() && !is_isotropic_at(f, v)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// isotropic vectors
// ---------------------------------------------------------------------------

namespace {

void normalize_content(std::vector<Rational>& v)
{
    Int l = 1;
    for (auto& x : v) l = boost::multiprecision::lcm(l, den(x));
    Int g = 0;
    for (auto& x : v) g = boost::multiprecision::gcd(g, num(x) * (l / den(x)));
    if (g == 0) return;
    for (auto& x : v) x = x * Rational(l, g);
}

std::optional<std::vector<Rational>> binary_isotropic(const Rational& a, const Rational& b)
{
    Rational r = -a * b;
    if (!is_square(r)) return std::nullopt;
    Rational s = sqrt_exact(r);
    std::vector<Rational> v{s, a};
    normalize_content(v);
    return v;
}

/// Height-ordered integer search; solves for the last coordinate.
std::optional<std::vector<Rational>> small_search(const QuadraticForm& f, long max_height)
{
    const std::size_t n = f.dim();
    if (n < 2) return std::nullopt;
    std::vector<long> x(n - 1, 0);
    for (long h = 1; h <= max_height; ++h) {
        // enumerate tuples with max-norm exactly h
        std::function<std::optional<std::vector<Rational>>(std::size_t, bool)> rec =
            [&](std::size_t idx, bool attained) -> std::optional<std::vector<Rational>> {
            if (idx == n - 1) {
                if (!attained) return std::nullopt;
                Rational rest = 0;
                for (std::size_t i = 0; i + 1 < n; ++i) rest += f[i] * x[i] * x[i];
                // a_n t^2 = -rest
                Rational target = -rest / f[n - 1];
                if (target < 0) return std::nullopt;
                if (!is_square(target)) return std::nullopt;
                Rational t = sqrt_exact(target);
                std::vector<Rational> v;
                for (std::size_t i = 0; i + 1 < n; ++i) v.push_back(Rational(x[i]));
                v.push_back(t);
                bool nonzero = t != 0;
                for (std::size_t i = 0; i + 1 < n; ++i) nonzero = nonzero || x[i] != 0;
                if (!nonzero) return std::nullopt;
                normalize_content(v);
                return v;
            }
            for (long k = 0; k <= 2 * h; ++k) {
                long val = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);  // 0, 1, -1, 2, -2, ...
                x[idx] = val;
                auto r = rec(idx + 1, attained || val == h || val == -h);
                if (r) return r;
            }
            return std::nullopt;
        };
        auto r = rec(0, false);
        if (r) return r;
    }
    return std::nullopt;
}

/// Square root of a mod squarefree n (n > 0), balanced representative.
/// Returns nullopt when a is not a square mod some odd prime divisor.
std::optional<Int> sqrt_mod_squarefree(Int a, const Int& n)
{
    a %= n;
    if (a < 0) a += n;
    auto fac = arith::factorize(n);
    Int result = 0, modulus = 1;
    for (auto& [p, e] : fac.primes) {
        Int r;
        Int ap = a % p;
        if (p == 2) {
            r = ap;  // 0^2=0, 1^2=1 mod 2
        } else if (ap == 0) {
            r = 0;
        } else {
            if (arith::jacobi(ap, p) != 1) return std::nullopt;
            // Tonelli-Shanks
            Int q = p - 1;
            int s = 0;
            while (q % 2 == 0) {
                q /= 2;
                ++s;
            }
            Int z = 2;
            while (arith::jacobi(z, p) != -1) ++z;
            Int m = s;
            Int c = boost::multiprecision::powm(z, q, p);
            Int t = boost::multiprecision::powm(ap, q, p);
            r = boost::multiprecision::powm(ap, (q + 1) / 2, p);
            while (t != 1) {
                Int i = 0;
                Int tt = t;
                while (tt != 1) {
                    tt = (tt * tt) % p;
                    ++i;
                    if (i == m) return std::nullopt;  // unreachable for residues
                }
                Int b = c;
                for (Int j = 0; j < m - i - 1; ++j) b = (b * b) % p;
                m = i;
                c = (b * b) % p;
                t = (t * c) % p;
                r = (r * b) % p;
            }
        }
        // CRT combine result (mod modulus) with r (mod p)
        Int inv = boost::multiprecision::powm(modulus % p, p - 2, p);
        if (p == 2) inv = 1;  // modulus odd so far? ensure below
        Int diff = ((r - result) % p + p) % p;
        Int k = (diff * inv) % p;
        result += modulus * k;
        modulus *= p;
    }
    result %= modulus;
    if (result < 0) result += modulus;
    if (result > modulus / 2) result -= modulus;  // balanced
    return result;
}

Int squarefree_part(const Int& x, Int* square_root_out)
{
    auto fac = arith::factorize(x);
    Int sf = fac.sign;
    Int sq = 1;
    for (auto& [p, e] : fac.primes) {
        if (e % 2 == 1) sf *= p;
        sq *= pow_int(p, e / 2);
    }
    if (square_root_out) *square_root_out = sq;
    return sf;
}

/// Lagrange descent for x^2 = P y^2 + Q z^2 with P, Q squarefree nonzero.
/// Input is assumed solvable; throws logic_error if the descent refutes that.
std::array<Int, 3> solve_pq(Int P, Int Q, int depth = 0)
{
    if (depth > 200) throw std::logic_error("solve_pq: descent did not terminate");
    if (P == 1) return {1, 1, 0};
    if (Q == 1) return {1, 0, 1};
    if (abs_int(P) > abs_int(Q)) {
        auto [x, y, z] = solve_pq(Q, P, depth + 1);
        return {x, z, y};
    }
    if (P == -1 && Q == -1) throw std::logic_error("solve_pq: negative definite");
    Int qa = abs_int(Q);
    if (qa < 2) throw std::logic_error("solve_pq: unexpected base case");
    auto s_opt = sqrt_mod_squarefree(P, qa);
    if (!s_opt) throw std::logic_error("solve_pq: input not solvable (no sqrt mod Q)");
    Int s = *s_opt;
    Int R = (s * s - P) / Q;  // exact by construction
    if (R == 0) throw std::logic_error("solve_pq: squarefree P equal to a square");
    Int msq;
    Int Rt = squarefree_part(R, &msq);
    auto [x1, y1, z1] = solve_pq(P, Rt, depth + 1);
    // (s^2 - P)(x1^2 - P y1^2) = (s x1 + P y1)^2 - P (x1 + s y1)^2
    Int X = s * x1 + P * y1;
    Int Y = x1 + s * y1;
    Int Z = Rt * msq * z1;
    return {X, Y, Z};
}

std::optional<std::vector<Rational>> ternary_descent(const QuadraticForm& f)
{
    // scale to integers
    Int l = 1;
    for (int i = 0; i < 3; ++i) l = boost::multiprecision::lcm(l, den(f[i]));
    std::vector<Int> A(3);
    for (int i = 0; i < 3; ++i) A[i] = num(f[i]) * (l / den(f[i]));
    // squarefree-reduce entries; x_i scales by the removed square root
    std::vector<Rational> coord_scale(3, 1);
    for (int i = 0; i < 3; ++i) {
        Int sq;
        A[i] = squarefree_part(A[i], &sq);
        coord_scale[i] = Rational(1, sq);  // X_i = x_i / sq
    }
    // remove a common squarefree factor
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs_int(A[0]), abs_int(A[1])),
                                       abs_int(A[2]));
    for (int i = 0; i < 3; ++i) A[i] /= g;
    // pairwise coprimify: p | gcd(A_i, A_j) -> (A_i/p, A_j/p, A_k*p), x_k -> p x_k
    bool changed = true;
    std::vector<Rational> post_scale(3, 1);  // applied to descent solution components
    while (changed) {
        changed = false;
        for (int i = 0; i < 3 && !changed; ++i)
            for (int j = 0; j < 3 && !changed; ++j) {
                if (i == j) continue;
                Int gij = boost::multiprecision::gcd(abs_int(A[i]), abs_int(A[j]));
                if (gij > 1) {
                    auto fac = arith::factorize(gij);
                    Int p = fac.primes.front().first;
                    int k = 3 - i - j;
                    A[i] /= p;
                    A[j] /= p;
                    A[k] *= p;
                    post_scale[k] *= Rational(p);
                    changed = true;
                }
            }
    }
    // u^2 = P y^2 + Q z^2 with u = A0*x, P = -A0*A1, Q = -A0*A2
    Int P = -A[0] * A[1];
    Int Q = -A[0] * A[2];
    auto [u, y, z] = solve_pq(P, Q);
    std::vector<Rational> v(3);
    v[0] = Rational(u) / Rational(A[0]);
    v[1] = Rational(y);
    v[2] = Rational(z);
    for (int i = 0; i < 3; ++i) v[i] *= post_scale[i] * coord_scale[i];
    normalize_content(v);
    return v;
}

std::optional<std::vector<Rational>> isotropic_vector_impl(const QuadraticForm& f);

std::optional<std::vector<Rational>> highdim_split(const QuadraticForm& f)
{
    const std::size_t n = f.dim();
    QuadraticForm head({f[0], f[1]});
    QuadraticForm tail = f.tail(2);
    if (auto v = binary_isotropic(f[0], f[1])) {
        std::vector<Rational> out = *v;
        out.resize(n, Rational(0));
        return out;
    }
    if (is_isotropic(tail)) {
        auto w = isotropic_vector_impl(tail);
        if (!w) throw std::logic_error("isotropic_vector: tail inconsistency");
        std::vector<Rational> out(n, Rational(0));
        for (std::size_t i = 0; i < w->size(); ++i) out[i + 2] = (*w)[i];
        return out;
    }
    // find squarefree d represented by <a1,a2> and by -<a3..an>
    auto try_d = [&](const Int& d) -> std::optional<std::vector<Rational>> {
        Rational dr(d);
        QuadraticForm ext_head = head.with_appended(-dr);
        if (!is_isotropic(ext_head)) return std::nullopt;
        QuadraticForm ext_tail = tail.with_appended(dr);
        if (!is_isotropic(ext_tail)) return std::nullopt;
        auto hv = isotropic_vector_impl(ext_head);
        auto tv = isotropic_vector_impl(ext_tail);
        if (!hv || !tv) throw std::logic_error("isotropic_vector: split inconsistency");
        const auto& a = *hv;
        const auto& b = *tv;
        if (a[2] == 0 || b[n - 2] == 0)
            throw std::logic_error("isotropic_vector: unexpected degenerate split witness");
        std::vector<Rational> out(n);
        out[0] = a[0] / a[2];
        out[1] = a[1] / a[2];
        for (std::size_t i = 0; i + 2 < n; ++i) out[i + 2] = b[i] / b[n - 2];
        normalize_content(out);
        return out;
    };
    for (Int absd = 1; absd <= 100000; ++absd) {
        Int sq;
        if (squarefree_part(absd, &sq) != absd) continue;
        for (int sign : {1, -1}) {
            if (auto out = try_d(sign * absd)) return out;
        }
    }
    throw std::logic_error("isotropic_vector: no common represented value found (bug)");
}

std::optional<std::vector<Rational>> isotropic_vector_impl(const QuadraticForm& f)
{
    const std::size_t n = f.dim();
    if (n == 1) return std::nullopt;
    if (n == 2) return binary_isotropic(f[0], f[1]);
    if (!is_isotropic(f)) return std::nullopt;
    if (auto v = small_search(f, 8)) return v;
    if (n == 3) return ternary_descent(f);
    return highdim_split(f);
}

}  // namespace

std::optional<std::vector<Rational>> isotropic_vector(const QuadraticForm& f)
{
    auto v = isotropic_vector_impl(f);
    if (v) {
        if (f(*v) != 0) throw std::logic_error("isotropic_vector: witness check failed (bug)");
        bool nonzero = false;
        for (auto& x : *v) nonzero = nonzero || x != 0;
        if (!nonzero) throw std::logic_error("isotropic_vector: zero witness (bug)");
    }
    return v;
}

// ---------------------------------------------------------------------------
// Witt decomposition
// ---------------------------------------------------------------------------

namespace {

struct WittStep {
    std::size_t index;
    std::vector<Rational> kernel_entries;
    QMatrix basis;  // columns express the new basis in the current coordinates
};

WittStep witt_recurse(const QuadraticForm& f)
{
    const std::size_t n = f.dim();
    auto iso = isotropic_vector(f);
    if (!iso) return {0, f.coeffs(), QMatrix::identity(n)};

    const std::vector<Rational>& v = *iso;
    std::size_t j = 0;
    while (f[j] * v[j] == 0) ++j;
    std::vector<Rational> h(n, Rational(0));
    h[j] = Rational(1) / (f[j] * v[j]);  // B(v,h) = 1
    // make h isotropic: h' = h - (f(h)/2) v
    Rational fh = f(h);
    std::vector<Rational> hp = h;
    for (std::size_t i = 0; i < n; ++i) hp[i] -= fh / 2 * v[i];

    // p1 = v + h'/2, p2 = v - h'/2 give the diagonal <1,-1> block
    std::vector<Rational> p1(n), p2(n);
    for (std::size_t i = 0; i < n; ++i) {
        p1[i] = v[i] + hp[i] / 2;
        p2[i] = v[i] - hp[i] / 2;
    }

    // orthogonal complement of span(v, h')
    std::vector<std::vector<Rational>> cand;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> e(n, Rational(0));
        e[i] = 1;
        Rational bh = f.bilinear(e, hp);
        Rational bv = f.bilinear(e, v);
        for (std::size_t k = 0; k < n; ++k) e[k] -= bh * v[k] + bv * hp[k];
        cand.push_back(e);
    }
    // greedily select n-2 independent candidates by exact elimination
    std::vector<std::vector<Rational>> basis;
    std::vector<std::vector<Rational>> reduced;
    for (auto& e : cand) {
        std::vector<Rational> r = e;
        for (auto& b : reduced) {
            std::size_t piv = 0;
            while (piv < n && b[piv] == 0) ++piv;
            if (piv < n && r[piv] != 0) {
                Rational fac = r[piv] / b[piv];
                for (std::size_t k = 0; k < n; ++k) r[k] -= fac * b[k];
            }
        }
        bool zero = std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
        if (!zero) {
            reduced.push_back(r);
            basis.push_back(e);
            if (basis.size() == n - 2) break;
        }
    }
    if (basis.size() != n - 2) throw std::logic_error("witt_decompose: complement rank defect");

    if (n == 2) {
        QMatrix cols(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            cols(i, 0) = p1[i];
            cols(i, 1) = p2[i];
        }
        return {1, {}, cols};
    }

    // Gram of the complement, diagonalized
    QMatrix E(n, n - 2);
    for (std::size_t c = 0; c < n - 2; ++c)
        for (std::size_t r = 0; r < n; ++r) E(r, c) = basis[c][r];
    QMatrix C(n - 2, n - 2);
    for (std::size_t i = 0; i < n - 2; ++i)
        for (std::size_t j2 = 0; j2 < n - 2; ++j2)
            C(i, j2) = f.bilinear(basis[i], basis[j2]);
    auto diag = diagonalize(C);
    if (diag.radical_dim != 0) throw std::logic_error("witt_decompose: degenerate complement");

    auto sub = witt_recurse(diag.form);

    QMatrix rest = E * diag.transform * sub.basis;  // n x (n-2)
    QMatrix cols(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        cols(i, 0) = p1[i];
        cols(i, 1) = p2[i];
        for (std::size_t c = 0; c < n - 2; ++c) cols(i, c + 2) = rest(i, c);
    }
    // reorder: hyperbolic diagonal pairs first, kernel at the end, so shift the
    // recursive block's columns right by 2 (they already follow that layout).
    return {sub.index + 1, sub.kernel_entries, cols};
}

}  // namespace

WittDecomposition witt_decompose(const QuadraticForm& f)
{
    auto step = witt_recurse(f);
    WittDecomposition w;
    w.witt_index = step.index;
    w.transform = step.basis;
    if (!step.kernel_entries.empty()) w.kernel = QuadraticForm(step.kernel_entries);
    for (std::size_t i = 0; i < step.index; ++i) {
        w.target.push_back(1);
        w.target.push_back(-1);
    }
    for (auto& e : step.kernel_entries) w.target.push_back(e);
    // exact congruence check
    QMatrix G = gram_of(f);
    QMatrix M = step.basis.transposed() * G * step.basis;
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = 0; j < f.dim(); ++j) {
            Rational expect = (i == j) ? w.target[i] : Rational(0);
            if (M(i, j) != expect) throw std::logic_error("witt_decompose: congruence check failed");
        }
    if (w.kernel.dim() > 0 && is_isotropic(w.kernel))
        throw std::logic_error("witt_decompose: kernel not anisotropic");
    return w;
}

// ---------------------------------------------------------------------------
// representation
// ---------------------------------------------------------------------------

std::optional<std::vector<Rational>> represents(const QuadraticForm& f, const Rational& d)
{
    if (d == 0) throw std::domain_error("represents: d must be nonzero");
    const std::size_t n = f.dim();
    // cheap single-variable hits
    for (std::size_t i = 0; i < n; ++i) {
        if (is_square(d / f[i])) {
            std::vector<Rational> v(n, Rational(0));
            v[i] = sqrt_exact(d / f[i]);
            return v;
        }
    }
    if (is_isotropic(f)) {
        // isotropic regular forms are universal: split a hyperbolic pair
        auto iso = isotropic_vector(f);
        const std::vector<Rational>& v = *iso;
        std::size_t j = 0;
        while (f[j] * v[j] == 0) ++j;
        std::vector<Rational> h(n, Rational(0));
        h[j] = Rational(1) / (f[j] * v[j]);
        Rational fh = f(h);
        std::vector<Rational> hp = h;
        for (std::size_t i = 0; i < n; ++i) hp[i] -= fh / 2 * v[i];
        // f((d/2) v + h') = d
        std::vector<Rational> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = d / 2 * v[i] + hp[i];
        if (f(w) != d) throw std::logic_error("represents: witness check failed (bug)");
        return w;
    }
    QuadraticForm ext = f.with_appended(-d);
    if (!is_isotropic(ext)) return std::nullopt;
    auto iso = isotropic_vector(ext);
    const std::vector<Rational>& v = *iso;
    if (v[n] == 0) throw std::logic_error("represents: degenerate extension witness");
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = v[i] / v[n];
    if (f(w) != d) throw std::logic_error("represents: witness check failed (bug)");
    return w;
}

// ---------------------------------------------------------------------------
// local value groups and membership in <D(phi)>
// ---------------------------------------------------------------------------

bool LocalValueGroup::contains(int class_index) const
{
    if (full) return true;
    return std::find(members.begin(), members.end(), class_index) != members.end();
}

namespace {

std::vector<int> xor_span(const std::vector<int>& gens, int universe)
{
    std::set<int> span{0};
    for (int g : gens) {
        std::set<int> next = span;
        for (int x : span) next.insert(x ^ g);
        span = next;
    }
    (void)universe;
    return std::vector<int>(span.begin(), span.end());
}

}  // namespace

LocalValueGroup local_value_group(const QuadraticForm& f, const Place& v)
{
    LocalValueGroup g;
    g.place = v;
    arith::LocalSquareClasses classes(v);
    const int total = classes.count();
    if (is_isotropic_at(f, v)) {
        g.full = true;
        for (int i = 0; i < total; ++i) {
            g.represented.push_back(i);
            g.members.push_back(i);
        }
        return g;
    }
    for (int i = 0; i < total; ++i) {
        Rational rep = classes.representative(i);
        // c in D(f over Q_v) iff f | <-c> is locally isotropic (f anisotropic at v)
        bool repd = is_isotropic_at(f.with_appended(-rep), v);
        if (repd) g.represented.push_back(i);
    }
    g.members = xor_span(g.represented, total);
    g.full = static_cast<int>(g.members.size()) == total;
    return g;
}

namespace {

std::vector<Int> membership_prime_pool(const QuadraticForm& f, const Rational& d)
{
    std::set<Int> pool{2, 3, 5, 7, 11, 13};
    auto add = [&](const Rational& q) {
        for (const Int& part : {num(q), den(q)}) {
            auto fac = arith::factorize(part);
            for (auto& [p, e] : fac.primes) pool.insert(p);
        }
    };
    add(d);
    for (std::size_t i = 0; i < f.dim(); ++i) add(f[i]);
    return std::vector<Int>(pool.begin(), pool.end());
}

}  // namespace

GroupMembershipVerdict value_group_membership(const QuadraticForm& f, const Rational& d,
                                              const MembershipOptions& opts)
{
    if (d == 0) throw std::domain_error("value_group_membership: d must be nonzero");
    if (f.dim() < 2) throw std::domain_error("value_group_membership: dimension >= 2 required");
    GroupMembershipVerdict verdict;

    // local obstructions over the bad set
    std::set<Place> places;
    for (auto& v : bad_places(f)) places.insert(v);
    for (const Int& part : {num(d), den(d)}) {
        auto fac = arith::factorize(part);
        for (auto& [p, e] : fac.primes) places.insert(Place::finite(p));
    }
    for (const Place& v : places) {
        auto lvg = local_value_group(f, v);
        arith::LocalSquareClasses classes(v);
        int idx = classes.index_of(d);
        if (!lvg.contains(idx)) {
            verdict.outcome = GroupMembershipVerdict::Outcome::NonMember;
            verdict.obstruction = v;
            verdict.note = "class of d outside <D(phi)> over the completion at " + v.str();
            return verdict;
        }
    }

    // certificate search
    auto member_with = [&](std::vector<Rational> factors) -> bool {
        std::vector<std::vector<Rational>> wits;
        for (auto& fac : factors) {
            auto w = represents(f, fac);
            if (!w) return false;
            wits.push_back(*w);
        }
        verdict.outcome = GroupMembershipVerdict::Outcome::Member;
        verdict.factors = std::move(factors);
        verdict.factor_witnesses = std::move(wits);
        return true;
    };

    if (represents(f, d)) {
        member_with({d});
        return verdict;
    }
    if (opts.max_factors >= 2) {
        std::vector<Int> pool = membership_prime_pool(f, d);
        std::vector<Rational> candidates;
        candidates.push_back(Rational(-1));
        for (std::size_t i = 0; i < pool.size(); ++i) {
            candidates.push_back(Rational(pool[i]));
            candidates.push_back(Rational(-pool[i]));
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                candidates.push_back(Rational(pool[i] * pool[j]));
                candidates.push_back(Rational(-pool[i] * pool[j]));
            }
        }
        long budget = opts.candidate_budget;
        for (auto& r : candidates) {
            if (budget-- <= 0) break;
            if (represents(f, r) && represents(f, d / r)) {
                member_with({r, d / r});
                return verdict;
            }
        }
        if (opts.max_factors >= 3) {
            budget = opts.candidate_budget;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                for (std::size_t j = i; j < candidates.size(); ++j) {
                    if (budget-- <= 0) break;
                    const Rational& r1 = candidates[i];
                    const Rational& r2 = candidates[j];
                    Rational r3 = d / (r1 * r2);
                    if (represents(f, r1) && represents(f, r2) && represents(f, r3)) {
                        member_with({r1, r2, r3});
                        return verdict;
                    }
                }
                if (budget <= 0) break;
            }
        }
    }
    verdict.outcome = GroupMembershipVerdict::Outcome::Unknown;
    verdict.note = "no local obstruction found and no certificate within budget";
    return verdict;
}

bool verify_membership(const QuadraticForm& f, const Rational& d,
                       const GroupMembershipVerdict& verdict)
{
    using Outcome = GroupMembershipVerdict::Outcome;
    if (verdict.outcome == Outcome::Member) {
        if (verdict.factors.empty() || verdict.factors.size() != verdict.factor_witnesses.size())
            return false;
        Rational prod = 1;
        for (std::size_t i = 0; i < verdict.factors.size(); ++i) {
            if (f(verdict.factor_witnesses[i]) != verdict.factors[i]) return false;
            prod *= verdict.factors[i];
        }
        return prod == d * verdict.square_scale * verdict.square_scale;
    }
    if (verdict.outcome == Outcome::NonMember) {
        auto lvg = local_value_group(f, verdict.obstruction);
        arith::LocalSquareClasses classes(verdict.obstruction);
        return !lvg.contains(classes.index_of(d));
    }
    return false;
}

}  // namespace aq::forms
