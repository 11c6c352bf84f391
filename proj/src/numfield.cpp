#include "aq/numfield.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace aq::nf {

using arith::Place;

QuadField::QuadField(Int m_in) : m(std::move(m_in))
{
    if (m == 0 || m == 1) throw std::domain_error("QuadField: m must not be 0 or 1");
    auto sc = arith::square_class(Rational(m));
    if (sc.representative() != m)
        throw std::domain_error("QuadField: m must be squarefree, got " + m.str());
}

QuadElem::QuadElem(Rational a_in, Rational b_in, Int m_in)
    : a(std::move(a_in)), b(std::move(b_in)), m(std::move(m_in))
{
    if (b == 0) m = 0;
    if (b != 0 && (m == 0 || m == 1))
        throw std::domain_error("QuadElem: irrational part requires a valid radicand");
}

namespace {

Int join_radicand(const QuadElem& x, const QuadElem& y)
{
    if (x.m == 0) return y.m;
    if (y.m == 0 || x.m == y.m) return x.m;
    throw std::domain_error("QuadElem: mixed radicands " + x.m.str() + " and " + y.m.str());
}

}  // namespace

QuadElem& QuadElem::operator+=(const QuadElem& o)
{
    Int mm = join_radicand(*this, o);
    a += o.a;
    b += o.b;
    m = (b == 0) ? Int(0) : mm;
    return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o)
{
    Int mm = join_radicand(*this, o);
    a -= o.a;
    b -= o.b;
    m = (b == 0) ? Int(0) : mm;
    return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o)
{
    Int mm = join_radicand(*this, o);
    Rational na = a * o.a + Rational(mm) * b * o.b;
    Rational nb = a * o.b + b * o.a;
    a = na;
    b = nb;
    m = (b == 0) ? Int(0) : mm;
    return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& o)
{
    if (o.a == 0 && o.b == 0) throw std::domain_error("QuadElem: division by zero");
    Int mm = join_radicand(*this, o);
    Rational n = o.a * o.a - Rational(mm) * o.b * o.b;
    if (n == 0) throw std::domain_error("QuadElem: division by zero divisor (norm 0)");
    // multiply by conjugate over norm
    QuadElem c(o.a / n, -o.b / n, mm);
    return *this *= c;
}

std::string QuadElem::str() const
{
    if (b == 0) return to_string(a);
    std::string s;
    if (a != 0) s += to_string(a) + (b > 0 ? " + " : " - ");
    else if (b < 0) s += "-";
    Rational babs = b < 0 ? Rational(-b) : b;
    if (babs != 1) s += to_string(babs) + "*";
    s += "sqrt(" + m.str() + ")";
    return s;
}

SplittingType splitting_type(const Int& p, const QuadField& K)
{
    if (!arith::is_prime(p)) throw std::domain_error("splitting_type: p must be prime");
    Int D = K.discriminant();
    if (p == 2) {
        Int mm = ((K.m % 8) + 8) % 8;
        if (mm % 2 == 0 || mm == 3 || mm == 7) return SplittingType::Ramified;
        return mm == 1 ? SplittingType::Split : SplittingType::Inert;
    }
    if (D % p == 0) return SplittingType::Ramified;
    return arith::jacobi(((D % p) + p) % p, p) == 1 ? SplittingType::Split : SplittingType::Inert;
}

std::string splitting_name(SplittingType t)
{
    switch (t) {
        case SplittingType::Split: return "split";
        case SplittingType::Inert: return "inert";
        default: return "ramified";
    }
}

bool is_square_in(const Rational& r, const QuadField& K)
{
    if (r == 0) return true;
    if (is_square(r)) return true;
    return is_square(r / Rational(K.m));
}

QuadElem sqrt_in(const Rational& r, const QuadField& K)
{
    if (is_square(r)) return QuadElem(sqrt_exact(r));
    if (is_square(r / Rational(K.m))) return QuadElem(Rational(0), sqrt_exact(r / Rational(K.m)), K.m);
    throw std::domain_error("sqrt_in: not a square in " + K.str());
}

QuadElem eval_form(const forms::QuadraticForm& form, const std::vector<QuadElem>& v)
{
    if (v.size() != form.dim()) throw std::invalid_argument("eval_form: wrong length");
    QuadElem s;
    for (std::size_t i = 0; i < v.size(); ++i) s += QuadElem(form[i]) * v[i] * v[i];
    return s;
}

namespace {

bool all_same_sign(const forms::QuadraticForm& f)
{
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < f.dim(); ++i) (f[i] > 0 ? pos : neg) = true;
    return !(pos && neg);
}

std::optional<std::vector<QuadElem>> binary_witness(const forms::QuadraticForm& f, std::size_t i,
                                                    std::size_t j, const QuadField& K)
{
    Rational r = -f[i] * f[j];
    if (!is_square_in(r, K)) return std::nullopt;
    QuadElem s = sqrt_in(r, K);
    std::vector<QuadElem> v(f.dim());
    v[i] = s;
    v[j] = QuadElem(f[i]);
    return v;
}

bool is_zero_vec(const std::vector<QuadElem>& v)
{
    return std::all_of(v.begin(), v.end(),
                       [](const QuadElem& x) { return x.a == 0 && x.b == 0; });
}

/// Bounded height-ordered search over vectors with entries x + y*sqrt(m).
std::optional<std::vector<QuadElem>> search_witness(const forms::QuadraticForm& f,
                                                    const QuadField& K, long max_height)
{
    const std::size_t n = f.dim();
    // A zero of the form is a pair of rational conditions:
    //   sum a_i (x_i^2 + m y_i^2) = 0   and   sum a_i x_i y_i = 0.
    // Enumerate (x, y) integer pairs per coordinate in height order.
    std::vector<long> xs(n), ys(n);
    std::function<bool(std::size_t, long, bool)> rec = [&](std::size_t idx, long h,
                                                           bool attained) -> bool {
        if (idx == n) {
            if (!attained) return false;
            Rational lin = 0, quad = 0;
            for (std::size_t i = 0; i < n; ++i) {
                quad += f[i] * (Rational(xs[i]) * xs[i] + Rational(K.m) * ys[i] * ys[i]);
                lin += f[i] * Rational(xs[i]) * ys[i];
            }
            return quad == 0 && lin == 0;
        }
        for (long x = -h; x <= h; ++x)
            for (long y = -h; y <= h; ++y) {
                xs[idx] = x;
                ys[idx] = y;
                bool att = attained || std::max(std::abs(x), std::abs(y)) == h;
                if (rec(idx + 1, h, att)) return true;
            }
        return false;
    };
    long cap = std::min<long>(max_height, 6);  // full 2n-dimensional sweep is exponential
    for (long h = 1; h <= cap; ++h) {
        if (rec(0, h, false)) {
            std::vector<QuadElem> v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = QuadElem(Rational(xs[i]), Rational(ys[i]), K.m);
            if (!is_zero_vec(v)) return v;
        }
    }
    return std::nullopt;
}

}  // namespace

IsotropyVerdict is_isotropic_over(const forms::QuadraticForm& form, const QuadField& K,
                                  long witness_height)
{
    IsotropyVerdict v;
    const std::size_t n = form.dim();
    if (n == 0) throw std::domain_error("is_isotropic_over: empty form");
    if (n == 1) {
        v.outcome = IsotropyVerdict::Outcome::Anisotropic;
        v.real_embedding_obstruction = K.is_real();
        v.reason = "one-dimensional regular forms are anisotropic";
        return v;
    }

    // real embeddings: rational coefficients keep their signs under both
    if (K.is_real() && all_same_sign(form)) {
        v.outcome = IsotropyVerdict::Outcome::Anisotropic;
        v.real_embedding_obstruction = true;
        v.reason = "form is definite under every real embedding of " + K.str();
        return v;
    }

    if (n == 2) {
        Rational r = -form[0] * form[1];
        if (is_square_in(r, K)) {
            v.outcome = IsotropyVerdict::Outcome::Isotropic;
            v.witness = binary_witness(form, 0, 1, K);
            return v;
        }
        // find a concrete local obstruction for the report
        std::set<Int> primes{2};
        for (const Rational& q : {r, Rational(K.m)})
            for (const Int& part : {num(q), den(q)}) {
                auto fac = arith::factorize(part);
                for (auto& [p, e] : fac.primes) primes.insert(p);
            }
        for (const Int& p : primes) {
            Place pl = Place::finite(p);
            bool sq_locally = arith::is_square_at(r, pl);
            if (splitting_type(p, K) != SplittingType::Split)
                sq_locally = sq_locally || arith::is_square_at(r / Rational(K.m), pl);
            if (!sq_locally) {
                v.obstruction_place = pl;
                break;
            }
        }
        v.outcome = IsotropyVerdict::Outcome::Anisotropic;
        v.reason = "-a1*a2 is not a square in " + K.str();
        return v;
    }

    // dim >= 3: places of K above split primes are copies of Q_p; inert and
    // ramified completions are quadratic extensions of Q_p, over which every
    // rational form of rank >= 3 is isotropic (quaternion algebras over Q_p
    // split over every quadratic extension).
    std::set<Int> primes{2};
    auto add_primes = [&](const Rational& q) {
        for (const Int& part : {num(q), den(q)}) {
            auto fac = arith::factorize(part);
            for (auto& [p, e] : fac.primes) primes.insert(p);
        }
    };
    for (std::size_t i = 0; i < n; ++i) add_primes(form[i]);
    add_primes(Rational(K.m));
    for (const Int& p : primes) {
        if (splitting_type(p, K) != SplittingType::Split) continue;
        Place pl = Place::finite(p);
        if (!forms::is_isotropic_at(form, pl)) {
            v.outcome = IsotropyVerdict::Outcome::Anisotropic;
            v.obstruction_place = pl;
            v.reason = "anisotropic over the completion of K above " + p.str() + " (split place)";
            return v;
        }
    }

    v.outcome = IsotropyVerdict::Outcome::Isotropic;
    // witness: rational-pair shortcuts first, then bounded search
    if (auto rational_wit = forms::isotropic_vector(form)) {
        std::vector<QuadElem> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = QuadElem((*rational_wit)[i]);
        v.witness = w;
        return v;
    }
    for (std::size_t i = 0; i < n && !v.witness; ++i)
        for (std::size_t j = i + 1; j < n && !v.witness; ++j)
            if (auto w = binary_witness(form, i, j, K)) v.witness = w;
    if (!v.witness) v.witness = search_witness(form, K, witness_height);
    if (v.witness) {
        const auto& w = *v.witness;
        if (is_zero_vec(w) || !(eval_form(form, w) == QuadElem(0)))
            throw std::logic_error("is_isotropic_over: witness check failed (bug)");
    }
    return v;
}

}  // namespace aq::nf
