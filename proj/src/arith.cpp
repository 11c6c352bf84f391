#include "aq/arith.hpp"

#include <algorithm>

namespace aq::arith {

Place Place::finite(Int prime)
{
    if (!is_prime(prime)) throw std::domain_error("Place::finite: " + prime.str() + " is not prime");
    return Place{Kind::Finite, std::move(prime)};
}

namespace {

Int powmod(Int base, Int exp, const Int& mod)
{
    return boost::multiprecision::powm(base % mod, exp, mod);
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, int r)
{
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime(const Int& n)
{
    if (n < 2) return false;
    static const int small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    // Deterministic for n < 2^64; a to-the-point base set beyond that is not
    // needed at desk scale but the same bases keep the test meaningful.
    for (int a : small_primes)
        if (miller_rabin_witness(n, a, d, r)) return false;
    return true;
}

namespace {

Int pollard_brent(const Int& n)
{
    // Deterministic parameter sweep; n is odd and composite here.
    for (Int c = 1; c < 32; ++c) {
        Int x = 2, y = 2, d = 1;
        long limit = 1 << 22;
        long count = 0;
        while (d == 1 && count < limit) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = boost::multiprecision::gcd(diff, n);
            ++count;
        }
        if (d != 1 && d != n) return d;
    }
    return 0;
}

/// Floor k-th root by binary search.
Int iroot(const Int& n, unsigned k)
{
    if (n < 2) return n;
    Int lo = 1, hi = 1;
    while (pow_int(hi, k) <= n) hi <<= 1;
    while (lo + 1 < hi) {
        Int mid = (lo + hi) / 2;
        if (pow_int(mid, k) <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

void factor_into(Int n, const Int& bound, std::map<Int, unsigned>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        if (n > bound)
            throw FactorizationBudgetExceeded("factorization budget exceeded: prime factor " +
                                              n.str() + " above bound " + bound.str());
        out[n] += 1;
        return;
    }
    // Perfect power shortcut keeps Pollard inputs honest.
    for (unsigned k = 2; k <= 4; ++k) {
        Int r = iroot(n, k);
        if (r >= 2 && pow_int(r, k) == n) {
            std::map<Int, unsigned> sub;
            factor_into(r, bound, sub);
            for (auto& [p, e] : sub) out[p] += e * k;
            return;
        }
    }
    Int d = pollard_brent(n);
    if (d == 0)
        throw FactorizationBudgetExceeded("factorization budget exceeded on composite " + n.str());
    factor_into(d, bound, out);
    factor_into(n / d, bound, out);
}

}  // namespace

Factorization factorize(const Int& n_in, const Int& bound)
{
    if (n_in == 0) throw std::domain_error("factorize: input 0");
    Factorization f;
    Int n = n_in;
    if (n < 0) {
        f.sign = -1;
        n = -n;
    }
    std::map<Int, unsigned> acc;
    for (Int p : {Int(2), Int(3), Int(5)}) {
        while (n % p == 0) {
            acc[p] += 1;
            n /= p;
        }
    }
    // Wheel over 30 covers the rest of the trial range.
    static const int wheel[] = {7, 11, 13, 17, 19, 23, 29, 31};
    Int base = 0;
    const Int trial_limit = 1 << 16;
    while (base <= trial_limit && n > 1) {
        for (int w : wheel) {
            Int p = base + w;
            if (p * p > n) break;
            while (n % p == 0) {
                acc[p] += 1;
                n /= p;
            }
        }
        base += 30;
    }
    if (n > 1) factor_into(n, bound, acc);
    f.primes.assign(acc.begin(), acc.end());
    return f;
}

SquareClass square_class(const Rational& q, const Int& bound)
{
    if (q == 0) throw std::domain_error("square_class: input 0");
    // square class of n/d equals that of n*d
    Factorization f = factorize(num(q) * den(q), bound);
    SquareClass sc;
    sc.sign = f.sign;
    sc.radical = 1;
    for (auto& [p, e] : f.primes)
        if (e % 2 == 1) sc.radical *= p;
    return sc;
}

long valuation(const Rational& q, const Int& p)
{
    if (q == 0) throw std::domain_error("valuation: input 0");
    long v = 0;
    Int n = num(q);
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    Int d = den(q);
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

Rational unit_part(const Rational& q, const Int& p)
{
    long v = valuation(q, p);
    Rational pw(pow_int(p, static_cast<unsigned>(v < 0 ? -v : v)));
    return v >= 0 ? Rational(q / pw) : Rational(q * pw);
}

int jacobi(Int a, Int n)
{
    if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi: n must be odd positive");
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int legendre_unit(const Rational& u, const Int& p)
{
    // u is a p-adic unit: compute num * den^{-1} mod p and take Legendre.
    Int x = num(u) % p;
    if (x < 0) x += p;
    Int y = den(u) % p;
    if (y < 0) y += p;
    if (x == 0 || y == 0) throw std::domain_error("legendre_unit: not a unit at p");
    Int inv = powmod(y, p - 2, p);
    return jacobi((x * inv) % p, p);
}

int unit_mod8(const Rational& u)
{
    Int x = num(u) % 8;
    if (x < 0) x += 8;
    Int y = den(u) % 8;
    if (y < 0) y += 8;
    if (x % 2 == 0 || y % 2 == 0) throw std::domain_error("unit_mod8: not a 2-adic unit");
    // inverse mod 8 of odd y is y itself (y^2 = 1 mod 8)
    return static_cast<int>((x * y) % 8);
}

bool is_square_at(const Rational& q, const Place& v)
{
    if (q == 0) throw std::domain_error("is_square_at: input 0");
    if (v.is_real()) return q > 0;
    long val = valuation(q, v.p);
    if (val % 2 != 0) return false;
    Rational u = unit_part(q, v.p);
    if (v.p == 2) return unit_mod8(u) == 1;
    return legendre_unit(u, v.p) == 1;
}

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v)
{
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: zero argument");
    if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
    const Int& p = v.p;
    long alpha = valuation(a, p);
    long beta = valuation(b, p);
    Rational u = unit_part(a, p);
    Rational w = unit_part(b, p);
    if (p == 2) {
        auto eps = [](int m8) { return ((m8 - 1) / 2) % 2; };        // (u-1)/2 mod 2
        auto omega = [](int m8) { return (m8 * m8 - 1) / 8 % 2; };   // (u^2-1)/8 mod 2
        int mu = unit_mod8(u), mw = unit_mod8(w);
        long e = eps(mu) * eps(mw) + (alpha % 2 != 0 ? omega(mw) : 0) +
                 (beta % 2 != 0 ? omega(mu) : 0);
        return e % 2 == 0 ? 1 : -1;
    }
    long eps_p = ((p - 1) / 2) % 2 != 0 ? 1 : 0;
    int lu = legendre_unit(u, p);
    int lw = legendre_unit(w, p);
    long e = (alpha % 2 != 0 && beta % 2 != 0) ? eps_p : 0;
    int result = e % 2 == 0 ? 1 : -1;
    if (beta % 2 != 0 && lu == -1) result = -result;
    if (alpha % 2 != 0 && lw == -1) result = -result;
    return result;
}

std::vector<Place> hilbert_bad_places(const Rational& a, const Rational& b)
{
    std::vector<Place> places{Place::real(), Place::finite(2)};
    auto add_primes = [&](const Rational& q) {
        for (const Int& part : {num(q), den(q)}) {
            Factorization f = factorize(part);
            for (auto& [p, e] : f.primes) {
                Place pl = Place::finite(p);
                if (std::find(places.begin(), places.end(), pl) == places.end())
                    places.push_back(pl);
            }
        }
    };
    add_primes(a);
    add_primes(b);
    std::sort(places.begin(), places.end());
    return places;
}

int LocalSquareClasses::index_of(const Rational& q) const
{
    if (q == 0) throw std::domain_error("LocalSquareClasses: zero");
    if (v.is_real()) return q > 0 ? 0 : 1;
    if (v.p == 2) {
        long val = valuation(q, 2);
        int m8 = unit_mod8(unit_part(q, 2));
        int unit_idx = (m8 - 1) / 2;  // {1,3,5,7} -> {0,1,2,3}
        return unit_idx | ((val % 2 != 0) ? 4 : 0);
    }
    long val = valuation(q, v.p);
    int nr = legendre_unit(unit_part(q, v.p), v.p) == 1 ? 0 : 1;
    return nr | ((val % 2 != 0) ? 2 : 0);
}

Rational LocalSquareClasses::representative(int idx) const
{
    if (v.is_real()) return idx == 0 ? Rational(1) : Rational(-1);
    if (v.p == 2) {
        static const int units[] = {1, 3, 5, 7};
        Rational r(units[idx & 3]);
        if (idx & 4) r *= 2;
        return r;
    }
    Rational r(1);
    if (idx & 1) {
        // smallest quadratic nonresidue unit mod p
        Int u = 2;
        while (jacobi(u, v.p) != -1) ++u;
        r = Rational(u);
    }
    if (idx & 2) r *= Rational(v.p);
    return r;
}

}  // namespace aq::arith
