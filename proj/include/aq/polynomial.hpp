#ifndef AQ_POLYNOMIAL_HPP
#define AQ_POLYNOMIAL_HPP

#include "aq/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aq {

/// Dense univariate polynomial over an exact field K, coefficients ascending.
template <class K>
class Poly {
  public:
    Poly() = default;
    Poly(K c) : c_{std::move(c)} { trim(); }  // NOLINT: implicit constant
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly t() { return Poly(std::vector<K>{K(0), K(1)}); }
    static Poly monomial(std::size_t d, K coeff)
    {
        std::vector<K> v(d + 1, K(0));
        v[d] = std::move(coeff);
        return Poly(v);
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for 0
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
    const K& lc() const
    {
        if (is_zero()) throw std::domain_error("Poly: leading coefficient of 0");
        return c_.back();
    }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !is_zero() && lc() == K(1); }

    K operator()(const K& x) const
    {
        K r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Poly operator-() const
    {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == K(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const K& s) { return a * Poly(s); }
    friend Poly operator*(const K& s, const Poly& a) { return a * Poly(s); }
    friend Poly operator/(const Poly& a, const K& s)
    {
        Poly r = a;
        for (auto& x : r.c_) x = x / s;
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Division with remainder; divisor must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
    {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        Poly r = a;
        std::vector<K> q(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1, K(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            K f = r.lc() / b.lc();
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            q[shift] = f;
            Poly sub = Poly::monomial(shift, f) * b;
            r = r - sub;
        }
        return {Poly(std::move(q)), r};
    }

    Poly derivative() const
    {
        if (c_.size() <= 1) return Poly();
        std::vector<K> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * K(static_cast<int>(i));
        return Poly(std::move(v));
    }

    Poly monic() const
    {
        if (is_zero()) return *this;
        return *this / lc();
    }

    /// Substitute t -> s*t (scale the variable).
    Poly scale_var(const K& s) const
    {
        std::vector<K> v = c_;
        K pw(1);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = v[i] * pw;
            pw = pw * s;
        }
        return Poly(std::move(v));
    }

    std::string str(const std::string& var = "t") const;

  private:
    std::vector<K> c_;
    void trim()
    {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
};

template <class K>
Poly<K> gcd_monic(Poly<K> a, Poly<K> b)
{
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r.is_zero() ? r : r.monic();  // keep coefficients small
    }
    return a.is_zero() ? a : a.monic();
}

template <class K>
std::string Poly<K>::str(const std::string& var) const
{
    if (is_zero()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
        K c = coeff(static_cast<std::size_t>(i));
        if (c == K(0)) continue;
        std::string cs;
        if constexpr (requires(const K& x) { to_string(x); })
            cs = to_string(c);
        else
            cs = c.str();
        if (!s.empty()) {
            if (!cs.empty() && cs[0] == '-') {
                s += " - ";
                cs = cs.substr(1);
            } else {
                s += " + ";
            }
        }
        if (i == 0) {
            s += cs;
        } else {
            if (cs != "1") {
                if (cs == "-1")
                    s += "-";
                else
                    s += cs + "*";
            }
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

using QPoly = Poly<Rational>;

/// Factorization of a nonzero rational polynomial into monic irreducibles.
struct PolyFactorization {
    Rational unit = 1;  // leading rational so that unit * prod(fac^exp) = input
    std::vector<std::pair<QPoly, unsigned>> factors;
};

/// Deterministic factorization over Q (content + squarefree + Zassenhaus).
/// Throws std::runtime_error when the degree exceeds the budget.
PolyFactorization factor_poly(const QPoly& f, long degree_budget = 12);

/// Rational function over Q in one variable: num/den, coprime, monic den.
class RationalFunction {
  public:
    RationalFunction() : num_(Rational(0)), den_(Rational(1)) {}
    RationalFunction(QPoly numerator, QPoly denominator);
    RationalFunction(Rational c) : num_(std::move(c)), den_(Rational(1)) {}  // NOLINT

    static RationalFunction t() { return RationalFunction(QPoly::t(), QPoly(Rational(1))); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b)
    {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b)
    {
        return !(a == b);
    }

    /// Evaluation; nullopt at poles.
    std::optional<Rational> operator()(const Rational& x) const
    {
        Rational d = den_(x);
        if (d == 0) return std::nullopt;
        return num_(x) / d;
    }

    /// Canonical factorization: unit * prod P_i^{e_i} with monic irreducible
    /// P_i and integer exponents (negative for denominator factors).
    struct Factorization {
        Rational unit = 1;
        std::vector<std::pair<QPoly, long>> factors;
    };
    const Factorization& factorization(long degree_budget = 12) const;

    std::string str(const std::string& var = "t") const;

  private:
    QPoly num_, den_;
    mutable std::optional<Factorization> fact_;
};

}  // namespace aq

#endif
