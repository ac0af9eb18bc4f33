#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "vi/poly.hpp"

namespace vi {

// Rational function num/den over Q in one anonymous variable, kept reduced
// with monic denominator. Serves as the coefficient field Q(t) of the
// universal series and as Q(u), u = y^(1/2), for refined invariants.
class RatFunc {
  public:
    RatFunc() : num_(), den_(Poly::one()) {}
    RatFunc(Rational c) : num_(Poly(std::move(c))), den_(Poly::one()) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one()) {}

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Rational::one()); }
    static RatFunc from(const Rational& r) { return RatFunc(r); }
    static RatFunc var() { return RatFunc(Poly::monomial(Rational::one(), 1)); }
    // (a*x + b) as a rational function
    static RatFunc linear(const Rational& a, const Rational& b) { return RatFunc(Poly::linear(a, b)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_unit() const { return !is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    Rational constant() const {
        if (!is_constant()) throw std::domain_error("RatFunc: not constant");
        return num_.coeff(0) / den_.coeff(0);
    }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc operator-() const { return RatFunc(-num_, den_, no_reduce{}); }
    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return RatFunc(den_, num_);
    }
    RatFunc scaled(const Rational& s) const { return RatFunc(num_.scaled(s), den_, no_reduce{}); }

    RatFunc pow_int(long e) const {
        if (e == 0) return one();
        if (e < 0) return inverse().pow_int(-e);
        return RatFunc(num_.pow(e), den_.pow(e), no_reduce{});
    }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    Rational eval(const Rational& x) const {
        Rational d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("RatFunc: pole at evaluation point");
        return num_.eval(x) / d;
    }

    // f(x^k) for k >= 1, exact.
    RatFunc substitute_power(long k) const {
        if (k < 1) throw std::domain_error("RatFunc: substitute_power needs k >= 1");
        if (k == 1) return *this;
        auto stretch = [&](const Poly& p) {
            if (p.is_zero()) return Poly();
            std::vector<Rational> c((size_t)(p.degree() * k) + 1, Rational::zero());
            for (long i = 0; i <= p.degree(); ++i) c[(size_t)(i * k)] = p.coeff((size_t)i);
            return Poly(std::move(c));
        };
        return RatFunc(stretch(num_), stretch(den_));
    }

    // f(1/x), exact.
    RatFunc invert_variable() const {
        auto rev = [](const Poly& p, long up_to) {
            std::vector<Rational> c((size_t)up_to + 1, Rational::zero());
            for (long i = 0; i <= p.degree(); ++i) c[(size_t)(up_to - i)] = p.coeff((size_t)i);
            return Poly(std::move(c));
        };
        long d = std::max(num_.degree(), den_.degree());
        if (d < 0) return zero();
        return RatFunc(rev(num_, d), rev(den_, d));
    }

    // order of vanishing at 0 (negative for a pole)
    long valuation_at_zero() const {
        if (is_zero()) throw std::domain_error("RatFunc: valuation of zero");
        return num_.valuation() - den_.valuation();
    }

    // Coefficient of x^k in the Laurent expansion at 0.
    Rational laurent_coeff(long k) const {
        if (is_zero()) return Rational::zero();
        long vn = num_.valuation(), vd = den_.valuation();
        long rel = k - (vn - vd);  // index in the unit-part expansion
        if (rel < 0) return Rational::zero();
        // expand (num/x^vn) / (den/x^vd) to order rel
        std::vector<Rational> n, d;
        for (long i = vn; i <= num_.degree(); ++i) n.push_back(num_.coeff((size_t)i));
        for (long i = vd; i <= den_.degree(); ++i) d.push_back(den_.coeff((size_t)i));
        std::vector<Rational> inv((size_t)rel + 1, Rational::zero());
        Rational d0 = d[0].inverse();
        std::vector<Rational> series((size_t)rel + 1, Rational::zero());
        // series = n * d^{-1} mod x^{rel+1}
        inv[0] = d0;
        for (long i = 1; i <= rel; ++i) {
            Rational s = Rational::zero();
            for (long j = 1; j <= i && (size_t)j < d.size(); ++j) s += d[(size_t)j] * inv[(size_t)(i - j)];
            inv[(size_t)i] = -(d0 * s);
        }
        Rational out = Rational::zero();
        for (long j = 0; j <= rel && (size_t)j < n.size(); ++j) out += n[(size_t)j] * inv[(size_t)(rel - j)];
        return out;
    }

    // residue at 0: coefficient of x^{-1}
    Rational residue_at_zero() const { return laurent_coeff(-1); }

    // Laurent-polynomial test/extraction: after reduction, den must be c*x^k.
    bool is_laurent() const {
        if (is_zero()) return true;
        return den_.valuation() == den_.degree();
    }
    std::map<long, Rational> laurent_terms() const {
        if (!is_laurent()) throw std::domain_error("RatFunc: not a Laurent polynomial");
        std::map<long, Rational> out;
        if (is_zero()) return out;
        long shift = den_.degree();
        Rational c = den_.coeff((size_t)shift).inverse();
        for (long i = 0; i <= num_.degree(); ++i) {
            Rational a = num_.coeff((size_t)i);
            if (!a.is_zero()) out[i - shift] = a * c;
        }
        return out;
    }
    static RatFunc from_laurent(const std::map<long, Rational>& terms) {
        long shift = 0;
        for (auto& [k, c] : terms)
            if (k < shift) shift = k;
        Poly num;
        for (auto& [k, c] : terms) num = num + Poly::monomial(c, (size_t)(k - shift));
        return RatFunc(num, Poly::monomial(Rational::one(), (size_t)(-shift)));
    }

    // Symmetry check f(x) == f(1/x); used for chi_y-type outputs in u = y^{1/2}.
    bool is_symmetric_under_inversion() const { return *this == invert_variable(); }

    std::string str(const std::string& var) const {
        if (is_polynomial()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

  private:
    struct no_reduce {};
    RatFunc(Poly num, Poly den, no_reduce) : num_(std::move(num)), den_(std::move(den)) {}
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::one();
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        Rational l = den_.leading().inverse();  // monic denominator
        num_ = num_.scaled(l);
        den_ = den_.scaled(l);
    }
    Poly num_, den_;
};

}  // namespace vi
