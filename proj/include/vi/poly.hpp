#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "vi/rational.hpp"

namespace vi {

// Dense univariate polynomial over Rational, ascending degree.
// The variable name is contextual (t, u, ...); Poly itself is nameless.
class Poly {
  public:
    Poly() {}
    explicit Poly(Rational c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rational::one()); }
    static Poly monomial(const Rational& c, size_t k) {
        Poly p;
        if (c.is_zero()) return p;
        p.c_.assign(k + 1, Rational::zero());
        p.c_[k] = c;
        return p;
    }
    // c1*x + c0
    static Poly linear(const Rational& c1, const Rational& c0) {
        return Poly(std::vector<Rational>{c0, c1});
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return (long)c_.size() - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(size_t k) const { return k < c_.size() ? c_[k] : Rational::zero(); }
    const Rational& leading() const {
        if (c_.empty()) throw std::domain_error("Poly: leading of zero");
        return c_.back();
    }
    // lowest nonzero degree; -1 for zero poly
    long valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return (long)i;
        return -1;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    Poly operator+(const Poly& o) const {
        Poly r;
        r.c_.resize(std::max(c_.size(), o.c_.size()), Rational::zero());
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        Poly r;
        r.c_.assign(c_.size() + o.c_.size() - 1, Rational::zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                if (!o.c_[j].is_zero()) r.c_[i + j] += c_[i] * o.c_[j];
        }
        r.trim();
        return r;
    }
    Poly scaled(const Rational& s) const {
        if (s.is_zero()) return Poly();
        Poly r = *this;
        for (auto& c : r.c_) c *= s;
        return r;
    }
    Poly shifted(size_t k) const {  // * x^k
        if (is_zero() || k == 0) return *this;
        Poly r;
        r.c_.assign(c_.size() + k, Rational::zero());
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(long e) const {
        if (e < 0) throw std::domain_error("Poly: negative power");
        Poly r = one(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Euclidean division; remainder degree < divisor degree.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        q = Poly();
        r = a;
        long db = b.degree();
        Rational lb = b.leading().inverse();
        while (!r.is_zero() && r.degree() >= db) {
            long k = r.degree() - db;
            Rational c = r.leading() * lb;
            Poly term = monomial(c, (size_t)k);
            q = q + term;
            r = r - term * b;
        }
    }
    Poly operator/(const Poly& o) const {
        Poly q, r;
        divmod(*this, o, q, r);
        if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
        return q;
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.scaled(a.leading().inverse());  // monic
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        Poly r;
        r.c_.resize(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i].scaled(Rational((long)i));
        r.trim();
        return r;
    }

    Rational eval(const Rational& x) const {  // Horner
        Rational r = Rational::zero();
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    std::string str(const std::string& var) const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].str();
            if (i >= 1) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace vi
