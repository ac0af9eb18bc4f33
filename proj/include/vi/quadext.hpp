#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "vi/rational.hpp"

namespace vi {

// Q(sqrt(D)) for a fixed squarefree integer D (also used with D = -1 for
// Gaussian rationals and D = -3 for the Eisenstein prefactors). Elements
// a + b*sqrt(D). D is carried per value; mixing different D is an error
// except that "rational" values (b = 0) coerce freely.
class QuadExt {
  public:
    QuadExt() : a_(), b_(), d_(0) {}
    QuadExt(Rational a) : a_(std::move(a)), b_(), d_(0) {}
    // the radicand tag is kept even on rational values so the ambient field
    // stays known; D = 0 means "plain rational, any field"
    QuadExt(Rational a, Rational b, long D) : a_(std::move(a)), b_(std::move(b)), d_(D) {}
    static QuadExt zero() { return QuadExt(); }
    static QuadExt one() { return QuadExt(Rational::one()); }
    static QuadExt from(const Rational& r) { return QuadExt(r); }
    static QuadExt sqrt_of(long D) { return QuadExt(Rational::zero(), Rational::one(), D); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long D() const { return d_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }
    Rational rational_part() const { return a_; }
    Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("QuadExt: not rational: " + str());
        return a_;
    }

    bool is_unit() const { return !is_zero(); }

    QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
    QuadExt operator+(const QuadExt& o) const {
        long D = merge(d_, o.d_);
        return QuadExt(a_ + o.a_, b_ + o.b_, D);
    }
    QuadExt operator-(const QuadExt& o) const { return *this + (-o); }
    QuadExt operator*(const QuadExt& o) const {
        long D = merge(d_, o.d_);
        return QuadExt(a_ * o.a_ + (b_ * o.b_).scaled(Rational(D)), a_ * o.b_ + b_ * o.a_, D);
    }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

    QuadExt conj() const { return QuadExt(a_, -b_, d_); }
    Rational norm() const { return a_ * a_ - (b_ * b_).scaled(Rational(d_)); }

    QuadExt inverse() const {
        Rational n = norm();
        if (n.is_zero()) throw std::domain_error("QuadExt: non-unit");
        Rational ni = n.inverse();
        return QuadExt(a_ * ni, -(b_ * ni), d_);
    }
    QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }
    QuadExt scaled(const Rational& s) const { return QuadExt(a_ * s, b_ * s, d_); }

    QuadExt pow_int(long e) const {
        if (e == 0) return one();
        QuadExt base = e > 0 ? *this : inverse();
        unsigned long k = e > 0 ? (unsigned long)e : (unsigned long)(-e);
        QuadExt r = one();
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    bool operator==(const QuadExt& o) const {
        return a_ == o.a_ && b_ == o.b_ && (b_.is_zero() || d_ == o.d_);
    }
    bool operator!=(const QuadExt& o) const { return !(*this == o); }

    // square root inside the same field, when it exists: handles r*1 with r a
    // square, r*1 with r/D a square, and the general (p+q*sqrt(D))^2 pattern.
    std::optional<QuadExt> sqrt_in_field(long D) const {
        if (is_zero()) return zero();
        if (is_rational()) {
            if (auto r = a_.nth_root(2)) return QuadExt(*r);
            Rational q = a_ / Rational(D);
            if (auto r = q.nth_root(2); r && (D > 0 || a_.sign() < 0 || true)) {
                // (r*sqrt(D))^2 = r^2*D = a
                if ((*r * *r).scaled(Rational(D)) == a_) return QuadExt(Rational::zero(), *r, D);
            }
            return std::nullopt;
        }
        // (p + q sqrt(D))^2 = a + b sqrt(D):  p^2 + D q^2 = a, 2pq = b
        // p^2 solves X^2 - a X + D b^2/4 = 0
        Rational disc = a_ * a_ - (b_ * b_).scaled(Rational(d_));
        auto sd = disc.nth_root(2);
        if (!sd) return std::nullopt;
        for (int sign : {+1, -1}) {
            Rational p2 = (a_ + sd->scaled(Rational(sign))).scaled(Rational(1, 2));
            if (auto p = p2.nth_root(2)) {
                if (!p->is_zero()) {
                    Rational q = b_ / (Rational(2) * *p);
                    QuadExt cand(*p, q, d_);
                    if (cand * cand == *this) return cand;
                }
            }
        }
        return std::nullopt;
    }

    std::string str() const {
        if (is_rational()) return a_.str();
        return a_.str() + " + (" + b_.str() + ")*sqrt(" + std::to_string(d_) + ")";
    }

  private:
    static long merge(long d1, long d2) {
        if (d1 == 0) return d2;
        if (d2 == 0) return d1;
        if (d1 != d2) throw std::domain_error("QuadExt: mixing different radicands");
        return d1;
    }
    Rational a_, b_;
    long d_;
};

// Exact scalar in {1,i,-1,-i} x {1,eps,eps^2}, eps = exp(2*pi*i/3).
// Tracks the i^(c1^2) and eps^((a-b)c1) prefactors of the conjecture
// evaluators; any value consumed by series arithmetic must first be
// converted, and final results assert rationality.
struct RootOfUnity {
    int i_pow = 0;    // mod 4
    int eps_pow = 0;  // mod 3

    static RootOfUnity i_to(long k) { return RootOfUnity{(int)(((k % 4) + 4) % 4), 0}; }
    static RootOfUnity eps_to(long k) { return RootOfUnity{0, (int)(((k % 3) + 3) % 3)}; }

    RootOfUnity operator*(const RootOfUnity& o) const {
        return RootOfUnity{(i_pow + o.i_pow) % 4, (eps_pow + o.eps_pow) % 3};
    }
    bool is_real_rational() const { return i_pow % 2 == 0 && eps_pow == 0; }
    // value as element of Q(i) (eps_pow must be 0)
    QuadExt gauss() const {
        if (eps_pow != 0) throw std::domain_error("RootOfUnity: eps part present");
        switch (i_pow) {
            case 0: return QuadExt(Rational(1));
            case 1: return QuadExt(Rational(0), Rational(1), -1);
            case 2: return QuadExt(Rational(-1));
            default: return QuadExt(Rational(0), Rational(-1), -1);
        }
    }
    // value as element of Q(sqrt(-3)) (i_pow must be even)
    QuadExt eisenstein() const {
        if (i_pow % 2 != 0) throw std::domain_error("RootOfUnity: i part present");
        Rational sign(i_pow == 0 ? 1 : -1);
        switch (eps_pow) {
            case 0: return QuadExt(sign);
            case 1: return QuadExt(Rational(-1, 2), Rational(1, 2), -3).scaled(sign);
            default: return QuadExt(Rational(-1, 2), Rational(-1, 2), -3).scaled(sign);
        }
    }
};

}  // namespace vi
