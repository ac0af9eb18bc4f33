#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace vi {

// Arbitrary-precision rational, always reduced, denominator > 0.
// Thin value wrapper around GMP's mpq_class so the rest of the code
// never touches GMP directly.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) { v_.canonicalize(); }
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const std::string& s) : v_(s) { v_.canonicalize(); }

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }
    static Rational from(const Rational& r) { return r; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_unit() const { return !is_zero(); }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / v_));
    }
    Rational scaled(const Rational& r) const { return *this * r; }

    Rational pow_int(long e) const {
        if (e == 0) return one();
        mpq_class base = e > 0 ? v_ : mpq_class(1 / v_);
        unsigned long k = e > 0 ? (unsigned long)e : (unsigned long)(-e);
        mpq_class num, den;
        mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(), k);
        mpz_pow_ui(den.get_num_mpz_t(), base.get_den_mpz_t(), k);
        return Rational(mpq_class(num.get_num(), den.get_num()));
    }

    // Exact n-th root when one exists in Q (n >= 1). For even n the input
    // must be >= 0; the non-negative root is returned.
    std::optional<Rational> nth_root(long n) const {
        if (n <= 0) throw std::domain_error("Rational: nth_root needs n >= 1");
        if (n == 1) return *this;
        if (is_zero()) return zero();
        if (sign() < 0 && n % 2 == 0) return std::nullopt;
        mpz_class num = v_.get_num(), den = v_.get_den();
        bool neg = sgn(num) < 0;
        if (neg) num = -num;
        mpz_class rn, rd;
        if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), (unsigned long)n)) return std::nullopt;
        if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), (unsigned long)n)) return std::nullopt;
        if (neg) rn = -rn;
        return Rational(mpq_class(rn, rd));
    }

    long num_long() const {
        if (!v_.get_num().fits_slong_p()) throw std::overflow_error("Rational: numerator too large");
        return v_.get_num().get_si();
    }
    long den_long() const {
        if (!v_.get_den().fits_slong_p()) throw std::overflow_error("Rational: denominator too large");
        return v_.get_den().get_si();
    }
    long to_long() const {
        if (!is_integer()) throw std::domain_error("Rational: not an integer: " + str());
        return num_long();
    }

    // "num/den" (or plain "num" for integers), the exact format used in all
    // serialized output.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }
    static Rational parse(const std::string& s) { return Rational(s); }

    const mpq_class& raw() const { return v_; }

  private:
    mpq_class v_;
};

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

inline Rational rational_gcd(const Rational& a, const Rational& b) {
    // gcd of numerators over lcm of denominators; used for content extraction.
    mpz_class g, l;
    mpz_gcd(g.get_mpz_t(), a.raw().get_num_mpz_t(), b.raw().get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), a.raw().get_den_mpz_t(), b.raw().get_den_mpz_t());
    return Rational(mpq_class(g, l));
}

inline long lcm_long(long a, long b) {
    mpz_class r;
    mpz_class ma(a), mb(b);
    mpz_lcm(r.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
    if (!r.fits_slong_p()) throw std::overflow_error("lcm overflow");
    return r.get_si();
}

inline long gcd_long(long a, long b) {
    mpz_class r;
    mpz_class ma(a), mb(b);
    mpz_gcd(r.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
    return r.get_si();
}

}  // namespace vi
