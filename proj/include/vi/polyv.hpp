#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vi/rational.hpp"

namespace vi {

// Polynomials in the cobordism generators v_1, v_2, ... over Q, truncated by
// weighted degree (v_k has weight k). The truncation cap travels with the
// value, like a series order; operations take the min of the operand caps.
class PolyV {
  public:
    static constexpr long CAP_INF = 1L << 30;
    using Expo = std::vector<long>;  // exponents of v_1..v_k (trailing zeros trimmed)

    PolyV() : cap_(CAP_INF) {}
    explicit PolyV(Rational c, long cap = CAP_INF) : cap_(cap) {
        if (!c.is_zero()) terms_[Expo{}] = std::move(c);
    }

    static PolyV zero() { return PolyV(); }
    static PolyV one() { return PolyV(Rational::one()); }
    static PolyV from(const Rational& r) { return PolyV(r); }
    static PolyV gen(long k, long cap = CAP_INF) {  // v_k
        PolyV p(Rational::zero(), cap);
        if (k < 1) throw std::domain_error("PolyV: generator index >= 1");
        if (k <= cap) {
            Expo e((size_t)k, 0);
            e[(size_t)k - 1] = 1;
            p.terms_[e] = Rational::one();
        }
        return p;
    }

    static long weight(const Expo& e) {
        long w = 0;
        for (size_t i = 0; i < e.size(); ++i) w += (long)(i + 1) * e[i];
        return w;
    }

    long cap() const { return cap_; }
    const std::map<Expo, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_unit() const {
        auto it = terms_.find(Expo{});
        return it != terms_.end() && !it->second.is_zero();
    }
    Rational constant_term() const {
        auto it = terms_.find(Expo{});
        return it == terms_.end() ? Rational::zero() : it->second;
    }
    Rational coeff(const Expo& e) const {
        Expo key = e;
        while (!key.empty() && key.back() == 0) key.pop_back();
        auto it = terms_.find(key);
        return it == terms_.end() ? Rational::zero() : it->second;
    }

    PolyV with_cap(long cap) const {
        PolyV r;
        r.cap_ = std::min(cap_, cap);
        for (auto& [e, c] : terms_)
            if (weight(e) <= r.cap_) r.terms_[e] = c;
        return r;
    }

    PolyV operator-() const {
        PolyV r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    PolyV operator+(const PolyV& o) const {
        PolyV r = with_cap(o.cap_);
        for (auto& [e, c] : o.terms_) {
            if (weight(e) > r.cap_) continue;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                r.terms_[e] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    PolyV operator-(const PolyV& o) const { return *this + (-o); }
    PolyV operator*(const PolyV& o) const {
        PolyV r;
        r.cap_ = std::min(cap_, o.cap_);
        for (auto& [e1, c1] : terms_) {
            long w1 = weight(e1);
            if (w1 > r.cap_) continue;
            for (auto& [e2, c2] : o.terms_) {
                if (w1 + weight(e2) > r.cap_) continue;
                Expo e(std::max(e1.size(), e2.size()), 0);
                for (size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
                for (size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
                Rational p = c1 * c2;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    if (!p.is_zero()) r.terms_[e] = p;
                } else {
                    it->second += p;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        return r;
    }
    PolyV& operator+=(const PolyV& o) { return *this = *this + o; }
    PolyV& operator*=(const PolyV& o) { return *this = *this * o; }

    PolyV scaled(const Rational& s) const {
        if (s.is_zero()) return PolyV(Rational::zero(), cap_);
        PolyV r = *this;
        for (auto& [e, c] : r.terms_) c *= s;
        return r;
    }

    PolyV inverse() const {
        Rational c0 = constant_term();
        if (c0.is_zero()) throw std::domain_error("PolyV: non-unit");
        if (cap_ >= CAP_INF && terms_.size() > 1)
            throw std::domain_error("PolyV: inverting untruncated polynomial; set a cap first");
        // geometric series in the augmentation part
        PolyV h = (*this).scaled(c0.inverse());
        h.terms_.erase(Expo{});
        PolyV acc = PolyV(Rational::one(), cap_), pw = PolyV(Rational::one(), cap_);
        for (long k = 1; k <= cap_ && !h.is_zero(); ++k) {
            pw = pw * h;
            if (pw.is_zero()) break;
            acc = (k % 2 == 1) ? acc - pw : acc + pw;
        }
        return acc.scaled(c0.inverse());
    }

    PolyV pow_int(long e) const {
        if (e == 0) return PolyV(Rational::one(), cap_);
        if (e < 0) return inverse().pow_int(-e);
        PolyV r(Rational::one(), cap_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const PolyV& o) const { return terms_ == o.terms_; }
    bool operator!=(const PolyV& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.str();
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                s += "*v" + std::to_string(i + 1);
                if (e[i] > 1) s += "^" + std::to_string(e[i]);
            }
        }
        return s;
    }

  private:
    long cap_;
    std::map<Expo, Rational> terms_;
};

}  // namespace vi
