#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "vi/quadext.hpp"
#include "vi/ratfunc.hpp"
#include "vi/rational.hpp"

namespace vi {

// ---------------------------------------------------------------------------
// Domain helpers. A coefficient domain D must provide:
//   default ctor == zero, is_zero(), is_unit(), inverse(), scaled(Rational),
//   pow_int(long), unary -, +, -, *, ==.
// domain_one / domain_from_rational / domain_nth_root adapt the rest.
// ---------------------------------------------------------------------------

template <class D>
D domain_one() {
    return D::one();
}
template <class D>
D domain_from_rational(const Rational& r) {
    return D::from(r);
}

template <class D>
std::optional<D> domain_nth_root(const D& c, long q);

template <>
inline std::optional<Rational> domain_nth_root<Rational>(const Rational& c, long q) {
    return c.nth_root(q);
}
template <>
inline std::optional<QuadExt> domain_nth_root<QuadExt>(const QuadExt& c, long q) {
    if (c == QuadExt::one()) return QuadExt::one();
    if (q == 2) {
        long D = c.D() != 0 ? c.D() : 1;
        return c.sqrt_in_field(D == 0 ? 1 : D);
    }
    if (c.is_rational()) {
        if (auto r = c.rational_part().nth_root(q)) return QuadExt(*r);
    }
    return std::nullopt;
}
template <>
inline std::optional<RatFunc> domain_nth_root<RatFunc>(const RatFunc& c, long q) {
    if (c == RatFunc::one()) return RatFunc::one();
    if (c.is_constant()) {
        if (auto r = c.constant().nth_root(q)) return RatFunc(*r);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Truncated Puiseux/Laurent series.
//
// Exponents live on the lattice (1/den)*Z; `terms` maps the integer key
// k <-> exponent k/den. `ord` is the truncation bound on the same lattice:
// coefficients at exponents < ord/den are determined, everything at or
// above is unknown. ORD_INF marks exact (untruncated) values such as
// polynomials and scalars. All operations compute the tightest sound
// output order.
// ---------------------------------------------------------------------------

inline constexpr long long ORD_INF = (1LL << 62);

inline long long ord_add(long long a, long long b) {
    if (a >= ORD_INF / 2 || b >= ORD_INF / 2) return ORD_INF;
    return a + b;
}

template <class D>
class Series {
  public:
    using Dom = D;

    Series() : var_(), den_(1), ord_(ORD_INF) {}

    static Series zero(std::string var, long den = 1, long long ord = ORD_INF) {
        Series s;
        s.var_ = std::move(var);
        s.den_ = den;
        s.ord_ = ord;
        return s;
    }
    static Series constant(D c, std::string var = "") {
        Series s;
        s.var_ = std::move(var);
        if (!c.is_zero()) s.terms_[0] = std::move(c);
        return s;
    }
    static Series one(std::string var) { return constant(domain_one<D>(), std::move(var)); }
    // domain-style interface so a Series can itself be a coefficient domain
    static Series one() { return constant(domain_one<D>(), ""); }
    static Series from(const Rational& r) { return constant(domain_from_rational<D>(r)); }
    // c * x^(num/den)
    static Series monomial(D c, std::string var, long num, long den = 1) {
        Series s;
        s.var_ = std::move(var);
        s.den_ = den;
        if (!c.is_zero()) s.terms_[num] = std::move(c);
        s.normalize_lattice();
        return s;
    }
    static Series variable(std::string var) {
        return monomial(domain_one<D>(), std::move(var), 1, 1);
    }

    const std::string& var() const { return var_; }
    long den() const { return den_; }
    long long ord_key() const { return ord_; }
    Rational order() const {
        if (ord_ >= ORD_INF) throw std::domain_error("Series: order is infinite");
        return Rational(ord_, den_);
    }
    bool exact() const { return ord_ >= ORD_INF; }
    const std::map<long long, D>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_unit() const { return !terms_.empty() && terms_.begin()->second.is_unit(); }

    // valuation; for a zero series this is the truncation order (sound lower bound)
    long long val_key() const { return terms_.empty() ? ord_ : terms_.begin()->first; }
    Rational valuation() const {
        if (terms_.empty() && ord_ >= ORD_INF) throw std::domain_error("Series: valuation of exact zero");
        return Rational(val_key(), den_);
    }

    D coeff(const Rational& e) const {
        Rational scaled = e.scaled(Rational(den_));
        if (!scaled.is_integer()) {
            if (Rational(ord_, den_) <= e && !exact())
                throw std::domain_error("Series: coefficient beyond truncation order");
            return D();
        }
        long long k = scaled.to_long();
        if (k >= ord_) throw std::domain_error("Series: coefficient beyond truncation order");
        auto it = terms_.find(k);
        return it == terms_.end() ? D() : it->second;
    }
    D coeff_int(long e) const { return coeff(Rational(e)); }
    D constant_term() const { return coeff(Rational(0)); }

    Series truncated(const Rational& new_ord) const {
        Series r = *this;
        Rational k = new_ord.scaled(Rational(den_));
        long long key;
        if (k.is_integer()) {
            key = k.to_long();
        } else {
            // push up to the next lattice point
            key = (k.num_long() >= 0) ? (k.num_long() / k.den_long() + 1)
                                      : -((-k.num_long()) / k.den_long());
        }
        if (key < r.ord_) {
            r.ord_ = key;
            r.terms_.erase(r.terms_.lower_bound(key), r.terms_.end());
        }
        return r;
    }

    Series operator-() const {
        Series r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }

    Series operator+(const Series& o) const {
        auto [a, b] = aligned(*this, o);
        a.ord_ = std::min(a.ord_, b.ord_);
        a.terms_.erase(a.terms_.lower_bound(a.ord_), a.terms_.end());
        for (auto& [k, c] : b.terms_) {
            if (k >= a.ord_) break;
            auto it = a.terms_.find(k);
            if (it == a.terms_.end()) {
                a.terms_[k] = c;
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) a.terms_.erase(it);
            }
        }
        return a;
    }
    Series operator-(const Series& o) const { return *this + (-o); }

    Series operator*(const Series& o) const {
        auto [a, b] = aligned(*this, o);
        Series r;
        r.var_ = a.var_;
        r.den_ = a.den_;
        r.ord_ = std::min(ord_add(a.ord_, b.val_key()), ord_add(b.ord_, a.val_key()));
        for (auto& [ka, ca] : a.terms_) {
            if (ca.is_zero()) continue;
            for (auto& [kb, cb] : b.terms_) {
                long long k = ka + kb;
                if (k >= r.ord_) break;
                D p = ca * cb;
                if (p.is_zero()) continue;
                auto it = r.terms_.find(k);
                if (it == r.terms_.end()) {
                    r.terms_[k] = std::move(p);
                } else {
                    it->second = it->second + p;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        r.normalize_lattice();
        return r;
    }
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const Rational& s) const {
        Series r = *this;
        if (s.is_zero()) {
            r.terms_.clear();
            return r;
        }
        for (auto& [k, c] : r.terms_) c = c.scaled(s);
        return r;
    }
    Series scaled_by(const D& s) const {
        Series r = *this;
        if (s.is_zero()) {
            r.terms_.clear();
            return r;
        }
        for (auto it = r.terms_.begin(); it != r.terms_.end();) {
            it->second = it->second * s;
            if (it->second.is_zero())
                it = r.terms_.erase(it);
            else
                ++it;
        }
        return r;
    }

    // multiply by x^(num/den2)
    Series shifted(long num, long den2 = 1) const {
        Series r = with_den(lcm_long(den_, den2));
        long long delta = (long long)num * (r.den_ / den2);
        std::map<long long, D> t;
        for (auto& [k, c] : r.terms_) t[k + delta] = c;
        r.terms_ = std::move(t);
        r.ord_ = ord_add(r.ord_, delta);
        return r;
    }

    // 1/this; leading coefficient must be a unit.
    Series invert() const {
        if (terms_.empty()) throw std::domain_error("Series: inverting zero");
        long long v = val_key();
        const D& lead = terms_.begin()->second;
        if (!lead.is_unit()) throw std::domain_error("Series: leading coefficient is not a unit");
        // relative order of the unit part
        long long rel = ord_ >= ORD_INF ? ORD_INF : ord_ - v;
        D lead_inv = lead.inverse();
        // h := this / (lead * x^v) - 1, then invert 1+h by recursion
        std::map<long long, D> h;
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            h[it->first - v] = it->second * lead_inv;
        std::map<long long, D> inv;  // coefficients of (1+h)^{-1}
        inv[0] = domain_one<D>();
        if (rel >= ORD_INF && !h.empty()) {
            // exact input with more than one term: inverse is an infinite
            // series; caller must truncate first
            throw std::domain_error("Series: inverting exact multi-term series; truncate first");
        }
        for (long long k = 1; k < (rel >= ORD_INF ? 1 : rel); ++k) {
            D s;
            for (auto& [d, hc] : h) {
                if (d > k) break;
                auto it = inv.find(k - d);
                if (it != inv.end()) s = s + hc * it->second;
            }
            if (!s.is_zero()) inv[k] = -s;
        }
        Series r;
        r.var_ = var_;
        r.den_ = den_;
        r.ord_ = rel >= ORD_INF ? ORD_INF : ord_ - 2 * v;
        for (auto& [k, c] : inv) {
            if (k - v >= r.ord_) continue;
            D cc = c * lead_inv;
            if (!cc.is_zero()) r.terms_[k - v] = std::move(cc);
        }
        return r;
    }
    Series inverse() const { return invert(); }

    Series pow_int(long e) const {
        if (e == 0) return one(var_);
        if (e < 0) return invert().pow_int(-e);
        Series r = one(var_), b = *this;
        // order of a power of a truncated series is capped by the base order
        long e0 = e;
        while (e0) {
            if (e0 & 1) r = r * b;
            b = (e0 >>= 1) ? b * b : b;
        }
        return r;
    }

    // this^(p/q). Requires `this = c x^v (1+h)` with c admitting a q-th root
    // in the domain and v*(p/q) landing on a lattice.
    Series pow_rational(const Rational& e) const {
        if (e.is_integer()) return pow_int(e.to_long());
        if (terms_.empty()) throw std::domain_error("Series: fractional power of zero");
        long long v = val_key();
        const D& lead = terms_.begin()->second;
        long q = e.den_long();
        auto root = domain_nth_root<D>(lead, q);
        if (!root) throw std::domain_error("Series: leading coefficient admits no q-th root");
        D c_pow = root->pow_int(e.num_long());
        // exponent of the prefactor: v/den * e
        Rational ve = Rational(v, den_) * e;
        long new_den = lcm_long(den_, ve.den_long());
        // unit part 1+h
        D lead_inv = lead.inverse();
        Series h;
        h.var_ = var_;
        h.den_ = den_;
        h.ord_ = ord_ >= ORD_INF ? ORD_INF : ord_ - v;
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            h.terms_[it->first - v] = it->second * lead_inv;
        if (h.ord_ >= ORD_INF && !h.is_zero())
            throw std::domain_error("Series: fractional power of exact multi-term series; truncate first");
        Series unit_pow = (h.is_zero() && h.ord_ >= ORD_INF)
                              ? one(var_)
                              : exp(log1p(h).scaled(e));
        Series r = unit_pow.scaled_by(c_pow);
        r = r.with_den(new_den);
        long long shift_key = (ve.scaled(Rational(new_den))).to_long();
        std::map<long long, D> t;
        for (auto& [k, c] : r.terms_) t[k + shift_key] = c;
        r.terms_ = std::move(t);
        r.ord_ = ord_add(r.ord_, shift_key);
        return r;
    }

    // formal exp of a series with positive valuation
    static Series exp(const Series& f) {
        if (!f.terms_.empty() && f.val_key() <= 0)
            throw std::domain_error("Series: exp needs positive valuation");
        if (f.ord_ >= ORD_INF && !f.terms_.empty())
            throw std::domain_error("Series: exp of exact nonzero series; truncate first");
        Series r;
        r.var_ = f.var_;
        r.den_ = f.den_;
        r.ord_ = f.ord_;
        if (f.ord_ >= ORD_INF) {  // exp(0) = 1 exactly
            r.terms_[0] = domain_one<D>();
            return r;
        }
        // E' = f' E  =>  k E_k = sum_d d f_d E_{k-d}
        std::map<long long, D> E;
        E[0] = domain_one<D>();
        for (long long k = 1; k < f.ord_; ++k) {
            D s;
            bool any = false;
            for (auto& [d, fd] : f.terms_) {
                if (d > k) break;
                auto it = E.find(k - d);
                if (it == E.end()) continue;
                s = s + (fd * it->second).scaled(Rational(d));
                any = true;
            }
            if (any && !s.is_zero()) E[k] = s.scaled(Rational(1, k));
        }
        for (auto& [k, c] : E)
            if (!c.is_zero()) r.terms_[k] = c;
        return r;
    }

    // formal log of 1 + h, h of positive valuation (input is h, not 1+h)
    static Series log1p(const Series& h) {
        if (!h.terms_.empty() && h.val_key() <= 0)
            throw std::domain_error("Series: log1p needs positive valuation");
        Series r;
        r.var_ = h.var_;
        r.den_ = h.den_;
        r.ord_ = h.ord_;
        if (h.is_zero()) return r;
        // L = sum_{m>=1} (-1)^{m+1} h^m / m, bounded by valuation
        long long v = h.val_key();
        long max_m = (long)((r.ord_ + v - 1) / v);
        Series hm = h, acc = zero(h.var_, h.den_, h.ord_);
        for (long m = 1; m <= max_m; ++m) {
            acc += hm.scaled(Rational(m % 2 == 1 ? 1 : -1, m));
            if (m < max_m) hm = hm * h;
        }
        return acc;
    }
    // log of a series with constant term 1
    static Series log(const Series& f) {
        D c0 = f.is_zero() ? D() : (f.val_key() == 0 ? f.terms_.begin()->second : D());
        if (!(c0 == domain_one<D>())) throw std::domain_error("Series: log needs constant term 1");
        Series h = f;
        h.terms_.erase(0);
        return log1p(h);
    }

    // substitution x -> c * x^k (pure dilation; k > 0 rational, c a domain unit).
    // For rational exponents e of this series, c^e must make sense: c == 1
    // always works, otherwise e*? must be integral.
    Series dilated(const D& c, const Rational& k) const {
        if (k <= Rational(0)) throw std::domain_error("Series: dilation exponent must be positive");
        Series r;
        r.var_ = var_;
        bool c_is_one = (c == domain_one<D>());
        long kden = k.den_long();
        r.den_ = lcm_long(den_ * kden, 1);
        // new exponent key for old key t: t/den * k, on lattice 1/(den*kden)
        auto remap = [&](long long t) -> long long { return t * k.num_long(); };
        r.ord_ = ord_ >= ORD_INF ? ORD_INF : remap(ord_);
        for (auto& [t, cf] : terms_) {
            D nc = cf;
            if (!c_is_one) {
                Rational e(t, den_);
                if (!e.is_integer())
                    throw std::domain_error("Series: dilation scalar with fractional exponent");
                nc = cf * c.pow_int(e.to_long());
            }
            if (!nc.is_zero()) r.terms_[remap(t)] = std::move(nc);
        }
        r.normalize_lattice();
        return r;
    }

    // full composition this(image); image must have positive valuation
    Series substitute(const Series& image) const {
        if (image.is_zero() || image.val_key() <= 0)
            throw std::domain_error("Series: substitution image needs positive valuation");
        Rational v(image.val_key(), image.den());
        // sound output order: min(ord * v, min over stored nonzero exponents e
        // of (e-1) v + image.ord); the constant term is exact
        Rational cap1 = exact() ? Rational(ORD_INF) : order() * v;
        Rational cap2 = Rational(ORD_INF);
        if (!image.exact()) {
            for (auto& [k, c] : terms_) {
                if (k == 0) continue;
                Rational bound = (Rational(k, den_) - Rational(1)) * v + image.order();
                cap2 = std::min(cap2, bound);
            }
        }
        Rational cap = std::min(cap1, cap2);
        Series acc;
        bool first = true;
        Series cur_pow;  // image^{cur_exp}
        Rational cur_exp;
        for (auto& [t, cf] : terms_) {
            Rational e(t, den_);
            if (first) {
                cur_pow = image.pow_rational(e);
                cur_exp = e;
                first = false;
            } else {
                cur_pow = cur_pow * image.pow_rational(e - cur_exp);
                cur_exp = e;
            }
            acc += cur_pow.scaled_by(cf);
        }
        if (first) acc = zero(image.var(), image.den(), 0);
        if (cap < Rational(ORD_INF)) acc = acc.truncated(cap);
        return acc;
    }

    // compositional inverse of c1*x + ...: returns b with this(b(x)) = x.
    // Lagrange inversion: [x^n] b = (1/n) [t^{n-1}] (t/a(t))^n.
    Series revert() const {
        if (den_ != 1) throw std::domain_error("Series: revert needs integer exponents");
        if (terms_.empty() || val_key() != 1) throw std::domain_error("Series: revert needs valuation 1");
        if (!terms_.begin()->second.is_unit())
            throw std::domain_error("Series: revert needs unit linear coefficient");
        if (ord_ >= ORD_INF)
            throw std::domain_error("Series: revert of exact series; truncate to the wanted order first");
        long long N = ord_;  // determined to the same order
        Series t_over_a = (shifted(-1)).invert();  // (a/t)^{-1}
        Series r = zero(var_, 1, N);
        Series p = one(var_);
        for (long long n = 1; n < N; ++n) {
            p = p * t_over_a;  // (t/a)^n
            D c = p.ord_key() > n - 1 ? p.coeff(Rational(n - 1)) : D();
            if (!c.is_zero()) r.terms_[n] = c.scaled(Rational(1, n));
        }
        return r;
    }

    Series derivative() const {
        Series r;
        r.var_ = var_;
        r.den_ = den_;
        r.ord_ = ord_ >= ORD_INF ? ORD_INF : ord_ - den_;
        for (auto& [k, c] : terms_) {
            if (k == 0) continue;
            D nc = c.scaled(Rational(k, den_));
            if (!nc.is_zero()) r.terms_[k - den_] = std::move(nc);
        }
        return r;
    }

    template <class D2>
    Series<D2> map_coeffs(const std::function<D2(const D&)>& f) const {
        Series<D2> r = Series<D2>::zero(var_, den_, 1);
        r.set_ord(ord_);
        for (auto& [k, c] : terms_) {
            D2 nc = f(c);
            if (!nc.is_zero()) r.set_term(k, std::move(nc));
        }
        return r;
    }

    // equality on the common determined window
    bool agrees_with(const Series& o) const {
        auto [a, b] = aligned(*this, o);
        long long w = std::min(a.ord_, b.ord_);
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        while (ia != a.terms_.end() && ia->first >= w) ++ia;
        for (; ia != a.terms_.end() && ia->first < w; ++ia) {
            auto it = b.terms_.find(ia->first);
            if (it == b.terms_.end() || !(it->second == ia->second)) return false;
        }
        for (; ib != b.terms_.end() && ib->first < w; ++ib)
            if (a.terms_.find(ib->first) == a.terms_.end()) return false;
        return true;
    }
    bool operator==(const Series& o) const { return agrees_with(o); }

    Series renamed(std::string new_var) const {
        Series r = *this;
        r.var_ = std::move(new_var);
        return r;
    }

    Series with_den(long new_den) const {
        if (new_den == den_) return *this;
        if (new_den % den_ != 0) new_den = lcm_long(new_den, den_);
        long f = new_den / den_;
        Series r;
        r.var_ = var_;
        r.den_ = new_den;
        r.ord_ = ord_ >= ORD_INF ? ORD_INF : ord_ * f;
        for (auto& [k, c] : terms_) r.terms_[k * f] = c;
        return r;
    }

    // lowest common lattice + variable compatibility ("" is scalar-compatible)
    static std::pair<Series, Series> aligned(const Series& x, const Series& y) {
        if (!x.var_.empty() && !y.var_.empty() && x.var_ != y.var_)
            throw std::domain_error("Series: variable mismatch: " + x.var_ + " vs " + y.var_);
        long d = lcm_long(x.den_, y.den_);
        Series a = x.with_den(d), b = y.with_den(d);
        if (a.var_.empty()) a.var_ = b.var_;
        if (b.var_.empty()) b.var_ = a.var_;
        return {std::move(a), std::move(b)};
    }

    void set_term(long long key, D c) {
        if (key >= ord_) return;
        if (c.is_zero())
            terms_.erase(key);
        else
            terms_[key] = std::move(c);
    }
    void set_ord(long long o) {
        ord_ = o;
        terms_.erase(terms_.lower_bound(ord_), terms_.end());
    }

    std::string str(const std::function<std::string(const D&)>& coeff_str) const {
        std::string s;
        for (auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + coeff_str(c) + ")";
            if (k != 0) {
                s += "*" + (var_.empty() ? std::string("x") : var_);
                if (k != den_) {
                    s += "^";
                    if (den_ == 1)
                        s += std::to_string(k);
                    else
                        s += "(" + std::to_string(k) + "/" + std::to_string(den_) + ")";
                }
            }
        }
        if (s.empty()) s = "0";
        if (ord_ < ORD_INF)
            s += " + O(" + (var_.empty() ? std::string("x") : var_) + "^(" + std::to_string(ord_) +
                 "/" + std::to_string(den_) + "))";
        return s;
    }

  private:
    void normalize_lattice() {
        if (den_ == 1) return;
        long g = den_;
        for (auto& [k, c] : terms_) g = gcd_long(g, (long)(k < 0 ? -k : k));
        if (ord_ < ORD_INF) g = gcd_long(g, (long)(ord_ < 0 ? -ord_ : ord_));
        if (g <= 1) return;
        std::map<long long, D> t;
        for (auto& [k, c] : terms_) t[k / g] = c;
        terms_ = std::move(t);
        if (ord_ < ORD_INF) ord_ /= g;
        den_ /= g;
    }

    std::string var_;
    long den_;
    long long ord_;
    std::map<long long, D> terms_;
};

using QSeries = Series<Rational>;       // plain rational coefficients
using TSeries = Series<RatFunc>;        // coefficients in Q(t) (or Q(u))
using QuadSeries = Series<QuadExt>;     // coefficients in a quadratic field

}  // namespace vi
