#include "vi/mochizuki.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <stdexcept>

#include "vi/serialize.hpp"

namespace vi::moc {

using hilb::Chart;
using hilb::KClass;
using hilb::MultiPartition;
using hilb::SubtorusDir;
using hilb::ToricSurface;
using hilb::Weight;

std::string kind_name(InsertionKind k) {
    switch (k) {
        case InsertionKind::Euler: return "euler";
        case InsertionKind::ChiY: return "chiy";
        case InsertionKind::EllipticGenus: return "ellgen";
        case InsertionKind::Cobordism: return "cobordism";
        case InsertionKind::Verlinde: return "verlinde";
        case InsertionKind::Segre: return "segre";
        case InsertionKind::VerlindeChiY: return "verlinde-chiy";
    }
    return "?";
}

RatFunc leading_term(long chi_O, long chi_a1, long chi_a2, long chi_a2_minus_a1,
                     long chi_a1_minus_a2) {
    (void)chi_O;
    RatFunc t = RatFunc::var();
    RatFunc two_t = t.scaled(Rational(2));
    RatFunc c = t.pow_int(chi_a1 + chi_a2 - 1);
    c = c * two_t.pow_int(-chi_a2);
    c = c * (two_t / (RatFunc::one() + two_t)).pow_int(chi_a2_minus_a1);
    c = c * ((-two_t) / (RatFunc::one() - two_t)).pow_int(chi_a1_minus_a2);
    return c;
}

// ---------------------------------------------------------------------------
// fast exact engine: values num(t) / (t^et (1+2t)^ep (1-2t)^em), no gcds
// ---------------------------------------------------------------------------

namespace {

const Poly& pow_1p2t(long k) {
    static std::vector<Poly> table = {Poly::one()};
    while ((long)table.size() <= k)
        table.push_back(table.back() * Poly::linear(Rational(2), Rational(1)));
    return table[(size_t)k];
}
const Poly& pow_1m2t(long k) {
    static std::vector<Poly> table = {Poly::one()};
    while ((long)table.size() <= k)
        table.push_back(table.back() * Poly::linear(Rational(-2), Rational(1)));
    return table[(size_t)k];
}

struct TriDen {
    Poly num;
    long et = 0, ep = 0, em = 0;  // num / (t^et (1+2t)^ep (1-2t)^em); exponents may be negative

    bool is_zero() const { return num.is_zero(); }
    static TriDen from_rational(const Rational& r) { return TriDen{Poly(r), 0, 0, 0}; }

    // drop common factors of t, (1+2t), (1-2t) so the representation stays small
    void normalize() {
        if (num.is_zero()) {
            et = ep = em = 0;
            return;
        }
        long v = num.valuation();
        if (v > 0 && et != 0) {
            long k = std::min(v, std::max(et, 0L));
            if (k > 0) {
                Poly q, r;
                Poly::divmod(num, Poly::monomial(Rational::one(), (size_t)k), q, r);
                num = q;
                et -= k;
            }
        }
        auto strip = [&](long& e, const Poly& lin) {
            while (e > 0) {
                Poly q, r;
                Poly::divmod(num, lin, q, r);
                if (!r.is_zero()) break;
                num = q;
                --e;
            }
        };
        strip(ep, Poly::linear(Rational(2), Rational(1)));
        strip(em, Poly::linear(Rational(-2), Rational(1)));
    }

    TriDen operator*(const TriDen& o) const {
        if (is_zero() || o.is_zero()) return TriDen{};
        return TriDen{num * o.num, et + o.et, ep + o.ep, em + o.em};
    }
    TriDen scaled(const Rational& s) const { return TriDen{num.scaled(s), et, ep, em}; }

    Poly lift(long ret, long rep, long rem) const {
        Poly r = num.shifted((size_t)(ret - et));
        if (rep > ep) r = r * pow_1p2t(rep - ep);
        if (rem > em) r = r * pow_1m2t(rem - em);
        return r;
    }
    TriDen operator+(const TriDen& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        long ret = std::max(et, o.et), rep = std::max(ep, o.ep), rem = std::max(em, o.em);
        return TriDen{lift(ret, rep, rem) + o.lift(ret, rep, rem), ret, rep, rem};
    }

    RatFunc to_ratfunc() const {
        if (is_zero()) return RatFunc::zero();
        Poly n = num, d = Poly::one();
        if (et >= 0) d = d.shifted((size_t)et); else n = n.shifted((size_t)(-et));
        if (ep >= 0) d = d * pow_1p2t(ep); else n = n * pow_1p2t(-ep);
        if (em >= 0) d = d * pow_1m2t(em); else n = n * pow_1m2t(-em);
        return RatFunc(n, d);
    }
};

// coefficient-domain wrapper over TriDen for running whole series pipelines
// without rational-function gcds
class TriDenC {
  public:
    TriDenC() {}
    explicit TriDenC(TriDen v) : v_(std::move(v)) { v_.normalize(); }
    static TriDenC zero() { return TriDenC(); }
    static TriDenC one() { return TriDenC(TriDen::from_rational(Rational::one())); }
    static TriDenC from(const Rational& r) { return TriDenC(TriDen::from_rational(r)); }

    const TriDen& raw() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }
    bool is_unit() const { return !is_zero(); }
    TriDenC operator-() const { return TriDenC(v_.scaled(Rational(-1))); }
    TriDenC operator+(const TriDenC& o) const { return TriDenC(v_ + o.v_); }
    TriDenC operator-(const TriDenC& o) const { return TriDenC(v_ + o.v_.scaled(Rational(-1))); }
    TriDenC operator*(const TriDenC& o) const { return TriDenC(v_ * o.v_); }
    TriDenC scaled(const Rational& s) const { return TriDenC(v_.scaled(s)); }
    TriDenC pow_int(long e) const {
        if (e < 0) return inverse().pow_int(-e);
        TriDenC r = one(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    TriDenC inverse() const {
        // only monomial numerators invert inside the tridenominator family
        if (v_.num.is_zero()) throw std::domain_error("TriDenC: inverse of zero");
        long val = v_.num.valuation();
        if (val != v_.num.degree())
            throw std::domain_error("TriDenC: inverse leaves the tridenominator family");
        Rational c = v_.num.coeff((size_t)val).inverse();
        return TriDenC(TriDen{Poly::monomial(c, 0), -v_.et - val, -v_.ep, -v_.em});
    }
    bool operator==(const TriDenC& o) const {
        TriDen d = v_ + o.v_.scaled(Rational(-1));
        return d.is_zero();
    }
    RatFunc to_ratfunc() const { return v_.to_ratfunc(); }

  private:
    TriDen v_;
};

using TriSeries = Series<TriDenC>;

// Per fixed point the unit-part logarithm splits as
//   L(u) = sum_k u^k [ a_k + b_k t^{-k} + c_k (1+2t)^{-k} + d_k (1-2t)^{-k} ],
// so exp(L) factors into four plain rational exponentials in the variables
// u, u/t, u/(1+2t), u/(1-2t). A fixed point therefore contributes, at each
// u-exponent, a short sum of rationals keyed by denominator exponents
// (et, ep, em); cells accumulate those keys and assemble one TriDen at the end.
struct FpContrib {
    // (u_exponent, et, ep, em) -> rational coefficient
    std::map<std::array<long, 4>, Rational> terms;
};

struct GroupSums {
    // power sums sum_i m_i alpha_i^k for the beta-groups:
    // 0: beta = 1; 1: beta = ct (ratio alpha/c); 2: beta = 1+2t; 3: beta = 1-2t
    std::array<std::vector<Rational>, 4> s;
    long P = 0;
    void init(long Pmax) {
        P = Pmax;
        for (auto& v : s) v.assign((size_t)std::max(Pmax, 1L), Rational::zero());
    }
    void accumulate(size_t g, const Rational& alpha, long mult) {
        if (alpha.is_zero() || mult == 0) return;
        Rational ap = Rational::one();
        Rational m(mult);
        for (long k = 1; k < P; ++k) {
            ap *= alpha;
            s[g][(size_t)k] += ap * m;
        }
    }
};

namespace {
// exp of sum_k l_k u^k as a plain rational coefficient vector of length P
std::vector<Rational> exp_vector(const std::vector<Rational>& l, long P) {
    std::vector<Rational> e((size_t)P, Rational::zero());
    e[0] = Rational::one();
    for (long j = 1; j < P; ++j) {
        Rational acc = Rational::zero();
        for (long k = 1; k <= j; ++k) {
            if (l[(size_t)k].is_zero() || e[(size_t)(j - k)].is_zero()) continue;
            acc += l[(size_t)k] * e[(size_t)(j - k)] * Rational(k);
        }
        if (!acc.is_zero()) e[(size_t)j] = acc * Rational(1, j);
    }
    return e;
}
}  // namespace

class EulerEngine {
  public:
    EulerEngine(const ToricSurface& S, std::vector<long> a1, std::vector<long> a2,
                const SubtorusDir& dir)
        : S_(S), a1_(std::move(a1)), a2_(std::move(a2)), dir_(dir) {
        chi_a1_ = S_.chi_of(a1_);
        chi_a2_ = S_.chi_of(a2_);
        chi_O_ = S_.global_chi(std::vector<long>(S_.base_divisors.size(), 0)).rank();
        std::vector<long> d(a1_.size());
        for (size_t i = 0; i < d.size(); ++i) d[i] = a1_[i] - a2_[i];
        d_sq_ = S_.dot(d, d);
    }

    // contribution of one fixed point, or empty when an Euler factor vanishes
    void fixed_point(const MultiPartition& mp1, const MultiPartition& mp2, long n1, long n2,
                     FpContrib& out) {
        KClass taut1 = hilb::taut_weights(S_, a1_, mp1);
        Rational scalar = Rational::one();
        long uval = 0;
        for (auto& [w, m] : taut1.entries()) {
            Rational alpha = dir_.alpha(w);
            if (alpha.is_zero()) return;  // vanishing Euler-class factor kills the term
            scalar *= alpha.pow_int(m);
            uval += m;
        }
        KClass tan1 = hilb::tangent_weights(S_, mp1);
        KClass tan2 = hilb::tangent_weights(S_, mp2);
        for (const KClass* tc : {&tan1, &tan2}) {
            for (auto& [w, m] : tc->entries()) {
                Rational alpha = dir_.alpha(w);
                if (alpha.is_zero())
                    throw std::domain_error("z_series: non-generic direction, redraw (sigma1,sigma2)");
                scalar *= alpha.pow_int(-m);
                uval -= m;
            }
        }
        long P = std::max(-uval + 1, 1L);
        GroupSums gs;
        gs.init(P);
        long t_mono = chi_a1_ - n1 + chi_a2_ - n2 - 1 - chi_a2_;
        long dep = 0, dem = 0;
        scalar = scalar.scaled(Rational(1, 2).pow_int(chi_a2_));  // (2t)^{-chi(a2)} scalar part

        auto add_weight_factor = [&](const Weight& w, long m) {
            if (w.c == 0) throw std::logic_error("z_series: unexpected pure-surface weight factor");
            scalar *= Rational(w.c).pow_int(m);
            t_mono += m;
            gs.accumulate(1, dir_.alpha(w).scaled(Rational(1, w.c)), m);
        };
        auto add_chern_factor = [&](const Weight& w, long m) {
            if (w.c == 0) {
                if (w.a == 0 && w.b == 0) return;  // (1+0)
                gs.accumulate(0, dir_.alpha(w), m);
            } else if (w.c == 2) {
                dep -= m;
                gs.accumulate(2, dir_.alpha(w), m);
            } else if (w.c == -2) {
                dem -= m;
                gs.accumulate(3, dir_.alpha(w), m);
            } else {
                throw std::logic_error("z_series: unexpected t-weight in chern factor");
            }
        };

        KClass taut2 = hilb::taut_weights(S_, a2_, mp2).shifted_t(2);
        for (auto& [w, m] : taut2.entries()) add_weight_factor(w, m);
        KClass cross12 = hilb::ideal_chi(S_, a1_, a2_, mp1, mp2).shifted_t(2);
        KClass cross21 = hilb::ideal_chi(S_, a2_, a1_, mp2, mp1).shifted_t(-2);
        for (auto& [w, m] : cross12.entries()) add_weight_factor(w, m);
        for (auto& [w, m] : cross21.entries()) add_weight_factor(w, m);
        KClass tvir;
        tvir.add({0, 0, 0}, chi_O_);
        tvir.add(hilb::ideal_chi(S_, a1_, a1_, mp1, mp1), -1);
        tvir.add(hilb::ideal_chi(S_, a2_, a2_, mp2, mp2), -1);
        tvir.add(cross12, -1);
        tvir.add(cross21, -1);
        if (tvir.rank() != 4 * (n1 + n2) - d_sq_ - 3 * chi_O_)
            throw std::logic_error("z_series: virtual tangent rank mismatch");
        for (auto& [w, m] : tvir.entries()) add_chern_factor(w, m);

        // four separable exponentials
        std::array<std::vector<Rational>, 4> lg;
        for (size_t g = 0; g < 4; ++g) {
            lg[g].assign((size_t)P, Rational::zero());
            for (long k = 1; k < P; ++k)
                lg[g][(size_t)k] = gs.s[g][(size_t)k].scaled(Rational(k % 2 == 1 ? 1 : -1, k));
        }
        std::array<std::vector<Rational>, 4> ex;
        for (size_t g = 0; g < 4; ++g) ex[g] = exp_vector(lg[g], P);

        // W_j = sum A_{j1} B_{j2} C_{j3} D_{j4} t^{-j2} (1+2t)^{-j3} (1-2t)^{-j4}
        for (long j2 = 0; j2 < P; ++j2) {
            if (ex[1][(size_t)j2].is_zero()) continue;
            for (long j3 = 0; j2 + j3 < P; ++j3) {
                if (ex[2][(size_t)j3].is_zero()) continue;
                Rational bc = ex[1][(size_t)j2] * ex[2][(size_t)j3];
                for (long j4 = 0; j2 + j3 + j4 < P; ++j4) {
                    if (ex[3][(size_t)j4].is_zero()) continue;
                    Rational bcd = bc * ex[3][(size_t)j4];
                    for (long j1 = 0; j1 + j2 + j3 + j4 < P; ++j1) {
                        if (ex[0][(size_t)j1].is_zero()) continue;
                        long j = j1 + j2 + j3 + j4;
                        Rational val = scalar * ex[0][(size_t)j1] * bcd;
                        std::array<long, 4> key = {uval + j, j2 - t_mono, dep + j3, dem + j4};
                        auto it = out.terms.find(key);
                        if (it == out.terms.end())
                            out.terms.emplace(key, val);
                        else {
                            it->second += val;
                            if (it->second.is_zero()) out.terms.erase(it);
                        }
                    }
                }
            }
        }
    }

    long chi_a1() const { return chi_a1_; }
    long chi_a2() const { return chi_a2_; }
    long chi_O() const { return chi_O_; }

  private:
    const ToricSurface& S_;
    std::vector<long> a1_, a2_;
    SubtorusDir dir_;
    long chi_a1_, chi_a2_, chi_O_, d_sq_;
};

}  // namespace

namespace {

TriDenC cinv_triden(long chi_a1, long chi_a2, long chi_21, long chi_12) {
    // 1/C with C = 2^{-chi_a2} t^{chi_a1 - 1} (2t/(1+2t))^{chi21} (-2t/(1-2t))^{chi12}
    Rational sc = Rational(2).pow_int(chi_a2) * Rational(1, 2).pow_int(chi_21) *
                  Rational(-1, 2).pow_int(chi_12);
    Poly num = Poly(sc) * pow_1p2t(std::max(chi_21, 0L)) * pow_1m2t(std::max(chi_12, 0L));
    long ep = std::min(chi_21, 0L), em = std::min(chi_12, 0L);
    if (chi_21 < 0 || chi_12 < 0) {
        // negative chi exponents put the linear forms in the denominator
        num = Poly(sc);
        if (chi_21 > 0) num = num * pow_1p2t(chi_21);
        if (chi_12 > 0) num = num * pow_1m2t(chi_12);
        ep = chi_21 < 0 ? -chi_21 : 0;
        em = chi_12 < 0 ? -chi_12 : 0;
    } else {
        ep = 0;
        em = 0;
    }
    return TriDenC(TriDen{num, chi_a1 - 1 + chi_21 + chi_12, ep, em});
}

TriSeries z_series_triden(const ToricSurface& S, const std::vector<long>& a1,
                          const std::vector<long>& a2, long q_order, const SubtorusDir& dir) {
    EulerEngine eng(S, a1, a2, dir);
    std::vector<long> dvec(a1.size());
    for (size_t i = 0; i < a1.size(); ++i) dvec[i] = a2[i] - a1[i];
    long chi_a2_minus_a1 = S.chi_of(dvec);
    for (auto& c : dvec) c = -c;
    long chi_a1_minus_a2 = S.chi_of(dvec);
    TriDenC C_inv = cinv_triden(eng.chi_a1(), eng.chi_a2(), chi_a2_minus_a1, chi_a1_minus_a2);
    TriSeries z = TriSeries::zero("q", 1, q_order);
    for (long N = 0; N < q_order; ++N) {
        std::vector<std::tuple<const MultiPartition*, const MultiPartition*, long, long>> fps;
        for (long n1 = 0; n1 <= N; ++n1) {
            long n2 = N - n1;
            for (const auto& mp1 : hilb::multi_partitions(S, n1))
                for (const auto& mp2 : hilb::multi_partitions(S, n2))
                    fps.push_back({&mp1, &mp2, n1, n2});
        }
        unsigned nthreads = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
        if (fps.size() < 32) nthreads = 1;
        std::vector<FpContrib> parts(nthreads);
        std::atomic<size_t> cursor{0};
        std::atomic<bool> failed{false};
        std::string error_text;
        std::mutex error_mutex;
        auto work = [&](unsigned tid) {
            try {
                EulerEngine local(S, a1, a2, dir);
                for (;;) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= fps.size() || failed.load()) break;
                    auto [mp1, mp2, n1, n2] = fps[i];
                    local.fixed_point(*mp1, *mp2, n1, n2, parts[tid]);
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(error_mutex);
                failed.store(true);
                error_text = e.what();
            }
        };
        if (nthreads == 1) {
            work(0);
        } else {
            std::vector<std::thread> workers;
            for (unsigned tid = 0; tid < nthreads; ++tid) workers.emplace_back(work, tid);
            for (auto& w : workers) w.join();
        }
        if (failed.load()) throw std::domain_error("z_series: " + error_text);
        // exact rational addition is order-independent, so the merged cell is
        // bit-reproducible for any worker count
        std::map<std::array<long, 4>, Rational> cell;
        for (auto& part : parts)
            for (auto& [key, val] : part.terms) {
                auto it = cell.find(key);
                if (it == cell.end())
                    cell.emplace(key, val);
                else
                    it->second += val;
            }
        std::map<long, TriDen> by_ue;
        for (auto& [key, val] : cell) {
            if (val.is_zero()) continue;
            TriDen td{Poly(val), key[1], key[2], key[3]};
            auto it = by_ue.find(key[0]);
            if (it == by_ue.end())
                by_ue.emplace(key[0], td);
            else
                it->second = it->second + td;
        }
        TriDenC value;
        for (auto& [ue, td] : by_ue) {
            if (ue < 0) {
                if (!td.to_ratfunc().is_zero())
                    throw std::logic_error("z_series: uncancelled u-pole at q^" + std::to_string(N));
            } else if (ue == 0) {
                value = TriDenC(td);
            }
        }
        z.set_term(N, value * C_inv);
    }
    return z;
}

}  // namespace

TSeries z_series_euler(const ToricSurface& S, const std::vector<long>& a1,
                       const std::vector<long>& a2, long q_order, const SubtorusDir& dir) {
    TriSeries z = z_series_triden(S, a1, a2, q_order, dir);
    return z.map_coeffs<RatFunc>([](const TriDenC& c) { return c.to_ratfunc(); });
}

// ---------------------------------------------------------------------------
// generic engine: t-Laurent windows over Q(u); chi_y insertion and an
// independent cross-check of the fast path
// ---------------------------------------------------------------------------

namespace {

RatFunc upow_rf(long k) {
    if (k >= 0) return RatFunc(Poly::monomial(Rational::one(), (size_t)k));
    return RatFunc(Poly::one(), Poly::monomial(Rational::one(), (size_t)(-k)));
}

using USeries = Series<TWindow>;

TWindow twindow_const(const RatFunc& c, long t_high) {
    return TWindow::constant(c, "t").truncated(Rational(t_high));
}
TWindow twindow_monomial(const RatFunc& c, long k, long t_high) {
    TWindow w = TWindow::zero("t", 1, t_high);
    w.set_term(k, c);
    return w;
}

TWindow ratfunc_to_twindow(const RatFunc& f, long t_high) {
    TWindow w = TWindow::zero("t", 1, t_high);
    if (f.is_zero()) return w;
    for (long k = f.valuation_at_zero(); k < t_high; ++k) w.set_term(k, RatFunc(f.laurent_coeff(k)));
    return w;
}

struct GenericEngine {
    const ToricSurface& S;
    std::vector<long> a1, a2;
    InsertionKind kind;
    SubtorusDir dir;
    long t_high;
    long u_order = 1;
    long chi_a1 = 0, chi_a2 = 0, chi_O = 0;

    USeries u_const(const RatFunc& c) const {
        return USeries::constant(twindow_const(c, t_high), "u").truncated(Rational(u_order));
    }

    USeries exp_minus(const Rational& alpha, long c) const {
        TWindow ect = (c == 0) ? twindow_const(RatFunc::one(), t_high)
                               : TWindow::exp(twindow_monomial(RatFunc(Rational(-c)), 1, t_high));
        USeries r = USeries::constant(ect, "u").truncated(Rational(u_order));
        if (!alpha.is_zero()) {
            USeries au = USeries::zero("u", 1, u_order);
            au.set_term(1, twindow_const(RatFunc(-alpha), t_high));
            r = r * USeries::exp(au);
        }
        return r;
    }

    USeries weight_series(const Rational& alpha, long c) const {
        USeries w = USeries::zero("u", 1, u_order);
        if (c != 0) w.set_term(0, twindow_monomial(RatFunc(Rational(c)), 1, t_high));
        if (!alpha.is_zero()) w.set_term(1, twindow_const(RatFunc(alpha), t_high));
        return w;
    }

    USeries genus_factor(const Weight& wt) const {
        Rational alpha = dir.alpha(wt);
        long c = wt.c;
        if (kind == InsertionKind::Euler) return u_const(RatFunc::one()) + weight_series(alpha, c);
        if (kind != InsertionKind::ChiY)
            throw std::domain_error("generic engine: unsupported insertion kind");
        // normalized chi_{-y} class per Chern root: w (1 - y e^{-w})/(1 - e^{-w});
        // the value at w = 0 is the limit 1 - y
        RatFunc y = upow_rf(2);
        if (alpha.is_zero() && c == 0) return u_const(RatFunc::one() - y);
        USeries E = exp_minus(alpha, c);
        USeries one = u_const(RatFunc::one());
        USeries num = weight_series(alpha, c) * (one - E.scaled_by(twindow_const(y, t_high)));
        return num * (one - E).invert();
    }

    USeries fixed_point(const MultiPartition& mp1, const MultiPartition& mp2, long n1, long n2) const {
        KClass taut1 = hilb::taut_weights(S, a1, mp1);
        USeries acc = u_const(RatFunc::one());
        for (auto& [w, m] : taut1.entries()) {
            Rational alpha = dir.alpha(w);
            if (alpha.is_zero()) return USeries::zero("u", 1, u_order);
            acc = acc * weight_series(alpha, 0).pow_int(m);
        }
        KClass tan1 = hilb::tangent_weights(S, mp1);
        KClass tan2 = hilb::tangent_weights(S, mp2);
        for (const KClass* tc : {&tan1, &tan2})
            for (auto& [w, m] : tc->entries()) acc = acc * weight_series(dir.alpha(w), 0).pow_int(-m);
        KClass taut2 = hilb::taut_weights(S, a2, mp2).shifted_t(2);
        for (auto& [w, m] : taut2.entries()) acc = acc * weight_series(dir.alpha(w), w.c).pow_int(m);
        KClass cross12 = hilb::ideal_chi(S, a1, a2, mp1, mp2).shifted_t(2);
        KClass cross21 = hilb::ideal_chi(S, a2, a1, mp2, mp1).shifted_t(-2);
        for (auto& [w, m] : cross12.entries()) acc = acc * weight_series(dir.alpha(w), w.c).pow_int(m);
        for (auto& [w, m] : cross21.entries()) acc = acc * weight_series(dir.alpha(w), w.c).pow_int(m);
        KClass tvir;
        tvir.add({0, 0, 0}, chi_O);
        tvir.add(hilb::ideal_chi(S, a1, a1, mp1, mp1), -1);
        tvir.add(hilb::ideal_chi(S, a2, a2, mp2, mp2), -1);
        tvir.add(cross12, -1);
        tvir.add(cross21, -1);
        for (auto& [w, m] : tvir.entries()) acc = acc * genus_factor(w).pow_int(m);
        long tm = chi_a1 - n1 + chi_a2 - n2 - 1 - chi_a2;
        Rational sc = Rational(1, 2).pow_int(chi_a2);
        return acc.scaled_by(twindow_monomial(RatFunc(sc), tm, t_high));
    }
};

}  // namespace

ZWindowSeries z_series_generic(const ToricSurface& S, const std::vector<long>& a1,
                               const std::vector<long>& a2, InsertionKind kind, long q_order,
                               const SubtorusDir& dir, long t_low, long t_high) {
    (void)t_low;
    GenericEngine eng{S, a1, a2, kind, dir, t_high};
    eng.chi_a1 = S.chi_of(a1);
    eng.chi_a2 = S.chi_of(a2);
    eng.chi_O = S.global_chi(std::vector<long>(S.base_divisors.size(), 0)).rank();
    std::vector<long> dvec(a1.size());
    for (size_t i = 0; i < a1.size(); ++i) dvec[i] = a2[i] - a1[i];
    long chi_a2_minus_a1 = S.chi_of(dvec);
    for (auto& c : dvec) c = -c;
    long chi_a1_minus_a2 = S.chi_of(dvec);
    // normalize by the series' own n = (0,0) term: for the Euler insertion
    // this equals C(a1,a2,t); refined insertions carry their own leading term
    ZWindowSeries z = ZWindowSeries::zero("q", 1, q_order);
    TWindow norm_inv;
    for (long N = 0; N < q_order; ++N) {
        eng.u_order = 2 * N + 2;
        USeries cell = USeries::zero("u", 1, 1);
        for (long n1 = 0; n1 <= N; ++n1) {
            long n2 = N - n1;
            for (const auto& mp1 : hilb::multi_partitions(S, n1))
                for (const auto& mp2 : hilb::multi_partitions(S, n2))
                    cell += eng.fixed_point(mp1, mp2, n1, n2);
        }
        for (auto& [k, c] : cell.terms())
            if (k < 0 && !c.is_zero()) throw std::logic_error("z_series_generic: uncancelled u-pole");
        TWindow val = (cell.is_zero() || cell.ord_key() <= 0) ? TWindow::zero("t", 1, t_high)
                                                              : cell.coeff_int(0);
        if (N == 0) norm_inv = val.invert();
        z.set_term(N, val * norm_inv);
    }
    return z;
}

// ---------------------------------------------------------------------------
// universal series extraction
// ---------------------------------------------------------------------------

namespace {

struct Triple {
    const ToricSurface* S;
    std::vector<long> a1, a2;
};

std::vector<Triple> seven_triples() {
    return {
        {&hilb::P2(), {0}, {0}},
        {&hilb::P2(), {1}, {0}},
        {&hilb::P2(), {0}, {1}},
        {&hilb::P2(), {1}, {1}},
        {&hilb::P1xP1(), {0, 0}, {0, 0}},
        {&hilb::P1xP1(), {1, 0}, {0, 0}},
        {&hilb::P1xP1(), {0, 0}, {1, 0}},
    };
}

std::array<long, 7> chern_vector_of(const ToricSurface& S, const std::vector<long>& a1,
                                    const std::vector<long>& a2) {
    return {S.dot(a1, a1),
            S.dot(a1, a2),
            S.dot(a2, a2),
            S.dot(a1, S.K_coords),
            S.dot(a2, S.K_coords),
            S.dot(S.K_coords, S.K_coords),
            S.chi_O};
}

std::array<std::array<Rational, 7>, 7> inverse_chern_matrix() {
    auto triples = seven_triples();
    std::array<std::array<Rational, 14>, 7> m;
    for (size_t i = 0; i < 7; ++i) {
        auto cv = chern_vector_of(*triples[i].S, triples[i].a1, triples[i].a2);
        for (size_t j = 0; j < 7; ++j) m[i][j] = Rational(cv[j]);
        for (size_t j = 0; j < 7; ++j) m[i][7 + j] = Rational(i == j ? 1 : 0);
    }
    for (size_t col = 0; col < 7; ++col) {
        size_t piv = col;
        while (piv < 7 && m[piv][col].is_zero()) ++piv;
        if (piv == 7) throw std::logic_error("universal extraction: singular chern matrix");
        std::swap(m[piv], m[col]);
        Rational inv = m[col][col].inverse();
        for (size_t j = 0; j < 14; ++j) m[col][j] *= inv;
        for (size_t r = 0; r < 7; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (size_t j = 0; j < 14; ++j) m[r][j] -= f * m[col][j];
        }
    }
    std::array<std::array<Rational, 7>, 7> inv;
    for (size_t i = 0; i < 7; ++i)
        for (size_t j = 0; j < 7; ++j) inv[i][j] = m[i][7 + j];
    return inv;
}

}  // namespace

UniversalSeriesSet extract_universal(InsertionKind kind, long q_order, const SubtorusDir& dir) {
    if (kind != InsertionKind::Euler)
        throw std::domain_error(
            "extract_universal: exact Q(t) extraction is wired for the Euler insertion; use "
            "extract_universal_windows for refined kinds");
    UniversalSeriesSet out;
    out.kind = kind;
    out.order = q_order;
    out.epsilon_draw = dir.s1.str() + "," + dir.s2.str();
    auto triples = seven_triples();
    std::array<TriSeries, 7> logs;
    for (size_t i = 0; i < 7; ++i)
        logs[i] = TriSeries::log(
            z_series_triden(*triples[i].S, triples[i].a1, triples[i].a2, q_order, dir));
    auto inv = inverse_chern_matrix();
    for (size_t j = 0; j < 7; ++j) {
        TriSeries logA = TriSeries::zero("q", 1, q_order);
        for (size_t i = 0; i < 7; ++i) logA += logs[i].scaled(inv[j][i]);
        TriSeries A = TriSeries::exp(logA);
        out.A[j] = A.map_coeffs<RatFunc>([](const TriDenC& c) { return c.to_ratfunc(); });
    }
    return out;
}

UniversalWindowSet extract_universal_windows(InsertionKind kind, long q_order, const SubtorusDir& dir,
                                             long t_low, long t_high) {
    UniversalWindowSet out;
    out.kind = kind;
    out.order = q_order;
    auto triples = seven_triples();
    std::array<ZWindowSeries, 7> logs;
    for (size_t i = 0; i < 7; ++i)
        logs[i] = ZWindowSeries::log(z_series_generic(*triples[i].S, triples[i].a1, triples[i].a2,
                                                      kind, q_order, dir, t_low, t_high));
    auto inv = inverse_chern_matrix();
    for (size_t j = 0; j < 7; ++j) {
        ZWindowSeries logA = ZWindowSeries::zero("q", 1, q_order);
        for (size_t i = 0; i < 7; ++i) logA += logs[i].scaled(inv[j][i]);
        out.A_log[j] = logA;
    }
    return out;
}

// ---------------------------------------------------------------------------
// cache
// ---------------------------------------------------------------------------

namespace {
constexpr int kCacheFormatVersion = 1;

std::filesystem::path cache_dir() {
    const char* env = std::getenv("VI_CACHE_DIR");
    return std::filesystem::path(env && *env ? env : "./cache");
}
}  // namespace

std::string universal_to_json(const UniversalSeriesSet& u) {
    nlohmann::json j;
    j["insertion"] = kind_name(u.kind);
    j["order"] = u.order;
    j["epsilon_draws"] = u.epsilon_draw;
    j["format_version"] = kCacheFormatVersion;
    nlohmann::json arr = nlohmann::json::array();
    for (auto& a : u.A) arr.push_back(ser::tseries_to_json(a));
    j["checksum"] = std::to_string(std::hash<std::string>{}(arr.dump()));
    j["series"] = arr;
    return j.dump(1);
}

UniversalSeriesSet universal_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format_version").get<int>() != kCacheFormatVersion)
        throw std::domain_error("universal cache: format version mismatch");
    UniversalSeriesSet u;
    std::string kn = j.at("insertion").get<std::string>();
    if (kn != "euler") throw std::domain_error("universal cache: unsupported insertion " + kn);
    u.kind = InsertionKind::Euler;
    u.order = j.at("order").get<long>();
    u.epsilon_draw = j.at("epsilon_draws").get<std::string>();
    size_t i = 0;
    for (auto& s : j.at("series")) u.A.at(i++) = ser::tseries_from_json(s);
    return u;
}

UniversalSeriesSet universal_cached(InsertionKind kind, long q_order) {
    if (q_order < 1) q_order = 1;  // order 0 still pins every A_i = 1
    auto dir = cache_dir();
    auto name_for = [&](long o) {
        return "universal_" + kind_name(kind) + "_o" + std::to_string(o) + "_v" +
               std::to_string(kCacheFormatVersion) + ".json";
    };
    // any cached extraction of at least the requested order serves the request
    std::string prefix = "universal_" + kind_name(kind) + "_o";
    std::string suffix = "_v" + std::to_string(kCacheFormatVersion) + ".json";
    long best = -1;
    std::error_code ec;
    if (std::filesystem::exists(dir, ec)) {
        for (auto& entry : std::filesystem::directory_iterator(dir, ec)) {
            std::string fn = entry.path().filename().string();
            if (fn.rfind(prefix, 0) != 0 || fn.size() <= prefix.size() + suffix.size()) continue;
            if (fn.substr(fn.size() - suffix.size()) != suffix) continue;
            long o = std::atol(fn.substr(prefix.size(), fn.size() - prefix.size() - suffix.size()).c_str());
            if (o >= q_order && (best < 0 || o < best)) best = o;
        }
    }
    if (best >= 0) {
        std::ifstream in(dir / name_for(best));
        std::stringstream ss;
        ss << in.rdbuf();
        return universal_from_json(ss.str());
    }
    UniversalSeriesSet u = extract_universal(kind, q_order, hilb::default_dir());
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir / name_for(q_order));
    out << universal_to_json(u);
    return u;
}

// ---------------------------------------------------------------------------
// theorem-style rank-2 evaluator
// ---------------------------------------------------------------------------

bool rank2_applicable(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd) {
    const auto& c1 = S.c1(c1_label);
    long c1sq = S.dot(c1.coords, c1.coords);
    long c1K = S.dot(c1.coords, S.K_coords);
    long num_c2 = vd + c1sq + 3 * S.chi_O;
    if (num_c2 % 4 != 0 || num_c2 < 0) return false;
    return 2 * S.chi_O + (c1sq - c1K) / 2 - num_c2 / 4 > 0;
}

bool vd_realizable_rank2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd) {
    const auto& c1 = S.c1(c1_label);
    long c1sq = S.dot(c1.coords, c1.coords);
    long residue = ((-c1sq - 3 * S.chi_O) % 4 + 4) % 4;
    return vd >= 0 && ((vd % 4) + 4) % 4 == residue;
}

long required_order_rank2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long max_vd,
                          SumMode mode) {
    const auto& c1 = S.c1(c1_label);
    long need = 1;
    for (auto& t : surf::rank2_terms(S, c1)) {
        if (mode == SumMode::Half && t.wrong_side) continue;
        long num = max_vd + t.d_sq + 3 * S.chi_O;
        if (num >= 0) need = std::max(need, num / 4 + 1);
    }
    return need;
}

namespace {

// recover the tridenominator form of a reduced rational function whose
// denominator divides t^a (1+2t)^b (1-2t)^c (monic form (t+1/2)^b (t-1/2)^c)
TriDenC triden_of(const RatFunc& f) {
    if (f.is_zero()) return TriDenC::zero();
    Poly den = f.den();
    long a = 0, b = 0, c = 0;
    Rational scale = Rational::one();
    auto divide_out = [&](const Poly& lin, long& count) {
        for (;;) {
            if (den.degree() < 1) break;
            Poly q, r;
            Poly::divmod(den, lin, q, r);
            if (!r.is_zero()) break;
            den = q;
            ++count;
        }
    };
    Poly tpoly = Poly::monomial(Rational::one(), 1);
    divide_out(tpoly, a);
    divide_out(Poly::linear(Rational::one(), Rational(1, 2)), b);   // t + 1/2
    divide_out(Poly::linear(Rational::one(), Rational(-1, 2)), c);  // t - 1/2
    if (den.degree() != 0)
        throw std::domain_error("triden_of: denominator outside the tridenominator family");
    scale = den.coeff(0).inverse();
    // (t+1/2)^b (t-1/2)^c = (1+2t)^b (1-2t)^c (1/2)^b (-1/2)^c
    scale = scale * Rational(2).pow_int(b) * Rational(-2).pow_int(c);
    return TriDenC(TriDen{f.num().scaled(scale), a, b, c});
}

}  // namespace

Rational evaluate_rank2(const surf::SurfaceDescriptor& S, const std::string& c1_label,
                        const UniversalSeriesSet& uni, long vd, SumMode mode) {
    if (vd < 0) return Rational::zero();
    const auto& c1 = S.c1(c1_label);
    // Condition (c) of the universality theorem is essential: the formula
    // computes e^vir only while chi(2, c1, c1^2/2 - c2) > 0, i.e.
    // c2 < 2 chi(O) + c1(c1-K)/2. Larger c2 needs a twist by O(mH), which a
    // bare descriptor cannot express.
    long c1sq = S.dot(c1.coords, c1.coords);
    long c1K = S.dot(c1.coords, S.K_coords);
    long num_c2 = vd + c1sq + 3 * S.chi_O;
    if (num_c2 % 4 == 0) {
        long c2 = num_c2 / 4;
        if (!(2 * S.chi_O + (c1sq - c1K) / 2 - c2 > 0))
            throw std::domain_error(
                "evaluate_rank2: chi(2,c1,c1^2/2-c2) <= 0 at vd=" + std::to_string(vd) +
                "; the universality theorem needs a twist by O(mH) here");
    }
    long K2 = S.dot(S.K_coords, S.K_coords);
    // convert the cached series into the gcd-free tridenominator domain
    std::array<TriSeries, 7> A;
    for (size_t j = 0; j < 7; ++j)
        A[j] = uni.A[j].map_coeffs<TriDenC>([](const RatFunc& c) { return triden_of(c); });
    RatFunc total = RatFunc::zero();
    for (auto& term : surf::rank2_terms(S, c1)) {
        if (mode == SumMode::Half && term.wrong_side) continue;
        long num = vd + term.d_sq + 3 * S.chi_O;  // vd = 4N - d^2 - 3 chi
        if (num < 0 || num % 4 != 0) continue;
        long N = num / 4;
        if (N >= uni.order)
            throw std::domain_error("evaluate_rank2: requested vd exceeds available series order");
        std::array<long, 7> e = {term.a1_sq, term.a1a2, term.a2_sq, term.a1K,
                                 term.a2K,   K2,        S.chi_O};
        TriSeries prod = TriSeries::one("q").truncated(Rational((long long)N + 1));
        for (size_t j = 0; j < 7; ++j)
            if (e[j] != 0) prod = prod * A[j].truncated(Rational((long long)N + 1)).pow_int(e[j]);
        RatFunc coeff = prod.coeff_int(N).to_ratfunc();
        if (coeff.is_zero()) continue;
        RatFunc cfac = leading_term(S.chi_O, S.chi_of_class(term.a1), term.chi_a2,
                                    term.chi_a2_minus_a1, term.chi_a1_minus_a2);
        total = total + cfac * coeff.scaled(Rational(term.sw));
    }
    total = total.scaled(Rational(-2));
    return total.residue_at_zero();
}

}  // namespace vi::moc
