#include "vi/qforms.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace vi::qf {

namespace {

RatFunc upow(long k) {  // u^k as a rational function
    if (k >= 0) return RatFunc(Poly::monomial(Rational::one(), (size_t)k));
    return RatFunc(Poly::one(), Poly::monomial(Rational::one(), (size_t)(-k)));
}

// 1 - c * x^(num/den) truncated to `order`
template <class D>
Series<D> one_minus(const D& c, const std::string& var, long num, long den, long order) {
    Series<D> f = Series<D>::one(var).truncated(Rational(order));
    f = f.with_den(den);
    f.set_term((long long)num * (f.den() / den), -c);
    return f;
}

}  // namespace

QSeries etabar(long order, const std::string& var) {
    QSeries f = QSeries::one(var).truncated(Rational(order));
    for (long n = 1; n < order; ++n) f *= one_minus(Rational::one(), var, n, 1, order);
    return f;
}

QSeries delta(long order, const std::string& var) {
    return etabar(order, var).pow_int(24).shifted(1).truncated(Rational(order));
}

QSeries eta_pow(long k, long order, const std::string& var) {
    return etabar(order, var).pow_int(k).shifted(k, 24);
}

QSeries theta2(long order, const std::string& var) {
    QSeries f = QSeries::zero(var, 4, 4 * order);
    for (long n = 0;; ++n) {
        long num = (2 * n + 1) * (2 * n + 1);  // exponent (n+1/2)^2 on the 1/4 lattice
        if (num >= 4 * order) break;
        f.set_term(num, Rational(2));
    }
    return f;
}

QSeries theta3(long order, const std::string& var) {
    QSeries f = QSeries::zero(var, 1, order);
    f.set_term(0, Rational(1));
    for (long n = 1; n * n < order; ++n) f.set_term(n * n, Rational(2));
    return f;
}

QY theta2_refined(long order, const std::string& var) {
    QY f = QY::zero(var, 4, 4 * order);
    for (long n = 0;; ++n) {
        long num = (2 * n + 1) * (2 * n + 1);
        if (num >= 4 * order) break;
        // n and -n-1 both give (n+1/2)^2; y-weights u^{2n+1} and u^{-2n-1}
        f.set_term(num, upow(2 * n + 1) + upow(-2 * n - 1));
    }
    return f;
}

QY theta3_refined(long order, const std::string& var) {
    QY f = QY::zero(var, 1, order);
    f.set_term(0, RatFunc::one());
    for (long n = 1; n * n < order; ++n) f.set_term(n * n, upow(2 * n) + upow(-2 * n));
    return f;
}

QY theta3_half_refined(long order, const std::string& var) {
    QY f = QY::zero(var, 1, order);
    f.set_term(0, RatFunc::one());
    for (long n = 1; n * n < order; ++n) f.set_term(n * n, upow(n) + upow(-n));
    return f;
}

namespace {

// shared enumerator; coefficients land on the 1/3 lattice for the A2 (1,0)
// coset, elsewhere on Z. eps-weights are accumulated rationally through the
// (m,n) <-> (n,m) pairing: eps^k + eps^{-k} is 2 or -1.
QY lattice_theta_impl(const LatticeThetaSpec& spec, long order, const std::string& var) {
    bool dual = spec.lattice == LatticeKind::A2dual;
    bool shifted_coset = (!dual && spec.coset0 == 1);   // A2, (1,0)
    bool eps_weight = (dual && spec.coset1 == 1);       // A2dual, (0,1)
    long den = shifted_coset ? 3 : 1;
    QY f = QY::zero(var, den, order * den);
    long B = (long)std::sqrt((double)order) + 3;
    for (long m = -B; m <= B; ++m) {
        for (long n = -B; n <= B; ++n) {
            // x-exponent (times den)
            long long key;
            if (dual) {
                key = 2LL * (m * m + m * n + n * n);
            } else if (shifted_coset) {
                key = 6LL * (m * m - m * n + n * n + m - n) + 2;  // 2(...)+2/3 on 1/3 lattice
            } else {
                key = 2LL * (m * m - m * n + n * n);
            }
            if (key >= f.ord_key()) continue;
            Rational w = Rational::one();
            if (eps_weight) w = ((m - n) % 3 == 0) ? Rational(1) : Rational(-1, 2);
            RatFunc c = spec.refined ? upow(2 * (m + n)).scaled(w) : RatFunc(w);
            f.set_term(key, f.terms().count(key) ? f.terms().at(key) + c : c);
        }
    }
    return f;
}

}  // namespace

QSeries lattice_theta(const LatticeThetaSpec& spec, long order, const std::string& var) {
    LatticeThetaSpec s = spec;
    s.refined = false;
    QY f = lattice_theta_impl(s, order, var);
    QSeries out = QSeries::zero(var, f.den(), f.ord_key());
    for (auto& [k, c] : f.terms()) {
        if (!c.is_constant()) throw std::logic_error("lattice_theta: non-constant coefficient");
        out.set_term(k, c.constant());
    }
    return out;
}

QY lattice_theta_refined(const LatticeThetaSpec& spec, long order, const std::string& var) {
    LatticeThetaSpec s = spec;
    s.refined = true;
    return lattice_theta_impl(s, order, var);
}

Rational hurwitz(long Delta) {
    if (Delta <= 0 || (Delta % 4 != 0 && Delta % 4 != 3))
        throw std::domain_error("hurwitz: Delta must be positive and 0,3 mod 4");
    // reduced forms ax^2+bxy+cy^2: |b| <= a <= c, b^2-4ac = -Delta,
    // with b >= 0 when |b| = a or a = c. Weight 1/3 for multiples of
    // x^2+xy+y^2 (reduced rep (a,a,a)), 1/2 for multiples of x^2+y^2
    // (reduced rep (a,0,a)), 1 otherwise.
    Rational h = Rational::zero();
    for (long a = 1; 3 * a * a <= Delta; ++a) {
        for (long b = -a; b <= a; ++b) {
            long num = b * b + Delta;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;  // boundary convention
            if (a == b && b == c)
                h += Rational(1, 3);
            else if (b == 0 && a == c)
                h += Rational(1, 2);
            else
                h += Rational(1);
        }
    }
    return h;
}

namespace {

struct Form {
    long a, b, c;
    bool operator<(const Form& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

long floordiv(long p, long q) {  // q > 0
    return p >= 0 ? p / q : -((-p + q - 1) / q);
}

// Gauss reduction of a positive definite form to the canonical reduced
// representative (|b| <= a <= c, b >= 0 if |b| = a or a = c).
Form gauss_reduce(Form f) {
    for (;;) {
        if (f.b > f.a || f.b <= -f.a) {
            // (x,y) -> (x+ky, y): (a, b+2ak, c+ak^2+bk); pick b' in (-a, a]
            long k = floordiv(f.a - f.b, 2 * f.a);
            f.c += f.a * k * k + f.b * k;
            f.b += 2 * f.a * k;
            continue;
        }
        if (f.c < f.a) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.b < 0 && (-f.b == f.a || f.a == f.c)) {
            f.b = -f.b;
            continue;
        }
        return f;
    }
}

}  // namespace

Rational hurwitz_via_reduction(long Delta) {
    if (Delta <= 0 || (Delta % 4 != 0 && Delta % 4 != 3))
        throw std::domain_error("hurwitz: Delta must be positive and 0,3 mod 4");
    // enumerate all forms with a <= c <= (Delta+1)/4 + 1 (contains every
    // reduced representative) and Gauss-reduce each into its class
    std::map<Form, bool> classes;
    long B = (Delta + 1) / 4 + 1;
    for (long a = 1; a <= B; ++a) {
        for (long c = a; c <= B; ++c) {
            long b2 = 4 * a * c - Delta;
            if (b2 < 0) continue;
            long b = (long)std::llround(std::sqrt((double)b2));
            while (b * b < b2) ++b;
            while (b * b > b2) --b;
            if (b * b != b2) continue;
            classes[gauss_reduce(Form{a, b, c})] = true;
            if (b > 0) classes[gauss_reduce(Form{a, -b, c})] = true;
        }
    }
    Rational h = Rational::zero();
    for (auto& [f, _] : classes) {
        if (f.a == f.b && f.b == f.c)
            h += Rational(1, 3);
        else if (f.b == 0 && f.a == f.c)
            h += Rational(1, 2);
        else
            h += Rational(1);
    }
    return h;
}

QY phi_m21(long q_order, const std::string& var) {
    QY s = phi_m21_sqrt(q_order, var);
    return s * s;
}

QY phi_m21_sqrt(long q_order, const std::string& var) {
    RatFunc u = RatFunc::var();
    QY f = QY::constant(u - u.inverse(), var).truncated(Rational(q_order));
    for (long n = 1; n < q_order; ++n) {
        f *= one_minus(upow(2), var, n, 1, q_order);   // (1 - q^n y)
        f *= one_minus(upow(-2), var, n, 1, q_order);  // (1 - q^n / y)
        f *= one_minus(RatFunc::one(), var, n, 1, q_order).pow_int(-2);
    }
    return f;
}

QY phi_01(long q_order, const std::string& var) {
    // theta-quotient construction in x = q^{1/2}:
    //   phi_{0,1} = 4 [ th2(x,y)^2/th2(x)^2 + th3(x,y)^2/th3(x)^2 + th4(x,y)^2/th4(x)^2 ]
    long xo = 2 * q_order + 2;
    auto lift = [](const QSeries& s) { return to_qy(s); };
    QY t2r = theta2_refined(xo, "x"), t3r = theta3_refined(xo, "x");
    QY t4r = t3r.dilated(RatFunc(Rational(-1)), Rational(1));
    QY t2 = lift(theta2(xo, "x")), t3 = lift(theta3(xo, "x"));
    QY t4 = lift(theta3(xo, "x").dilated(Rational(-1), Rational(1)));
    QY sum = (t2r * t2r) * (t2 * t2).invert() + (t3r * t3r) * (t3 * t3).invert() +
             (t4r * t4r) * (t4 * t4).invert();
    sum = sum.scaled(Rational(4));
    // the result is a function of x^2 = q
    for (auto& [k, c] : sum.terms())
        if (k % (2 * sum.den()) != 0) throw std::logic_error("phi_01: odd x-power survived");
    QY out = sum.dilated(RatFunc::one(), Rational(1, 2)).renamed(var);
    return out.truncated(Rational(q_order));
}

QY jacobi_G(long k, long q_order, const std::string& var) {
    if (k < 1) throw std::domain_error("jacobi_G: k >= 1");
    RatFunc u = RatFunc::var();
    QY g = QY::zero(var, 1, q_order);
    // -(1/2)(y+1)/(y-1) in u
    RatFunc c0 = (upow(2) + RatFunc::one()) / (upow(2) - RatFunc::one());
    g.set_term(0, c0.scaled(Rational(-1, 2)));
    for (long n = 1; n < q_order; ++n) {
        RatFunc c = RatFunc::zero();
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) c = c + upow(2 * d) - upow(-2 * d);
        g.set_term(n, c);
    }
    // G_{k,0} = (y d/dy)^{k-1} G_{1,0}; y d/dy = (u/2) d/du on coefficients
    for (long j = 1; j < k; ++j) {
        QY h = QY::zero(var, 1, q_order);
        for (auto& [key, c] : g.terms()) {
            RatFunc dc = (u * c.derivative()).scaled(Rational(1, 2));
            h.set_term(key, dc);
        }
        g = h;
    }
    return g;
}

QY phi_0_half(long k, long q_order, const std::string& var) {
    if (k == 2) throw std::domain_error("phi_0_half: k = 2 excluded");
    QY g = jacobi_G(k, q_order, var);
    QY root = phi_m21_sqrt(q_order, var);
    return g * root.pow_int(k);
}

QY chiy_eta_product(long order, const std::string& var) {
    QY f = QY::one(var).truncated(Rational(order));
    for (long n = 1; 2 * n < order; ++n) {
        f *= one_minus(upow(2), var, 2 * n, 1, order);
        f *= one_minus(upow(-2), var, 2 * n, 1, order);
        f *= one_minus(RatFunc::one(), var, 2 * n, 1, order).pow_int(10);
    }
    return f;
}

PQY borcherds_lift(const QY& f, long a, long p_order, long q_order) {
    if (a < 1) throw std::domain_error("borcherds_lift: a >= 1");
    long l_max = (p_order - 1) / a;
    if (l_max >= 1 && !f.exact() && f.order() < Rational(l_max) * Rational(q_order))
        throw std::domain_error("borcherds_lift: f carries too few q-coefficients");
    QY inner_zero = QY::zero("q", 1, q_order);
    PQY out = PQY::constant(QY::one("q").truncated(Rational(q_order)), "p").truncated(Rational(p_order));
    for (long l = 1; l <= l_max; ++l) {
        for (auto& [M, coef] : f.terms()) {
            if (M < 0) throw std::domain_error("borcherds_lift: negative q-exponent in f");
            // factor exponents live at q^{M/(l*den)}
            if (Rational(M, f.den() * l) >= Rational(q_order)) continue;
            for (auto& [upk, cr] : coef.laurent_terms()) {
                if (!cr.is_integer())
                    throw std::domain_error("borcherds_lift: non-integer exponent c_{lm,n}");
                long e = cr.to_long();
                if (e == 0) continue;
                // (1 - p^{al} q^{M/(l den)} u^{upk})^e
                QY mono = QY::monomial(upow(upk), "q", M, f.den() * l).truncated(Rational(q_order));
                PQY factor = PQY::constant(QY::one("q").truncated(Rational(q_order)), "p")
                                 .truncated(Rational(p_order));
                factor.set_term(a * l, -mono);
                out = out * factor.pow_int(e);
            }
        }
    }
    return out;
}

PQY igusa_chi10(long p_order, long q_order) {
    long fq = std::max(q_order * std::max(p_order - 1, 1L), q_order);
    QY two_phi01 = phi_01(fq, "q").scaled(Rational(2));
    PQY lift = borcherds_lift(two_phi01, 1, p_order, q_order);
    QY core = to_qy(delta(q_order, "q")) * phi_m21(q_order, "q");
    return lift.scaled_by(core).shifted(1).truncated(Rational(p_order));
}

QY even_part(const QY& f) {
    QY out = QY::zero(f.var(), f.den(), f.ord_key());
    for (auto& [k, c] : f.terms()) {
        Rational e(k, f.den());
        if (e.is_integer() && e.to_long() % 2 == 0) out.set_term(k, c);
    }
    return out;
}

QY substitute_q(const QY& f, long num, long den) {
    return f.dilated(RatFunc::one(), Rational(num, den));
}

QY substitute_y_power(const QY& f, long k) {
    QY out = QY::zero(f.var(), f.den(), f.ord_key());
    for (auto& [key, c] : f.terms()) out.set_term(key, c.substitute_power(k));
    return out;
}

QSeries specialize_y1(const QY& f) {
    QSeries out = QSeries::zero(f.var(), f.den(), f.ord_key());
    for (auto& [key, c] : f.terms()) out.set_term(key, c.eval(Rational(1)));
    return out;
}

PQY negate_p(const PQY& f) {
    return f.dilated(QY::from(Rational(-1)), Rational(1));
}

bool y_symmetric(const QY& f) {
    for (auto& [key, c] : f.terms())
        if (!c.is_symmetric_under_inversion()) return false;
    return true;
}

QY to_qy(const QSeries& f) {
    QY out = QY::zero(f.var(), f.den(), f.ord_key());
    for (auto& [k, c] : f.terms()) out.set_term(k, RatFunc(c));
    return out;
}

}  // namespace vi::qf
