#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "vi/qforms.hpp"

using namespace vi;
using namespace vi::qf;

namespace {

// independent finite-product oracle, plain convolution arithmetic
std::vector<Rational> etabar_oracle(long order) {
    std::vector<Rational> c((size_t)order, Rational(0));
    c[0] = Rational(1);
    for (long e = 1; e < order; ++e) {
        std::vector<Rational> n = c;
        for (long k = 0; k + e < order; ++k) n[(size_t)(k + e)] -= c[(size_t)k];
        c = n;
    }
    return c;
}

RatFunc upow(long k) {
    if (k >= 0) return RatFunc(Poly::monomial(Rational::one(), (size_t)k));
    return RatFunc(Poly::one(), Poly::monomial(Rational::one(), (size_t)(-k)));
}

}  // namespace

TEST_CASE("etabar matches pentagonal numbers and the product oracle") {
    long N = 20;
    QSeries e = etabar(N);
    auto oracle = etabar_oracle(N);
    for (long k = 0; k < N; ++k) CHECK(e.coeff_int(k) == oracle[(size_t)k]);
    CHECK(e.coeff_int(0) == Rational(1));
    CHECK(e.coeff_int(1) == Rational(-1));
    CHECK(e.coeff_int(2) == Rational(-1));
    CHECK(e.coeff_int(5) == Rational(1));
    CHECK(e.coeff_int(7) == Rational(1));
    CHECK(e.coeff_int(12) == Rational(-1));
    CHECK(e.coeff_int(15) == Rational(-1));
    CHECK(e.coeff_int(3) == Rational(0));
}

TEST_CASE("delta expansion and eta^24/Delta = 1") {
    long N = 8;
    QSeries d = delta(N);
    CHECK(d.coeff_int(1) == Rational(1));
    CHECK(d.coeff_int(2) == Rational(-24));
    CHECK(d.coeff_int(3) == Rational(252));
    CHECK(d.coeff_int(4) == Rational(-1472));
    QSeries ratio = eta_pow(24, N) * d.invert();
    CHECK(ratio.agrees_with(QSeries::one("q")));
}

TEST_CASE("theta2/theta3 by direct summation") {
    QSeries t3 = theta3(12);
    CHECK(t3.coeff_int(0) == Rational(1));
    CHECK(t3.coeff_int(1) == Rational(2));
    CHECK(t3.coeff_int(4) == Rational(2));
    CHECK(t3.coeff_int(9) == Rational(2));
    CHECK(t3.coeff_int(2) == Rational(0));

    QSeries t2 = theta2(8);
    CHECK(t2.coeff(Rational(1, 4)) == Rational(2));
    CHECK(t2.coeff(Rational(9, 4)) == Rational(2));
    CHECK(t2.coeff(Rational(25, 4)) == Rational(2));
    CHECK(t2.coeff(Rational(1)) == Rational(0));
}

TEST_CASE("jacobi triple product for theta3") {
    long N = 16;
    QSeries rhs = QSeries::one("x").truncated(Rational(N));
    for (long n = 1; 2 * n - 1 < N; ++n) {
        QSeries f1 = QSeries::one("x").truncated(Rational(N));
        f1.set_term(2 * n, Rational(-1));
        QSeries f2 = QSeries::one("x").truncated(Rational(N));
        f2.set_term(2 * n - 1, Rational(1));
        rhs *= f1 * f2 * f2;
    }
    CHECK(theta3(N).agrees_with(rhs));
}

TEST_CASE("refined thetas specialize to unrefined at y=1 and have stated terms") {
    long N = 10;
    QY t3r = theta3_refined(N);
    CHECK(t3r.coeff_int(0) == RatFunc::one());
    CHECK(t3r.coeff_int(1) == upow(2) + upow(-2));
    CHECK(specialize_y1(t3r).agrees_with(theta3(N)));
    QY t2r = theta2_refined(N);
    CHECK(specialize_y1(t2r).agrees_with(theta2(N)));
    CHECK(y_symmetric(t3r));
    CHECK(y_symmetric(t2r));
}

TEST_CASE("lattice thetas against brute-force enumeration oracle") {
    long N = 12;
    std::map<long, Rational> oracle00, oracle01;
    for (long m = -8; m <= 8; ++m) {
        for (long n = -8; n <= 8; ++n) {
            long expnt = 2 * (m * m + m * n + n * n);
            if (expnt >= N) continue;
            oracle00[expnt] += Rational(1);
            oracle01[expnt] += ((m - n) % 3 == 0) ? Rational(1) : Rational(-1, 2);
        }
    }
    QSeries t00 = lattice_theta({LatticeKind::A2dual, 0, 0, false}, N);
    QSeries t01 = lattice_theta({LatticeKind::A2dual, 0, 1, false}, N);
    for (auto& [e, c] : oracle00) CHECK(t00.coeff_int(e) == c);
    for (auto& [e, c] : oracle01) CHECK(t01.coeff_int(e) == c);
    CHECK(t00.coeff_int(0) == Rational(1));
    CHECK(t00.coeff_int(2) == Rational(6));
    CHECK(t00.coeff_int(6) == Rational(6));
    CHECK(t00.coeff_int(8) == Rational(6));
    CHECK(t01.coeff_int(0) == Rational(1));
    CHECK(t01.coeff_int(2) == Rational(-3));
    CHECK(t01.coeff_int(6) == Rational(6));
    CHECK(t01.coeff_int(8) == Rational(-3));
    for (auto& [k, c] : t01.terms()) CHECK(c.is_integer());
    QSeries a2 = lattice_theta({LatticeKind::A2, 0, 0, false}, N);
    CHECK(a2.coeff_int(0) == Rational(1));
    CHECK(a2.coeff_int(2) == Rational(6));
    QSeries a210 = lattice_theta({LatticeKind::A2, 1, 0, false}, N);
    CHECK(a210.coeff(Rational(2, 3)) == Rational(3));
    CHECK(specialize_y1(lattice_theta_refined({LatticeKind::A2dual, 0, 1, true}, N)).agrees_with(t01));
    CHECK(specialize_y1(lattice_theta_refined({LatticeKind::A2, 1, 0, true}, N)).agrees_with(a210));
}

TEST_CASE("hurwitz class numbers: stated values and dual oracle to 200") {
    CHECK(hurwitz(3) == Rational(1, 3));
    CHECK(hurwitz(4) == Rational(1, 2));
    CHECK(hurwitz(7) == Rational(1));
    CHECK(hurwitz(8) == Rational(1));
    CHECK(hurwitz(11) == Rational(1));
    CHECK(hurwitz(12) == Rational(4, 3));
    CHECK(hurwitz(23) == Rational(3));
    CHECK_THROWS(hurwitz(5));
    CHECK_THROWS(hurwitz(-3));
    for (long d = 3; d <= 200; ++d) {
        if (d % 4 != 0 && d % 4 != 3) continue;
        CHECK(hurwitz(d) == hurwitz_via_reduction(d));
    }
}

TEST_CASE("hurwitz satisfies the Eichler relation with H(0) = -1/12") {
    for (long n = 1; n <= 40; ++n) {
        Rational lhs = Rational::zero();
        for (long r = -2 * n; r <= 2 * n; ++r) {
            if (r * r > 4 * n) continue;
            long D = 4 * n - r * r;
            lhs += (D == 0) ? Rational(-1, 12) : hurwitz(D);
        }
        long sigma = 0, minsum = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) {
                sigma += d;
                minsum += std::min(d, n / d);
            }
        CHECK(lhs == Rational(2 * sigma - minsum));
    }
}

TEST_CASE("phi_{-2,1}: the displayed identity through q^10") {
    long N = 11;
    RatFunc u = RatFunc::var();
    QY lhs = substitute_y_power(phi_m21(N, "q"), 2);       // phi_{-2,1}(q, y^2)
    lhs = substitute_q(lhs, 2, 1).truncated(Rational(N));  // -> (q^2, y^2)
    lhs = lhs * to_qy(delta((N + 1) / 2, "q").dilated(Rational::one(), Rational(2)).truncated(Rational(N)));
    RatFunc denom = (u - u.inverse()) * (u - u.inverse());
    lhs = lhs.scaled_by(denom.inverse());

    QY rhs = QY::constant((u + u.inverse()) * (u + u.inverse()), "q").truncated(Rational(N)).shifted(2);
    for (long n = 1; 2 * n < N; ++n) {
        QY f1 = QY::one("q").truncated(Rational(N));
        f1.set_term(2 * n, -upow(4));
        QY f2 = QY::one("q").truncated(Rational(N));
        f2.set_term(2 * n, -upow(-4));
        QY f3 = QY::one("q").truncated(Rational(N));
        f3.set_term(2 * n, -RatFunc::one());
        rhs *= f1 * f1 * f2 * f2 * f3.pow_int(20);
    }
    CHECK(lhs.agrees_with(rhs));
}

TEST_CASE("phi_01: q^0 anchor, y-symmetry, Euler specialization") {
    long N = 6;
    QY p = phi_01(N);
    RatFunc expect0 = upow(2) + RatFunc(Rational(10)) + upow(-2);
    CHECK(p.coeff_int(0) == expect0);
    CHECK(y_symmetric(p));
    // 2*phi01 = Ell(K3); at y=1 the elliptic genus degenerates to e(K3)=24
    QSeries at1 = specialize_y1(p);
    for (long k = 0; k < N; ++k) CHECK(at1.coeff_int(k) == (k == 0 ? Rational(12) : Rational(0)));
}

TEST_CASE("G series and phi_{0,k/2}") {
    long N = 6;
    QY g1 = jacobi_G(1, N);
    RatFunc u = RatFunc::var();
    CHECK(g1.coeff_int(1) == upow(2) - upow(-2));
    CHECK(g1.coeff_int(2) == upow(2) - upow(-2) + upow(4) - upow(-4));
    QY g2 = jacobi_G(2, N);
    CHECK(g2.coeff_int(1) == upow(2) + upow(-2));
    QY ph = phi_0_half(1, N);
    CHECK(ph.coeff_int(0) == (u + u.inverse()).scaled(Rational(-1, 2)));
    for (auto& [k, c] : ph.terms()) CHECK(c.is_laurent());
    CHECK_THROWS(phi_0_half(2, N));
    QY r = phi_m21_sqrt(N, "q");
    CHECK((r * r).agrees_with(phi_m21(N, "q")));
}

TEST_CASE("borcherds lift: constant input gives etabar power") {
    long P = 8, Q = 3;
    QY f = QY::constant(RatFunc(Rational(3)), "q").truncated(Rational(Q * P));
    PQY lift = borcherds_lift(f, 1, P, Q);
    QSeries eb = etabar(P, "p").pow_int(3);
    for (long l = 0; l < P; ++l) {
        QY c = lift.coeff_int(l);
        CHECK(c.coeff_int(0) == RatFunc(eb.coeff_int(l)));
        for (long m = 1; m < Q; ++m) CHECK(c.coeff_int(m) == RatFunc::zero());
    }
}

TEST_CASE("borcherds lift: p^1 coefficient of 1/L(f) returns f") {
    long P = 2, Q = 5;
    QY f = phi_01(Q, "q").scaled(Rational(2));
    PQY inv = borcherds_lift(f, 1, P, Q).invert();
    CHECK(inv.coeff_int(1).agrees_with(f.truncated(Rational(Q))));
}

TEST_CASE("igusa chi10 via Gritsenko-Nikulin: definitional identities") {
    long P = 4, Q = 4;
    PQY chi10 = igusa_chi10(P, Q);
    QY core = to_qy(delta(Q, "q")) * phi_m21(Q, "q");
    PQY lift = borcherds_lift(phi_01(Q * std::max(P - 1, 1L), "q").scaled(Rational(2)), 1, P, Q);
    PQY lhs = chi10 * PQY::constant(core, "p").truncated(Rational(P)).invert();
    CHECK(lhs.coeff_int(0).is_zero());
    CHECK(lhs.coeff_int(1).agrees_with(lift.coeff_int(0)));
    CHECK(lhs.coeff_int(2).agrees_with(lift.coeff_int(1)));
    CHECK(chi10.coeff_int(0).is_zero());
    CHECK(chi10.coeff_int(1).agrees_with(core.truncated(Rational(Q))));
}

TEST_CASE("A^elg squared equals p^2 Delta phi / chi10(p^2) (lift route)") {
    long P = 6, Q = 3;
    QY ph = phi_01(Q * ((P - 1) / 2), "q");
    PQY a_elg = borcherds_lift(ph, 2, P, Q).invert();
    PQY lhs = a_elg * a_elg;
    PQY chi10 = igusa_chi10(P / 2 + 1, Q);
    PQY chi10_p2 = chi10.dilated(QY::one(), Rational(2));
    QY core = to_qy(delta(Q, "q")) * phi_m21(Q, "q");
    PQY rhs = PQY::constant(core, "p").truncated(Rational(P)).shifted(2) * chi10_p2.invert();
    CHECK(lhs.agrees_with(rhs));
}

TEST_CASE("chiy eta product specializes to etabar(x^2)^12 at y=1") {
    long N = 14;
    QY p = chiy_eta_product(N);
    QSeries expect = etabar(N / 2 + 1, "x").pow_int(12).dilated(Rational::one(), Rational(2));
    CHECK(specialize_y1(p).agrees_with(expect.truncated(Rational(N))));
}
