#pragma once

#include <string>
#include <vector>

#include "vi/series.hpp"

namespace vi::qf {

// Two-variable objects are series in the main variable with coefficients in
// Q(u), u = y^{1/2}. Triple-variable objects (Borcherds lifts, chi_10) are
// series in p whose coefficients are such (q,y)-series.
using YC = RatFunc;           // Laurent/rational functions in u = y^(1/2)
using QY = Series<RatFunc>;   // q-series over Q(u)
using PQY = Series<QY>;       // p-series over (q,y)-series

// ---- eta and friends ------------------------------------------------------

// etabar(x) = prod_{n>=1} (1 - x^n), truncated at x^order
QSeries etabar(long order, const std::string& var = "q");
// Delta(x) = x * etabar(x)^24
QSeries delta(long order, const std::string& var = "q");
// eta(x)^k = x^{k/24} etabar(x)^k (Puiseux)
QSeries eta_pow(long k, long order, const std::string& var = "q");

// ---- theta functions ------------------------------------------------------

QSeries theta2(long order, const std::string& var = "x");  // sum x^{(n+1/2)^2}
QSeries theta3(long order, const std::string& var = "x");  // sum x^{n^2}
// refined versions carrying y^{n+1/2} resp. y^n (as powers of u = y^(1/2))
QY theta2_refined(long order, const std::string& var = "x");
QY theta3_refined(long order, const std::string& var = "x");
// theta3(x, y^{1/2}) = sum x^{n^2} u^n
QY theta3_half_refined(long order, const std::string& var = "x");

// ---- lattice theta functions (A2 and its dual) -----------------------------

enum class LatticeKind { A2, A2dual };
struct LatticeThetaSpec {
    LatticeKind lattice;
    int coset0 = 0, coset1 = 0;  // (0,0), (1,0) for A2; (0,0), (0,1) for A2dual
    bool refined = false;
};

QSeries lattice_theta(const LatticeThetaSpec& spec, long order, const std::string& var = "x");
QY lattice_theta_refined(const LatticeThetaSpec& spec, long order, const std::string& var = "x");

// ---- Hurwitz class numbers --------------------------------------------------

// H(Delta) for Delta > 0, Delta = 0,3 mod 4, by enumeration of reduced forms.
Rational hurwitz(long Delta);
// independent oracle: enumerate coarse forms and Gauss-reduce to classes
Rational hurwitz_via_reduction(long Delta);

// ---- Jacobi forms -----------------------------------------------------------

// phi_{-2,1}(q,y) = (u - 1/u)^2 prod (1-q^n y)^2 (1-q^n/y)^2 (1-q^n)^{-4}
QY phi_m21(long q_order, const std::string& var = "q");
// the exact square root  (u - 1/u) prod (1-q^n y)(1-q^n/y)(1-q^n)^{-2}
QY phi_m21_sqrt(long q_order, const std::string& var = "q");
// weak Jacobi form of weight 0, index 1, q^0 term y + 10 + 1/y
QY phi_01(long q_order, const std::string& var = "q");
// G_{k,0} Jacobi-Eisenstein series (k >= 1)
QY jacobi_G(long k, long q_order, const std::string& var = "q");
// phi_{0,k/2} = G_{k,0} phi_{-2,1}^{k/2}, k != 2
QY phi_0_half(long k, long q_order, const std::string& var = "q");

// chi_y replacement of etabar(x^2)^12:
//   prod (1-x^{2n} y)(1-x^{2n} y^{-1})(1-x^{2n})^{10}
QY chiy_eta_product(long order, const std::string& var = "x");

// ---- Borcherds-type lifts ---------------------------------------------------

// L_a(f) = prod_{l>0, m>=0, n} (1 - p^{al} q^m y^n)^{c_{lm,n}};
// f must carry q-coefficients through order >= l_max * q_order where
// l_max = (p_order-1)/a (asserted). All exponents c must be integers.
PQY borcherds_lift(const QY& f, long a, long p_order, long q_order);

// Igusa cusp form of weight 10 via the Gritsenko-Nikulin identity:
// chi10(p,q,y) := L(2 phi_{0,1}) * p * Delta(q) * phi_{-2,1}(q,y)
PQY igusa_chi10(long p_order, long q_order);

// ---- helpers on (q,y)- and (p,q,y)-series ----------------------------------

// even part: keep terms with even integer q-exponent
QY even_part(const QY& f);
// q -> q^(num/den)
QY substitute_q(const QY& f, long num, long den);
// y -> y^k, i.e. u -> u^k on every coefficient
QY substitute_y_power(const QY& f, long k);
// specialize y -> 1 (u -> 1)
QSeries specialize_y1(const QY& f);
// p -> -p on a lift-type series
PQY negate_p(const PQY& f);

// u <-> 1/u symmetry check for every coefficient
bool y_symmetric(const QY& f);

// lift a rational q-series into the (q,y) world
QY to_qy(const QSeries& f);

}  // namespace vi::qf
