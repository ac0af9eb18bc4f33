#pragma once

#include <string>
#include <vector>

#include "vi/polyv.hpp"
#include "vi/qforms.hpp"
#include "vi/series.hpp"
#include "vi/surfaces.hpp"

namespace vi::conj {

using qf::PQY;
using qf::QY;

// ---- rank 2 closed-form generating functions --------------------------------

// Euler: 4 (1/(2 etabar(x^2)^12))^chi (2 etabar(x^4)^2/theta3)^{K^2}
//        sum_a SW(a) (-1)^{a c1} (theta3(x)/theta3(-x))^{a K}
QSeries euler_rk2_series(const surf::SurfaceDescriptor& S, const std::string& c1_label, long x_order);
Rational eval_euler_rk2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd);

// chi_y refinement (coefficients Laurent in u = y^{1/2}, symmetric)
QY chiy_rk2_series(const surf::SurfaceDescriptor& S, const std::string& c1_label, long x_order);
RatFunc eval_chiy_rk2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd);

// K-theoretic Donaldson invariants
QSeries kdonaldson_rk2_series(const surf::SurfaceDescriptor& S, const std::string& c1_label,
                              const std::string& l_label, long x_order);
Rational eval_kdonaldson_rk2(const surf::SurfaceDescriptor& S, const std::string& c1_label,
                             const std::string& l_label, long vd);

// Verlinde chi_y refinement
QY verlinde_chiy_rk2_series(const surf::SurfaceDescriptor& S, const std::string& c1_label,
                            const std::string& l_label, long x_order);
RatFunc eval_verlinde_chiy_rk2(const surf::SurfaceDescriptor& S, const std::string& c1_label,
                               const std::string& l_label, long vd);

// elliptic genus: Ell^vir(M) is the coefficient of p^{vd}, a (q,y)-series
enum class EvenLiftReading { EvenThenSubstitute, SubstituteThenEven };
PQY ellgen_rk2_series(const surf::SurfaceDescriptor& S, const std::string& c1_label, long p_order,
                      long q_order, EvenLiftReading reading = EvenLiftReading::EvenThenSubstitute);
QY eval_ellgen_rk2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd,
                   long q_order, EvenLiftReading reading = EvenLiftReading::EvenThenSubstitute);

// cobordism classes: coefficients in the truncated polynomial ring Q[v_1..]
Series<PolyV> cobordism_rk2_series(const surf::SurfaceDescriptor& S, const std::string& c1_label,
                                   long p_order, long v_cap);
PolyV eval_cobordism_rk2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd,
                         long v_cap);
// rank-1 EGL cobordism universal series A, B (series in p)
Series<PolyV> egl_cobordism_A(long p_order, long v_cap);
Series<PolyV> egl_cobordism_B(long p_order, long v_cap);
// the printed truncation of 1/B^cob (p-order 6, v_6.. = 0)
Series<PolyV> bcob_inverse_printed(long v_cap);

// ---- rank 3 ------------------------------------------------------------------

enum class RootStrategy { Symmetric, QuadExtExplicit };

QSeries euler_rk3_series(const surf::SurfaceDescriptor& S, const std::string& c1_label, long x_order,
                         RootStrategy strategy = RootStrategy::Symmetric);
Rational eval_euler_rk3(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd,
                        RootStrategy strategy = RootStrategy::Symmetric);
QY chiy_rk3_series(const surf::SurfaceDescriptor& S, const std::string& c1_label, long x_order);
// SU(3) monopole branch (series in q on a fractional lattice)
QSeries mono_rk3_series(const surf::SurfaceDescriptor& S, const std::string& c1_label, long order);
// full SU(2) Vafa-Witten partition function (monopole line + instanton lines)
QSeries vw_full_rk2_series(const surf::SurfaceDescriptor& S, const std::string& c1_label, long order);
// instanton part Z^inst_{S,H,2,c1}(q)
QSeries zinst_rank2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long order);

// ---- Verlinde / Segre universal bundles --------------------------------------

struct VerlindeBundle {
    QSeries g, f;  // series in w
};
VerlindeBundle egl_verlinde(long r, long order);            // rank 1 (Theorem data)
VerlindeBundle verlinde_general(long rho, long r, long order);  // G_r = g_{r/rho}, F_r = f_{r/rho}

struct SegreBundle {
    QSeries V, W, X;  // series in z
};
SegreBundle mop_segre(long s, long order);                 // rank 1 (Theorem data)
SegreBundle segre_general(long rho, long s, long order);   // arbitrary rank formulas

// ---- identity checkers ---------------------------------------------------------

struct Report {
    bool pass = false;
    std::string detail;
};

// kinds: segre-verlinde-rk1:<r> | segre-verlinde-general:<rho>,<r> |
//        serre-duality | example1 | example2 | example3 |
//        lehn-vs-localization | klyachko | dmvv-k3 | gn-identity |
//        egl-consistency
Report check_identity(const std::string& kind, long order);
std::vector<std::string> identity_kinds();

}  // namespace vi::conj
