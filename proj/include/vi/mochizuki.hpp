#pragma once

#include <array>
#include <optional>
#include <string>

#include "vi/hilb.hpp"
#include "vi/series.hpp"
#include "vi/surfaces.hpp"

namespace vi::moc {

// Insertion kinds: each names the multiplicative genus datum P applied to
// the virtual tangent class in the descendent-Donaldson reduction. Euler is
// the fully wired localization path; ChiY runs through the generic engine;
// Cobordism/Verlinde/Segre name the rank-1 pipelines used by the closed-form
// evaluators and are rejected by the rank-2 localization driver.
enum class InsertionKind { Euler, ChiY, EllipticGenus, Cobordism, Verlinde, Segre, VerlindeChiY };
std::string kind_name(InsertionKind k);

// C(a1,a2,t): the n = (0,0) term of the Mochizuki integrand at rank 2
RatFunc leading_term(long chi_O, long chi_a1, long chi_a2, long chi_a2_minus_a1,
                     long chi_a1_minus_a2);

// Z_S(a1,a2,t,q): normalized localization generating function, Euler
// insertion, coefficients exact in Q(t)
TSeries z_series_euler(const hilb::ToricSurface& S, const std::vector<long>& a1,
                       const std::vector<long>& a2, long q_order, const hilb::SubtorusDir& dir);

// generic-engine variant returning coefficients as Laurent windows in t over
// Q(u), u = y^{1/2}; window [t_low, t_high)
using TWindow = Series<RatFunc>;             // Laurent series in t over Q(u)
using ZWindowSeries = Series<TWindow>;       // q-series over such windows
ZWindowSeries z_series_generic(const hilb::ToricSurface& S, const std::vector<long>& a1,
                               const std::vector<long>& a2, InsertionKind kind, long q_order,
                               const hilb::SubtorusDir& dir, long t_low, long t_high);

struct UniversalSeriesSet {
    InsertionKind kind = InsertionKind::Euler;
    long order = 0;
    std::array<TSeries, 7> A;
    std::string epsilon_draw;  // the subtorus direction used
};

// toric extraction of A_1..A_7 from the seven reference triples
UniversalSeriesSet extract_universal(InsertionKind kind, long q_order, const hilb::SubtorusDir& dir);
// cache-backed variant (VI_CACHE_DIR, default ./cache); Euler kind only
UniversalSeriesSet universal_cached(InsertionKind kind, long q_order);
std::string universal_to_json(const UniversalSeriesSet& u);
UniversalSeriesSet universal_from_json(const std::string& text);

// chi_y-refined universal set at small order through the generic engine
struct UniversalWindowSet {
    InsertionKind kind;
    long order;
    std::array<ZWindowSeries, 7> A_log;  // log A_i as q-series of t-windows
};
UniversalWindowSet extract_universal_windows(InsertionKind kind, long q_order,
                                             const hilb::SubtorusDir& dir, long t_low, long t_high);

enum class SumMode { Half, Full };

// Theorem-style evaluator: Res_t of the x^vd coefficient of the universal
// expression, SW-weighted over a1 + a2 = c1
Rational evaluate_rank2(const surf::SurfaceDescriptor& S, const std::string& c1_label,
                        const UniversalSeriesSet& uni, long vd, SumMode mode = SumMode::Full);

// vd is realizable iff vd >= 0 and vd = -c1^2 - 3 chi(O) mod 4
bool vd_realizable_rank2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd);

// q-order of extraction needed to evaluate all realizable vd <= max_vd
long required_order_rank2(const surf::SurfaceDescriptor& S, const std::string& c1_label, long max_vd,
                          SumMode mode = SumMode::Full);
// Condition (c) of the universality theorem at the given vd
bool rank2_applicable(const surf::SurfaceDescriptor& S, const std::string& c1_label, long vd);

}  // namespace vi::moc
