#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "vi/polyv.hpp"
#include "vi/rational.hpp"
#include "vi/series.hpp"

namespace vi::hilb {

// weakly decreasing positive parts
using Partition = std::vector<long>;

long partition_size(const Partition& p);
const std::vector<Partition>& partitions_of(long n);
// arm and leg of box (i,j) (i-th column, j-th row, 0-based; part p[j] boxes in row j)
long arm(const Partition& p, long i, long j);
long leg(const Partition& p, long i, long j);
// boxes (i,j) of a partition: j-th row has p[j] boxes at i = 0..p[j]-1
std::vector<std::pair<long, long>> boxes(const Partition& p);

// a*eps1 + b*eps2 + c*t
struct Weight {
    long a = 0, b = 0, c = 0;
    bool is_zero() const { return a == 0 && b == 0 && c == 0; }
    bool pure_surface() const { return c == 0; }
    Weight operator+(const Weight& o) const { return {a + o.a, b + o.b, c + o.c}; }
    Weight operator-(const Weight& o) const { return {a - o.a, b - o.b, c - o.c}; }
    Weight operator-() const { return {-a, -b, -c}; }
    bool operator<(const Weight& o) const {
        return std::array<long, 3>{a, b, c} < std::array<long, 3>{o.a, o.b, o.c};
    }
    bool operator==(const Weight& o) const { return a == o.a && b == o.b && c == o.c; }
};

// signed multiset of weights; zero-total entries are erased
class KClass {
  public:
    void add(const Weight& w, long mult);
    void add(const KClass& o, long scale = 1);
    // tensor by t^c
    KClass shifted_t(long c) const;
    KClass dual() const;  // negate all weights
    const std::vector<std::pair<Weight, long>>& entries() const {
        compact();
        return entries_;
    }
    long rank() const;
    long zero_multiplicity() const;

  private:
    mutable std::vector<std::pair<Weight, long>> entries_;
    mutable bool dirty_ = false;
    void compact() const;
};

// tangent weight pair of a chart (weights of the coordinate directions)
struct Chart {
    std::pair<long, long> w1, w2;
};

// Toric surface with its T-invariant divisor calculus. Divisors are integer
// vectors over the named base divisors; kappa stores the per-chart weight of
// the local trivializing generator (as a pair (a,b) meaning a*eps1+b*eps2).
struct ToricSurface {
    std::string name;
    std::vector<Chart> charts;
    std::vector<std::string> base_divisors;
    // kappa[d][chart] for base divisor d
    std::vector<std::vector<std::pair<long, long>>> kappa;
    std::vector<std::vector<long>> intersection;  // on base divisor coords
    std::vector<long> K_coords;
    long chi_O = 1;

    long e() const { return (long)charts.size(); }
    long dot(const std::vector<long>& a, const std::vector<long>& b) const;
    long chi_of(const std::vector<long>& d) const;  // chi(O) + d(d-K)/2
    std::pair<long, long> kappa_of(const std::vector<long>& d, size_t chart) const;
    // finite T-representation of H^*(S, O(D)) as a K-class (no t-part);
    // supported for the divisor range the catalog needs, throws otherwise
    KClass global_chi(const std::vector<long>& d) const;
};

const ToricSurface& P2();
const ToricSurface& P1xP1();
// disjoint union (doubles charts, divisors are pairs); used by the
// multiplicativity checks
ToricSurface disjoint_union(const ToricSurface& s);

// one partition per chart, total size n
using MultiPartition = std::vector<Partition>;
const std::vector<MultiPartition>& multi_partitions(const ToricSurface& S, long n);
// number of torus fixed points of S^{[n1]} x S^{[n2]}
long fixed_point_count(const ToricSurface& S, long n1, long n2);

// ---- equivariant weight calculus -------------------------------------------

// tangent weights of S^{[n]} at a fixed point (arm/leg formula)
KClass tangent_weights(const ToricSurface& S, const MultiPartition& mp);
KClass tangent_weights_chart(const Chart& c, const Partition& p);
// H^0(O_Z(D)): weights kappa_D - i w1 - j w2 over boxes
KClass taut_weights(const ToricSurface& S, const std::vector<long>& d, const MultiPartition& mp);
// chi(O_W(A), O(B)) = { kappa_{B-A} + (i+1) w1 + (j+1) w2 }
KClass dual_weights(const ToricSurface& S, const std::vector<long>& d_diff, const MultiPartition& mp);
// chart-local chi(O_W, O_Z(D)); cross-chart pairs contribute zero
KClass rhom_pair_chart(const Chart& c, const std::pair<long, long>& kappa_d, const Partition& w,
                       const Partition& z);
KClass rhom_pairs(const ToricSurface& S, const std::vector<long>& d_diff, const MultiPartition& w,
                  const MultiPartition& z);
// chi(I_W(A), I_Z(B)) assembled from the four terms above
KClass ideal_chi(const ToricSurface& S, const std::vector<long>& a, const std::vector<long>& b,
                 const MultiPartition& w, const MultiPartition& z);
// Ext-oracle route for the tangent space: chi(O) - chi(I,I)
KClass tangent_via_ext(const ToricSurface& S, const MultiPartition& mp);

// ---- rank-1 integrals by localization --------------------------------------

// generic subtorus direction eps = (s1, s2) * u; genericity is asserted
struct SubtorusDir {
    Rational s1, s2;
    Rational alpha(const Weight& w) const { return s1.scaled(Rational(w.a)) + s2.scaled(Rational(w.b)); }
};
SubtorusDir default_dir();
SubtorusDir second_dir();

// int_{S^[n]} c_{2n}(T) (equals the number of fixed points)
Rational integral_top_chern_tangent(const ToricSurface& S, long n, const SubtorusDir& dir);
// int_{S^[n]} c(T) as a mixed class (degree-2n part integrates; the u-limit
// machinery discards the rest exactly)
Rational integral_total_chern_tangent(const ToricSurface& S, long n, const SubtorusDir& dir);
// Segre number int_{S^[n]} s_{2n}(L^{[n]})
Rational segre_number(const ToricSurface& S, const std::vector<long>& L, long n,
                      const SubtorusDir& dir);
// cobordism class [S^[n]] = int prod_i (1 + sum_k v_k x_i^k), truncated at
// weighted v-degree `cap`
PolyV cobordism_class(const ToricSurface& S, long n, long cap, const SubtorusDir& dir);
// K-theoretic Verlinde number chi(S^[n], mu(L) ⊗ E^r),
// mu(L) = det(L^[n]) ⊗ det(O^[n])^{-1}, E = det(O^[n])
Rational verlinde_chi(const ToricSurface& S, const std::vector<long>& L, long r, long n,
                      long p, long q);

// u-series evaluation of a signed product of weight factors: each entry is
// (weight, multiplicity, chern_style); chern_style multiplies (1 + w)^mult,
// otherwise the bare weight w^mult. Used by the rank-1 integrals; mochizuki
// has its own fast engine.
Series<Rational> weight_product_u(const std::vector<std::tuple<Weight, long, bool>>& factors,
                                  const SubtorusDir& dir, long u_order);

}  // namespace vi::hilb
