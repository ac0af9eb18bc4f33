#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vi/rational.hpp"

namespace vi::surf {

// A cohomology class is stored purely through coordinates in a small
// reference sublattice with known Gram matrix; every formula consumes only
// the resulting intersection numbers and congruences. Coordinates are
// assumed to span a primitively embedded sublattice, so divisibility mod k
// can be tested coordinatewise.
struct SwClass {
    std::string label;
    long sw = 0;                // SW(a), Mochizuki convention
    std::vector<long> coords;
};

struct NamedClass {
    std::string label;
    std::vector<long> coords;
};

struct SurfaceDescriptor {
    std::string name;
    long chi_O = 0;  // chi(O_S)
    long K2 = 0;     // K_S^2
    long e = 0;      // e(S), used by rank-1 checks
    bool derived_data = false;  // entry relies on SW data not printed in the sources
    std::vector<std::vector<long>> gram;
    std::vector<long> K_coords;
    std::vector<SwClass> sw_classes;
    std::vector<NamedClass> c1_choices;
    std::vector<NamedClass> l_choices;  // line-bundle data for Verlinde-type formulas

    long dot(const std::vector<long>& a, const std::vector<long>& b) const;
    const NamedClass& c1(const std::string& label) const;
    const NamedClass& lclass(const std::string& label) const;

    // chi(c) = chi(O) + c(c-K)/2; throws if c(c-K) is odd
    long chi_of_class(const std::vector<long>& c) const;

    // duality and shape checks; throws with a description on failure
    void validate() const;
};

// subtract / add coordinate vectors
std::vector<long> coords_sub(const std::vector<long>& a, const std::vector<long>& b);
std::vector<long> coords_add(const std::vector<long>& a, const std::vector<long>& b);
// a == b mod k*Lattice, tested coordinatewise
bool congruent_mod(const std::vector<long>& a, const std::vector<long>& b, long k);

// rank-2 sum data: one term per SW basic class a1 (a2 = c1 - a1)
struct Rank2Term {
    std::string label;
    long sw;
    std::vector<long> a1, a2;
    long a1_sq, a2_sq, a1a2, a1K, a2K;
    long chi_a2, chi_a2_minus_a1, chi_a1_minus_a2;
    long d_sq;        // (a1-a2)^2
    bool wrong_side;  // a1.K > a2.K proxy for a1 H > a2 H (canonical polarization)
};
std::vector<Rank2Term> rank2_terms(const SurfaceDescriptor& s, const NamedClass& c1);

// rank-3 pair data for the closed-form evaluators
struct Rank3Pair {
    long sw_product;
    long p_ab;          // a.b
    long q_ab;          // (K-a)(K-b)
    long eps_exponent;  // (a-b).c1 mod 3
    bool delta_c1ab;    // c1 + a == b mod 3*Lattice
    long multiplicity;  // orbit size under (a,b)->(b,a),(K-a,K-b)
};
std::vector<Rank3Pair> rank3_pairs(const SurfaceDescriptor& s, const NamedClass& c1);

const std::vector<std::string>& catalog_names();
const SurfaceDescriptor& catalog_get(const std::string& name);
SurfaceDescriptor load_from_json(const std::string& json_text);

}  // namespace vi::surf
