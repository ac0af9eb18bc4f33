#include "vi/surfaces.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <stdexcept>

namespace vi::surf {

using nlohmann::json;

long SurfaceDescriptor::dot(const std::vector<long>& a, const std::vector<long>& b) const {
    if (a.size() != gram.size() || b.size() != gram.size())
        throw std::domain_error(name + ": coordinate size mismatch");
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) s += a[i] * gram[i][j] * b[j];
    return s;
}

const NamedClass& SurfaceDescriptor::c1(const std::string& label) const {
    for (auto& c : c1_choices)
        if (c.label == label) return c;
    throw std::domain_error(name + ": unknown c1 choice '" + label + "'");
}

const NamedClass& SurfaceDescriptor::lclass(const std::string& label) const {
    for (auto& c : l_choices)
        if (c.label == label) return c;
    throw std::domain_error(name + ": unknown L choice '" + label + "'");
}

long SurfaceDescriptor::chi_of_class(const std::vector<long>& c) const {
    long n = dot(c, c) - dot(c, K_coords);
    if (n % 2 != 0) throw std::domain_error(name + ": c(c-K) odd, inconsistent class data");
    return chi_O + n / 2;
}

void SurfaceDescriptor::validate() const {
    if ((K2 + e) % 12 != 0 || (K2 + e) / 12 != chi_O)
        throw std::domain_error(name + ": Noether check failed");
    if (dot(K_coords, K_coords) != K2) throw std::domain_error(name + ": K^2 mismatch");
    // SW duality: K-a present with sign (-1)^chi, intersections consistent
    long sign = (chi_O % 2 == 0) ? 1 : -1;
    for (auto& a : sw_classes) {
        if (dot(a.coords, coords_sub(a.coords, K_coords)) != 0)
            throw std::domain_error(name + ": class " + a.label + " violates a(a-K)=0");
        std::vector<long> dual = coords_sub(K_coords, a.coords);
        bool found = false;
        for (auto& b : sw_classes) {
            if (b.coords == dual) {
                found = true;
                if (b.sw != sign * a.sw)
                    throw std::domain_error(name + ": SW duality sign fails for " + a.label);
            }
        }
        if (!found) throw std::domain_error(name + ": dual class of " + a.label + " missing");
        (void)chi_of_class(a.coords);
    }
    for (auto& c : c1_choices) (void)dot(c.coords, c.coords);
}

std::vector<long> coords_sub(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
std::vector<long> coords_add(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
bool congruent_mod(const std::vector<long>& a, const std::vector<long>& b, long k) {
    for (size_t i = 0; i < a.size(); ++i)
        if (((a[i] - b[i]) % k + k) % k != 0) return false;
    return true;
}

std::vector<Rank2Term> rank2_terms(const SurfaceDescriptor& s, const NamedClass& c1) {
    std::vector<Rank2Term> out;
    for (auto& a : s.sw_classes) {
        if (a.sw == 0) continue;
        Rank2Term t;
        t.label = a.label;
        t.sw = a.sw;
        t.a1 = a.coords;
        t.a2 = coords_sub(c1.coords, a.coords);
        t.a1_sq = s.dot(t.a1, t.a1);
        t.a2_sq = s.dot(t.a2, t.a2);
        t.a1a2 = s.dot(t.a1, t.a2);
        t.a1K = s.dot(t.a1, s.K_coords);
        t.a2K = s.dot(t.a2, s.K_coords);
        t.chi_a2 = s.chi_of_class(t.a2);
        t.chi_a2_minus_a1 = s.chi_of_class(coords_sub(t.a2, t.a1));
        t.chi_a1_minus_a2 = s.chi_of_class(coords_sub(t.a1, t.a2));
        std::vector<long> d = coords_sub(t.a1, t.a2);
        t.d_sq = s.dot(d, d);
        // a1 H <= a2 H proxied by the canonical polarization
        t.wrong_side = t.a1K > t.a2K;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Rank3Pair> rank3_pairs(const SurfaceDescriptor& s, const NamedClass& c1) {
    // orbits of ordered SW pairs (a,b) under J:(a,b) -> (K-b,K-a); J preserves
    // SW(a)SW(b), the eps and delta prefactors, and swaps the Z-exponents.
    std::vector<Rank3Pair> out;
    std::set<std::pair<size_t, size_t>> seen;
    auto index_of = [&](const std::vector<long>& c) -> size_t {
        for (size_t i = 0; i < s.sw_classes.size(); ++i)
            if (s.sw_classes[i].coords == c) return i;
        throw std::domain_error(s.name + ": SW table not closed under duality");
    };
    for (size_t i = 0; i < s.sw_classes.size(); ++i) {
        for (size_t j = 0; j < s.sw_classes.size(); ++j) {
            if (seen.count({i, j})) continue;
            const auto& A = s.sw_classes[i];
            const auto& B = s.sw_classes[j];
            if (A.sw == 0 || B.sw == 0) continue;
            size_t ji = index_of(coords_sub(s.K_coords, B.coords));
            size_t jj = index_of(coords_sub(s.K_coords, A.coords));
            seen.insert({i, j});
            bool self_fixed = (ji == i && jj == j);
            if (!self_fixed) seen.insert({ji, jj});
            Rank3Pair p;
            p.sw_product = A.sw * B.sw;
            p.p_ab = s.dot(A.coords, B.coords);
            p.q_ab = s.dot(coords_sub(s.K_coords, A.coords), coords_sub(s.K_coords, B.coords));
            long m = s.dot(coords_sub(A.coords, B.coords), c1.coords);
            p.eps_exponent = ((m % 3) + 3) % 3;
            p.delta_c1ab = congruent_mod(coords_add(c1.coords, A.coords), B.coords, 3);
            p.multiplicity = self_fixed ? 1 : 2;
            if (self_fixed && p.p_ab != p.q_ab)
                throw std::logic_error(s.name + ": self-paired term with p != q");
            out.push_back(p);
        }
    }
    return out;
}

namespace {

const char* kCatalogJson = R"JSON(
[
 {"name":"K3","chi_O":2,"K2":0,"e":24,"derived_data":false,
  "gram":[[0]],"K":[0],
  "sw_classes":[{"label":"0","sw":1,"coords":[0]}],
  "c1_choices":[{"label":"zero","coords":[0]}],
  "l_choices":[{"label":"zero","coords":[0]}]},
 {"name":"quintic","chi_O":5,"K2":5,"e":55,"derived_data":false,
  "gram":[[5]],"K":[1],
  "sw_classes":[{"label":"0","sw":1,"coords":[0]},{"label":"K","sw":-1,"coords":[1]}],
  "c1_choices":[{"label":"zero","coords":[0]},{"label":"K","coords":[1]}],
  "l_choices":[{"label":"zero","coords":[0]},{"label":"O1","coords":[1]},{"label":"O2","coords":[2]}]},
 {"name":"doubleCoverP2octic","chi_O":4,"K2":2,"e":46,"derived_data":false,
  "gram":[[2]],"K":[1],
  "sw_classes":[{"label":"0","sw":1,"coords":[0]},{"label":"K","sw":1,"coords":[1]}],
  "c1_choices":[{"label":"zero","coords":[0]},{"label":"K","coords":[1]}],
  "l_choices":[{"label":"zero","coords":[0]},{"label":"Lh","coords":[1]}]},
 {"name":"E3","chi_O":3,"K2":0,"e":36,"derived_data":true,
  "gram":[[0,1],[1,-3]],"K":[1,0],
  "sw_classes":[{"label":"0","sw":1,"coords":[0,0]},{"label":"F","sw":-1,"coords":[1,0]}],
  "c1_choices":[{"label":"zero","coords":[0,0]},{"label":"B","coords":[0,1]},{"label":"F","coords":[1,0]}],
  "l_choices":[{"label":"zero","coords":[0,0]}]},
 {"name":"E4","chi_O":4,"K2":0,"e":48,"derived_data":true,
  "gram":[[0,1],[1,-4]],"K":[2,0],
  "sw_classes":[{"label":"0","sw":1,"coords":[0,0]},{"label":"F","sw":-2,"coords":[1,0]},
                {"label":"2F","sw":1,"coords":[2,0]}],
  "c1_choices":[{"label":"zero","coords":[0,0]},{"label":"B","coords":[0,1]},{"label":"F","coords":[1,0]}],
  "l_choices":[{"label":"zero","coords":[0,0]}]},
 {"name":"E5","chi_O":5,"K2":0,"e":60,"derived_data":true,
  "gram":[[0,1],[1,-5]],"K":[3,0],
  "sw_classes":[{"label":"0","sw":1,"coords":[0,0]},{"label":"F","sw":-3,"coords":[1,0]},
                {"label":"2F","sw":3,"coords":[2,0]},{"label":"3F","sw":-1,"coords":[3,0]}],
  "c1_choices":[{"label":"zero","coords":[0,0]},{"label":"B","coords":[0,1]},{"label":"F","coords":[1,0]}],
  "l_choices":[{"label":"zero","coords":[0,0]}]},
 {"name":"K3blowup1","chi_O":2,"K2":-1,"e":25,"derived_data":true,
  "gram":[[-1]],"K":[1],
  "sw_classes":[{"label":"0","sw":1,"coords":[0]},{"label":"E","sw":1,"coords":[1]}],
  "c1_choices":[{"label":"zero","coords":[0]},{"label":"E","coords":[1]}],
  "l_choices":[{"label":"zero","coords":[0]}]}
]
)JSON";

SurfaceDescriptor parse_one(const json& j) {
    SurfaceDescriptor s;
    s.name = j.at("name").get<std::string>();
    s.chi_O = j.at("chi_O").get<long>();
    s.K2 = j.at("K2").get<long>();
    s.e = j.at("e").get<long>();
    s.derived_data = j.value("derived_data", false);
    s.gram = j.at("gram").get<std::vector<std::vector<long>>>();
    s.K_coords = j.at("K").get<std::vector<long>>();
    for (auto& c : j.at("sw_classes"))
        s.sw_classes.push_back(SwClass{c.at("label").get<std::string>(), c.at("sw").get<long>(),
                                       c.at("coords").get<std::vector<long>>()});
    for (auto& c : j.at("c1_choices"))
        s.c1_choices.push_back(
            NamedClass{c.at("label").get<std::string>(), c.at("coords").get<std::vector<long>>()});
    if (j.contains("l_choices"))
        for (auto& c : j.at("l_choices"))
            s.l_choices.push_back(
                NamedClass{c.at("label").get<std::string>(), c.at("coords").get<std::vector<long>>()});
    s.validate();
    return s;
}

std::map<std::string, SurfaceDescriptor> build_catalog() {
    std::map<std::string, SurfaceDescriptor> m;
    json arr = json::parse(kCatalogJson);
    for (auto& j : arr) {
        SurfaceDescriptor s = parse_one(j);
        m[s.name] = std::move(s);
    }
    return m;
}

const std::map<std::string, SurfaceDescriptor>& catalog() {
    static const std::map<std::string, SurfaceDescriptor> c = build_catalog();
    return c;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (auto& [k, _] : catalog()) v.push_back(k);
        return v;
    }();
    return names;
}

const SurfaceDescriptor& catalog_get(const std::string& name) {
    auto it = catalog().find(name);
    if (it == catalog().end()) throw std::domain_error("unknown surface '" + name + "'");
    return it->second;
}

SurfaceDescriptor load_from_json(const std::string& json_text) {
    return parse_one(json::parse(json_text));
}

}  // namespace vi::surf
