#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vi/surfaces.hpp"

using namespace vi;
using namespace vi::surf;

TEST_CASE("catalog loads and every entry passes the duality validator") {
    for (auto& name : catalog_names()) {
        const auto& s = catalog_get(name);
        CHECK_NOTHROW(s.validate());
        CHECK((s.K2 + s.e) % 12 == 0);
    }
    CHECK_THROWS(catalog_get("enriques"));
}

TEST_CASE("quintic descriptor") {
    const auto& s = catalog_get("quintic");
    CHECK(s.chi_O == 5);
    CHECK(s.K2 == 5);
    CHECK(s.e == 55);
    REQUIRE(s.sw_classes.size() == 2);
    CHECK(s.sw_classes[0].sw == 1);
    CHECK(s.sw_classes[1].sw == -1);  // (-1)^chi
    CHECK(s.dot(s.K_coords, s.K_coords) == 5);
}

TEST_CASE("K3 descriptor forced by the rank-1 collapse") {
    const auto& s = catalog_get("K3");
    CHECK(s.chi_O == 2);
    CHECK(s.K2 == 0);
    REQUIRE(s.sw_classes.size() == 1);
    CHECK(s.sw_classes[0].sw == 1);
}

TEST_CASE("elliptic surface tables: duality-consistent binomial values") {
    const auto& e3 = catalog_get("E3");
    CHECK(e3.chi_O == 3);
    CHECK(e3.sw_classes.size() == 2);
    const auto& e4 = catalog_get("E4");
    CHECK(e4.sw_classes.size() == 3);
    long swF = 0;
    for (auto& c : e4.sw_classes)
        if (c.label == "F") swF = c.sw;
    CHECK(swF == -2);
    const auto& e5 = catalog_get("E5");
    CHECK(e5.sw_classes.size() == 4);
    // all classes isotropic along the fiber direction
    for (auto& c : e5.sw_classes) {
        CHECK(e5.dot(c.coords, c.coords) == 0);
        CHECK(e5.dot(c.coords, e5.K_coords) == 0);
    }
}

TEST_CASE("chi_of_class: stated examples") {
    const auto& q = catalog_get("quintic");
    CHECK(q.chi_of_class({0}) == 5);
    CHECK(q.chi_of_class(q.K_coords) == 5);
    const auto& k3 = catalog_get("K3");
    CHECK(k3.chi_of_class({0}) == 2);
}

TEST_CASE("rank-2 terms on the quintic") {
    const auto& s = catalog_get("quintic");
    auto terms_K = rank2_terms(s, s.c1("K"));
    REQUIRE(terms_K.size() == 2);
    // a1 = 0: a2 = K; a1 = K: a2 = 0
    for (auto& t : terms_K) {
        if (t.label == "0") {
            CHECK(t.a2K == 5);
            CHECK(t.d_sq == 5);
            CHECK(!t.wrong_side);
            CHECK(t.chi_a2 == 5);
            CHECK(t.chi_a2_minus_a1 == 5);
            CHECK(t.chi_a1_minus_a2 == 10);  // chi(-K) = 5 + (5+5)/2
        } else {
            CHECK(t.wrong_side);
        }
    }
    auto terms_0 = rank2_terms(s, s.c1("zero"));
    REQUIRE(terms_0.size() == 2);
    for (auto& t : terms_0) {
        if (t.label == "0") {
            CHECK(t.d_sq == 0);
            CHECK(!t.wrong_side);
        } else {
            CHECK(t.d_sq == 20);  // (2K)^2
            CHECK(t.wrong_side);
        }
    }
}

TEST_CASE("rank-3 pairs: quintic pairing structure") {
    const auto& s = catalog_get("quintic");
    auto pairs = rank3_pairs(s, s.c1("zero"));
    // orbits of (a,b) -> (K-b, K-a): {(0,0),(K,K)} plus the two fixed points
    // (0,K) and (K,0); all four ordered pairs consumed exactly once
    REQUIRE(pairs.size() == 3);
    long total_ordered = 0;
    for (auto& p : pairs) {
        total_ordered += p.multiplicity;
        if (p.sw_product == 1) {  // (0,0) with (K,K)
            CHECK(p.multiplicity == 2);
            CHECK(((p.p_ab == 0 && p.q_ab == 5) || (p.p_ab == 5 && p.q_ab == 0)));
        } else {
            CHECK(p.sw_product == -1);  // (0,K) / (K,0), each J-fixed
            CHECK(p.multiplicity == 1);
            CHECK(p.p_ab == 0);
            CHECK(p.q_ab == 0);
        }
    }
    CHECK(total_ordered == 4);
    // K3: single self-paired term
    auto k3pairs = rank3_pairs(catalog_get("K3"), catalog_get("K3").c1("zero"));
    REQUIRE(k3pairs.size() == 1);
    CHECK(k3pairs[0].multiplicity == 1);
    CHECK(k3pairs[0].p_ab == 0);
    CHECK(k3pairs[0].q_ab == 0);
}

TEST_CASE("congruence helper") {
    CHECK(congruent_mod({2, 4}, {0, 0}, 2));
    CHECK(!congruent_mod({1, 4}, {0, 0}, 2));
    CHECK(congruent_mod({3, -3}, {0, 0}, 3));
    CHECK(congruent_mod({5}, {2}, 3));
}

TEST_CASE("user-supplied surface via JSON runs the validator") {
    // broken duality: SW(K) should be -1 for chi odd
    std::string bad = R"({"name":"bad","chi_O":5,"K2":5,"e":55,
        "gram":[[5]],"K":[1],
        "sw_classes":[{"label":"0","sw":1,"coords":[0]},{"label":"K","sw":1,"coords":[1]}],
        "c1_choices":[{"label":"zero","coords":[0]}]})";
    CHECK_THROWS(load_from_json(bad));
    std::string good = R"({"name":"quintic2","chi_O":5,"K2":5,"e":55,
        "gram":[[5]],"K":[1],
        "sw_classes":[{"label":"0","sw":1,"coords":[0]},{"label":"K","sw":-1,"coords":[1]}],
        "c1_choices":[{"label":"zero","coords":[0]}]})";
    CHECK_NOTHROW(load_from_json(good));
}
