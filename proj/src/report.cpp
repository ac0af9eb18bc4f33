#include "vi/report.hpp"

#include <json.hpp>

#include <chrono>
#include <random>
#include <sstream>

#include "vi/conjectures.hpp"
#include "vi/hilb.hpp"
#include "vi/mochizuki.hpp"
#include "vi/qforms.hpp"
#include "vi/surfaces.hpp"

namespace vi::rep {

namespace {

using Clock = std::chrono::steady_clock;

CheckResult run_one(const CheckSpec& spec) {
    CheckResult r;
    r.id = spec.id;
    r.title = spec.title;
    auto t0 = Clock::now();
    try {
        r = spec.run();
        r.id = spec.id;
        r.title = spec.title;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    return r;
}

CheckResult ok(std::string detail = "pass") {
    CheckResult r;
    r.pass = true;
    r.detail = std::move(detail);
    return r;
}
CheckResult bad(std::string detail) {
    CheckResult r;
    r.pass = false;
    r.detail = std::move(detail);
    return r;
}

Rational euler_gen_coeff(long e, long n) {
    return qf::etabar(n + 1, "q").pow_int(-(long)e).coeff_int(n);
}

CheckResult check_hilbert_euler() {
    for (long n = 0; n <= 5; ++n) {
        Rational p2 = hilb::integral_top_chern_tangent(hilb::P2(), n, hilb::default_dir());
        if (!(p2 == euler_gen_coeff(3, n)))
            return bad("P2 n=" + std::to_string(n) + ": " + p2.str());
        Rational q = hilb::integral_top_chern_tangent(hilb::P1xP1(), n, hilb::default_dir());
        if (!(q == euler_gen_coeff(4, n)))
            return bad("P1xP1 n=" + std::to_string(n) + ": " + q.str());
    }
    return ok("all Euler characteristics match the product formula");
}

CheckResult check_lehn() {
    conj::Report r = conj::check_identity("lehn-vs-localization", 4);
    return r.pass ? ok(r.detail) : bad(r.detail);
}

CheckResult check_universal_a7() {
    auto uni = moc::universal_cached(moc::InsertionKind::Euler, 5);
    RatFunc t = RatFunc::var();
    auto laurent = [](std::initializer_list<std::pair<long, Rational>> terms) {
        std::map<long, Rational> m;
        for (auto& [k, c] : terms) m[k] = c;
        return RatFunc::from_laurent(m);
    };
    std::array<RatFunc, 4> expect = {
        laurent({{1, Rational(24)}, {-1, Rational(-6)}}),
        laurent({{2, Rational(360)},
                 {0, Rational(-180)},
                 {-2, Rational(30)},
                 {-4, Rational(-9, 4)},
                 {-6, Rational(3, 32)}}),
        laurent({{3, Rational(4160)},
                 {1, Rational(-3200)},
                 {-1, Rational(1020)},
                 {-3, Rational(-210)},
                 {-5, Rational(135, 4)},
                 {-7, Rational(-55, 16)},
                 {-9, Rational(5, 32)}}),
        laurent({{4, Rational(40560)},
                 {2, Rational(-43380)},
                 {0, Rational(20280)},
                 {-2, Rational(-6480)},
                 {-4, Rational(7065, 4)},
                 {-6, Rational(-6255, 16)},
                 {-8, Rational(975, 16)},
                 {-10, Rational(-735, 128)},
                 {-12, Rational(495, 2048)}}),
    };
    for (long k = 1; k <= 4; ++k) {
        RatFunc got = uni.A[6].coeff_int(k) * t.pow_int(k);
        if (!(got == expect[(size_t)k - 1]))
            return bad("A7(t,tq) q^" + std::to_string(k) + " = " + got.str("t"));
    }
    return ok("A7(t,tq) matches the printed coefficients through q^4");
}

CheckResult check_cross_pipeline(long max_vd) {
    const auto& q = surf::catalog_get("quintic");
    long need = std::max(moc::required_order_rank2(q, "K", max_vd),
                         moc::required_order_rank2(q, "zero", max_vd));
    auto uni = moc::universal_cached(moc::InsertionKind::Euler, need);
    std::string detail;
    for (const char* c1 : {"zero", "K"}) {
        for (long vd = 0; vd <= max_vd; ++vd) {
            if (!moc::vd_realizable_rank2(q, c1, vd)) continue;
            if (!moc::rank2_applicable(q, c1, vd)) continue;
            Rational loc = moc::evaluate_rank2(q, c1, uni, vd);
            Rational cf = conj::eval_euler_rk2(q, c1, vd);
            if (!(loc == cf))
                return bad(std::string("c1=") + c1 + " vd=" + std::to_string(vd) + ": " +
                           loc.str() + " != " + cf.str());
            detail += std::string(detail.empty() ? "" : ", ") + c1 + "/vd" + std::to_string(vd) +
                      "=" + loc.str();
        }
    }
    // sum-swap: the symmetrized sum is the reading that matches the closed
    // form; the half sum drops the swapped partners
    Rational full = moc::evaluate_rank2(q, "K", uni, 0, moc::SumMode::Full);
    Rational half = moc::evaluate_rank2(q, "K", uni, 0, moc::SumMode::Half);
    if (!(full == half + half)) return bad("sum-swap structure changed: full != 2 half at vd=0");
    return ok(detail);
}

CheckResult check_k3_rank2() {
    const auto& k3 = surf::catalog_get("K3");
    QSeries oracle = qf::etabar(11, "q").pow_int(-24);
    for (long n = 0; n <= 10; ++n)
        if (!(conj::eval_euler_rk2(k3, "zero", 2 * n) == oracle.coeff_int(n)))
            return bad("n=" + std::to_string(n));
    return ok("e(K3^[n]) reproduced for n <= 10");
}

CheckResult check_k3_rank3() {
    const auto& k3 = surf::catalog_get("K3");
    QSeries oracle = qf::etabar(7, "q").pow_int(-24);
    for (long n = 0; n <= 6; ++n) {
        Rational sym = conj::eval_euler_rk3(k3, "zero", 2 * n, conj::RootStrategy::Symmetric);
        Rational exp = conj::eval_euler_rk3(k3, "zero", 2 * n, conj::RootStrategy::QuadExtExplicit);
        if (!(sym == oracle.coeff_int(n))) return bad("symmetric strategy n=" + std::to_string(n));
        if (!(exp == sym)) return bad("quadext strategy disagrees at n=" + std::to_string(n));
    }
    return ok("rank-3 K3 collapse holds for n <= 6, both strategies agree");
}

CheckResult check_refinements(long max_vd) {
    for (auto& name : surf::catalog_names()) {
        const auto& s = surf::catalog_get(name);
        for (auto& c1 : s.c1_choices) {
            qf::QY chiy = conj::chiy_rk2_series(s, c1.label, max_vd + 1);
            QSeries eul = conj::euler_rk2_series(s, c1.label, max_vd + 1);
            if (!qf::specialize_y1(chiy).agrees_with(eul))
                return bad(name + "/" + c1.label + ": chi_y at y=1 != euler");
        }
    }
    const auto& q = surf::catalog_get("quintic");
    for (long vd = 0; vd <= 4; ++vd) {
        if (!moc::vd_realizable_rank2(q, "K", vd)) continue;
        qf::QY ell = conj::eval_ellgen_rk2(q, "K", vd, 2);
        RatFunc chiy = conj::eval_chiy_rk2(q, "K", vd);
        if (!(ell.coeff_int(0) == chiy)) return bad("ellgen q=0 != chi_y at vd=" + std::to_string(vd));
    }
    return ok("chi_y -> euler at y=1 (all surfaces) and ellgen -> chi_y at q=0 (quintic)");
}

CheckResult check_jacobi_anchor() {
    long N = 11;
    RatFunc u = RatFunc::var();
    qf::QY lhs = qf::substitute_y_power(qf::phi_m21(N, "q"), 2);
    lhs = qf::substitute_q(lhs, 2, 1).truncated(Rational(N));
    lhs = lhs * qf::to_qy(qf::delta((N + 1) / 2, "q").dilated(Rational::one(), Rational(2))
                              .truncated(Rational(N)));
    RatFunc denom = (u - u.inverse()) * (u - u.inverse());
    lhs = lhs.scaled_by(denom.inverse());
    auto upow = [](long k) {
        if (k >= 0) return RatFunc(Poly::monomial(Rational::one(), (size_t)k));
        return RatFunc(Poly::one(), Poly::monomial(Rational::one(), (size_t)(-k)));
    };
    qf::QY rhs = qf::QY::constant((u + u.inverse()) * (u + u.inverse()), "q")
                     .truncated(Rational(N))
                     .shifted(2);
    for (long n = 1; 2 * n < N; ++n) {
        qf::QY f1 = qf::QY::one("q").truncated(Rational(N));
        f1.set_term(2 * n, -upow(4));
        qf::QY f2 = qf::QY::one("q").truncated(Rational(N));
        f2.set_term(2 * n, -upow(-4));
        qf::QY f3 = qf::QY::one("q").truncated(Rational(N));
        f3.set_term(2 * n, -RatFunc::one());
        rhs *= f1 * f1 * f2 * f2 * f3.pow_int(20);
    }
    if (!lhs.agrees_with(rhs)) return bad("phi_{-2,1} identity fails before q^10");
    return ok("phi_{-2,1}(q^2,y^2) Delta(q^2) identity holds through q^10");
}

CheckResult check_verlinde_segre() {
    for (long r = -2; r <= 3; ++r) {
        conj::Report rep = conj::check_identity("segre-verlinde-rk1:" + std::to_string(r), 9);
        if (!rep.pass) return bad("rank-1 r=" + std::to_string(r) + ": " + rep.detail);
    }
    for (const char* k : {"example1", "example3", "serre-duality"}) {
        conj::Report rep = conj::check_identity(k, 9);
        if (!rep.pass) return bad(std::string(k) + ": " + rep.detail);
    }
    return ok("rank-1 relations (r = -2..3) and Examples 1-3 hold through order 8");
}

CheckResult check_properties() {
    // series ring laws on random inputs
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    for (int trial = 0; trial < 6; ++trial) {
        QSeries a = QSeries::zero("q", 1, 6), b = a, c = a;
        for (long k = 0; k < 6; ++k) {
            a.set_term(k, Rational(num(rng), den(rng)));
            b.set_term(k, Rational(num(rng), den(rng)));
            c.set_term(k, Rational(num(rng), den(rng)));
        }
        if (!((a + b) + c).agrees_with(a + (b + c))) return bad("associativity");
        if (!(a * (b + c)).agrees_with(a * b + a * c)) return bad("distributivity");
    }
    // epsilon-draw independence of the localization series
    TSeries z1 = moc::z_series_euler(hilb::P2(), {1}, {0}, 3, hilb::default_dir());
    TSeries z2 = moc::z_series_euler(hilb::P2(), {1}, {0}, 3, hilb::second_dir());
    if (!z1.agrees_with(z2)) return bad("draw dependence in z-series");
    // lattice theta rationality
    QSeries t01 = qf::lattice_theta({qf::LatticeKind::A2dual, 0, 1, false}, 20, "x");
    for (auto& [k, c] : t01.terms())
        if (!c.is_integer()) return bad("Theta_{A2dual,(0,1)} non-integer coefficient");
    // chi_y symmetry
    const auto& q = surf::catalog_get("quintic");
    for (long vd = 0; vd <= 6; ++vd) {
        RatFunc v = conj::eval_chiy_rk2(q, "K", vd);
        if (!v.is_symmetric_under_inversion()) return bad("chi_y asymmetric at vd=" + std::to_string(vd));
    }
    // SW duality on the catalog
    for (auto& name : surf::catalog_names()) surf::catalog_get(name).validate();
    // Klyachko dual oracles
    conj::Report rep = conj::check_identity("klyachko", 10);
    if (!rep.pass) return bad("klyachko: " + rep.detail);
    return ok("ring laws, draw independence, theta rationality, chi_y symmetry, SW duality, Klyachko");
}

}  // namespace

const std::vector<CheckSpec>& acceptance_checks() {
    static const std::vector<CheckSpec> checks = {
        {"1-hilbert-euler", "Hilbert scheme Euler characteristics by localization", "fast",
         [] { return check_hilbert_euler(); }},
        {"2-lehn", "Lehn's formula vs localization Segre numbers", "fast",
         [] { return check_lehn(); }},
        {"3-universal-a7", "universal series A7(t,tq) against printed coefficients", "full",
         [] { return check_universal_a7(); }},
        {"4-cross-pipeline", "quintic rank-2 Euler: localization vs closed form (vd <= 8)", "full",
         [] { return check_cross_pipeline(8); }},
        {"5-k3-rank2", "K3 rank-2 collapse to Hilbert scheme Euler numbers", "fast",
         [] { return check_k3_rank2(); }},
        {"6-k3-rank3", "K3 rank-3 collapse, symmetric and explicit-root strategies", "fast",
         [] { return check_k3_rank3(); }},
        {"7-refinements", "refinement specializations y=1 and q=0", "fast",
         [] { return check_refinements(8); }},
        {"8-jacobi-anchor", "phi_{-2,1} displayed identity through q^10", "fast",
         [] { return check_jacobi_anchor(); }},
        {"9-verlinde-segre", "Verlinde/Segre structure and Examples 1-3", "fast",
         [] { return check_verlinde_segre(); }},
        {"10-properties", "always-on property suites", "fast",
         [] { return check_properties(); }},
    };
    return checks;
}

std::vector<CheckResult> run_suite(const std::string& suite, long max_order) {
    (void)max_order;
    std::vector<CheckResult> out;
    for (auto& spec : acceptance_checks()) {
        if (suite == "fast" && spec.suite != "fast") {
            CheckResult r;
            r.id = spec.id;
            r.title = spec.title;
            r.pass = true;
            r.skipped = true;
            r.detail = "skipped (full suite only)";
            out.push_back(r);
            continue;
        }
        out.push_back(run_one(spec));
    }
    return out;
}

std::vector<std::string> assumption_notes() {
    return {
        "rank-2 evaluator sums over all (a1,a2) with a1+a2=c1 (the conjectural "
        "strengthening that drops the polarization inequalities)",
        "applicability guard: chi(2,c1,c1^2/2-c2) > 0 is enforced; larger c2 "
        "would require twisting by O(mH)",
        "elliptic surface and blow-up Seiberg-Witten tables are derived data "
        "(flagged in the catalog) and excluded from acceptance",
    };
}

std::string results_to_json(const std::vector<CheckResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& r : results) {
        nlohmann::json j;
        j["id"] = r.id;
        j["title"] = r.title;
        j["status"] = r.skipped ? "skipped" : (r.pass ? "pass" : "fail");
        j["detail"] = r.detail;
        j["millis"] = r.millis;
        arr.push_back(j);
    }
    nlohmann::json top;
    top["criteria"] = arr;
    top["assumptions"] = assumption_notes();
    bool all = true;
    for (auto& r : results) all = all && r.pass;
    top["all_pass"] = all;
    return top.dump(1);
}

std::string results_to_table(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    for (auto& r : results) {
        os << (r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL")) << "  " << r.id << "  " << r.title
           << "  [" << r.millis << " ms]";
        if (!r.pass || r.skipped) os << "  -- " << r.detail;
        os << "\n";
    }
    return os.str();
}

}  // namespace vi::rep
