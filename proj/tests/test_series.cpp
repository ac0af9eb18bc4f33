#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "vi/series.hpp"

using namespace vi;

namespace {

// independent brute-force oracle: expand prod (1 - q^{e_i}) as a plain
// coefficient vector, no Series machinery
std::vector<long> product_oracle(const std::vector<long>& exps, long order) {
    std::vector<long> c(order, 0);
    c[0] = 1;
    for (long e : exps) {
        std::vector<long> n(c);
        for (long k = 0; k + e < order; ++k) n[k + e] -= c[k];
        c = n;
    }
    return c;
}

// independent partition counter by explicit enumeration
long count_partitions(long n, long max_part) {
    if (n == 0) return 1;
    if (n < 0 || max_part == 0) return 0;
    return count_partitions(n - max_part, max_part) + count_partitions(n, max_part - 1);
}

QSeries geom_factor(long e, long order) {  // (1 - q^e) truncated
    QSeries f = QSeries::one("q").truncated(Rational(order));
    f.set_term(e, Rational(-1));
    return f;
}

QSeries random_series(std::mt19937& rng, long order, bool unit_leading) {
    QSeries s = QSeries::zero("q", 1, order);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    for (long k = unit_leading ? 1 : 0; k < order; ++k)
        s.set_term(k, Rational(num(rng), den(rng)));
    if (unit_leading) s.set_term(0, Rational(1));
    return s;
}

}  // namespace

TEST_CASE("mul: difference of squares and polynomial expansion oracle") {
    QSeries one = QSeries::one("q");
    QSeries a = one + QSeries::monomial(Rational(1), "q", 1);
    QSeries b = one - QSeries::monomial(Rational(1), "q", 1);
    QSeries p = a * b;
    CHECK(p.coeff_int(0) == Rational(1));
    CHECK(p.coeff_int(1) == Rational(0));
    CHECK(p.coeff_int(2) == Rational(-1));

    long N = 10;
    QSeries prod = geom_factor(1, N) * geom_factor(2, N) * geom_factor(3, N);
    auto expect = product_oracle({1, 2, 3}, N);
    for (long k = 0; k < N - 3; ++k) CHECK(prod.coeff_int(k) == Rational(expect[(size_t)k]));
}

TEST_CASE("mul: quarter-exponent lattice normalizes") {
    QSeries q14 = QSeries::monomial(Rational(1), "q", 1, 4);
    QSeries p = q14 * q14;
    CHECK(p.den() == 2);
    CHECK(p.coeff(Rational(1, 2)) == Rational(1));
}

TEST_CASE("invert: geometric series and partition generating function") {
    long N = 12;
    QSeries one_minus_q = geom_factor(1, N);
    QSeries inv = one_minus_q.invert();
    for (long k = 0; k < N - 2; ++k) CHECK(inv.coeff_int(k) == Rational(1));

    QSeries etabar = QSeries::one("q").truncated(Rational(N));
    for (long e = 1; e < N; ++e) etabar *= geom_factor(e, N);
    QSeries parts = etabar.invert();
    for (long n = 0; n < 8; ++n) CHECK(parts.coeff_int(n) == Rational(count_partitions(n, n ? n : 1)));
}

TEST_CASE("invert: rational-function coefficients, unit check in t-field") {
    // 1/(2t(1+t)) as inverse of the constant-in-q series with coefficient 2t(1+t)
    RatFunc t = RatFunc::var();
    RatFunc c = RatFunc(Rational(2)) * t * (RatFunc::one() + t);
    TSeries s = TSeries::constant(c, "q").truncated(Rational(4));
    TSeries inv = s.invert();
    CHECK(inv.coeff_int(0) == c.inverse());
    CHECK((inv.coeff_int(0) * c) == RatFunc::one());
}

TEST_CASE("pow_rational: binomial series") {
    long N = 6;
    QSeries f = (QSeries::one("q") + QSeries::monomial(Rational(1), "q", 1)).truncated(Rational(N));
    QSeries h = f.pow_rational(Rational(1, 2));
    CHECK(h.coeff_int(0) == Rational(1));
    CHECK(h.coeff_int(1) == Rational(1, 2));
    CHECK(h.coeff_int(2) == Rational(-1, 8));
    CHECK(h.coeff_int(3) == Rational(1, 16));
    CHECK((h * h).agrees_with(f));
}

TEST_CASE("pow_rational: sqrt of q*etabar^24 via square-and-compare oracle") {
    long N = 8;
    QSeries etabar = QSeries::one("q").truncated(Rational(N));
    for (long e = 1; e < N; ++e) etabar *= geom_factor(e, N);
    QSeries delta = etabar.pow_int(24).shifted(1);
    QSeries r = delta.pow_rational(Rational(1, 2));
    QSeries expect = etabar.pow_int(12).shifted(1, 2);
    CHECK(r.agrees_with(expect));
    CHECK((r * r).agrees_with(delta));
}

TEST_CASE("pow_rational: f^0 is 1") {
    QSeries f = (QSeries::one("q") + QSeries::monomial(Rational(3), "q", 2)).truncated(Rational(5));
    CHECK(f.pow_rational(Rational(0)).agrees_with(QSeries::one("q")));
}

TEST_CASE("pow_rational raised to q-th power equals integer power (property)") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 10; ++trial) {
        QSeries a = random_series(rng, 8, true);
        long p = (long)(rng() % 5) + 1, q = (long)(rng() % 3) + 2;
        QSeries fr = a.pow_rational(Rational(p, q));
        CHECK(fr.pow_int(q).agrees_with(a.pow_int(p)));
    }
}

TEST_CASE("substitute: dilation and sign flip") {
    QSeries f = QSeries::zero("q", 1, 3);
    f.set_term(0, Rational(1));
    f.set_term(1, Rational(1));
    f.set_term(2, Rational(1));
    QSeries g = f.dilated(Rational::one(), Rational(2));  // q -> q^2
    CHECK(g.coeff_int(0) == Rational(1));
    CHECK(g.coeff_int(2) == Rational(1));
    CHECK(g.coeff_int(4) == Rational(1));
    CHECK(g.coeff_int(1) == Rational(0));

    // theta3-style sign flip: 1+2x+2x^4 -> 1-2x+2x^4
    QSeries th = QSeries::zero("x", 1, 9);
    th.set_term(0, Rational(1));
    th.set_term(1, Rational(2));
    th.set_term(4, Rational(2));
    QSeries flipped = th.dilated(Rational(-1), Rational(1));
    CHECK(flipped.coeff_int(1) == Rational(-2));
    CHECK(flipped.coeff_int(4) == Rational(2));
}

TEST_CASE("substitute: exp composed with log is the identity (round-trip oracle)") {
    long N = 8;
    QSeries x = QSeries::variable("q").truncated(Rational(N));
    QSeries e = QSeries::exp(x) - QSeries::one("q");      // exp(q) - 1
    QSeries l = QSeries::log1p(x);                        // log(1+q)
    QSeries comp = l.substitute(e);                       // log(1 + (exp(q)-1)) = q
    CHECK(comp.agrees_with(x));
}

TEST_CASE("revert: Catalan numbers and back-substitution oracle") {
    long N = 7;
    QSeries z = QSeries::variable("t").truncated(Rational(N));
    QSeries f = z - z * z;  // z = t - t^2
    QSeries inv = f.revert();
    CHECK(inv.coeff_int(1) == Rational(1));
    CHECK(inv.coeff_int(2) == Rational(1));
    CHECK(inv.coeff_int(3) == Rational(2));
    CHECK(inv.coeff_int(4) == Rational(5));
    CHECK(inv.coeff_int(5) == Rational(14));
    CHECK(f.substitute(inv).agrees_with(QSeries::variable("t")));

    // w = v(1+v)^3
    QSeries v = QSeries::variable("t").truncated(Rational(N));
    QSeries w = v * (QSeries::one("t") + v).pow_int(3);
    QSeries vw = w.revert();
    CHECK(vw.coeff_int(1) == Rational(1));
    CHECK(vw.coeff_int(2) == Rational(-3));
    CHECK(vw.coeff_int(3) == Rational(15));
    CHECK(w.substitute(vw).agrees_with(QSeries::variable("t")));

    // identity
    CHECK(QSeries::variable("t").truncated(Rational(5)).revert().coeff_int(1) == Rational(1));
}

TEST_CASE("exp/log: stated expansions and inverse property") {
    long N = 7;
    QSeries x = QSeries::variable("q").truncated(Rational(N));
    QSeries e = QSeries::exp(x);
    CHECK(e.coeff_int(0) == Rational(1));
    CHECK(e.coeff_int(2) == Rational(1, 2));
    CHECK(e.coeff_int(3) == Rational(1, 6));

    QSeries l = QSeries::log(geom_factor(1, N).invert());  // log 1/(1-q)
    CHECK(l.coeff_int(1) == Rational(1));
    CHECK(l.coeff_int(2) == Rational(1, 2));
    CHECK(l.coeff_int(3) == Rational(1, 3));

    std::mt19937 rng(777);
    for (int trial = 0; trial < 6; ++trial) {
        QSeries a = random_series(rng, 7, true);
        CHECK(QSeries::exp(QSeries::log(a)).agrees_with(a));
        QSeries b = random_series(rng, 7, false).shifted(1);
        CHECK(QSeries::log(QSeries::exp(b)).agrees_with(b));
    }
}

TEST_CASE("log of multi-factor power products is linear in exponents") {
    long N = 8;
    QSeries f = geom_factor(1, N), g = geom_factor(2, N);
    QSeries lhs = QSeries::log(f.pow_int(3) * g.pow_int(-2));
    QSeries rhs = QSeries::log(f).scaled(Rational(3)) + QSeries::log(g).scaled(Rational(-2));
    CHECK(lhs.agrees_with(rhs));
}

TEST_CASE("ring axioms on random truncated series (property)") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 12; ++trial) {
        QSeries a = random_series(rng, 6, false);
        QSeries b = random_series(rng, 6, false);
        QSeries c = random_series(rng, 6, false);
        CHECK(((a + b) + c).agrees_with(a + (b + c)));
        CHECK((a * (b + c)).agrees_with(a * b + a * c));
        CHECK((a * b).agrees_with(b * a));
    }
}

TEST_CASE("invert is a two-sided inverse (property)") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        QSeries a = random_series(rng, 7, true).shifted(trial % 3 - 1);
        CHECK((a * a.invert()).agrees_with(QSeries::one("q")));
        CHECK((a.invert() * a).agrees_with(QSeries::one("q")));
    }
}

TEST_CASE("revert round-trip on random series (property)") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 6; ++trial) {
        QSeries a = random_series(rng, 7, false).shifted(1);
        a.set_term(1, Rational(1 + (long)(rng() % 3)));
        QSeries b = a.revert();
        CHECK(a.substitute(b).agrees_with(QSeries::variable("q")));
    }
}

TEST_CASE("truncation-order bookkeeping is exact (recompute-higher property)") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 6; ++trial) {
        QSeries a_lo = random_series(rng, 6, true);
        QSeries b_lo = random_series(rng, 6, true);
        // same data to higher order
        QSeries a_hi = a_lo, b_hi = b_lo;
        a_hi.set_ord(10);
        b_hi.set_ord(10);
        for (long k = 6; k < 10; ++k) {
            a_hi.set_term(k, Rational((long)(rng() % 7) - 3));
            b_hi.set_term(k, Rational((long)(rng() % 7) - 3));
        }
        QSeries lo = (a_lo * b_lo.invert() + a_lo.pow_int(2));
        QSeries hi = (a_hi * b_hi.invert() + a_hi.pow_int(2));
        CHECK(hi.truncated(lo.order()).agrees_with(lo));
        CHECK(hi.truncated(lo.order()).ord_key() == lo.ord_key());
    }
}

TEST_CASE("coeff beyond truncation order throws") {
    QSeries a = QSeries::zero("q", 1, 4);
    a.set_term(0, Rational(1));
    CHECK_THROWS(a.coeff_int(4));
    CHECK_THROWS(a.coeff_int(7));
    CHECK(a.coeff_int(3) == Rational(0));
}

TEST_CASE("variable mismatch is an error") {
    QSeries a = QSeries::variable("q");
    QSeries b = QSeries::variable("x");
    CHECK_THROWS(a * b);
}

TEST_CASE("residue of rational functions in t") {
    RatFunc t = RatFunc::var();
    // (a/t) + b + c t with a=3, b=5, c=7
    RatFunc f = RatFunc(Rational(3)) / t + RatFunc(Rational(5)) + RatFunc(Rational(7)) * t;
    CHECK(f.residue_at_zero() == Rational(3));
    // 1/(t(1-2t)) -> expansion (1/t)(1+2t+...) -> residue 1
    RatFunc g = (t * (RatFunc::one() - RatFunc(Rational(2)) * t)).inverse();
    CHECK(g.residue_at_zero() == Rational(1));
    CHECK(g.laurent_coeff(0) == Rational(2));
    CHECK(g.laurent_coeff(2) == Rational(8));
    // no pole -> zero residue
    CHECK((t * t).residue_at_zero() == Rational(0));
}

TEST_CASE("laurent normalizer on rational functions in u") {
    RatFunc u = RatFunc::var();
    RatFunc f = (u * u + RatFunc(Rational(3))) / u;  // u + 3/u
    CHECK(f.is_laurent());
    auto m = f.laurent_terms();
    CHECK(m.at(1) == Rational(1));
    CHECK(m.at(-1) == Rational(3));
    RatFunc g = RatFunc::one() / (RatFunc::one() + u);
    CHECK(!g.is_laurent());
    // u <-> 1/u symmetry
    RatFunc h = u + u.inverse();
    CHECK(h.is_symmetric_under_inversion());
    CHECK(!f.is_symmetric_under_inversion());
}

TEST_CASE("QuadExt arithmetic and in-field square roots") {
    QuadExt s3 = QuadExt::sqrt_of(3);
    CHECK((s3 * s3) == QuadExt(Rational(3)));
    QuadExt x(Rational(1), Rational(2), 3);  // 1 + 2 sqrt 3
    CHECK((x * x.inverse()) == QuadExt::one());
    auto r = QuadExt(Rational(432)).sqrt_in_field(3);
    REQUIRE(r.has_value());
    CHECK((*r * *r) == QuadExt(Rational(432)));
    CHECK(!r->is_rational());
    // (7 + 4 sqrt 3) = (2 + sqrt 3)^2
    auto r2 = QuadExt(Rational(7), Rational(4), 3).sqrt_in_field(3);
    REQUIRE(r2.has_value());
    CHECK((*r2 * *r2) == QuadExt(Rational(7), Rational(4), 3));
    // i^2 = -1
    QuadExt i = QuadExt::sqrt_of(-1);
    CHECK((i * i) == QuadExt(Rational(-1)));
}

TEST_CASE("series over QuadExt: sqrt with irrational leading coefficient") {
    long N = 6;
    QuadSeries f = QuadSeries::zero("x", 1, N);
    f.set_term(1, QuadExt(Rational(12), Rational(0), 3));
    f.set_term(2, QuadExt(Rational(5), Rational(0), 3));
    QuadSeries r = f.pow_rational(Rational(1, 2));
    CHECK((r * r).agrees_with(f));
    CHECK(!r.coeff(Rational(1, 2)).is_rational());
}
