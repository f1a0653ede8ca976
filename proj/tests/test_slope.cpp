#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "zetakit/slope.hpp"

using namespace zetakit;
using zetakit::test::pz;
using zetakit::test::Rng;

namespace {

RationalFunctionZ elliptic_f5() {
    return make_rational_function(pz({1, 3, 5}), pz_mul(pz({1, -1}), pz({1, -5})));
}

// test-local oracle: Newton-lift a simple root of f mod p to mod p^k
ZZ lift_root(const PolyZ& f, long p, long start, int k) {
    ZZ mod(p);
    ZZ x(start);
    auto eval = [&](const ZZ& v, const ZZ& m) {
        ZZ acc(0);
        for (size_t i = f.size(); i-- > 0;) acc = zz_mod(acc * v + f[i], m);
        return acc;
    };
    auto deval = [&](const ZZ& v, const ZZ& m) {
        ZZ acc(0);
        for (size_t i = f.size() - 1; i >= 1; --i) acc = zz_mod(acc * v + ZZ((long)i) * f[i], m);
        return acc;
    };
    for (int step = 1; step < k; ++step) {
        mod *= p;
        ZZ fv = eval(x, mod);
        ZZ dv = deval(x, mod);
        x = zz_mod(x - fv * zz_invmod(dv, mod), mod);
    }
    return x;
}

}  // namespace

TEST_CASE("newton polygon examples") {
    // hull through (0,0), (1,0), (2,1)
    NewtonPolygon np1 = newton_polygon(pz({1, 3, 5}), padic_base(5));
    REQUIRE(np1.segments.size() == 2);
    CHECK(np1.segments[0] == std::make_pair(QQ(0), 1L));
    CHECK(np1.segments[1] == std::make_pair(QQ(1), 1L));

    NewtonPolygon np2 = newton_polygon(pz({1, 0, 5}), padic_base(5));
    REQUIRE(np2.segments.size() == 1);
    CHECK(np2.segments[0] == std::make_pair(make_qq(1, 2), 2L));

    // interior point (1,1) lies above the hull
    NewtonPolygon np3 = newton_polygon(pz({1, 3, 5}), ladic_base(3));
    REQUIRE(np3.segments.size() == 1);
    CHECK(np3.segments[0] == std::make_pair(QQ(0), 2L));

    // base exponent rescales slopes
    NewtonPolygon np4 = newton_polygon(pz({1, 3, 5}), padic_base(5, QQ(2)));
    CHECK(np4.segments[1].first == make_qq(1, 2));

    CHECK_THROWS_AS(newton_polygon(PolyZ{}, padic_base(5)), InputError);
    CHECK_THROWS_AS(newton_polygon(pz({0, 1}), padic_base(5)), InputError);
}

TEST_CASE("polygon additivity under multiplication") {
    Rng rng(5150);
    auto merge = [](NewtonPolygon a, const NewtonPolygon& b) {
        std::map<QQ, long> m;
        for (const auto& [s, l] : a.segments) m[s] += l;
        for (const auto& [s, l] : b.segments) m[s] += l;
        NewtonPolygon out;
        for (const auto& [s, l] : m) out.segments.push_back({s, l});
        return out;
    };
    for (int trial = 0; trial < 40; ++trial) {
        long p = trial % 2 ? 3 : 5;
        auto random_poly = [&]() {
            PolyZ f = {ZZ(1)};
            int d = (int)rng.range(1, 3);
            for (int i = 0; i < d; ++i) {
                long unit = rng.range(1, p - 1);
                long val = rng.range(0, 2);
                f = pz_mul(f, pz({1, unit * zz_pow(p, (unsigned long)val).get_si()}));
            }
            return f;
        };
        PolyZ g = random_poly(), h = random_poly();
        NewtonPolygon expect = merge(newton_polygon(g, padic_base(p)), newton_polygon(h, padic_base(p)));
        CHECK(newton_polygon(pz_mul(g, h), padic_base(p)) == expect);
    }
}

TEST_CASE("polygon y-values and envelope rebuilding") {
    NewtonPolygon np = newton_polygon(pz({1, 3, 5}), padic_base(5));
    auto ys = polygon_y_values(np);
    CHECK(ys == std::vector<QQ>{QQ(0), QQ(0), QQ(1)});
    CHECK(polygon_from_y_values(ys) == np);
}

TEST_CASE("pure degrees: p-adic, l-adic, complex") {
    RationalFunctionZ E = elliptic_f5();

    PureDegreeTable padic = pure_degrees(E, padic_base(5), 1);
    REQUIRE(padic.rows.size() == 2);
    CHECK(padic.rows[0].slope == 0);
    CHECK(padic.rows[0].d == 0);
    CHECK(padic.rows[0].D == 2);
    CHECK(padic.rows[1].slope == 1);
    CHECK(padic.rows[1].d == 0);
    CHECK(padic.rows[1].D == 2);
    CHECK(padic.denominator_report == 1);

    PureDegreeTable ladic = pure_degrees(E, ladic_base(3));
    REQUIRE(ladic.rows.size() == 1);
    CHECK(ladic.rows[0].slope == 0);
    CHECK(ladic.rows[0].d == E.degree());
    CHECK(ladic.rows[0].D == E.total_degree());

    PureDegreeTable cx = pure_degrees(E, complex_base(5), 1);
    REQUIRE(cx.rows.size() == 3);
    CHECK(cx.rows[0].slope == 0);
    CHECK(cx.rows[0].d == -1);
    CHECK(cx.rows[0].D == 1);
    CHECK(cx.rows[1].slope == make_qq(1, 2));
    CHECK(cx.rows[1].d == 2);
    CHECK(cx.rows[1].D == 2);
    CHECK(cx.rows[2].slope == 1);
    CHECK(cx.rows[2].d == -1);
    CHECK(cx.rows[2].D == 1);
    CHECK(cx.denominator_report == 2);

    // supersingular numerator has the half slope
    RationalFunctionZ ss = make_rational_function(pz({1, 0, 5}), pz_mul(pz({1, -1}), pz({1, -5})));
    PureDegreeTable sst = pure_degrees(ss, padic_base(5), 1);
    REQUIRE(sst.rows.size() == 3);
    CHECK(sst.rows[1].slope == make_qq(1, 2));
    CHECK(sst.denominator_report == 2);

    // a slope outside [0, n] is an error when the dimension is supplied
    RationalFunctionZ high = make_rational_function(pz({1, -25}), pz({1}));
    CHECK_THROWS_AS(pure_degrees(high, padic_base(5), 1), InvariantError);
    CHECK(pure_degrees(high, padic_base(5)).rows[0].slope == 2);
}

TEST_CASE("complex weight table examples") {
    // poles at 1 and q
    RationalFunctionZ zp1 = make_rational_function(pz({1}), pz_mul(pz({1, -1}), pz({1, -5})));
    PureDegreeTable t = complex_weight_table(zp1, 1, 1e-6, 5, QQ(1));
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].slope == 0);
    CHECK(t.rows[0].d == -1);
    CHECK(t.rows[0].D == 1);
    CHECK(t.rows[1].slope == 1);

    // elliptic numerator: both roots on |alpha| = sqrt(5) within 1e-9
    RationalFunctionZ E = elliptic_f5();
    for (const auto& [root, mult] : complex_roots(E.num)) {
        double alpha = 1.0 / std::abs(root);
        CHECK(std::fabs(std::log(alpha) / std::log(5.0) - 0.5) < 1e-9);
    }

    // (1 - 2T) over F_4: slope log_4 2 = 1/2
    RationalFunctionZ half = make_rational_function(pz({1, -2}), pz({1}));
    PureDegreeTable t4 = complex_weight_table(half, 1, 1e-6, 2, QQ(2));
    REQUIRE(t4.rows.size() == 1);
    CHECK(t4.rows[0].slope == make_qq(1, 2));

    // a non-Weil modulus is rejected
    RationalFunctionZ odd = make_rational_function(pz({1, -3}), pz({1}));
    CHECK_THROWS_AS(complex_weight_table(odd, 1, 1e-6, 5, QQ(1)), InvariantError);
}

TEST_CASE("l-adic unit check") {
    RationalFunctionZ E = elliptic_f5();
    CHECK(ladic_unit_check(E, 3));
    CHECK(ladic_unit_check(E, 2));
    CHECK(ladic_unit_check(E, 7));
    RationalFunctionZ bad = make_rational_function(pz({1, -3}), pz({1}));
    CHECK(!ladic_unit_check(bad, 3));
    PolyZ quint = pz({1, -1});
    PolyZ acc = pz({1});
    for (int i = 0; i < 5; ++i) acc = pz_mul(acc, quint);
    RationalFunctionZ unip = make_rational_function(acc, pz({1}));
    CHECK(ladic_unit_check(unip, 2));
    CHECK(ladic_unit_check(unip, 7));
}

TEST_CASE("slope split: ordinary quadratic, cross-checked against root lifting") {
    auto factors = slope_split(pz({1, 3, 5}), 5, 3);
    REQUIRE(factors.size() == 2);
    CHECK(factors[0].slope == 0);
    CHECK(factors[1].slope == 1);
    REQUIRE(factors[0].coeffs.size() == 2);

    // oracle: the unit root of x^2 + 3x + 5 in Z_5 via Newton lifting;
    // mod 5 the roots are 2 (unit) observed from 4 + 6 + 5 = 15
    ZZ u = lift_root(pz({5, 3, 1}), 5, 2, 3);
    CHECK(zz_mod(u * u + 3 * u + 5, ZZ(125)) == 0);
    // slope-0 factor is (1 - uT)
    CHECK(zz_mod(factors[0].coeffs[1] + u, ZZ(125)) == 0);
    // the mod-p residue of the unit root survives in the lift
    CHECK(zz_mod(u, ZZ(5)) == 2);

    // product identity mod 125
    PolyZ prod = pz_mul(factors[0].coeffs, factors[1].coeffs);
    PolyZ in = pz({1, 3, 5});
    for (size_t i = 0; i < prod.size(); ++i) CHECK(zz_mod(prod[i] - (i < in.size() ? in[i] : ZZ(0)), ZZ(125)) == 0);
}

TEST_CASE("slope split: pure input returns itself") {
    auto factors = slope_split(pz({1, 0, 5}), 5, 2);
    REQUIRE(factors.size() == 1);
    CHECK(factors[0].slope == make_qq(1, 2));
    CHECK(factors[0].coeffs == pz({1, 0, 5}));
}

TEST_CASE("slope split: exact split of (1-T)(1-5T)") {
    auto factors = slope_split(pz({1, -6, 5}), 5, 2);
    REQUIRE(factors.size() == 2);
    CHECK(factors[0].coeffs == pz({1, 24}));  // -1 mod 25
    CHECK(factors[1].coeffs == pz({1, 20}));  // -5 mod 25
}

TEST_CASE("slope split: fractional front with integral top uses the top-end split") {
    // (1 + 5T^2)(1 - 5T): slopes 1/2, 1/2, 1
    PolyZ g = pz_mul(pz({1, 0, 5}), pz({1, -5}));
    auto factors = slope_split(g, 5, 2);
    REQUIRE(factors.size() == 2);
    CHECK(factors[0].slope == make_qq(1, 2));
    CHECK(factors[1].slope == 1);
    PolyZ prod = pz_mul(factors[0].coeffs, factors[1].coeffs);
    for (size_t i = 0; i < prod.size(); ++i)
        CHECK(zz_mod(prod[i] - (i < g.size() ? g[i] : ZZ(0)), ZZ(25)) == 0);
}

TEST_CASE("slope split: both ends fractional is reported honestly") {
    PolyZ g = pz_mul(pz({1, 0, 5}), pz({1, 0, 125}));  // slopes 1/2 and 3/2
    CHECK_THROWS_AS(slope_split(g, 5, 2), InvariantError);
}

TEST_CASE("slope split properties on random slope-mixed products") {
    Rng rng(909090);
    for (int trial = 0; trial < 30; ++trial) {
        long p = trial % 2 ? 3 : 5;
        int m = (int)rng.range(1, 3);
        // product of factors (1 - u p^a T) with controlled slopes
        PolyZ g = {ZZ(1)};
        std::map<QQ, long> slopes;
        int nf = (int)rng.range(2, 4);
        for (int i = 0; i < nf; ++i) {
            long unit = rng.range(1, p - 1);
            long val = rng.range(0, 2);
            g = pz_mul(g, pz({1, -unit * zz_pow(p, (unsigned long)val).get_si()}));
            slopes[QQ(val)] += 1;
        }
        auto factors = slope_split(g, p, m);
        CHECK(factors.size() == slopes.size());
        ZZ mod = zz_pow(p, (unsigned long)m);
        PolyZ prod = {ZZ(1)};
        for (const auto& f : factors) {
            prod = pz_mul(prod, f.coeffs);
            CHECK(slopes.count(f.slope) == 1);
            // the leading coefficient has valuation slope * length, so the
            // degree survives the mod-p^m reduction exactly when that stays
            // below m
            long len = slopes[f.slope];
            if (f.slope * QQ(len) < QQ(m))
                CHECK(pz_deg(f.coeffs) == len);
            else
                CHECK(pz_deg(f.coeffs) <= len);
        }
        for (size_t i = 0; i < prod.size(); ++i)
            CHECK(zz_mod(prod[i] - (i < g.size() ? g[i] : ZZ(0)), mod) == 0);
    }
}

TEST_CASE("slope split respects the base exponent") {
    auto factors = slope_split(pz({1, 3, 5}), 5, 2, QQ(2));
    REQUIRE(factors.size() == 2);
    CHECK(factors[0].slope == 0);
    CHECK(factors[1].slope == make_qq(1, 2));
}
