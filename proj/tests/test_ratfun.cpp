#include <doctest.h>

#include "helpers.hpp"

using namespace zetakit;
using zetakit::test::pz;
using zetakit::test::Rng;

TEST_CASE("power sums via Newton's identities") {
    // (1-2T)(1-3T): s_1 = 5, s_2 = 13, s_3 = 35
    PolyZ g = pz_mul(pz({1, -2}), pz({1, -3}));
    auto s = power_sums(g, 3);
    CHECK(s[1] == 5);
    CHECK(s[2] == 13);
    CHECK(s[3] == 35);
}

TEST_CASE("counts from a rational function") {
    RationalFunctionZ R1 = make_rational_function(pz({1}), pz({1, -5}));
    CHECK(counts_from_rational(R1, 3) == 125);

    // elliptic/F_5: 25 + 1 - (alpha^2 + beta^2) with alpha+beta = -3,
    // alpha beta = 5 gives 26 - (-1) = 27
    RationalFunctionZ E = make_rational_function(pz({1, 3, 5}), pz_mul(pz({1, -1}), pz({1, -5})));
    CHECK(counts_from_rational(E, 1) == 9);
    CHECK(counts_from_rational(E, 2) == 27);

    RationalFunctionZ R2 = make_rational_function(pz({1, -1}), pz({1, -2}));
    CHECK(counts_from_rational(R2, 1) == 1);
}

TEST_CASE("reconstruction: geometric, elliptic, and a guard rejection") {
    // [1, q, q^2, ...] with bounds (0,1)
    SeriesZ s(ZRing{}, 4);
    for (int i = 0; i <= 4; ++i) s.c[(size_t)i] = zz_pow(5, (unsigned long)i);
    auto rep = reconstruct_rational(s, 0, 1, 3);
    REQUIRE(rep.result.has_value());
    CHECK(rep.result->num == pz({1}));
    CHECK(rep.result->den == pz({1, -5}));

    // elliptic zeta series to order 6, bounds (2,2), guard 2
    RationalFunctionZ E = make_rational_function(pz({1, 3, 5}), pz_mul(pz({1, -1}), pz({1, -5})));
    SeriesZ es = expand_rational(E, 6);
    auto erep = reconstruct_rational(es, 2, 2, 2);
    REQUIRE(erep.result.has_value());
    CHECK(*erep.result == E);
    CHECK(erep.used_coeffs == 5);
    CHECK(erep.guard_checked == 2);

    // e^T truncated is not rational; the guard catches it
    std::vector<QQ> expc(8);
    ZZ fact = 1;
    for (int i = 0; i <= 7; ++i) {
        if (i > 0) fact *= i;
        expc[(size_t)i] = make_qq(ZZ(1), fact);
    }
    auto nomatch = reconstruct_rational(expc, 2, 2, 3);
    CHECK(!nomatch.result.has_value());

    // refusing an unguarded solve
    CHECK_THROWS_AS(reconstruct_rational(s, 0, 1, 0), UsageError);
    // insufficient truncation
    CHECK_THROWS_AS(reconstruct_rational(s, 3, 3, 3), UsageError);
}

TEST_CASE("reconstruction soundness property on random rational functions") {
    Rng rng(424242);
    int built = 0;
    for (int trial = 0; trial < 60 && built < 25; ++trial) {
        PolyZ num = {ZZ(1)}, den = {ZZ(1)};
        int dn = (int)rng.range(0, 2), dd = (int)rng.range(0, 2);
        for (int i = 0; i < dn; ++i) num = pz_mul(num, pz({1, rng.range(-4, 4)}));
        for (int i = 0; i < dd; ++i) den = pz_mul(den, pz({1, rng.range(-4, 4)}));
        RationalFunctionZ R;
        try {
            R = make_rational_function(num, den);
        } catch (const ZkError&) {
            continue;
        }
        ++built;
        int t = (int)(pz_deg(R.num) + pz_deg(R.den));
        int B = t + 3 + (int)rng.range(0, 2);
        SeriesZ s = expand_rational(R, B);
        auto rep = reconstruct_rational(s, (int)pz_deg(R.num), (int)pz_deg(R.den), B - t);
        REQUIRE(rep.result.has_value());
        CHECK(*rep.result == R);
        // the reported expansion matches every input coefficient
        CHECK(expand_rational(*rep.result, B).c == s.c);
    }
    CHECK(built >= 15);
}

TEST_CASE("adams transform examples") {
    PolyZ g = pz({1, 3, 5});
    // alpha^2 + beta^2 = 9 - 10 = -1, alpha^2 beta^2 = 25
    CHECK(adams_transform(g, 2) == pz({1, 1, 25}));
    CHECK(adams_transform(g, 1) == g);
    CHECK(adams_transform(pz({1, -7}), 3) == pz({1, -343}));
    CHECK(adams_transform(pz({1}), 5) == pz({1}));
}

TEST_CASE("adams transform properties on random integer polynomials") {
    Rng rng(1001);
    for (int trial = 0; trial < 25; ++trial) {
        PolyZ g = {ZZ(1)}, h = {ZZ(1)};
        int dg = (int)rng.range(1, 3), dh = (int)rng.range(1, 2);
        for (int i = 0; i < dg; ++i) g = pz_mul(g, pz({1, rng.range(-3, 3)}));
        for (int i = 0; i < dh; ++i) h = pz_mul(h, pz({1, rng.range(-3, 3)}));
        long k = rng.range(2, 4), j = rng.range(2, 3);
        // multiplicativity
        CHECK(adams_transform(pz_mul(g, h), k) == pz_mul(adams_transform(g, k), adams_transform(h, k)));
        // composition
        CHECK(adams_transform(adams_transform(g, j), k) == adams_transform(g, j * k));
        // degree preservation (companion-determinant route keeps the full
        // multiset of root powers, collisions included)
        CHECK(pz_deg(adams_transform(g, k)) == pz_deg(g));
    }
    // an explicit collision: roots 1 and -1 both square to 1
    PolyZ collide = pz_mul(pz({1, -1}), pz({1, 1}));
    CHECK(adams_transform(collide, 2) == pz_mul(pz({1, -1}), pz({1, -1})));
}

TEST_CASE("zeta reconstruction reproduces engine counts") {
    EnumConfig cfg;
    VarietyDescriptor E = load_variety_file(zetakit::test::data_path("elliptic_f5.var"));
    PointCountSequence seq = count_sequence(E, 6, cfg);
    SeriesZ z = zeta_series_from_counts(seq);
    auto rep = reconstruct_rational(z, 2, 2, 2);
    REQUIRE(rep.result.has_value());
    for (long k = 1; k <= 6; ++k)
        CHECK(counts_from_rational(*rep.result, k) == ZZ(seq.counts[(size_t)k - 1]));
}

TEST_CASE("rational function normalization and validation") {
    // common factors are removed and constant terms renormalized
    PolyZ shared = pz({1, 2});
    RationalFunctionZ R = make_rational_function(pz_mul(pz({1, -3}), shared), pz_mul(pz({1, -5}), shared));
    CHECK(R.num == pz({1, -3}));
    CHECK(R.den == pz({1, -5}));
    CHECK(R.degree() == 0);
    CHECK(R.total_degree() == 2);

    CHECK_THROWS_AS(make_rational_function(pz({0, 1}), pz({1})), InputError);
    CHECK_THROWS_AS(make_rational_function(pz({2}), pz({1})), InputError);
}
