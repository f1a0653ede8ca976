#include <doctest.h>

#include "helpers.hpp"
#include "zetakit/cycles.hpp"

using namespace zetakit;
using zetakit::test::pz;
using zetakit::test::Rng;

namespace {

std::vector<ZZ> zzv(std::initializer_list<long> xs) {
    std::vector<ZZ> out;
    for (long x : xs) out.push_back(ZZ(x));
    return out;
}

}  // namespace

TEST_CASE("weighted counts from prime counts and back") {
    CHECK(w_from_n(zzv({7, 35})) == zzv({7, 77}));  // 7; 7 + 2*35
    CHECK(w_from_n(zzv({1, 0, 0})) == zzv({1, 1, 1}));
    CHECK(w_from_n(zzv({0, 0})) == zzv({0, 0}));

    CHECK(n_from_w(zzv({7, 77})) == zzv({7, 35}));  // (77-7)/2 = 35
    CHECK(n_from_w(zzv({1})) == zzv({1}));
    CHECK_THROWS_AS(n_from_w(zzv({2, 1})), InputError);       // non-integral
    CHECK_THROWS_AS(n_from_w(zzv({1, 100, 1})), InputError);  // negative at degree 3

    // round trips to depth 8
    Rng rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ZZ> N(8);
        for (auto& x : N) x = rng.range(0, 30);
        CHECK(n_from_w(w_from_n(N)) == N);
    }
}

TEST_CASE("necklace counts: 0-cycles of the affine line") {
    // W(d) = q^d gives the monic irreducible counts by Mobius inversion
    std::vector<ZZ> W(6);
    for (int d = 1; d <= 6; ++d) W[(size_t)d - 1] = zz_pow(2, (unsigned long)d);
    std::vector<ZZ> N = n_from_w(W);
    CHECK(N == zzv({2, 1, 2, 3, 6, 9}));

    // independent oracle: enumerate monic polynomials over F_2 and test
    // irreducibility degree by degree
    for (int d = 1; d <= 5; ++d) {
        long count = 0;
        for (long v = 0; v < (1L << d); ++v) {
            std::vector<long> f(d + 1, 0);
            f[(size_t)d] = 1;
            long t = v;
            for (int i = 0; i < d; ++i) {
                f[(size_t)i] = t % 2;
                t /= 2;
            }
            if (is_irreducible_mod_p(f, 2)) ++count;
        }
        CHECK(ZZ(count) == N[(size_t)d - 1]);
    }
}

TEST_CASE("effective counts via exp/log transfer") {
    CHECK(m_from_w(zzv({7, 77})) == zzv({7, 63}));  // T^2: 77/2 + 49/2
    CHECK(m_from_w(zzv({0, 0, 0})) == zzv({0, 0, 0}));
    CHECK(w_from_m(zzv({7, 63})) == zzv({7, 77}));

    // 0-cycle data of P^1/F_2: M(d) from the classical zeta, W(d) = #X(F_{2^d})
    std::vector<ZZ> M = zzv({3, 7, 15, 31});
    std::vector<ZZ> W = w_from_m(M);
    CHECK(W == zzv({3, 5, 9, 17}));
    CHECK(m_from_w(W) == M);

    Rng rng(5412);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<ZZ> N(8);
        for (auto& x : N) x = rng.range(0, 9);
        std::vector<ZZ> Wr = w_from_n(N);
        CHECK(w_from_m(m_from_w(Wr)) == Wr);
    }
}

TEST_CASE("effective divisor counts with a brute-force oracle") {
    // enumerate the 8 binary linear forms in 3 variables, drop zero,
    // quotient by scalars (trivial over F_2)
    long forms = 0;
    for (int mask = 1; mask < 8; ++mask) ++forms;
    CHECK(forms == 7);
    CHECK(effective_divisor_count(2, 1, 2) == 7);
    CHECK(effective_divisor_count(2, 2, 2) == 63);  // (2^6-1)/1
    CHECK(effective_divisor_count(2, 3, 2) == 1023);

    // divisors on P^1 are 0-cycles: matches the effective 0-cycle counts
    std::vector<ZZ> M = zzv({3, 7, 15, 31});
    for (int d = 1; d <= 4; ++d) CHECK(effective_divisor_count(1, d, 2) == M[(size_t)d - 1]);
}

TEST_CASE("prime divisor brute force") {
    CHECK(prime_divisor_bruteforce(2, 1, 2) == 7);   // linear forms are irreducible
    CHECK(prime_divisor_bruteforce(1, 2, 2) == 1);   // x^2 + xy + y^2 only
    CHECK(prime_divisor_bruteforce(2, 2, 2) == 35);  // 63 - 28 line pairs

    // Euler identity at degree 2: M(2) = N(2) + N(1)(N(1)+1)/2
    for (long q : {2L, 3L}) {
        CycleCountTable t = divisor_table(2, q, 3);
        CHECK(t.M[1] == t.N[1] + t.N[0] * (t.N[0] + 1) / 2);
        CHECK(ZZ(prime_divisor_bruteforce(2, 1, q)) == t.N[0]);
        CHECK(ZZ(prime_divisor_bruteforce(2, 2, q)) == t.N[1]);
        CHECK(ZZ(prime_divisor_bruteforce(2, 3, q)) == t.N[2]);
    }

    CHECK_THROWS_AS(prime_divisor_bruteforce(3, 4, 5), BudgetError);
}

TEST_CASE("cycle zeta series: four expressions agree") {
    CycleCountTable div = divisor_table(2, 2, 3);
    SeriesZ z = cycle_zeta_series(div, 3);
    CHECK(z.c == std::vector<ZZ>{ZZ(1), ZZ(7), ZZ(63), ZZ(1023)});

    // 0-cycles reproduce the classical zeta of P^1/F_2
    std::vector<ZZ> closed_pts = zzv({3, 1, 2, 3});
    CycleCountTable zero = table_from_n(0, closed_pts);
    SeriesZ zz0 = cycle_zeta_series(zero, 4);
    PointCountSequence seq;
    seq.counts = {3, 5, 9, 17};
    CHECK(zz0.c == zeta_series_from_counts(seq).c);

    // corrupted tables are rejected with the offending degree
    CycleCountTable bad = div;
    bad.M[1] += 1;
    try {
        cycle_zeta_series(bad, 3);
        CHECK(false);
    } catch (const InvariantError& e) {
        CHECK(std::string(e.what()).find("degree 2") != std::string::npos);
    }
}

TEST_CASE("pole order probe") {
    // divisors on P^2/F_2: (1-T) * sum M(d) T^d telescopes to M(D) -> -1
    auto divisors = [](long d) { return d == 0 ? ZZ(1) : effective_divisor_count(2, (int)d, 2); };
    PoleProbeReport rep = pole_order_probe(divisors, 2, 10, 3, 12);
    REQUIRE(rep.rho.has_value());
    CHECK(*rep.rho == 1);
    CHECK(rep.stabilized_value == ZZ(1023));  // -1 mod 2^10
    CHECK(rep.window == 3);

    // rational input 1/(1-T)
    PoleProbeReport one = pole_order_probe([](long) { return ZZ(1); }, 2, 8, 3, 12);
    REQUIRE(one.rho.has_value());
    CHECK(*one.rho == 1);
    CHECK(one.stabilized_value == 1);

    // entire input M(d) = p^d converges with no pole
    for (long p : {2L, 3L}) {
        PoleProbeReport ent =
            pole_order_probe([p](long d) { return zz_pow(p, (unsigned long)d); }, p, 6, 3, 14);
        REQUIRE(ent.rho.has_value());
        CHECK(*ent.rho == 0);
        ZZ mod = zz_pow(p, 6);
        CHECK(ent.stabilized_value == zz_mod(zz_invmod(zz_mod(ZZ(1 - p), mod), mod), mod));  // 1/(1-p)
    }

    // no stabilization within rho_max is reported honestly
    PoleProbeReport none = pole_order_probe([](long d) { return zz_pow(3, (unsigned long)(d * d)); }, 2, 8, 1, 10);
    CHECK(!none.rho.has_value());
    CHECK(none.partial_sums.size() == 2);
}

TEST_CASE("pole order probe recovers constructed pole orders") {
    // M = coefficients of 1/(1-T)^rho: pole of order exactly rho at T = 1
    for (int rho = 1; rho <= 3; ++rho) {
        auto gen = [rho](long d) {
            return binomial((unsigned long)(d + rho - 1), (unsigned long)(rho - 1));
        };
        PoleProbeReport rep = pole_order_probe(gen, 3, 6, 4, 16);
        REQUIRE(rep.rho.has_value());
        CHECK(*rep.rho == rho);
        CHECK(rep.stabilized_value == 1);
    }
}
