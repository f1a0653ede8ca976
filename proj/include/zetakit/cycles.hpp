#pragma once

#include <functional>

#include "zetakit/ratfun.hpp"

namespace zetakit {

// Counts of prime cycles N(d), effective cycles M(d) and the weighted count
// W(d) = sum_{k|d} k N(k), all for degrees 1..B (M(0) = 1 implicitly).
struct CycleCountTable {
    int r = 0;
    int B = 0;
    std::vector<ZZ> N, M, W;  // index d-1 holds degree d
};

std::vector<ZZ> w_from_n(const std::vector<ZZ>& N);
// Mobius inversion; errors when W is not a valid weighted-count sequence.
std::vector<ZZ> n_from_w(const std::vector<ZZ>& W);
std::vector<ZZ> m_from_w(const std::vector<ZZ>& W);
std::vector<ZZ> w_from_m(const std::vector<ZZ>& M);

CycleCountTable table_from_n(int r, std::vector<ZZ> N);
CycleCountTable table_from_m(int r, std::vector<ZZ> M);

// Effective divisors of degree d on P^n are nonzero degree-d forms up to
// scalar: (q^C(n+d,n) - 1)/(q - 1).
ZZ effective_divisor_count(int n, int d, long q);

// Degree-d forms in n+1 variables over F_q, up to scalar, irreducible;
// irreducibility by trial division against all lower-degree form products.
// Tiny instances only.
long prime_divisor_bruteforce(int n, int d, long q, long budget = 1L << 28);

// Divisor table on P^n from the closed-form effective counts.
CycleCountTable divisor_table(int n, long q, int B);

// The series sum M(d) T^d; asserts the four equivalent expressions (direct
// M, exp of W, binomial Euler product over N, and the power-assembled Euler
// product) agree to order B.
SeriesZ cycle_zeta_series(const CycleCountTable& table, int B);

struct PoleProbeReport {
    std::optional<int> rho;
    ZZ stabilized_value = 0;
    int window = 0;
    int D_max = 0;
    // partial_sums[r][D] = sum_{d<=D} coeff of (1-T)^r * sum M(d)T^d, mod p^m
    std::vector<std::vector<ZZ>> partial_sums;
};

// Evaluates (1-T)^rho * sum M(d) T^d at T = 1 in Z/p^m through partial
// sums; returns the least rho whose tail window stabilizes. Numerical
// evidence only, never proof.
PoleProbeReport pole_order_probe(const std::function<ZZ(long)>& M_of_d, long p, int m, int rho_max,
                                 int D_max, int window = 0);

}  // namespace zetakit
