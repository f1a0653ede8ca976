#include "zetakit/cycles.hpp"

#include <algorithm>
#include <set>

#include "zetakit/ffield.hpp"

namespace zetakit {

std::vector<ZZ> w_from_n(const std::vector<ZZ>& N) {
    std::vector<ZZ> W(N.size(), ZZ(0));
    for (size_t d = 1; d <= N.size(); ++d) {
        ZZ acc = 0;
        for (size_t k = 1; k <= d; ++k)
            if (d % k == 0) acc += ZZ((long)k) * N[k - 1];
        W[d - 1] = acc;
    }
    return W;
}

std::vector<ZZ> n_from_w(const std::vector<ZZ>& W) {
    std::vector<ZZ> N(W.size(), ZZ(0));
    for (size_t d = 1; d <= W.size(); ++d) {
        ZZ acc = 0;
        for (size_t k = 1; k <= d; ++k)
            if (d % k == 0) acc += ZZ(mobius((long)(d / k))) * W[k - 1];
        ZZ q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), ZZ((long)d).get_mpz_t());
        if (r != 0) throw InputError("W is not a weighted-count sequence: N(" + std::to_string(d) + ") is not integral");
        if (q < 0) throw InputError("W is not a weighted-count sequence: N(" + std::to_string(d) + ") is negative");
        N[d - 1] = q;
    }
    return N;
}

std::vector<ZZ> m_from_w(const std::vector<ZZ>& W) {
    int B = (int)W.size();
    SeriesQ logz(QRing{}, B);
    for (int d = 1; d <= B; ++d) logz.c[d] = make_qq(W[d - 1], ZZ(d));
    SeriesQ z = series_exp(logz);
    std::vector<ZZ> M(B);
    for (int d = 1; d <= B; ++d) {
        if (z.c[d].get_den() != 1) throw InputError("W does not produce integral effective counts");
        M[d - 1] = z.c[d].get_num();
    }
    return M;
}

std::vector<ZZ> w_from_m(const std::vector<ZZ>& M) {
    int B = (int)M.size();
    SeriesQ z(QRing{}, B);
    z.c[0] = 1;
    for (int d = 1; d <= B; ++d) z.c[d] = QQ(M[d - 1]);
    SeriesQ l = series_log(z);
    std::vector<ZZ> W(B);
    for (int d = 1; d <= B; ++d) {
        QQ w = l.c[d] * QQ(d);
        if (w.get_den() != 1) throw InputError("M does not produce integral weighted counts");
        W[d - 1] = w.get_num();
    }
    return W;
}

CycleCountTable table_from_n(int r, std::vector<ZZ> N) {
    CycleCountTable t;
    t.r = r;
    t.B = (int)N.size();
    t.W = w_from_n(N);
    t.M = m_from_w(t.W);
    t.N = std::move(N);
    return t;
}

CycleCountTable table_from_m(int r, std::vector<ZZ> M) {
    CycleCountTable t;
    t.r = r;
    t.B = (int)M.size();
    t.W = w_from_m(M);
    t.N = n_from_w(t.W);
    t.M = std::move(M);
    return t;
}

ZZ effective_divisor_count(int n, int d, long q) {
    require(n >= 1 && d >= 1, "effective_divisor_count requires n, d >= 1");
    unsigned long monomials = binomial((unsigned long)(n + d), (unsigned long)n).get_ui();
    return (zz_pow(q, monomials) - 1) / (ZZ(q) - 1);
}

namespace {

// dense form = coefficient index vector over the monomial list
using Form = std::vector<long>;

std::vector<std::vector<unsigned>> degree_monomials(int nvars, int d) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(nvars, 0);
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == nvars - 1) {
            cur[var] = (unsigned)left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[var] = (unsigned)e;
            rec(var + 1, left - e);
        }
    };
    rec(0, d);
    return out;
}

}  // namespace

long prime_divisor_bruteforce(int n, int d, long q, long budget) {
    require(n >= 1 && d >= 1, "prime_divisor_bruteforce requires n, d >= 1");
    Field k = make_extension_field(q, 1);
    long p = k->p;
    require(k->q == q, "prime divisor brute force supports prime fields only");
    int nvars = n + 1;
    auto monos = degree_monomials(nvars, d);
    ZZ space = zz_pow(q, (unsigned long)monos.size());
    if (space > budget)
        throw BudgetError("form space " + space.get_str() + " exceeds budget " + std::to_string(budget));

    // canonical = first nonzero coefficient is 1
    auto canonicalize = [&](Form f) {
        for (long& c : f) {
            if (c == 0) continue;
            if (c != 1) {
                long inv = 1;
                {
                    long t = 1, base = c, e = p - 2;
                    while (e) {
                        if (e & 1) t = t * base % p;
                        base = base * base % p;
                        e >>= 1;
                    }
                    inv = t;
                }
                for (long& x : f) x = x * inv % p;
            }
            break;
        }
        return f;
    };

    // multiply forms of degrees e and d-e into degree d
    auto mono_index = [&](const std::vector<std::vector<unsigned>>& list, const std::vector<unsigned>& m) {
        auto it = std::lower_bound(list.begin(), list.end(), m,
                                   [](const std::vector<unsigned>& a, const std::vector<unsigned>& b) { return a > b; });
        require(it != list.end() && *it == m, "monomial lookup failed");
        return (long)(it - list.begin());
    };

    auto enumerate_canonical = [&](int deg) {
        auto ms = degree_monomials(nvars, deg);
        std::vector<Form> forms;
        long count = (long)ms.size();
        // first nonzero coefficient at position i, coefficients before zero
        for (long lead = 0; lead < count; ++lead) {
            long free = count - lead - 1;
            ZZ total = zz_pow(q, (unsigned long)free);
            for (ZZ idx(0); idx < total; ++idx) {
                Form f(count, 0);
                f[(size_t)lead] = 1;
                ZZ rest = idx;
                for (long i = lead + 1; i < count; ++i) {
                    ZZ digit = zz_mod(rest, ZZ(q));
                    f[(size_t)i] = digit.get_si();
                    rest /= q;
                }
                forms.push_back(std::move(f));
            }
        }
        return forms;
    };

    std::set<Form> reducible;
    for (int e = 1; e * 2 <= d; ++e) {
        auto left_monos = degree_monomials(nvars, e);
        auto right_monos = degree_monomials(nvars, d - e);
        auto lefts = enumerate_canonical(e);
        auto rights = (e == d - e) ? lefts : enumerate_canonical(d - e);
        for (size_t i = 0; i < lefts.size(); ++i) {
            size_t jstart = (e == d - e) ? i : 0;
            for (size_t j = jstart; j < rights.size(); ++j) {
                Form prod(monos.size(), 0);
                for (size_t a = 0; a < lefts[i].size(); ++a) {
                    if (!lefts[i][a]) continue;
                    for (size_t b = 0; b < rights[j].size(); ++b) {
                        if (!rights[j][b]) continue;
                        std::vector<unsigned> m(left_monos[a].size());
                        for (size_t v = 0; v < m.size(); ++v) m[v] = left_monos[a][v] + right_monos[b][v];
                        long idx = mono_index(monos, m);
                        prod[(size_t)idx] = (prod[(size_t)idx] + lefts[i][a] * rights[j][b]) % p;
                    }
                }
                reducible.insert(canonicalize(std::move(prod)));
            }
        }
    }
    ZZ total_forms = (zz_pow(q, (unsigned long)monos.size()) - 1) / (ZZ(q) - 1);
    return total_forms.get_si() - (long)reducible.size();
}

CycleCountTable divisor_table(int n, long q, int B) {
    std::vector<ZZ> M(B);
    for (int d = 1; d <= B; ++d) M[(size_t)d - 1] = effective_divisor_count(n, d, q);
    return table_from_m(n - 1, std::move(M));
}

namespace {

// (1 - T^d)^{-N} via the negative binomial series
SeriesZ neg_binomial_factor(int d, const ZZ& N, int B) {
    SeriesZ f(ZRing{}, B);
    f.c[0] = 1;
    for (int j = 1; d * j <= B; ++j) {
        // C(N + j - 1, j)
        ZZ num = 1;
        for (int i = 0; i < j; ++i) num *= N + j - 1 - i;
        ZZ den = 1;
        for (int i = 1; i <= j; ++i) den *= i;
        f.c[(size_t)(d * j)] = num / den;
    }
    return f;
}

// (1 - T^d)^{-N} via binary powering of the series inverse
SeriesZ pow_factor(int d, const ZZ& N, int B) {
    SeriesZ base(ZRing{}, B);
    base.c[0] = 1;
    if (d <= B) base.c[(size_t)d] = -1;
    base = series_inverse(base);
    SeriesZ acc = series_one(ZRing{}, B);
    ZZ e = N;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = series_mul(acc, base);
        base = series_mul(base, base);
        e >>= 1;
    }
    return acc;
}

}  // namespace

SeriesZ cycle_zeta_series(const CycleCountTable& table, int B) {
    require(B <= table.B, "cycle table is shorter than the requested order");
    // route 1: direct effective counts
    SeriesZ direct(ZRing{}, B);
    direct.c[0] = 1;
    for (int d = 1; d <= B; ++d) direct.c[(size_t)d] = table.M[(size_t)d - 1];
    // route 2: exp of the weighted counts
    SeriesQ logz(QRing{}, B);
    for (int d = 1; d <= B; ++d) logz.c[(size_t)d] = make_qq(table.W[(size_t)d - 1], ZZ(d));
    SeriesZ from_w = to_integer_series(series_exp(logz), "cycle zeta from W");
    // routes 3 and 4: Euler product over prime-cycle counts, two expansions
    SeriesZ from_n_binom = series_one(ZRing{}, B);
    SeriesZ from_n_pow = series_one(ZRing{}, B);
    for (int d = 1; d <= B; ++d) {
        const ZZ& N = table.N[(size_t)d - 1];
        if (N == 0) continue;
        from_n_binom = series_mul(from_n_binom, neg_binomial_factor(d, N, B));
        from_n_pow = series_mul(from_n_pow, pow_factor(d, N, B));
    }
    for (int d = 0; d <= B; ++d) {
        if (direct.c[(size_t)d] != from_w.c[(size_t)d] || direct.c[(size_t)d] != from_n_binom.c[(size_t)d] ||
            direct.c[(size_t)d] != from_n_pow.c[(size_t)d])
            throw InvariantError("cycle zeta expressions disagree at degree " + std::to_string(d));
    }
    return direct;
}

PoleProbeReport pole_order_probe(const std::function<ZZ(long)>& M_of_d, long p, int m, int rho_max,
                                 int D_max, int window) {
    require(is_prime(p), "pole probe requires a prime p");
    require(m >= 1 && rho_max >= 0 && D_max >= 1, "bad pole probe parameters");
    if (window <= 0) window = (D_max + 3) / 4;
    require(window <= D_max, "stabilization window larger than D_max");
    ZZ mod = zz_pow(p, (unsigned long)m);

    std::vector<ZZ> M((size_t)D_max + 1);
    for (long d = 0; d <= D_max; ++d) M[(size_t)d] = M_of_d(d);

    PoleProbeReport rep;
    rep.window = window;
    rep.D_max = D_max;
    for (int rho = 0; rho <= rho_max; ++rho) {
        // coefficients of (1-T)^rho * sum M(d) T^d
        std::vector<ZZ> binom((size_t)rho + 1);
        for (int j = 0; j <= rho; ++j) binom[(size_t)j] = (j % 2 ? -1 : 1) * binomial((unsigned long)rho, (unsigned long)j);
        std::vector<ZZ> sums((size_t)D_max + 1);
        ZZ acc = 0;
        for (long D = 0; D <= D_max; ++D) {
            ZZ c = 0;
            for (int j = 0; j <= rho && j <= D; ++j) c += binom[(size_t)j] * M[(size_t)(D - j)];
            acc = zz_mod(acc + c, mod);
            sums[(size_t)D] = acc;
        }
        rep.partial_sums.push_back(sums);
        bool stable = true;
        for (int i = 1; i < window; ++i)
            if (sums[(size_t)(D_max - i)] != sums[(size_t)D_max]) stable = false;
        if (stable) {
            rep.rho = rho;
            rep.stabilized_value = sums[(size_t)D_max];
            return rep;
        }
    }
    return rep;  // rho empty: no stabilization within bounds, reported honestly
}

}  // namespace zetakit
