#include "zetakit/fpoly.hpp"

namespace zetakit {

FPoly fp_mul(const FieldDescriptor& K, const FPoly& f, const FPoly& g) {
    if (f.empty() || g.empty()) return {};
    FPoly r(f.size() + g.size() - 1, fx_zero(K));
    std::vector<long> scratch;
    Coords t, s;
    for (size_t i = 0; i < f.size(); ++i) {
        if (fx_is_zero(f[i])) continue;
        for (size_t j = 0; j < g.size(); ++j) {
            if (fx_is_zero(g[j])) continue;
            fx_mul_into(K, f[i], g[j], t, scratch);
            fx_add(K, r[i + j], t, s);
            r[i + j] = s;
        }
    }
    fp_trim(r);
    return r;
}

FPoly fp_rem(const FieldDescriptor& K, FPoly f, const FPoly& g) {
    fp_trim(f);
    std::vector<long> scratch;
    Coords t, s;
    while (f.size() >= g.size() && !f.empty()) {
        Coords c = f.back();
        size_t shift = f.size() - g.size();
        if (!fx_is_zero(c)) {
            for (size_t i = 0; i + 1 < g.size(); ++i) {
                fx_mul_into(K, c, g[i], t, scratch);
                fx_sub(K, f[i + shift], t, s);
                f[i + shift] = s;
            }
        }
        f.pop_back();
        fp_trim(f);
    }
    return f;
}

FPoly fp_monic(const FieldDescriptor& K, FPoly f) {
    fp_trim(f);
    if (f.empty()) return f;
    Coords inv = fx_inv(K, f.back());
    std::vector<long> scratch;
    Coords t;
    for (auto& c : f) {
        fx_mul_into(K, c, inv, t, scratch);
        c = t;
    }
    return f;
}

FPoly fp_gcd(const FieldDescriptor& K, FPoly f, FPoly g) {
    fp_trim(f);
    fp_trim(g);
    while (!g.empty()) {
        g = fp_monic(K, std::move(g));
        FPoly r = fp_rem(K, std::move(f), g);
        f = std::move(g);
        g = std::move(r);
    }
    return fp_monic(K, std::move(f));
}

FPoly fp_powmod(const FieldDescriptor& K, FPoly base, ZZ e, const FPoly& m) {
    FPoly r = {fx_one(K)};
    base = fp_rem(K, std::move(base), m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_rem(K, fp_mul(K, r, base), m);
        base = fp_rem(K, fp_mul(K, base, base), m);
        e >>= 1;
    }
    return r;
}

FPoly fp_derivative(const FieldDescriptor& K, const FPoly& f) {
    if (f.size() <= 1) return {};
    FPoly d(f.size() - 1, fx_zero(K));
    for (size_t i = 1; i < f.size(); ++i) {
        Coords scaled(K.a);
        long m = (long)(i % (size_t)K.p);
        for (int j = 0; j < K.a; ++j) scaled[j] = f[i][j] * m % K.p;
        d[i - 1] = scaled;
    }
    fp_trim(d);
    return d;
}

long fp_distinct_roots(const Field& k, const FPoly& f) {
    const auto& K = *k;
    FPoly g = fp_monic(K, f);
    require(!g.empty(), "root count of the zero polynomial");
    if (g.size() == 1) return 0;
    if (g.size() == 2) return 1;
    // gcd(t^q - t, g) collects exactly the roots in the field
    FPoly x = {fx_zero(K), fx_one(K)};
    FPoly xq = fp_powmod(K, x, ZZ(K.q), g);
    // xq - x
    if (xq.size() < 2) xq.resize(2, fx_zero(K));
    Coords s;
    fx_sub(K, xq[1], fx_one(K), s);
    xq[1] = s;
    fp_trim(xq);
    if (xq.empty()) return (long)g.size() - 1;
    FPoly d = fp_gcd(K, std::move(xq), g);
    return (long)d.size() - 1;
}

Coords fp_resultant(const FieldDescriptor& K, FPoly f, FPoly g) {
    fp_trim(f);
    fp_trim(g);
    if (f.empty() || g.empty()) return fx_zero(K);
    Coords acc = fx_one(K);
    std::vector<long> scratch;
    Coords t;
    while (g.size() > 1) {
        FPoly r = fp_rem(K, f, fp_monic(K, g));
        long df = (long)f.size() - 1, dg = (long)g.size() - 1;
        long dr = r.empty() ? -1 : (long)r.size() - 1;
        // res(f,g) = (-1)^{df dg} lc(g)^{df - dr} res(g, r)
        Coords lc_pow = fx_pow(K, g.back(), df - (dr < 0 ? 0 : dr));
        fx_mul_into(K, acc, lc_pow, t, scratch);
        acc = t;
        if ((df * dg) % 2 == 1) {
            Coords n;
            fx_neg(K, acc, n);
            acc = n;
        }
        if (r.empty()) return fx_zero(K);
        f = std::move(g);
        g = std::move(r);
    }
    // g is a nonzero constant: res = g^{deg f}
    Coords gc = fx_pow(K, g[0], (long)f.size() - 1);
    fx_mul_into(K, acc, gc, t, scratch);
    return t;
}

}  // namespace zetakit
