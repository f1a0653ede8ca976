#pragma once

#include "zetakit/count.hpp"
#include "zetakit/number.hpp"

namespace zetakit {

// Order-B truncated formal power series over one of three coefficient
// rings. Coefficients are exact; no floating point anywhere. Residue-ring
// series support only ring operations (never exp/log).

struct QRing {
    using Elem = QQ;
    static Elem zero() { return QQ(0); }
    static Elem one() { return QQ(1); }
    Elem reduce(const Elem& x) const { return x; }
    static const char* name() { return "exact-rational"; }
};

struct ZRing {
    using Elem = ZZ;
    static Elem zero() { return ZZ(0); }
    static Elem one() { return ZZ(1); }
    Elem reduce(const Elem& x) const { return x; }
    static const char* name() { return "integer"; }
};

struct ModRing {
    ZZ modulus;
    long p = 0;
    int m = 0;
    using Elem = ZZ;
    static Elem zero() { return ZZ(0); }
    static Elem one() { return ZZ(1); }
    Elem reduce(const Elem& x) const { return zz_mod(x, modulus); }
    static const char* name() { return "residues"; }
};

inline ModRing make_mod_ring(long p, int m) {
    ModRing r;
    r.p = p;
    r.m = m;
    r.modulus = zz_pow(p, (unsigned long)m);
    return r;
}

template <class R>
struct Series {
    R ring;
    int B = 0;
    std::vector<typename R::Elem> c;  // c[0..B]

    Series() = default;
    Series(R rg, int order) : ring(rg), B(order), c((size_t)order + 1, R::zero()) {}

    typename R::Elem coeff(int i) const { return i <= B ? c[(size_t)i] : R::zero(); }

    bool operator==(const Series& o) const { return B == o.B && c == o.c; }
};

using SeriesQ = Series<QRing>;
using SeriesZ = Series<ZRing>;
using SeriesMod = Series<ModRing>;

template <class R>
Series<R> series_one(R ring, int B) {
    Series<R> s(ring, B);
    s.c[0] = ring.reduce(R::one());
    return s;
}

template <class R>
Series<R> series_mul(const Series<R>& f, const Series<R>& g) {
    require(f.B == g.B, "series order mismatch");
    Series<R> r(f.ring, f.B);
    for (int i = 0; i <= f.B; ++i) {
        if (f.c[i] == R::zero()) continue;
        for (int j = 0; i + j <= f.B; ++j) {
            if (g.c[j] == R::zero()) continue;
            r.c[i + j] = f.ring.reduce(r.c[i + j] + f.c[i] * g.c[j]);
        }
    }
    return r;
}

// c0 must be 1
template <class R>
Series<R> series_inverse(const Series<R>& f) {
    if (f.c[0] != R::one()) throw InputError("series inverse requires constant term 1");
    Series<R> r(f.ring, f.B);
    r.c[0] = R::one();
    for (int n = 1; n <= f.B; ++n) {
        typename R::Elem acc = R::zero();
        for (int j = 1; j <= n; ++j) acc = acc + f.c[j] * r.c[n - j];
        r.c[n] = f.ring.reduce(-acc);
    }
    return r;
}

template <class R>
Series<R> series_div(const Series<R>& f, const Series<R>& g) {
    return series_mul(f, series_inverse(g));
}

// T -> T^e within the same truncation order
template <class R>
Series<R> series_substitute_power(const Series<R>& f, int e) {
    require(e >= 1, "substitution exponent must be positive");
    Series<R> r(f.ring, f.B);
    for (int i = 0; i * e <= f.B; ++i) r.c[(size_t)(i * e)] = f.c[i];
    return r;
}

SeriesQ series_exp(const SeriesQ& s);  // requires c0 = 0
SeriesQ series_log(const SeriesQ& s);  // requires c0 = 1

SeriesQ to_rational_series(const SeriesZ& s);
// asserts every coefficient is integral
SeriesZ to_integer_series(const SeriesQ& s, const char* what = "series");
SeriesMod reduce_series(const SeriesZ& s, const ModRing& ring);

// Z(X,T) = exp(sum N_k T^k / k) to order B = #counts; integral by the Euler
// product, and the integrality is asserted.
SeriesZ zeta_series_from_counts(const PointCountSequence& counts);

// Product of local(T^e) over the factor list, truncated at B. Local factors
// must have constant term 1; factors with e > B cannot contribute.
template <class R>
Series<R> euler_assemble(const std::vector<std::pair<int, Series<R>>>& factors, R ring, int B) {
    Series<R> acc = series_one(ring, B);
    for (const auto& [e, local] : factors) {
        if (local.c[0] != R::one()) throw InputError("euler_assemble: local factor constant term must be 1");
        if (e > B) continue;
        // bring local to order B, substitute, multiply
        Series<R> ext(ring, B);
        for (int i = 0; i <= std::min(local.B, B); ++i) ext.c[i] = local.c[i];
        acc = series_mul(acc, series_substitute_power(ext, e));
    }
    return acc;
}

}  // namespace zetakit
