#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "zetakit/errors.hpp"

namespace zetakit {

using ZZ = mpz_class;
using QQ = mpq_class;

inline ZZ zz_pow(const ZZ& base, unsigned long e) {
    ZZ r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline ZZ zz_pow(long base, unsigned long e) { return zz_pow(ZZ(base), e); }

// ord_p(n); n must be nonzero.
inline long valuation(ZZ n, const ZZ& p) {
    require(n != 0, "valuation of zero requested");
    long v = 0;
    ZZ q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        n = q;
        ++v;
    }
}

inline ZZ zz_mod(const ZZ& a, const ZZ& m) {
    ZZ r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline ZZ zz_invmod(const ZZ& a, const ZZ& m) {
    ZZ r;
    int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    require(ok != 0, "element not invertible modulo " + m.get_str());
    return r;
}

inline ZZ zz_gcd(const ZZ& a, const ZZ& b) {
    ZZ r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline ZZ zz_lcm(const ZZ& a, const ZZ& b) {
    ZZ r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline ZZ binomial(unsigned long n, unsigned long k) {
    ZZ r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline bool is_prime(const ZZ& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }
inline bool is_prime(long n) { return is_prime(ZZ(n)); }

// Exact integer extraction; errors if q is not integral.
inline ZZ to_integer(const QQ& q, const char* what) {
    if (q.get_den() != 1) throw InvariantError(std::string(what) + ": value " + q.get_str() + " is not an integer");
    return q.get_num();
}

inline std::string qq_str(const QQ& q) { return q.get_str(); }

// Reduced fraction helper for slopes and polygon arithmetic.
inline QQ make_qq(const ZZ& num, const ZZ& den) {
    QQ r(num, den);
    r.canonicalize();
    return r;
}

inline QQ make_qq(long num, long den) { return make_qq(ZZ(num), ZZ(den)); }

// Primes dividing n, smallest first.
inline std::vector<long> prime_factors(long n) {
    std::vector<long> fs;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

inline long mobius(long n) {
    long mu = 1;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace zetakit
