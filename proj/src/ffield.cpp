#include "zetakit/ffield.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "zetakit/fpoly.hpp"

namespace zetakit {

namespace {

// ---- dense univariate arithmetic over F_p, used for modulus search and
// inversion; coefficients ascending, no trailing zeros ----

using PolyP = std::vector<long>;

void ptrim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP pmul(const PolyP& f, const PolyP& g, long p) {
    if (f.empty() || g.empty()) return {};
    PolyP r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (!f[i]) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = (r[i + j] + f[i] * g[j]) % p;
    }
    ptrim(r);
    return r;
}

// f mod g, g monic
PolyP pmod(PolyP f, const PolyP& g, long p) {
    ptrim(f);
    while (f.size() >= g.size()) {
        long c = f.back();
        size_t shift = f.size() - g.size();
        if (c) {
            for (size_t i = 0; i < g.size(); ++i) {
                long& t = f[i + shift];
                t = (t - c * g[i]) % p;
                if (t < 0) t += p;
            }
        }
        f.pop_back();
        ptrim(f);
    }
    return f;
}

PolyP pgcd(PolyP f, PolyP g, long p) {
    ptrim(f);
    ptrim(g);
    while (!g.empty()) {
        // make g monic
        long inv = 1;
        {
            long lc = g.back(), t = 1, base = lc, e = p - 2;
            while (e) {
                if (e & 1) t = t * base % p;
                base = base * base % p;
                e >>= 1;
            }
            inv = t;
        }
        for (long& c : g) c = c * inv % p;
        PolyP r = pmod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    return f;
}

PolyP ppowmod(PolyP base, ZZ e, const PolyP& m, long p) {
    PolyP r = {1};
    base = pmod(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = pmod(pmul(r, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

struct Registry {
    std::mutex mtx;
    std::map<std::pair<long, int>, Field> fields;
    std::map<std::tuple<long, int, int>, Coords> embeddings;
    std::map<std::pair<const FieldDescriptor*, int>, std::shared_ptr<const std::vector<long>>> frobmats;
    std::map<const FieldDescriptor*, std::shared_ptr<const std::vector<uint8_t>>> sqtabs;
};

Registry& reg() {
    static Registry r;
    return r;
}

constexpr long kSquareTableCap = 1L << 24;

}  // namespace

bool is_irreducible_mod_p(const std::vector<long>& f, long p) {
    // Rabin: x^{p^a} = x mod f, and gcd(x^{p^{a/r}} - x, f) = 1 for prime r | a.
    int a = (int)f.size() - 1;
    if (a < 1) return false;
    if (a == 1) return true;
    PolyP x = {0, 1};
    for (long r : prime_factors(a)) {
        ZZ e = zz_pow(p, (unsigned long)(a / r));
        PolyP h = ppowmod(x, e, f, p);
        // h - x
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] - 1 + p) % p;
        ptrim(h);
        PolyP g = pgcd(f, h, p);
        if (g.size() != 1) return false;
    }
    PolyP h = ppowmod(x, zz_pow(p, (unsigned long)a), f, p);
    if (h.size() < 2) h.resize(2, 0);
    h[1] = (h[1] - 1 + p) % p;
    ptrim(h);
    return h.empty();
}

Field make_extension_field(long p, int a) {
    if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
    if (a < 1) throw InputError("extension degree must be >= 1");
    auto& R = reg();
    std::lock_guard<std::mutex> lock(R.mtx);
    auto key = std::make_pair(p, a);
    auto it = R.fields.find(key);
    if (it != R.fields.end()) return it->second;

    // q must stay within long range for element indexing; enumeration-scale
    // limits are enforced separately by the candidate budget
    ZZ qz = zz_pow(p, (unsigned long)a);
    if (qz > ZZ(1) << 50) throw BudgetError("field F_{" + std::to_string(p) + "^" + std::to_string(a) + "} is beyond desk scale");

    auto K = std::make_shared<FieldDescriptor>();
    K->p = p;
    K->a = a;
    K->q = qz.get_si();

    // scan candidates in lexicographic order, highest-degree coefficient most
    // significant, so the choice is deterministic; irreducibles have density
    // about 1/a so the scan ends almost immediately
    std::vector<long> f(a + 1, 0);
    f[a] = 1;
    bool found = false;
    long scan_cap = std::min<long>(K->q, 1L << 20);
    for (long v = 0; v < scan_cap; ++v) {
        long t = v;
        for (int i = 0; i < a; ++i) {
            f[i] = t % p;
            t /= p;
        }
        if (a == 1 || is_irreducible_mod_p(f, p)) {
            found = true;
            break;
        }
    }
    require(found, "no irreducible modulus found");
    K->modulus = f;

    // reduction rows: x^{a+i} mod modulus
    if (a > 1) {
        PolyP cur(f.begin(), f.end() - 1);  // x^a = -lower part
        for (long& c : cur) c = (p - c) % p;
        cur.resize(a, 0);
        for (int i = 0; i + 1 < a; ++i) {
            K->redrows.push_back(cur);
            // multiply by x, reduce
            PolyP nxt(a, 0);
            long top = cur[a - 1];
            for (int j = a - 1; j > 0; --j) nxt[j] = cur[j - 1];
            nxt[0] = 0;
            if (top) {
                for (int j = 0; j < a; ++j) nxt[j] = (nxt[j] + top * K->redrows[0][j]) % p;
            }
            cur = nxt;
        }
    }

    Field field = K;
    R.fields[key] = field;
    return field;
}

void fx_add(const FieldDescriptor& K, const Coords& x, const Coords& y, Coords& out) {
    out.resize(K.a);
    for (int i = 0; i < K.a; ++i) {
        long v = x[i] + y[i];
        out[i] = v >= K.p ? v - K.p : v;
    }
}

void fx_sub(const FieldDescriptor& K, const Coords& x, const Coords& y, Coords& out) {
    out.resize(K.a);
    for (int i = 0; i < K.a; ++i) {
        long v = x[i] - y[i];
        out[i] = v < 0 ? v + K.p : v;
    }
}

void fx_neg(const FieldDescriptor& K, const Coords& x, Coords& out) {
    out.resize(K.a);
    for (int i = 0; i < K.a; ++i) out[i] = x[i] ? K.p - x[i] : 0;
}

void fx_mul_into(const FieldDescriptor& K, const Coords& x, const Coords& y, Coords& out,
                 std::vector<long>& scratch) {
    const int a = K.a;
    if (a == 1) {
        out.resize(1);
        out[0] = x[0] * y[0] % K.p;
        return;
    }
    // accumulate without intermediate reductions; the magnitudes stay below
    // a * p^2 * p, far under the long range for desk-scale fields
    scratch.assign(2 * a - 1, 0);
    for (int i = 0; i < a; ++i) {
        const long xi = x[i];
        if (!xi) continue;
        for (int j = 0; j < a; ++j) scratch[i + j] += xi * y[j];
    }
    out.resize(a);
    for (int i = a; i < 2 * a - 1; ++i) {
        long c = scratch[i] % K.p;
        if (!c) continue;
        const auto& row = K.redrows[i - a];
        for (int j = 0; j < a; ++j) scratch[j] += c * row[j];
    }
    for (int i = 0; i < a; ++i) out[i] = scratch[i] % K.p;
}

Coords fx_mul(const FieldDescriptor& K, const Coords& x, const Coords& y) {
    Coords out;
    std::vector<long> scratch;
    fx_mul_into(K, x, y, out, scratch);
    return out;
}

Coords fx_pow(const FieldDescriptor& K, Coords base, long e) {
    require(e >= 0, "negative exponent in fx_pow");
    Coords r = fx_one(K);
    std::vector<long> scratch;
    Coords tmp;
    while (e) {
        if (e & 1) {
            fx_mul_into(K, r, base, tmp, scratch);
            r = tmp;
        }
        fx_mul_into(K, base, base, tmp, scratch);
        base = tmp;
        e >>= 1;
    }
    return r;
}

Coords fx_inv(const FieldDescriptor& K, const Coords& x) {
    require(!fx_is_zero(x), "inverse of zero");
    // extended Euclid in F_p[t] against the modulus
    long p = K.p;
    PolyP r0(K.modulus.begin(), K.modulus.end());
    PolyP r1(x.begin(), x.end());
    ptrim(r1);
    PolyP s0 = {}, s1 = {1};
    auto scalar_inv = [p](long c) {
        long t = 1, base = c % p, e = p - 2;
        while (e) {
            if (e & 1) t = t * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return t;
    };
    while (r1.size() > 1) {
        // divide r0 by r1
        long inv = scalar_inv(r1.back());
        PolyP q(r0.size() > r1.size() - 1 ? r0.size() - r1.size() + 1 : 0, 0);
        PolyP rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            long c = rem.back() * inv % p;
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i) {
                long& t = rem[i + shift];
                t = (t - c * r1[i]) % p;
                if (t < 0) t += p;
            }
            ptrim(rem);
        }
        // s_{k+1} = s_{k-1} - q s_k
        PolyP qs = pmul(q, s1, p);
        PolyP s2(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s2.size(); ++i) {
            long v = (i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0);
            s2[i] = ((v % p) + p) % p;
        }
        ptrim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty()) break;
    }
    // gcd is the last nonzero remainder; its Bezout coefficient gives the inverse
    const PolyP& g = r1.empty() ? r0 : r1;
    const PolyP& s = r1.empty() ? s0 : s1;
    require(g.size() == 1, "gcd with modulus not a unit");
    long inv = scalar_inv(g[0]);
    Coords out(K.a, 0);
    for (size_t i = 0; i < s.size(); ++i) out[i] = s[i] * inv % p;
    return out;
}

Coords fx_from_int(const FieldDescriptor& K, const ZZ& n) {
    Coords c(K.a, 0);
    c[0] = zz_mod(n, ZZ(K.p)).get_si();
    return c;
}

long fx_index(const FieldDescriptor& K, const Coords& x) {
    long idx = 0;
    for (int i = K.a - 1; i >= 0; --i) idx = idx * K.p + x[i];
    return idx;
}

Coords fx_element(const FieldDescriptor& K, long index) {
    Coords c(K.a, 0);
    fx_element_into(K, index, c);
    return c;
}

void fx_element_into(const FieldDescriptor& K, long index, Coords& out) {
    out.resize(K.a);
    for (int i = 0; i < K.a; ++i) {
        out[i] = index % K.p;
        index /= K.p;
    }
}

FieldElement fe_add(const FieldElement& x, const FieldElement& y) {
    require(x.owner == y.owner, "field mismatch");
    Coords out;
    fx_add(*x.owner, x.coords, y.coords, out);
    return {x.owner, out};
}

FieldElement fe_sub(const FieldElement& x, const FieldElement& y) {
    require(x.owner == y.owner, "field mismatch");
    Coords out;
    fx_sub(*x.owner, x.coords, y.coords, out);
    return {x.owner, out};
}

FieldElement fe_mul(const FieldElement& x, const FieldElement& y) {
    require(x.owner == y.owner, "field mismatch");
    return {x.owner, fx_mul(*x.owner, x.coords, y.coords)};
}

FieldElement fe_inv(const FieldElement& x) { return {x.owner, fx_inv(*x.owner, x.coords)}; }

FieldElement fe_pow(const FieldElement& x, long e) {
    if (e < 0) return fe_pow(fe_inv(x), -e);
    return {x.owner, fx_pow(*x.owner, x.coords, e)};
}

FieldElement frobenius_map(const FieldElement& e, long steps, int base_a) {
    const auto& K = *e.owner;
    int ba = base_a > 0 ? base_a : K.a;
    require(K.a % ba == 0, "frobenius base field is not a subfield");
    long q = zz_pow(K.p, (unsigned long)ba).get_si();
    Coords cur = e.coords;
    for (long s = 0; s < steps; ++s) cur = fx_pow(K, cur, q);
    return {e.owner, cur};
}

namespace {

// deterministic Cantor-Zassenhaus root extraction for odd characteristic:
// m splits completely over K, find one root
Coords cz_root(const Field& k, const std::vector<long>& modulus_small) {
    const auto& K = *k;
    require(K.p != 2, "char-2 splitting requires the brute-force path");
    FPoly f;
    for (long c : modulus_small) f.push_back(fx_from_int(K, ZZ(c)));
    f = fp_monic(K, std::move(f));
    ZZ half = (ZZ(K.q) - 1) / 2;
    long salt = 1;
    while (f.size() > 2) {
        FPoly shifted = {fx_element(K, salt), fx_one(K)};  // z + c
        FPoly h = fp_powmod(K, shifted, half, f);
        if (h.empty()) h = {fx_zero(K)};
        Coords h0;
        fx_sub(K, h[0], fx_one(K), h0);
        h[0] = h0;
        fp_trim(h);
        if (!h.empty()) {
            FPoly g = fp_gcd(K, f, h);
            if (g.size() > 1 && g.size() < f.size()) f = g;
        }
        ++salt;
        require(salt < K.q, "root splitting failed to converge");
    }
    require(f.size() == 2, "splitting terminated without a linear factor");
    Coords root;
    fx_neg(K, f[0], root);
    return root;
}

}  // namespace

Coords embedding_generator_image(long p, int a_small, int a_big) {
    require(a_big % a_small == 0, "embedding target is not an extension");
    auto& R = reg();
    {
        std::lock_guard<std::mutex> lock(R.mtx);
        auto it = R.embeddings.find({p, a_small, a_big});
        if (it != R.embeddings.end()) return it->second;
    }
    Field small = make_extension_field(p, a_small);
    Field big = make_extension_field(p, a_big);
    Coords image;
    if (a_small == a_big) {
        image = fx_element(*big, a_big == 1 ? 0 : p);  // the generator x itself (index p); 0 for prime field
        if (a_big == 1) image = fx_zero(*big);
    } else if (big->q <= (1L << 21)) {
        // brute scan
        bool found = false;
        std::vector<long> scratch;
        for (long i = 0; i < big->q; ++i) {
            Coords cand = fx_element(*big, i);
            // evaluate small modulus at cand
            Coords acc = fx_zero(*big);
            Coords t;
            for (int d = a_small; d >= 0; --d) {
                fx_mul_into(*big, acc, cand, t, scratch);
                t[0] = (t[0] + small->modulus[d]) % p;
                acc = t;
            }
            if (fx_is_zero(acc)) {
                image = cand;
                found = true;
                break;
            }
        }
        require(found, "no root of subfield modulus found");
    } else {
        image = cz_root(big, small->modulus);
    }
    std::lock_guard<std::mutex> lock(R.mtx);
    R.embeddings[{p, a_small, a_big}] = image;
    return image;
}

Coords embed_coords(long p, int a_small, int a_big, const Coords& x) {
    if (a_small == a_big) return x;
    Field big = make_extension_field(p, a_big);
    Coords g = embedding_generator_image(p, a_small, a_big);
    // Horner over the big field
    Coords acc = fx_zero(*big);
    Coords t;
    std::vector<long> scratch;
    for (int i = a_small - 1; i >= 0; --i) {
        fx_mul_into(*big, acc, g, t, scratch);
        t[0] = (t[0] + x[i]) % p;
        acc = t;
    }
    return acc;
}

std::shared_ptr<const std::vector<uint8_t>> squares_table(const Field& k) {
    if (k->p == 2 || k->q > kSquareTableCap) return nullptr;
    auto& R = reg();
    {
        std::lock_guard<std::mutex> lock(R.mtx);
        auto it = R.sqtabs.find(k.get());
        if (it != R.sqtabs.end()) return it->second;
    }
    auto tab = std::make_shared<std::vector<uint8_t>>(k->q, 0);
    const auto& K = *k;
    std::vector<long> scratch;
    Coords sq;
    for (long i = 0; i < K.q; ++i) {
        Coords e = fx_element(K, i);
        fx_mul_into(K, e, e, sq, scratch);
        ++(*tab)[fx_index(K, sq)];
    }
    std::lock_guard<std::mutex> lock(R.mtx);
    R.sqtabs[k.get()] = tab;
    return tab;
}

std::shared_ptr<const std::vector<long>> frobenius_matrix(const Field& k, int base_a) {
    auto& R = reg();
    {
        std::lock_guard<std::mutex> lock(R.mtx);
        auto it = R.frobmats.find({k.get(), base_a});
        if (it != R.frobmats.end()) return it->second;
    }
    const auto& K = *k;
    long q = zz_pow(K.p, (unsigned long)base_a).get_si();
    auto mat = std::make_shared<std::vector<long>>((size_t)K.a * K.a, 0);
    for (int j = 0; j < K.a; ++j) {
        Coords basis(K.a, 0);
        basis[j] = 1;
        Coords img = fx_pow(K, basis, q);
        for (int i = 0; i < K.a; ++i) (*mat)[(size_t)j * K.a + i] = img[i];
    }
    std::lock_guard<std::mutex> lock(R.mtx);
    R.frobmats[{k.get(), base_a}] = mat;
    return mat;
}

void apply_matrix(const FieldDescriptor& K, const std::vector<long>& mat, const Coords& x, Coords& out) {
    out.assign(K.a, 0);
    for (int j = 0; j < K.a; ++j) {
        if (!x[j]) continue;
        for (int i = 0; i < K.a; ++i) out[i] += x[j] * mat[(size_t)j * K.a + i];
    }
    for (int i = 0; i < K.a; ++i) out[i] %= K.p;
}

}  // namespace zetakit
