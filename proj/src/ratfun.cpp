#include "zetakit/ratfun.hpp"

#include <sstream>

namespace zetakit {

PolyZ pz_one() { return {ZZ(1)}; }

PolyZ pz_mul(const PolyZ& f, const PolyZ& g) {
    if (f.empty() || g.empty()) return {};
    PolyZ r(f.size() + g.size() - 1, ZZ(0));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    }
    pz_trim(r);
    return r;
}

std::string pz_str(const PolyZ& f) {
    std::ostringstream out;
    out << "[";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) out << ",";
        out << f[i].get_str();
    }
    out << "]";
    return out.str();
}

void pq_trim(PolyQ& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyQ pq_from_z(const PolyZ& f) {
    PolyQ r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = QQ(f[i]);
    return r;
}

// remainder of f by g over Q
PolyQ pq_rem(PolyQ f, const PolyQ& g) {
    pq_trim(f);
    while (f.size() >= g.size() && !f.empty()) {
        QQ c = f.back() / g.back();
        size_t shift = f.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i) f[i + shift] -= c * g[i];
        f.pop_back();
        pq_trim(f);
    }
    return f;
}

PolyQ pq_gcd(PolyQ f, PolyQ g) {
    pq_trim(f);
    pq_trim(g);
    while (!g.empty()) {
        PolyQ r = pq_rem(f, g);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        QQ lead = f.back();
        for (auto& c : f) c /= lead;
    }
    return f;
}

PolyQ pq_divexact(const PolyQ& f, const PolyQ& g) {
    PolyQ rem = f;
    pq_trim(rem);
    PolyQ q(rem.size() >= g.size() ? rem.size() - g.size() + 1 : 0, QQ(0));
    while (rem.size() >= g.size() && !rem.empty()) {
        QQ c = rem.back() / g.back();
        size_t shift = rem.size() - g.size();
        q[shift] = c;
        for (size_t i = 0; i < g.size(); ++i) rem[i + shift] -= c * g[i];
        pq_trim(rem);
    }
    require(rem.empty(), "inexact polynomial division");
    return q;
}

PolyQ pq_derivative(const PolyQ& f) {
    if (f.size() <= 1) return {};
    PolyQ d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = QQ((long)i) * f[i];
    pq_trim(d);
    return d;
}

RationalFunctionZ make_rational_function(PolyZ num, PolyZ den) {
    pz_trim(num);
    pz_trim(den);
    if (num.empty() || den.empty()) throw InputError("rational function numerator/denominator must be nonzero");
    PolyQ n = pq_from_z(num), d = pq_from_z(den);
    PolyQ g = pq_gcd(n, d);
    if (g.size() > 1) {
        n = pq_divexact(n, g);
        d = pq_divexact(d, g);
    }
    if (n[0] == 0 || d[0] == 0) throw InputError("rational function requires nonzero constant terms");
    // constant terms must agree for both to normalize to 1 without changing
    // the function; R(0) = 1 guarantees it
    if (n[0] != d[0]) throw InputError("rational function does not have value 1 at T = 0");
    QQ scale = n[0];
    RationalFunctionZ R;
    R.num.clear();
    R.den.clear();
    for (auto& c : n) {
        QQ v = c / scale;
        R.num.push_back(to_integer(v, "rational function numerator"));
    }
    for (auto& c : d) {
        QQ v = c / scale;
        R.den.push_back(to_integer(v, "rational function denominator"));
    }
    pz_trim(R.num);
    pz_trim(R.den);
    return R;
}

SeriesZ expand_rational(const RationalFunctionZ& R, int B) {
    SeriesZ num(ZRing{}, B), den(ZRing{}, B);
    for (size_t i = 0; i < R.num.size() && (int)i <= B; ++i) num.c[i] = R.num[i];
    for (size_t i = 0; i < R.den.size() && (int)i <= B; ++i) den.c[i] = R.den[i];
    return series_mul(num, series_inverse(den));
}

namespace {

// Reduced row echelon form over Q; returns false when inconsistent.
// Solution with free variables set to zero is written to sol.
bool solve_linear(std::vector<std::vector<QQ>> M, std::vector<QQ>& rhs, std::vector<QQ>& sol) {
    size_t rows = M.size();
    size_t cols = rows ? M[0].size() : 0;
    sol.assign(cols, QQ(0));
    std::vector<long> pivot_col(rows, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && M[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[r]);
        std::swap(rhs[piv], rhs[r]);
        QQ inv = QQ(1) / M[r][c];
        for (size_t j = c; j < cols; ++j) M[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            QQ f = M[i][c];
            for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col[r] = (long)c;
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return false;
    for (size_t i = 0; i < r; ++i) sol[(size_t)pivot_col[i]] = rhs[i];
    return true;
}

}  // namespace

ReconstructionReport reconstruct_rational(const std::vector<QQ>& c, int dn_max, int dd_max, int guard) {
    if (guard < 1) throw UsageError("reconstruction without a guard window is refused");
    int B = (int)c.size() - 1;
    if (B < dn_max + dd_max + guard)
        throw UsageError("insufficient truncation: B = " + std::to_string(B) + " < dn_max + dd_max + guard = " +
                         std::to_string(dn_max + dd_max + guard));
    if (c.empty() || c[0] != 1) throw InputError("reconstruction requires constant term 1");

    auto window = [&](const std::vector<QQ>& b, int from) {
        // convolution sum_{j} b_j c_{i-j} for i = from..B must vanish
        for (int i = from; i <= B; ++i) {
            QQ acc(0);
            for (int j = 0; j < (int)b.size() && j <= i; ++j) acc += b[j] * c[i - j];
            if (acc != 0) return false;
        }
        return true;
    };

    for (int t = 0; t <= dn_max + dd_max; ++t) {
        for (int dd = std::max(0, t - dn_max); dd <= std::min(t, dd_max); ++dd) {
            int dn = t - dd;
            // unknowns b_1..b_dd; rows i = dn+1..dn+dd:
            //   sum_{j=1}^{dd} c_{i-j} b_j = -c_i
            std::vector<std::vector<QQ>> M(dd, std::vector<QQ>(dd, QQ(0)));
            std::vector<QQ> rhs(dd), sol;
            for (int row = 0; row < dd; ++row) {
                int i = dn + 1 + row;
                for (int j = 1; j <= dd; ++j) M[row][j - 1] = (i - j >= 0) ? c[i - j] : QQ(0);
                rhs[row] = -c[i];
            }
            if (!solve_linear(std::move(M), rhs, sol)) continue;
            std::vector<QQ> b(dd + 1);
            b[0] = 1;
            for (int j = 1; j <= dd; ++j) b[j] = sol[j - 1];
            if (!window(b, dn + 1)) continue;
            // numerator coefficients
            PolyQ num(dn + 1);
            for (int i = 0; i <= dn; ++i) {
                QQ acc(0);
                for (int j = 0; j <= std::min(i, dd); ++j) acc += b[j] * c[i - j];
                num[i] = acc;
            }
            // spurious non-minimal candidates can come out rational; the
            // minimal match of an integer series is integral (Fatou)
            bool integral = true;
            for (auto& v : num)
                if (v.get_den() != 1) integral = false;
            for (auto& v : b)
                if (v.get_den() != 1) integral = false;
            if (!integral) continue;
            PolyZ numz, denz;
            for (auto& v : num) numz.push_back(v.get_num());
            for (auto& v : b) denz.push_back(v.get_num());
            ReconstructionReport rep;
            rep.result = make_rational_function(numz, denz);
            rep.used_coeffs = dn + dd + 1;
            rep.guard_checked = B - (dn + dd);
            return rep;
        }
    }
    ReconstructionReport rep;
    rep.used_coeffs = dn_max + dd_max + 1;
    rep.guard_checked = guard;
    return rep;
}

ReconstructionReport reconstruct_rational(const SeriesZ& s, int dn_max, int dd_max, int guard) {
    std::vector<QQ> c(s.c.size());
    for (size_t i = 0; i < s.c.size(); ++i) c[i] = QQ(s.c[i]);
    return reconstruct_rational(c, dn_max, dd_max, guard);
}

std::vector<ZZ> power_sums(const PolyZ& g, long upto) {
    long d = pz_deg(g);
    require(!g.empty() && g[0] == 1, "power sums require constant term 1");
    std::vector<ZZ> s((size_t)upto + 1, ZZ(0));
    for (long k = 1; k <= upto; ++k) {
        ZZ acc = 0;
        if (k <= d) acc = -ZZ(k) * g[(size_t)k];
        for (long i = 1; i < k && i <= d; ++i) acc -= g[(size_t)i] * s[(size_t)(k - i)];
        s[(size_t)k] = acc;
    }
    return s;
}

ZZ power_sum_at(const PolyZ& g, long k) { return power_sums(g, k)[(size_t)k]; }

ZZ counts_from_rational(const RationalFunctionZ& R, long k) {
    require(k >= 1, "counts_from_rational requires k >= 1");
    return power_sum_at(R.den, k) - power_sum_at(R.num, k);
}

namespace {

using Mat = std::vector<std::vector<ZZ>>;

Mat mat_mul(const Mat& A, const Mat& B) {
    size_t n = A.size();
    Mat C(n, std::vector<ZZ>(n, ZZ(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (A[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

Mat mat_pow(Mat A, long e) {
    size_t n = A.size();
    Mat R(n, std::vector<ZZ>(n, ZZ(0)));
    for (size_t i = 0; i < n; ++i) R[i][i] = 1;
    while (e) {
        if (e & 1) R = mat_mul(R, A);
        A = mat_mul(A, A);
        e >>= 1;
    }
    return R;
}

// Berkowitz division-free characteristic polynomial; returns coefficients
// with vec[i] = coefficient of x^{n-i} (vec[0] = 1).
std::vector<ZZ> charpoly(const Mat& A) {
    size_t n = A.size();
    std::vector<ZZ> vec = {ZZ(1), -A[0][0]};
    for (size_t r = 1; r < n; ++r) {
        // S_j = row . (A_r)^j . col over the leading r x r block
        std::vector<ZZ> col(r), row(r);
        for (size_t i = 0; i < r; ++i) {
            col[i] = A[i][r];
            row[i] = A[r][i];
        }
        std::vector<ZZ> S(r);
        std::vector<ZZ> tmp = col;
        for (size_t j = 0; j < r; ++j) {
            ZZ dot = 0;
            for (size_t i = 0; i < r; ++i) dot += row[i] * tmp[i];
            S[j] = dot;
            if (j + 1 < r) {
                std::vector<ZZ> nxt(r, ZZ(0));
                for (size_t i = 0; i < r; ++i) {
                    if (tmp[i] == 0) continue;
                    for (size_t k = 0; k < r; ++k) nxt[k] += A[k][i] * tmp[i];
                }
                tmp = std::move(nxt);
            }
        }
        std::vector<ZZ> first_col(r + 2, ZZ(0));
        first_col[0] = 1;
        first_col[1] = -A[r][r];
        for (size_t j = 0; j < r; ++j) first_col[j + 2] = -S[j];
        std::vector<ZZ> next(r + 2, ZZ(0));
        for (size_t i = 0; i < r + 2; ++i)
            for (size_t j = 0; j < vec.size() && j <= i; ++j) next[i] += first_col[i - j] * vec[j];
        vec = std::move(next);
    }
    return vec;
}

}  // namespace

PolyZ adams_transform(const PolyZ& g, long k) {
    require(k >= 1, "adams exponent must be positive");
    PolyZ f = g;
    pz_trim(f);
    require(!f.empty() && f[0] == 1, "adams_transform requires g(0) = 1");
    long d = pz_deg(f);
    if (d == 0) return pz_one();
    if (k == 1) return f;
    // companion matrix of x^d + g_1 x^{d-1} + ... + g_d
    Mat C((size_t)d, std::vector<ZZ>((size_t)d, ZZ(0)));
    for (long i = 1; i < d; ++i) C[(size_t)i][(size_t)(i - 1)] = 1;
    for (long i = 0; i < d; ++i) C[(size_t)i][(size_t)(d - 1)] = -f[(size_t)(d - i)];
    Mat M = mat_pow(std::move(C), k);
    // det(I - TM) = T^d chi_M(1/T): ascending coefficients are the charpoly
    // coefficients from the leading one down
    std::vector<ZZ> vec = charpoly(M);
    PolyZ out(vec.begin(), vec.end());
    pz_trim(out);
    require(!out.empty() && out[0] == 1, "adams transform lost the constant term");
    return out;
}

}  // namespace zetakit
