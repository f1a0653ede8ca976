#include "zetakit/slope.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

namespace zetakit {

SlopeBase complex_base(long p, const QQ& base_exponent) { return {SlopeBase::Kind::Complex, p, base_exponent}; }
SlopeBase ladic_base(long ell, const QQ& base_exponent) { return {SlopeBase::Kind::LAdic, ell, base_exponent}; }
SlopeBase padic_base(long p, const QQ& base_exponent) { return {SlopeBase::Kind::PAdic, p, base_exponent}; }

namespace {

NewtonPolygon hull_of_points(const std::vector<std::pair<long, long>>& pts, const QQ& base_exponent) {
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& p1 = hull[hull.size() - 2];
            auto& p2 = hull[hull.size() - 1];
            // remove p2 when it lies on or above the segment p1 -> pt
            __int128 cross = (__int128)(p2.first - p1.first) * (pt.second - p1.second) -
                             (__int128)(p2.second - p1.second) * (pt.first - p1.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    NewtonPolygon np;
    for (size_t i = 1; i < hull.size(); ++i) {
        QQ slope = make_qq(hull[i].second - hull[i - 1].second, hull[i].first - hull[i - 1].first);
        slope /= base_exponent;
        np.segments.push_back({slope, hull[i].first - hull[i - 1].first});
    }
    return np;
}

}  // namespace

NewtonPolygon newton_polygon(const PolyZ& g_in, const SlopeBase& base) {
    require(base.kind != SlopeBase::Kind::Complex, "newton_polygon needs a non-archimedean base");
    PolyZ g = g_in;
    pz_trim(g);
    if (g.empty()) throw InputError("newton_polygon of the zero polynomial");
    if (g[0] == 0) throw InputError("newton_polygon requires a nonzero constant term");
    ZZ p(base.prime);
    std::vector<std::pair<long, long>> pts;
    for (size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        pts.push_back({(long)i, valuation(g[i], p)});
    }
    return hull_of_points(pts, base.base_exponent);
}

std::vector<std::pair<QQ, long>> polygon_slope_counts(const NewtonPolygon& np) { return np.segments; }

std::vector<QQ> polygon_y_values(const NewtonPolygon& np) {
    std::vector<QQ> ys = {QQ(0)};
    QQ y(0);
    for (const auto& [s, l] : np.segments)
        for (long i = 0; i < l; ++i) {
            y += s;
            ys.push_back(y);
        }
    return ys;
}

NewtonPolygon polygon_from_y_values(const std::vector<QQ>& ys) {
    require(!ys.empty(), "empty y-value list");
    std::vector<std::pair<long, QQ>> hull;
    for (long i = 0; i < (long)ys.size(); ++i) {
        std::pair<long, QQ> pt = {i, ys[(size_t)i]};
        while (hull.size() >= 2) {
            auto& p1 = hull[hull.size() - 2];
            auto& p2 = hull[hull.size() - 1];
            QQ cross = QQ(p2.first - p1.first) * (pt.second - p1.second) -
                       (p2.second - p1.second) * QQ(pt.first - p1.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    NewtonPolygon np;
    for (size_t i = 1; i < hull.size(); ++i) {
        QQ slope = (hull[i].second - hull[i - 1].second) / QQ(hull[i].first - hull[i - 1].first);
        np.segments.push_back({slope, hull[i].first - hull[i - 1].first});
    }
    return np;
}

bool ladic_unit_check(const RationalFunctionZ& R, long ell) {
    require(is_prime(ell), "ell must be prime");
    // constant terms are 1 and integer coefficients cannot dip below height
    // zero, so flatness is equivalent to unit leading coefficients
    ZZ l(ell);
    if (pz_deg(R.num) > 0 && valuation(R.num.back(), l) > 0) return false;
    if (pz_deg(R.den) > 0 && valuation(R.den.back(), l) > 0) return false;
    return true;
}

// ---- complex root machinery (verification layer only) ----

namespace {

// Yun squarefree decomposition over Q; returns (factor, multiplicity)
std::vector<std::pair<PolyQ, long>> squarefree_decomposition(const PolyQ& f_in) {
    PolyQ f = f_in;
    pq_trim(f);
    std::vector<std::pair<PolyQ, long>> out;
    if (f.size() <= 1) return out;
    PolyQ fp = pq_derivative(f);
    PolyQ a = pq_gcd(f, fp);
    if (a.size() <= 1) {
        out.push_back({f, 1});
        return out;
    }
    PolyQ b = pq_divexact(f, a);
    PolyQ c = pq_divexact(fp, a);
    long i = 1;
    while (b.size() > 1) {
        PolyQ bp = pq_derivative(b);
        PolyQ d(std::max(c.size(), bp.size()), QQ(0));
        for (size_t j = 0; j < d.size(); ++j)
            d[j] = (j < c.size() ? c[j] : QQ(0)) - (j < bp.size() ? bp[j] : QQ(0));
        pq_trim(d);
        PolyQ ai = pq_gcd(b, d);
        if (ai.size() > 1) out.push_back({ai, i});
        b = pq_divexact(b, ai.size() > 1 ? ai : PolyQ{QQ(1)});
        PolyQ divisor = ai.size() > 1 ? ai : PolyQ{QQ(1)};
        c = pq_divexact(d, divisor);
        ++i;
    }
    return out;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<double>& coeffs) {
    size_t d = coeffs.size() - 1;
    std::vector<std::complex<double>> z(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1.0, 0.0);
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::fabs(c));
    for (size_t i = 0; i < d; ++i) {
        acc *= seed;
        z[i] = acc;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v(0, 0);
        for (size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
        return v;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        double maxdelta = 0;
        for (size_t i = 0; i < d; ++i) {
            std::complex<double> num = eval(z[i]) / coeffs[d];
            std::complex<double> den(1, 0);
            for (size_t j = 0; j < d; ++j)
                if (j != i) den *= (z[i] - z[j]);
            std::complex<double> delta = num / den;
            z[i] -= delta;
            maxdelta = std::max(maxdelta, std::abs(delta));
        }
        if (maxdelta < 1e-15 * (1.0 + scale)) break;
    }
    // Newton polish
    auto deval = [&](std::complex<double> x) {
        std::complex<double> v(0, 0);
        for (size_t i = coeffs.size() - 1; i >= 1; --i) v = v * x + std::complex<double>((double)i * coeffs[i], 0);
        return v;
    };
    for (size_t i = 0; i < d; ++i)
        for (int it = 0; it < 3; ++it) {
            std::complex<double> fv = eval(z[i]), dv = deval(z[i]);
            if (std::abs(dv) > 1e-30) z[i] -= fv / dv;
        }
    return z;
}

}  // namespace

std::vector<std::pair<std::complex<double>, long>> complex_roots(const PolyZ& g_in) {
    PolyZ g = g_in;
    pz_trim(g);
    require(!g.empty(), "complex_roots of the zero polynomial");
    std::vector<std::pair<std::complex<double>, long>> out;
    if (g.size() == 1) return out;
    for (const auto& [factor, mult] : squarefree_decomposition(pq_from_z(g))) {
        std::vector<double> cd(factor.size());
        for (size_t i = 0; i < factor.size(); ++i) cd[i] = factor[i].get_d();
        for (auto z : durand_kerner(cd)) out.push_back({z, mult});
    }
    return out;
}

PureDegreeTable complex_weight_table(const RationalFunctionZ& R, int n, double tol, long p,
                                     const QQ& base_exponent) {
    require(tol > 0, "tolerance must be positive");
    double logq = mpq_get_d(base_exponent.get_mpq_t()) * std::log((double)p);
    std::map<QQ, std::pair<long, long>> clusters;  // slope -> (num count, den count)

    auto classify = [&](const PolyZ& poly, bool numerator) {
        auto roots = complex_roots(poly);
        std::map<QQ, std::vector<std::pair<std::complex<double>, long>>> by_slope;
        for (const auto& [t, mult] : roots) {
            double s = -std::log(std::abs(t)) / logq;
            double snapped2 = std::round(2.0 * s);
            QQ slope = make_qq((long)snapped2, 2);
            if (std::fabs(s - snapped2 / 2.0) > tol)
                throw InvariantError("complex slope " + std::to_string(s) +
                                     " is not within tolerance of a half-integer (|1/root| = " +
                                     std::to_string(1.0 / std::abs(t)) + ")");
            if (snapped2 < -0.5 || snapped2 > 2.0 * n + 0.5)
                throw InvariantError("complex slope " + std::to_string(s) + " falls outside [0, " +
                                     std::to_string(n) + "]");
            auto& row = clusters[slope];
            (numerator ? row.first : row.second) += mult;
            by_slope[slope].push_back({t, mult});
        }
        // each slope cluster must multiply back to a near-integer polynomial
        for (const auto& [slope, rts] : by_slope) {
            std::vector<std::complex<double>> poly_c = {1.0};
            for (const auto& [t, mult] : rts)
                for (long k = 0; k < mult; ++k) {
                    std::vector<std::complex<double>> nxt(poly_c.size() + 1, 0.0);
                    for (size_t i = 0; i < poly_c.size(); ++i) {
                        nxt[i] += poly_c[i];
                        nxt[i + 1] -= poly_c[i] / t;
                    }
                    poly_c = std::move(nxt);
                }
            for (const auto& co : poly_c) {
                double mscale = std::max(1.0, std::abs(co));
                if (std::fabs(co.imag()) > 1e-6 * mscale ||
                    std::fabs(co.real() - std::round(co.real())) > 1e-6 * mscale)
                    throw InvariantError("pure part at slope " + slope.get_str() +
                                         " does not have integer coefficients within tolerance");
            }
        }
    };
    classify(R.num, true);
    classify(R.den, false);

    PureDegreeTable table;
    ZZ denom_lcm(1);
    for (const auto& [slope, counts] : clusters) {
        table.rows.push_back({slope, counts.first - counts.second, counts.first + counts.second});
        denom_lcm = zz_lcm(denom_lcm, slope.get_den());
    }
    table.denominator_report = denom_lcm;
    return table;
}

PureDegreeTable pure_degrees(const RationalFunctionZ& R, const SlopeBase& base, std::optional<int> dim,
                             double tol) {
    if (base.kind == SlopeBase::Kind::Complex) {
        if (!dim) throw UsageError("complex pure degrees require the dimension");
        return complex_weight_table(R, *dim, tol, base.prime, base.base_exponent);
    }
    std::map<QQ, std::pair<long, long>> clusters;
    auto absorb = [&](const PolyZ& poly, bool numerator) {
        if (pz_deg(poly) == 0) return;
        NewtonPolygon np = newton_polygon(poly, base);
        for (const auto& [s, l] : np.segments) {
            auto& row = clusters[s];
            (numerator ? row.first : row.second) += l;
        }
    };
    absorb(R.num, true);
    absorb(R.den, false);
    PureDegreeTable table;
    ZZ denom_lcm(1);
    for (const auto& [slope, counts] : clusters) {
        if (dim && base.kind == SlopeBase::Kind::PAdic && (slope < 0 || slope > QQ(*dim)))
            throw InvariantError("p-adic slope " + slope.get_str() + " falls outside [0, " +
                                 std::to_string(*dim) + "]");
        table.rows.push_back({slope, counts.first - counts.second, counts.first + counts.second});
        denom_lcm = zz_lcm(denom_lcm, slope.get_den());
    }
    table.denominator_report = denom_lcm;
    long sum_d = 0, sum_D = 0;
    for (const auto& r : table.rows) {
        sum_d += r.d;
        sum_D += r.D;
    }
    require(sum_d == R.degree() && sum_D == R.total_degree(), "pure degree row sums violated");
    return table;
}

// ---- slope-pure factorization mod p^m ----

namespace {

// polynomials with ZZ coefficients reduced mod `mod`
using PolyM = std::vector<ZZ>;

void pm_red(PolyM& f, const ZZ& mod) {
    for (auto& c : f) c = zz_mod(c, mod);
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyM pm_mul(const PolyM& f, const PolyM& g, const ZZ& mod) {
    if (f.empty() || g.empty()) return {};
    PolyM r(f.size() + g.size() - 1, ZZ(0));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    }
    pm_red(r, mod);
    return r;
}

PolyM pm_add(const PolyM& f, const PolyM& g, const ZZ& mod) {
    PolyM r(std::max(f.size(), g.size()), ZZ(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < f.size()) r[i] += f[i];
        if (i < g.size()) r[i] += g[i];
    }
    pm_red(r, mod);
    return r;
}

PolyM pm_sub(const PolyM& f, const PolyM& g, const ZZ& mod) {
    PolyM r(std::max(f.size(), g.size()), ZZ(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < f.size()) r[i] += f[i];
        if (i < g.size()) r[i] -= g[i];
    }
    pm_red(r, mod);
    return r;
}

// division by a monic divisor over Z/mod
std::pair<PolyM, PolyM> pm_divmod_monic(PolyM f, const PolyM& g, const ZZ& mod) {
    pm_red(f, mod);
    require(!g.empty() && g.back() == 1, "pm_divmod_monic requires a monic divisor");
    if (f.size() < g.size()) return {{}, f};
    PolyM q(f.size() - g.size() + 1, ZZ(0));
    for (size_t k = f.size() - g.size() + 1; k-- > 0;) {
        size_t i = k + g.size() - 1;  // degree being eliminated
        if (i >= f.size()) continue;
        ZZ c = zz_mod(f[i], mod);
        if (c != 0) {
            q[k] = c;
            for (size_t j = 0; j < g.size(); ++j) f[k + j] -= c * g[j];
            for (size_t j = 0; j < g.size(); ++j) f[k + j] = zz_mod(f[k + j], mod);
        }
    }
    PolyM r(f.begin(), f.begin() + (long)g.size() - 1);
    pm_red(r, mod);
    PolyM qq = std::move(q);
    pm_red(qq, mod);
    return {qq, r};
}

// extended gcd over F_p for coprime (f, g): s f + t g = 1
std::pair<PolyM, PolyM> pm_extgcd_modp(const PolyM& f, const PolyM& g, const ZZ& p) {
    PolyM r0 = f, r1 = g;
    pm_red(r0, p);
    pm_red(r1, p);
    PolyM s0 = {ZZ(1)}, s1 = {};
    PolyM t0 = {}, t1 = {ZZ(1)};
    while (!r1.empty()) {
        ZZ lead_inv = zz_invmod(r1.back(), p);
        PolyM q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, ZZ(0));
        PolyM rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            ZZ c = zz_mod(rem.back() * lead_inv, p);
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= c * r1[j];
            pm_red(rem, p);
            if (rem.size() > shift + r1.size() - 1) rem.resize(shift + r1.size() - 1);
            pm_red(rem, p);
        }
        PolyM s2 = pm_sub(s0, pm_mul(q, s1, p), p);
        PolyM t2 = pm_sub(t0, pm_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    require(r0.size() == 1, "polynomials are not coprime mod p");
    ZZ inv = zz_invmod(r0[0], p);
    for (auto& c : s0) c = zz_mod(c * inv, p);
    for (auto& c : t0) c = zz_mod(c * inv, p);
    return {s0, t0};
}

// quadratic Hensel lifting of the monic coprime factorization W = A*B
// (mod p) to modulus p^M; A, B monic
std::pair<PolyM, PolyM> hensel_lift_pair(const PolyM& W, PolyM A, PolyM B, long p, long M) {
    ZZ pz(p);
    // Bezout: s B + t A = 1 mod p
    auto [s, t] = pm_extgcd_modp(B, A, pz);
    long k = 1;
    while (k < M) {
        long k2 = std::min(2 * k, M);
        ZZ mod = zz_pow(p, (unsigned long)k2);
        PolyM e = pm_sub(W, pm_mul(A, B, mod), mod);
        // s e = q A + r; B* = B + t e + q B, A* = A + r
        auto [q, r] = pm_divmod_monic(pm_mul(s, e, mod), A, mod);
        PolyM Bstar = pm_add(B, pm_add(pm_mul(t, e, mod), pm_mul(q, B, mod), mod), mod);
        PolyM Astar = pm_add(A, r, mod);
        PolyM b = pm_sub(pm_add(pm_mul(s, Bstar, mod), pm_mul(t, Astar, mod), mod), PolyM{ZZ(1)}, mod);
        auto [c, dd] = pm_divmod_monic(pm_mul(s, b, mod), Astar, mod);
        PolyM sstar = pm_sub(s, dd, mod);
        PolyM tstar = pm_sub(t, pm_add(pm_mul(t, b, mod), pm_mul(c, Bstar, mod), mod), mod);
        A = std::move(Astar);
        B = std::move(Bstar);
        s = std::move(sstar);
        t = std::move(tstar);
        k = k2;
    }
    return {A, B};
}

long ord_of_residue(const ZZ& r, long p, long cap) {
    if (r == 0) return cap;
    return std::min<long>(valuation(r, ZZ(p)), cap);
}

// Newton polygon of a residue polynomial (valuations capped at precision)
NewtonPolygon np_of_residues(const PolyM& f, long p, long cap) {
    PolyM g = f;
    while (!g.empty() && g.back() == 0) g.pop_back();
    require(!g.empty() && g[0] != 0, "degenerate residue polynomial");
    std::vector<std::pair<long, long>> pts;
    for (size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        pts.push_back({(long)i, ord_of_residue(g[i], p, cap)});
    }
    return hull_of_points(pts, QQ(1));
}

// divide cur (const term 1) by factor (const term 1) mod `mod`; checks the
// division terminates as a polynomial of the expected degree
PolyM pm_exact_cofactor(const PolyM& cur, const PolyM& factor, const ZZ& mod, long target_deg) {
    PolyM q((size_t)target_deg + 1, ZZ(0));
    for (long i = 0; i <= target_deg; ++i) {
        ZZ acc = i < (long)cur.size() ? cur[(size_t)i] : ZZ(0);
        for (long j = 1; j <= std::min<long>((long)factor.size() - 1, i); ++j)
            acc -= factor[(size_t)j] * q[(size_t)(i - j)];
        q[(size_t)i] = zz_mod(acc, mod);
    }
    long d = (long)cur.size() - 1;
    for (long i = target_deg + 1; i <= d; ++i) {
        ZZ acc = cur[(size_t)i];
        for (long j = 1; j < (long)factor.size(); ++j) {
            long qi = i - j;
            if (qi >= 0 && qi <= target_deg) acc -= factor[(size_t)j] * q[(size_t)qi];
        }
        require(zz_mod(acc, mod) == 0, "slope factor does not divide within working precision");
    }
    return q;
}

}  // namespace

std::vector<SlopeFactor> slope_split(const PolyZ& g_in, long p, int m, const QQ& base_exponent) {
    require(is_prime(p), "slope_split requires a prime p");
    require(m >= 1, "precision m must be >= 1");
    PolyZ g = g_in;
    pz_trim(g);
    if (g.empty() || g[0] != 1) throw InputError("slope_split requires constant term 1");
    if (pz_deg(g) == 0) throw InputError("slope_split requires a nonconstant polynomial");
    ZZ pm_target = zz_pow(p, (unsigned long)m);

    NewtonPolygon np0 = newton_polygon(g, padic_base(p, QQ(1)));
    long d0 = pz_deg(g);
    long H = 0;
    for (const auto& c : g)
        if (c != 0) H = std::max(H, valuation(c, ZZ(p)));
    long M = m + (long)np0.segments.size() * (H * (d0 + 1) + 4) + 4;

    auto reduce_to = [](const PolyM& f, const ZZ& mod) {
        PolyM r = f;
        for (auto& c : r) c = zz_mod(c, mod);
        return r;
    };

    std::vector<SlopeFactor> factors;

    PolyM cur = g;
    long achieved = M;
    {
        ZZ mod = zz_pow(p, (unsigned long)M);
        for (auto& c : cur) c = zz_mod(c, mod);
    }

    auto emit = [&](const PolyM& f, const QQ& slope_ordp, long prec) {
        require(prec >= m, "slope factor below requested precision");
        SlopeFactor sf;
        sf.slope = slope_ordp / base_exponent;
        sf.m = m;
        sf.coeffs = reduce_to(f, pm_target);
        pz_trim(sf.coeffs);
        if (sf.coeffs.empty()) sf.coeffs = {ZZ(1)};
        // purity check at working precision
        NewtonPolygon npf = np_of_residues(f, p, prec);
        require(npf.segments.size() <= 1, "slope factor is not pure");
        if (!npf.segments.empty())
            require(npf.segments[0].first == slope_ordp, "slope factor has the wrong slope");
        factors.push_back(std::move(sf));
    };

    for (;;) {
        NewtonPolygon np = np_of_residues(cur, p, achieved);
        if (np.segments.size() <= 1) {
            QQ s = np.segments.empty() ? QQ(0) : np.segments[0].first;
            emit(cur, s, achieved);
            break;
        }
        QQ s_low = np.segments.front().first;
        QQ s_high = np.segments.back().first;
        long d = (long)cur.size() - 1;

        if (s_low.get_den() == 1) {
            // rescale T -> T/p^h so the front slope becomes 0, then lift the
            // unit-root part of the reversed (monic) polynomial
            long h = mpz_get_si(s_low.get_num().get_mpz_t());
            long prec = achieved - h * d;
            if (prec < m + 1)
                throw InvariantError("requested precision not reachable: achieved p^" +
                                     std::to_string(std::max<long>(prec, 0)) + " (need p^" +
                                     std::to_string(m) + ")");
            ZZ mod = zz_pow(p, (unsigned long)prec);
            PolyM w(cur.size());
            for (long i = 0; i <= d; ++i) {
                ZZ ph = zz_pow(p, (unsigned long)(h * i));
                require(zz_mod(cur[(size_t)i], ph) == 0, "front rescale: coefficient not divisible");
                w[(size_t)i] = zz_mod(cur[(size_t)i] / ph, mod);
            }
            PolyM W(w.rbegin(), w.rend());  // monic of degree d
            long L = np.segments.front().second;
            long Dplus = d - L;
            // unit roots of W sit in the top L coefficients; everything
            // below must vanish mod p
            for (long i = 0; i < Dplus; ++i)
                require(zz_mod(W[(size_t)i], ZZ(p)) == 0, "front split: bad initial factorization");
            PolyM A0((size_t)Dplus + 1, ZZ(0));
            A0[(size_t)Dplus] = 1;
            PolyM B0((size_t)L + 1, ZZ(0));
            for (long j = 0; j <= L; ++j) B0[(size_t)j] = zz_mod(W[(size_t)(Dplus + j)], ZZ(p));
            require(B0[0] != 0 && B0[(size_t)L] == 1, "front split: bad initial factorization");
            auto AB = hensel_lift_pair(W, A0, B0, p, prec);
            const PolyM& B = AB.second;
            PolyM f0(B.rbegin(), B.rend());  // slope-0 factor of w, constant term 1
            PolyM factor(f0.size());
            for (size_t i = 0; i < f0.size(); ++i)
                factor[i] = zz_mod(f0[i] * zz_pow(p, (unsigned long)(h * (long)i)), mod);
            emit(factor, s_low, prec);
            cur = pm_exact_cofactor(reduce_to(cur, mod), factor, mod, d - L);
            achieved = prec;
        } else if (s_high.get_den() == 1) {
            // isolate the top slope via y = p^h / alpha
            long h = mpz_get_si(s_high.get_num().get_mpz_t());
            long vd = ord_of_residue(cur[(size_t)d], p, achieved);
            require(vd < achieved, "top coefficient vanished at working precision");
            long prec = achieved - vd;
            if (prec < m + 1)
                throw InvariantError("requested precision not reachable: achieved p^" +
                                     std::to_string(std::max<long>(prec, 0)) + " (need p^" +
                                     std::to_string(m) + ")");
            ZZ mod = zz_pow(p, (unsigned long)prec);
            ZZ pvd = zz_pow(p, (unsigned long)vd);
            require(zz_mod(cur[(size_t)d], pvd) == 0, "top split: leading valuation mismatch");
            ZZ unit = cur[(size_t)d] / pvd;
            ZZ uinv = zz_invmod(zz_mod(unit, mod), mod);
            PolyM Ghat(cur.size());
            for (long i = 0; i <= d; ++i) {
                ZZ t = cur[(size_t)i] * zz_pow(p, (unsigned long)(h * (d - i)));
                require(zz_mod(t, pvd) == 0, "top split: coefficient below hull");
                Ghat[(size_t)i] = zz_mod((t / pvd) * uinv, mod);
            }
            require(Ghat[(size_t)d] == 1, "top split: not monic");
            // the ord-0 roots of Ghat are exactly the images of the top
            // segment, so its length gives the unit part degree
            long L = np.segments.back().second;
            long Dplus = d - L;
            for (long i = 0; i < Dplus; ++i)
                require(zz_mod(Ghat[(size_t)i], ZZ(p)) == 0, "top split: bad initial factorization");
            PolyM A0((size_t)Dplus + 1, ZZ(0));
            A0[(size_t)Dplus] = 1;
            PolyM B0((size_t)L + 1, ZZ(0));
            for (long j = 0; j <= L; ++j) B0[(size_t)j] = zz_mod(Ghat[(size_t)(Dplus + j)], ZZ(p));
            require(B0[0] != 0 && B0[(size_t)L] == 1, "top split: bad initial factorization");
            auto AB = hensel_lift_pair(Ghat, A0, B0, p, prec);
            const PolyM& B = AB.second;
            // f_top(T) = B(p^h T) / B(0)
            ZZ b0inv = zz_invmod(zz_mod(B[0], mod), mod);
            PolyM factor(B.size());
            for (size_t i = 0; i < B.size(); ++i)
                factor[i] = zz_mod(B[i] * zz_pow(p, (unsigned long)(h * (long)i)) * b0inv, mod);
            require(factor[0] == 1, "top split: factor not normalized");
            emit(factor, s_high, prec);
            cur = pm_exact_cofactor(reduce_to(cur, mod), factor, mod, d - L);
            achieved = prec;
        } else {
            throw InvariantError(
                "requested precision not reachable: both polygon ends have fractional slopes (" +
                s_low.get_str() + ", " + s_high.get_str() +
                "); ramified slope splitting is not supported (achieved precision 0)");
        }
    }

    // the product of the emitted factors must reproduce the input mod p^m
    PolyM prod = {ZZ(1)};
    for (const auto& f : factors) prod = pm_mul(prod, f.coeffs, pm_target);
    PolyM gg = g;
    pm_red(gg, pm_target);
    PolyM diff = pm_sub(prod, gg, pm_target);
    require(diff.empty(), "slope factor product does not reproduce the input mod p^m");

    std::sort(factors.begin(), factors.end(),
              [](const SlopeFactor& a, const SlopeFactor& b) { return a.slope < b.slope; });
    return factors;
}

}  // namespace zetakit
