#include "zetakit/family.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "zetakit/fpoly.hpp"

namespace zetakit {

namespace {

std::string strip_line(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)c)) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool is_family_key(const std::string& key) {
    return key == "params" || key == "fiber_vars" || key == "fiber_ambient" || key == "fiber_bounds" ||
           key == "fiber_genus";
}

// homogeneity in the fiber variables only; parameters act as coefficients
bool homogeneous_in(const MultiPoly& f, const std::vector<size_t>& positions) {
    long d = -1;
    for (const auto& [e, c] : f.terms) {
        long t = 0;
        for (size_t i : positions) t += e[i];
        if (d < 0) d = t;
        if (t != d) return false;
    }
    return true;
}

}  // namespace

FamilyDescriptor parse_family_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::ostringstream base_text;
    std::string fiber_ambient;
    std::vector<std::string> params, fiber_vars;
    std::vector<std::pair<int, std::string>> fiber_poly_lines;
    std::optional<int> fiber_genus;
    int dn = 2, dd = 2;
    bool in_fiber = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip_line(line);
        if (t.empty() || t[0] == '#') continue;
        auto eqpos = t.find('=');
        std::string key = eqpos == std::string::npos ? "" : strip_line(t.substr(0, eqpos));
        if (!key.empty() && is_family_key(key)) {
            in_fiber = true;
            std::string val = strip_line(t.substr(eqpos + 1));
            if (key == "params") {
                params = split_names(val);
            } else if (key == "fiber_vars") {
                fiber_vars = split_names(val);
            } else if (key == "fiber_ambient") {
                if (val != "affine" && val != "projective")
                    throw InputError(origin + " line " + std::to_string(lineno) +
                                     ": fiber_ambient must be affine or projective");
                fiber_ambient = val;
            } else if (key == "fiber_bounds") {
                auto parts = split_names(val);
                if (parts.size() != 2)
                    throw InputError(origin + " line " + std::to_string(lineno) + ": fiber_bounds needs dn,dd");
                dn = std::stoi(parts[0]);
                dd = std::stoi(parts[1]);
            } else if (key == "fiber_genus") {
                fiber_genus = std::stoi(val);
            }
            continue;
        }
        if (!in_fiber) {
            base_text << line << "\n";
        } else {
            fiber_poly_lines.push_back({lineno, t});
        }
    }
    if (params.empty()) throw InputError(origin + ": missing params= line");
    if (fiber_vars.empty()) throw InputError(origin + ": missing fiber_vars= line");
    if (fiber_ambient.empty()) throw InputError(origin + ": missing fiber_ambient= line");

    FamilyDescriptor f;
    f.base = parse_variety_text(base_text.str(), origin + " (base)");
    if (f.base.projective) throw InputError(origin + ": family base must be affine");
    if (f.base.vars != params) throw InputError(origin + ": params must list the base variables");
    f.params = params;
    f.fiber_vars = fiber_vars;
    f.fiber_projective = fiber_ambient == "projective";
    f.fiber_n = f.fiber_projective ? (int)fiber_vars.size() - 1 : (int)fiber_vars.size();
    if (f.fiber_n < 1) throw InputError(origin + ": fiber needs at least one variable");
    f.dn_max = dn;
    f.dd_max = dd;
    f.fiber_genus = fiber_genus;

    std::vector<std::string> all_vars = params;
    for (const auto& v : fiber_vars) all_vars.push_back(v);
    std::vector<size_t> fiber_positions;
    for (size_t i = params.size(); i < all_vars.size(); ++i) fiber_positions.push_back(i);
    for (const auto& [ln, ptext] : fiber_poly_lines) {
        MultiPoly eq;
        try {
            eq = parse_polynomial(ptext, all_vars);
        } catch (const InputError& e) {
            throw InputError(origin + " line " + std::to_string(ln) + ": " + e.what());
        }
        if (f.fiber_projective && !homogeneous_in(eq, fiber_positions))
            throw InputError(origin + " line " + std::to_string(ln) +
                             ": fiber equation is not homogeneous in the fiber variables");
        f.fiber_equations.push_back(std::move(eq));
    }
    return f;
}

FamilyDescriptor load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_family_text(ss.str(), path);
}

VarietyInstance instantiate_fiber(const FamilyDescriptor& f, const ClosedPoint& x, int ext) {
    long p = f.base.base->p;
    int a_small = x.k->a;
    Field target = make_extension_field(p, a_small * ext);
    std::vector<Coords> values;
    values.reserve(x.rep.size());
    for (const auto& c : x.rep) values.push_back(embed_coords(p, a_small, target->a, c));
    VarietyInstance inst;
    inst.k = target;
    inst.projective = f.fiber_projective;
    inst.ncoords = f.ncoords_fiber();
    for (const auto& eq : f.fiber_equations)
        inst.equations.push_back(partial_evaluate(eq, target, f.params, values));
    return inst;
}

FamilyEngine::FamilyEngine(FamilyDescriptor f, EnumConfig cfg, int guard)
    : f_(std::move(f)), cfg_(cfg), guard_(guard) {
    require(guard_ >= 1, "family engine requires guard >= 1");
}

namespace {

// enumeration units for one point count of a variety with `ncoords`
// coordinates over a field of size Q
ZZ chart_units(bool projective, int ncoords, const ZZ& Q) {
    if (!projective) {
        ZZ u = 1;
        for (int i = 0; i < ncoords - 1; ++i) u *= Q;
        return u;
    }
    ZZ total = 0;
    for (int i = 0; i < ncoords; ++i) {
        int free = ncoords - 1 - i;
        if (free == 0) {
            total += 1;
            continue;
        }
        ZZ u = 1;
        for (int j = 0; j < free - 1; ++j) u *= Q;
        total += u;
    }
    return total;
}

}  // namespace

void FamilyEngine::plan_fiber_work(int max_degree) {
    PointCountSequence seq = count_sequence(f_.base, max_degree, cfg_);
    std::vector<long> c = closed_point_counts_from_sequence(seq);
    long q = f_.base.base->q;
    int counts_needed = f_.fiber_genus ? *f_.fiber_genus : f_.dn_max + f_.dd_max + guard_;
    ZZ total = 0;
    for (int e = 1; e <= max_degree; ++e) {
        // base tuple enumeration for closed points of degree e
        ZZ Qe = zz_pow(q, (unsigned long)e);
        ZZ base_units = 1;
        for (int i = 0; i < f_.base.ncoords(); ++i) base_units *= Qe;
        total += base_units;
        if (c[(size_t)e] == 0) continue;
        ZZ per_fiber = 0;
        for (int j = 1; j <= counts_needed; ++j)
            per_fiber += chart_units(f_.fiber_projective, f_.ncoords_fiber(), zz_pow(q, (unsigned long)(e * j)));
        total += ZZ(c[(size_t)e]) * per_fiber;
    }
    if (total > cfg_.budget)
        throw BudgetError("family fiber plan needs " + total.get_str() + " enumeration candidates (budget " +
                          std::to_string(cfg_.budget) +
                          "); the instance is beyond desk scale at max degree " + std::to_string(max_degree));
}

std::vector<ClosedPoint> FamilyEngine::closed_points(int max_degree) {
    int have = 0;
    while (points_by_degree_.count(have + 1)) ++have;
    if (have < max_degree) {
        plan_fiber_work(max_degree);
        auto pts = enumerate_closed_points(f_.base, max_degree, cfg_);
        for (int e = 1; e <= max_degree; ++e) points_by_degree_[e] = {};
        for (auto& x : pts) points_by_degree_[x.degree].push_back(std::move(x));
    }
    std::vector<ClosedPoint> out;
    for (int e = 1; e <= max_degree; ++e)
        for (const auto& x : points_by_degree_[e]) out.push_back(x);
    return out;
}

void FamilyEngine::check_fiber_smooth(const ClosedPoint& x) {
    if (!f_.fiber_projective || f_.ncoords_fiber() != 3 || f_.fiber_equations.size() != 1) return;
    VarietyInstance inst = instantiate_fiber(f_, x, 1);
    const FieldPoly& F = inst.equations[0];
    const auto& K = *inst.k;

    // fast exact path for F = v^2 w - C(u, w) in odd characteristic: affine
    // singular points force C(u,1) and its derivative to share a root (over
    // the closure, so a field gcd sees them all), and the single point at
    // w = 0 is smooth whenever the u^3 coefficient survives
    if (K.p != 2) {
        for (int v = 0; v < 3; ++v) {
            long vterms = 0;
            const std::vector<unsigned>* vexp = nullptr;
            for (const auto& [e, c] : F.terms)
                if (e[(size_t)v] > 0) {
                    ++vterms;
                    vexp = &e;
                }
            if (vterms != 1 || (*vexp)[(size_t)v] != 2) continue;
            int w = -1;
            for (int i = 0; i < 3; ++i)
                if (i != v && (*vexp)[(size_t)i] == 1) w = i;
            if (w < 0) continue;
            int u = 3 - v - w;
            // f(u) = -(v-free part) at w = 1; requires full degree 3
            FPoly fu(4, fx_zero(K));
            bool shape_ok = true;
            for (const auto& [e, c] : F.terms) {
                if (e[(size_t)v] > 0) continue;
                if (e[(size_t)u] > 3) shape_ok = false;
                if (!shape_ok) break;
                Coords neg;
                fx_neg(K, c, neg);
                Coords s;
                fx_add(K, fu[e[(size_t)u]], neg, s);
                fu[e[(size_t)u]] = s;
            }
            if (!shape_ok) break;
            if (fx_is_zero(fu[3])) break;  // degenerate at infinity: use the scan
            FPoly fcopy(fu.begin(), fu.end());
            fp_trim(fcopy);
            FPoly g = fp_gcd(K, fcopy, fp_derivative(K, fcopy));
            if (g.size() > 1)
                throw InvariantError("singular fiber at closed point " + closed_point_key(x));
            return;
        }
    }

    // generic fallback: rational singular-point scan; conjugate singular
    // points surface later through the Weil-bound validation
    VarietyInstance sing = inst;
    for (size_t v = 0; v < 3; ++v) sing.equations.push_back(fieldpoly_partial(inst.equations[0], v));
    long nsing = count_points_instance(sing, cfg_);
    if (nsing > 0)
        throw InvariantError("singular fiber at closed point " + closed_point_key(x));
}

RationalFunctionZ FamilyEngine::fiber_zeta_weil(const ClosedPoint& x, int genus) {
    check_fiber_smooth(x);
    long q_e = x.k->q;
    std::vector<ZZ> psum((size_t)genus + 1, ZZ(0));
    for (int j = 1; j <= genus; ++j) {
        long N = count_points_instance(instantiate_fiber(f_, x, j), cfg_);
        psum[(size_t)j] = zz_pow(q_e, (unsigned long)j) + 1 - N;
    }
    // Newton's identities: elementary symmetric functions of the numerator roots
    std::vector<QQ> elem((size_t)genus + 1, QQ(0));
    elem[0] = 1;
    for (int k = 1; k <= genus; ++k) {
        QQ acc(0);
        for (int i = 1; i <= k; ++i) {
            QQ term = elem[(size_t)(k - i)] * QQ(psum[(size_t)i]);
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        elem[(size_t)k] = acc / QQ(k);
    }
    PolyZ num((size_t)(2 * genus) + 1, ZZ(0));
    num[0] = 1;
    for (int i = 1; i <= genus; ++i) {
        QQ ni = elem[(size_t)i];
        if (i % 2 == 1) ni = -ni;
        num[(size_t)i] = to_integer(ni, "fiber numerator coefficient");
    }
    // functional equation fills the upper half: n_{2g-i} = q^{g-i} n_i
    for (int i = genus - 1; i >= 0; --i)
        num[(size_t)(2 * genus - i)] = zz_pow(q_e, (unsigned long)(genus - i)) * num[(size_t)i];
    // Weil-bound validation of the completed numerator
    if (genus == 1) {
        if (psum[1] * psum[1] > 4 * ZZ(q_e))
            throw InvariantError("fiber at " + closed_point_key(x) + " violates the Hasse bound; not a smooth genus-1 curve");
    } else {
        double sq = std::sqrt((double)q_e);
        for (const auto& [root, mult] : complex_roots(num)) {
            double alpha = 1.0 / std::abs(root);
            if (std::fabs(alpha - sq) > 1e-6 * sq)
                throw InvariantError("fiber at " + closed_point_key(x) + " violates the Weil bound");
        }
    }
    PolyZ den = {ZZ(1), -ZZ(q_e) - 1, ZZ(q_e)};
    return make_rational_function(num, den);
}

RationalFunctionZ FamilyEngine::fiber_zeta_reconstruct(const ClosedPoint& x) {
    int B = f_.dn_max + f_.dd_max + guard_;
    PointCountSequence seq;
    for (int j = 1; j <= B; ++j)
        seq.counts.push_back(count_points_instance(instantiate_fiber(f_, x, j), cfg_));
    SeriesZ z = zeta_series_from_counts(seq);
    ReconstructionReport rep = reconstruct_rational(z, f_.dn_max, f_.dd_max, guard_);
    if (!rep.result)
        throw NoMatchError("fiber zeta at closed point " + closed_point_key(x) +
                           ": no rational function within bounds (" + std::to_string(f_.dn_max) + "," +
                           std::to_string(f_.dd_max) + ")");
    return *rep.result;
}

RationalFunctionZ FamilyEngine::fiber_zeta(const ClosedPoint& x) {
    std::string key = closed_point_key(x);
    auto it = zeta_cache_.find(key);
    if (it != zeta_cache_.end()) return it->second;
    RationalFunctionZ z = f_.fiber_genus ? fiber_zeta_weil(x, *f_.fiber_genus) : fiber_zeta_reconstruct(x);
    zeta_cache_.emplace(std::move(key), z);
    return z;
}

ZZ FamilyEngine::moment_sum(long k, int d) {
    ZZ total = 0;
    for (const auto& x : closed_points(d)) {
        if (d % x.degree) continue;
        RationalFunctionZ z = fiber_zeta(x);
        long n = k * (d / x.degree);
        total += ZZ(x.degree) * (power_sum_at(z.num, n) - power_sum_at(z.den, n));
    }
    return total;
}

ZZ FamilyEngine::moment_sum_direct(long k, int d) {
    // -sum_{x in X(F_{q^d})} #Y_x(F_{q^{kd}}), by raw counting
    VarietyInstance base_inst = instance_over_extension(f_.base, d);
    auto pts = enumerate_rational_points(base_inst, cfg_);
    long p = f_.base.base->p;
    Field big = make_extension_field(p, f_.base.base->a * d * (int)k);
    ZZ total = 0;
    for (const auto& pt : pts) {
        std::vector<Coords> values;
        for (const auto& c : pt) values.push_back(embed_coords(p, base_inst.k->a, big->a, c));
        VarietyInstance fiber;
        fiber.k = big;
        fiber.projective = f_.fiber_projective;
        fiber.ncoords = f_.ncoords_fiber();
        for (const auto& eq : f_.fiber_equations)
            fiber.equations.push_back(partial_evaluate(eq, big, f_.params, values));
        total += count_points_instance(fiber, cfg_);
    }
    return -total;
}

namespace {

SeriesZ poly_to_series(const PolyZ& g, int B) {
    SeriesZ s(ZRing{}, B);
    for (size_t i = 0; i < g.size() && (int)i <= B; ++i) s.c[i] = g[i];
    return s;
}

SeriesMod poly_to_series_mod(const PolyZ& g, const ModRing& ring, int B) {
    SeriesMod s(ring, B);
    for (size_t i = 0; i < g.size() && (int)i <= B; ++i) s.c[i] = ring.reduce(g[i]);
    return s;
}

}  // namespace

SeriesZ FamilyEngine::moment_L_series(long k, int B) {
    SeriesZ L = series_one(ZRing{}, B);
    for (const auto& x : closed_points(B)) {
        RationalFunctionZ z = fiber_zeta(x);
        PolyZ an = adams_transform(z.num, k);
        PolyZ ad = adams_transform(z.den, k);
        L = series_mul(L, series_substitute_power(poly_to_series(ad, B), x.degree));
        L = series_div(L, series_substitute_power(poly_to_series(an, B), x.degree));
    }
    return L;
}

ReconstructionReport FamilyEngine::moment_L_rational(long k, int B, int dn_max, int dd_max, int guard) {
    return reconstruct_rational(moment_L_series(k, B), dn_max, dd_max, guard);
}

SeriesMod FamilyEngine::pure_moment_L(long k, const QQ& slope, int B, int m) {
    long p = base_p();
    ModRing ring = make_mod_ring(p, m);
    SeriesMod L = series_one(ring, B);
    int a_base = f_.base.base->a;
    for (const auto& x : closed_points(B)) {
        RationalFunctionZ z = fiber_zeta(x);
        QQ be((long)a_base * x.degree * k);
        auto pure_part = [&](const PolyZ& g) -> PolyZ {
            if (pz_deg(g) == 0) return pz_one();
            std::vector<SlopeFactor> parts;
            try {
                parts = slope_split(adams_transform(g, k), p, m, be);
            } catch (const ZkError& e) {
                throw InvariantError("slope split failed at closed point " + closed_point_key(x) + ": " +
                                     e.what());
            }
            for (const auto& f : parts)
                if (f.slope == slope) return f.coeffs;
            return pz_one();  // missing slope contributes the factor 1
        };
        PolyZ fd = pure_part(z.den);
        PolyZ fn = pure_part(z.num);
        L = series_mul(L, series_substitute_power(poly_to_series_mod(fd, ring, B), x.degree));
        L = series_div(L, series_substitute_power(poly_to_series_mod(fn, ring, B), x.degree));
    }
    return L;
}

CongruenceReport FamilyEngine::congruence_check(long k, long M, int m, int B) {
    CongruenceReport rep;
    if (m == 0) {  // congruence mod 1 holds trivially
        rep.ok = true;
        return rep;
    }
    long p = base_p();
    ZZ pm = zz_pow(p, (unsigned long)m);
    ZZ pm1 = zz_pow(p, (unsigned long)(m + 1));
    require(pm1 * M < (ZZ(1) << 40), "congruence exponent beyond desk scale");
    long k1 = k + pm.get_si() * M;
    long k2 = k + pm1.get_si() * M;
    SeriesZ L1 = moment_L_series(k1, B);
    SeriesZ L2 = moment_L_series(k2, B);
    std::optional<long> minval;
    for (int i = 0; i <= B; ++i) {
        ZZ diff = L1.c[(size_t)i] - L2.c[(size_t)i];
        if (diff == 0) continue;
        long v = valuation(diff, ZZ(p));
        if (!minval || v < *minval) minval = v;
    }
    rep.min_valuation = minval;
    rep.ok = !minval || *minval >= m;
    return rep;
}

bool FamilyEngine::unit_root_limit_check(long k, long M, int m, int B) {
    if (m == 0) return true;
    long p = base_p();
    ModRing ring = make_mod_ring(p, m);
    SeriesMod lhs = pure_moment_L(k, QQ(0), B, m);
    long km = k + zz_pow(p, (unsigned long)m).get_si() * M;
    SeriesMod rhs = reduce_series(moment_L_series(km, B), ring);
    return lhs == rhs;
}

StratificationReport FamilyEngine::stratify(int max_degree) {
    StratificationReport rep;
    int a_base = f_.base.base->a;
    for (const auto& x : closed_points(max_degree)) {
        RationalFunctionZ z = fiber_zeta(x);
        PureDegreeTable table =
            pure_degrees(z, padic_base(base_p(), QQ((long)a_base * x.degree)), f_.fiber_dim());
        StratumEntry entry{closed_point_key(x), x.degree, table};
        for (const auto& row : table.rows) {
            rep.strata_d[{row.slope.get_str(), row.d}].push_back(entry.point_key);
            rep.strata_D[{row.slope.get_str(), row.D}].push_back(entry.point_key);
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

long FamilyEngine::total_space_count(int k) {
    VarietyInstance base_inst = instance_over_extension(f_.base, k);
    long nbase = count_points_instance(base_inst, cfg_);
    ZZ Q = zz_pow(f_.base.base->q, (unsigned long)k);
    ZZ plan = ZZ(nbase) * chart_units(f_.fiber_projective, f_.ncoords_fiber(), Q);
    if (plan > cfg_.budget)
        throw BudgetError("total space count needs " + plan.get_str() + " candidates (budget " +
                          std::to_string(cfg_.budget) + ")");
    auto pts = enumerate_rational_points(base_inst, cfg_);
    long total = 0;
    for (const auto& pt : pts) {
        VarietyInstance fiber;
        fiber.k = base_inst.k;
        fiber.projective = f_.fiber_projective;
        fiber.ncoords = f_.ncoords_fiber();
        for (const auto& eq : f_.fiber_equations)
            fiber.equations.push_back(partial_evaluate(eq, base_inst.k, f_.params, pt));
        total += count_points_instance(fiber, cfg_);
    }
    return total;
}

SeriesZ FamilyEngine::total_space_zeta(int B) {
    PointCountSequence seq;
    for (int kk = 1; kk <= B; ++kk) seq.counts.push_back(total_space_count(kk));
    return zeta_series_from_counts(seq);
}

// ---- ordinary / supersingular scan over the integers ----

namespace {

QQ resultant_q(PolyQ f, PolyQ g) {
    pq_trim(f);
    pq_trim(g);
    if (f.empty() || g.empty()) return QQ(0);
    QQ acc(1);
    while (g.size() > 1) {
        long df = (long)f.size() - 1, dg = (long)g.size() - 1;
        PolyQ r = pq_rem(f, g);
        long dr = r.empty() ? -1 : (long)r.size() - 1;
        QQ lead = g.back();
        QQ pw(1);
        for (long i = 0; i < df - (dr < 0 ? 0 : dr); ++i) pw *= lead;
        acc *= pw;
        if ((df * dg) % 2 == 1) acc = -acc;
        if (r.empty()) return QQ(0);
        f = std::move(g);
        g = std::move(r);
    }
    QQ gc = g[0];
    QQ pw(1);
    for (long i = 0; i < (long)f.size() - 1; ++i) pw *= gc;
    return acc * pw;
}

}  // namespace

OrdinaryScanReport ordinary_scan(const MultiPoly& affine_curve, const std::vector<long>& primes,
                                 const NewtonPolygon& hodge, const EnumConfig& cfg) {
    require(affine_curve.vars.size() == 2, "ordinary scan expects a plane curve in two variables");
    // normalize to y^2 - f(x): the y-exponents must be {0, 2} with a unit
    // coefficient on y^2
    ZZ c2 = 0;
    PolyZ f;
    for (const auto& [e, c] : affine_curve.terms) {
        if (e[1] == 2 && e[0] == 0) {
            c2 = c;
        } else if (e[1] == 0) {
            if (f.size() <= e[0]) f.resize(e[0] + 1, ZZ(0));
            f[e[0]] = c;
        } else {
            throw InputError("ordinary scan supports y^2 = f(x) models only");
        }
    }
    if (c2 != 1 && c2 != -1) throw InputError("ordinary scan needs coefficient 1 on y^2");
    for (auto& c : f) c = -c * c2;  // move to y^2 = f(x)
    pz_trim(f);
    if (pz_deg(f) != 3) throw InputError("ordinary scan supports cubic f only (genus 1)");

    PolyQ fq = pq_from_z(f);
    ZZ disc_z = to_integer(resultant_q(fq, pq_derivative(fq)), "discriminant");
    require(disc_z != 0, "curve is singular over Q");

    // projective closure with the quadratic variable last for fast counting
    MultiPoly eq;
    eq.vars = {affine_curve.vars[0], affine_curve.vars[1]};
    eq.terms[{0, 2}] = 1;
    for (size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0) eq.add_term({(unsigned)i, 0}, -f[i]);
    MultiPoly closed = homogenize(eq, "Z_inf");
    MultiPoly reordered = reorder_vars(closed, {affine_curve.vars[0], "Z_inf", affine_curve.vars[1]});

    OrdinaryScanReport rep;
    std::vector<QQ> hp_ys = polygon_y_values(hodge);
    for (long p : primes) {
        OrdinaryScanRecord rec;
        rec.p = p;
        bool bad = (p == 2) || zz_mod(disc_z, ZZ(p)) == 0 || zz_mod(f.back(), ZZ(p)) == 0;
        if (bad) {
            rec.bad = true;
            rep.records.push_back(rec);
            continue;
        }
        VarietyDescriptor V;
        V.base = make_extension_field(p, 1);
        V.projective = true;
        V.n = 2;
        V.vars = reordered.vars;
        V.equations = {reordered};
        long N1 = count_points(V, 1, cfg);
        ZZ a = ZZ(p) + 1 - N1;
        rec.trace = a;
        PolyZ num = {ZZ(1), -a, ZZ(p)};
        rec.np = newton_polygon(num, padic_base(p, QQ(1)));
        rec.ordinary = (rec.np == hodge);
        ++rep.good_primes;
        if (rec.ordinary) ++rep.ordinary_count;
        std::vector<QQ> ys = polygon_y_values(rec.np);
        if (rep.envelope.empty()) {
            rep.envelope = ys;
        } else {
            require(rep.envelope.size() == ys.size(), "polygon length mismatch in scan");
            for (size_t i = 0; i < ys.size(); ++i) rep.envelope[i] = std::min(rep.envelope[i], ys[i]);
        }
        rep.records.push_back(rec);
    }
    if (rep.good_primes == 0 && !primes.empty()) throw InputError("all scanned primes have bad reduction");
    rep.envelope_equals_hp = !rep.envelope.empty() && rep.envelope == hp_ys;
    return rep;
}

}  // namespace zetakit
