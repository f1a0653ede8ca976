#include "zetakit/count.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

#include "zetakit/fpoly.hpp"

namespace zetakit {

namespace {

// ---- per-chart specialization ----

struct SpecTerm {
    unsigned last_exp;
    Coords coeff;
    std::vector<std::pair<int, unsigned>> pvars;  // (prefix slot, exponent)
};

struct SpecPoly {
    std::vector<SpecTerm> terms;
    unsigned max_last = 0;
};

struct Chart {
    // fixed[i] = 0 or 1 pattern for projective charts; empty for affine
    std::vector<int> fixed;          // -1 free, 0 zero, 1 one (indexed by coordinate)
    std::vector<int> prefix_coords;  // coordinate indices enumerated
    int resolve_coord = -1;          // coordinate solved by root counting; -1 if none free
    std::vector<SpecPoly> eqs;
    std::optional<SpecPoly> excl;
    std::vector<unsigned> prefix_maxexp;
    ZZ units;
};

SpecPoly specialize(const FieldPoly& f, const std::vector<int>& fixed, const std::vector<int>& prefix_coords,
                    int resolve_coord, const FieldDescriptor& K) {
    std::vector<int> slot_of(fixed.size(), -1);
    for (size_t s = 0; s < prefix_coords.size(); ++s) slot_of[prefix_coords[s]] = (int)s;
    std::map<std::pair<unsigned, std::vector<std::pair<int, unsigned>>>, Coords> merged;
    for (const auto& [e, c] : f.terms) {
        bool drop = false;
        unsigned last_exp = 0;
        std::vector<std::pair<int, unsigned>> pv;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (fixed[i] == 0) {
                drop = true;
                break;
            }
            if (fixed[i] == 1) continue;
            if ((int)i == resolve_coord)
                last_exp = e[i];
            else
                pv.push_back({slot_of[i], e[i]});
        }
        if (drop) continue;
        auto key = std::make_pair(last_exp, pv);
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, c);
        } else {
            Coords s;
            fx_add(K, it->second, c, s);
            it->second = s;
        }
    }
    SpecPoly sp;
    for (auto& [key, c] : merged) {
        if (fx_is_zero(c)) continue;
        sp.max_last = std::max(sp.max_last, key.first);
        sp.terms.push_back({key.first, c, key.second});
    }
    return sp;
}

std::vector<Chart> build_charts(const VarietyInstance& V) {
    const auto& K = *V.k;
    std::vector<Chart> charts;
    int nc = V.ncoords;
    auto make_chart = [&](std::vector<int> fixed) {
        Chart ch;
        ch.fixed = fixed;
        std::vector<int> free;
        for (int i = 0; i < nc; ++i)
            if (fixed[i] < 0) free.push_back(i);
        if (!free.empty()) {
            ch.resolve_coord = free.back();
            ch.prefix_coords.assign(free.begin(), free.end() - 1);
        }
        for (const auto& eq : V.equations)
            ch.eqs.push_back(specialize(eq, ch.fixed, ch.prefix_coords, ch.resolve_coord, K));
        if (V.exclusion) ch.excl = specialize(*V.exclusion, ch.fixed, ch.prefix_coords, ch.resolve_coord, K);
        ch.prefix_maxexp.assign(ch.prefix_coords.size(), 0);
        auto scan = [&](const SpecPoly& sp) {
            for (const auto& t : sp.terms)
                for (auto [s, e] : t.pvars) ch.prefix_maxexp[s] = std::max(ch.prefix_maxexp[s], e);
        };
        for (const auto& sp : ch.eqs) scan(sp);
        if (ch.excl) scan(*ch.excl);
        ch.units = 1;
        for (size_t i = 0; i < ch.prefix_coords.size(); ++i) ch.units *= K.q;
        charts.push_back(std::move(ch));
    };

    if (!V.projective) {
        make_chart(std::vector<int>(nc, -1));
    } else {
        for (int i = 0; i < nc; ++i) {
            std::vector<int> fixed(nc, -1);
            for (int j = 0; j < i; ++j) fixed[j] = 0;
            fixed[i] = 1;
            make_chart(fixed);
        }
    }
    return charts;
}

// ---- inner enumeration over one chart; owns all scratch state so each
// worker thread runs an independent instance ----

struct ChartRunner {
    const Chart& ch;
    const FieldDescriptor& K;
    Field field;
    std::shared_ptr<const std::vector<uint8_t>> sqtab;

    std::vector<long> digits;             // prefix element indices
    std::vector<std::vector<Coords>> pw;  // per-slot power tables
    // fixed-size univariate buffers with explicit degree tracking, so the
    // hot loop never reallocates
    std::vector<std::vector<Coords>> uni;
    std::vector<int> uni_deg;
    std::vector<Coords> ex_buf;
    int ex_deg = -1;
    std::vector<long> scratch;
    Coords mA, mB, q1, q2, q3;

    bool want_table;

    ChartRunner(const Chart& chart, const Field& f, long units_hint)
        : ch(chart), K(*f), field(f), sqtab(nullptr), want_table(units_hint >= 64) {
        uni.resize(ch.eqs.size());
        uni_deg.assign(ch.eqs.size(), -1);
        for (size_t i = 0; i < ch.eqs.size(); ++i) uni[i].assign(ch.eqs[i].max_last + 1, fx_zero(K));
        if (ch.excl) ex_buf.assign(ch.excl->max_last + 1, fx_zero(K));
        mA = fx_zero(K);
        mB = fx_zero(K);
        q1 = q2 = q3 = fx_zero(K);
    }

    void set_slot(size_t s, long idx) {
        auto& table = pw[s];
        if (table.size() > 1) {
            fx_element_into(K, idx, table[1]);
            for (size_t e = 2; e < table.size(); ++e) fx_mul_into(K, table[e - 1], table[1], table[e], scratch);
        }
    }

    void init(long start_index) {
        size_t m = ch.prefix_coords.size();
        digits.assign(m, 0);
        pw.assign(m, {});
        long idx = start_index;
        for (size_t s = 0; s < m; ++s) {
            pw[s].resize(ch.prefix_maxexp[s] + 1, fx_one(K));
            digits[s] = idx % K.q;
            idx /= K.q;
            set_slot(s, digits[s]);
        }
    }

    void advance() {
        for (size_t s = 0; s < digits.size(); ++s) {
            if (++digits[s] < K.q) {
                set_slot(s, digits[s]);
                return;
            }
            digits[s] = 0;
            set_slot(s, 0);
        }
    }

    int build_uni(const SpecPoly& sp, std::vector<Coords>& out) {
        for (auto& c : out) std::fill(c.begin(), c.end(), 0);
        for (const auto& t : sp.terms) {
            const Coords* acc = &t.coeff;
            for (auto [s, e] : t.pvars) {
                Coords& dst = (acc == &mA) ? mB : mA;
                fx_mul_into(K, *acc, pw[s][e], dst, scratch);
                acc = &dst;
            }
            Coords& slot = out[t.last_exp];
            for (int i = 0; i < K.a; ++i) {
                long v = slot[i] + (*acc)[i];
                slot[i] = v >= K.p ? v - K.p : v;
            }
        }
        int deg = (int)out.size() - 1;
        while (deg >= 0 && fx_is_zero(out[deg])) --deg;
        return deg;
    }

    // distinct roots of buf (degree deg >= 0) in the field
    long root_count(const std::vector<Coords>& buf, int deg) {
        if (deg == 0) return 0;
        if (deg == 1) return 1;
        if (deg == 2) return quadratic(buf[2], buf[1], buf[0]);
        FPoly f(buf.begin(), buf.begin() + deg + 1);
        return fp_distinct_roots(field, f);
    }

    long quadratic(const Coords& a2, const Coords& a1, const Coords& a0) {
        if (K.p != 2) {
            // chi(a1^2 - 4 a2 a0)
            fx_mul_into(K, a1, a1, q1, scratch);
            fx_mul_into(K, a2, a0, q2, scratch);
            long four = 4 % K.p;
            for (int i = 0; i < K.a; ++i) q2[i] = q2[i] * four % K.p;
            fx_sub(K, q1, q2, q3);
            if (fx_is_zero(q3)) return 1;
            if (want_table && !sqtab) sqtab = squares_table(field);
            if (sqtab) return (*sqtab)[fx_index(K, q3)];
            Coords e = fx_pow(K, q3, (K.q - 1) / 2);
            return e == fx_one(K) ? 2 : 0;
        }
        // char 2: monicize to t^2 + bt + c; solvable iff Tr(c/b^2) = 0
        Coords inv = fx_inv(K, a2);
        Coords b = fx_mul(K, a1, inv);
        Coords c = fx_mul(K, a0, inv);
        if (fx_is_zero(b)) return 1;  // squaring is bijective
        Coords binv = fx_inv(K, b);
        Coords u = fx_mul(K, fx_mul(K, c, binv), binv);
        Coords tr = fx_zero(K);
        Coords pwv = u;
        for (int i = 0; i < K.a; ++i) {
            Coords s;
            fx_add(K, tr, pwv, s);
            tr = s;
            pwv = fx_mul(K, pwv, pwv);
        }
        return fx_is_zero(tr) ? 2 : 0;
    }

    // number of valid points above the current prefix
    long solve() {
        int h_eq = -1;  // index of the single nonzero univariate, if unique
        FPoly hbuf;
        bool have_gcd = false;
        for (size_t i = 0; i < ch.eqs.size(); ++i) {
            uni_deg[i] = build_uni(ch.eqs[i], uni[i]);
            if (uni_deg[i] < 0) continue;  // identically satisfied
            if (h_eq < 0 && !have_gcd) {
                h_eq = (int)i;
            } else {
                if (!have_gcd) {
                    hbuf = FPoly(uni[h_eq].begin(), uni[h_eq].begin() + uni_deg[h_eq] + 1);
                    have_gcd = true;
                    h_eq = -1;
                }
                FPoly g(uni[i].begin(), uni[i].begin() + uni_deg[i] + 1);
                hbuf = fp_gcd(K, std::move(hbuf), g);
                if (hbuf.size() == 1) break;
            }
        }
        long base;
        bool system_trivial = (h_eq < 0 && !have_gcd);
        if (system_trivial)
            base = K.q;
        else if (have_gcd)
            base = hbuf.size() == 1 ? 0 : root_count(hbuf, (int)hbuf.size() - 1);
        else
            base = root_count(uni[h_eq], uni_deg[h_eq]);
        if (!ch.excl || base == 0) return base;
        ex_deg = build_uni(*ch.excl, ex_buf);
        if (ex_deg < 0) return 0;  // exclusion vanishes everywhere here
        long cut;
        if (system_trivial) {
            cut = root_count(ex_buf, ex_deg);
        } else {
            FPoly ex(ex_buf.begin(), ex_buf.begin() + ex_deg + 1);
            FPoly h = have_gcd ? hbuf : FPoly(uni[h_eq].begin(), uni[h_eq].begin() + uni_deg[h_eq] + 1);
            FPoly g = fp_gcd(K, std::move(h), ex);
            cut = g.size() == 1 ? 0 : root_count(g, (int)g.size() - 1);
        }
        return base - cut;
    }

    __int128 run(long lo, long hi) {
        init(lo);
        __int128 total = 0;
        for (long i = lo; i < hi; ++i) {
            total += solve();
            if (i + 1 < hi) advance();
        }
        return total;
    }

    // candidate with no free coordinate: a single point to test
    long run_point() {
        Coords acc = fx_zero(K);
        Coords t;
        for (size_t i = 0; i < ch.eqs.size(); ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (const auto& term : ch.eqs[i].terms) {
                fx_add(K, acc, term.coeff, t);
                acc = t;
            }
            if (!fx_is_zero(acc)) return 0;
        }
        if (ch.excl) {
            std::fill(acc.begin(), acc.end(), 0);
            for (const auto& term : ch.excl->terms) {
                fx_add(K, acc, term.coeff, t);
                acc = t;
            }
            if (fx_is_zero(acc)) return 0;
        }
        return 1;
    }
};

}  // namespace

long count_points_instance(const VarietyInstance& V, const EnumConfig& cfg) {
    std::vector<Chart> charts = build_charts(V);
    ZZ total_units = 0;
    for (const auto& ch : charts)
        if (ch.resolve_coord >= 0) total_units += ch.units;
    if (total_units > cfg.budget)
        throw BudgetError("enumeration of " + total_units.get_str() + " candidates exceeds budget " +
                          std::to_string(cfg.budget));

    __int128 total = 0;
    for (const auto& ch : charts) {
        if (ch.resolve_coord < 0) {
            ChartRunner r(ch, V.k, 1);
            total += r.run_point();
            continue;
        }
        long units = ch.units.get_si();
        int nthreads = cfg.workers;
        if (nthreads <= 1 || units < 4096) {
            ChartRunner r(ch, V.k, units);
            total += r.run(0, units);
        } else {
            std::vector<__int128> parts(nthreads, 0);
            std::vector<std::thread> threads;
            for (int t = 0; t < nthreads; ++t) {
                long lo = units / nthreads * t + std::min<long>(t, units % nthreads);
                long hi = lo + units / nthreads + (t < units % nthreads ? 1 : 0);
                threads.emplace_back([&, t, lo, hi]() {
                    ChartRunner r(ch, V.k, units);
                    parts[t] = r.run(lo, hi);
                });
            }
            for (auto& th : threads) th.join();
            for (int t = 0; t < nthreads; ++t) total += parts[t];
        }
    }
    require(total <= (__int128)1 << 62, "point count exceeds integer range");
    return (long)total;
}

long count_points(const VarietyDescriptor& V, int k, const EnumConfig& cfg) {
    return count_points_instance(instance_over_extension(V, k), cfg);
}

PointCountSequence count_sequence(const VarietyDescriptor& V, int B, const EnumConfig& cfg) {
    PointCountSequence seq;
    for (int k = 1; k <= B; ++k) {
        try {
            seq.counts.push_back(count_points(V, k, cfg));
        } catch (const BudgetError& e) {
            throw BudgetError(std::string(e.what()) + " (largest completed k = " + std::to_string(k - 1) + ")");
        }
    }
    return seq;
}

std::vector<long> closed_point_counts_from_sequence(const PointCountSequence& seq) {
    std::vector<long> c(seq.counts.size() + 1, 0);
    for (size_t e = 1; e <= seq.counts.size(); ++e) {
        long acc = 0;
        for (size_t d = 1; d <= e; ++d) {
            if (e % d) continue;
            acc += mobius((long)(e / d)) * seq.counts[d - 1];
        }
        require(acc % (long)e == 0, "count sequence is not a valid zeta count sequence");
        c[e] = acc / (long)e;
        require(c[e] >= 0, "negative closed point count");
    }
    return c;
}

std::vector<std::vector<Coords>> enumerate_rational_points(const VarietyInstance& V, const EnumConfig& cfg) {
    const auto& K = *V.k;
    int nc = V.ncoords;
    std::vector<std::vector<int>> patterns;
    if (!V.projective) {
        patterns.push_back(std::vector<int>(nc, -1));
    } else {
        for (int i = 0; i < nc; ++i) {
            std::vector<int> fixed(nc, -1);
            for (int j = 0; j < i; ++j) fixed[j] = 0;
            fixed[i] = 1;
            patterns.push_back(fixed);
        }
    }
    ZZ total_units = 0;
    for (const auto& fixed : patterns) {
        ZZ u = 1;
        for (int i = 0; i < nc; ++i)
            if (fixed[i] < 0) u *= K.q;
        total_units += u;
    }
    if (total_units > cfg.budget)
        throw BudgetError("point enumeration of " + total_units.get_str() + " candidates exceeds budget " +
                          std::to_string(cfg.budget));

    std::vector<std::vector<Coords>> points;
    std::vector<FieldElement> pt(nc);
    for (const auto& fixed : patterns) {
        std::vector<int> free;
        for (int i = 0; i < nc; ++i)
            if (fixed[i] < 0) free.push_back(i);
        long space = 1;
        for (size_t i = 0; i < free.size(); ++i) space *= K.q;
        for (long idx = 0; idx < space; ++idx) {
            std::vector<Coords> coords(nc);
            long rest = idx;
            for (int i = 0; i < nc; ++i) {
                if (fixed[i] == 0)
                    coords[i] = fx_zero(K);
                else if (fixed[i] == 1)
                    coords[i] = fx_one(K);
            }
            for (int fi : free) {
                coords[fi] = fx_element(K, rest % K.q);
                rest /= K.q;
            }
            bool ok = true;
            for (const auto& eq : V.equations) {
                Coords acc = fx_zero(K);
                std::vector<long> scratch;
                Coords t;
                for (const auto& [e, c] : eq.terms) {
                    Coords prod = c;
                    for (size_t i = 0; i < e.size(); ++i) {
                        if (!e[i]) continue;
                        Coords pwv = fx_pow(K, coords[i], (long)e[i]);
                        fx_mul_into(K, prod, pwv, t, scratch);
                        prod = t;
                    }
                    Coords s;
                    fx_add(K, acc, prod, s);
                    acc = s;
                }
                if (!fx_is_zero(acc)) {
                    ok = false;
                    break;
                }
            }
            if (ok && V.exclusion) {
                Coords acc = fx_zero(K);
                std::vector<long> scratch;
                Coords t;
                for (const auto& [e, c] : V.exclusion->terms) {
                    Coords prod = c;
                    for (size_t i = 0; i < e.size(); ++i) {
                        if (!e[i]) continue;
                        Coords pwv = fx_pow(K, coords[i], (long)e[i]);
                        fx_mul_into(K, prod, pwv, t, scratch);
                        prod = t;
                    }
                    Coords s;
                    fx_add(K, acc, prod, s);
                    acc = s;
                }
                if (fx_is_zero(acc)) ok = false;
            }
            if (ok) points.push_back(std::move(coords));
        }
    }
    return points;
}

std::vector<ClosedPoint> enumerate_closed_points(const VarietyDescriptor& V, int B, const EnumConfig& cfg) {
    std::vector<ClosedPoint> result;
    for (int e = 1; e <= B; ++e) {
        VarietyInstance inst = instance_over_extension(V, e);
        const auto& K = *inst.k;
        auto frob = frobenius_matrix(inst.k, V.base->a);
        std::vector<std::vector<Coords>> pts = enumerate_rational_points(inst, cfg);
        for (const auto& pt : pts) {
            // walk the orbit; keep pt only if it is the lexicographically
            // least member and the orbit has length exactly e
            std::vector<long> key0(pt.size());
            for (size_t i = 0; i < pt.size(); ++i) key0[i] = fx_index(K, pt[i]);
            std::vector<Coords> cur = pt;
            std::vector<long> key(pt.size());
            int d = 0;
            bool least = true;
            for (;;) {
                std::vector<Coords> nxt(cur.size());
                for (size_t i = 0; i < cur.size(); ++i) apply_matrix(K, *frob, cur[i], nxt[i]);
                ++d;
                for (size_t i = 0; i < nxt.size(); ++i) key[i] = fx_index(K, nxt[i]);
                if (key == key0) break;
                if (key < key0) {
                    least = false;
                    break;
                }
                cur = std::move(nxt);
                require(d <= e, "Frobenius orbit failed to close");
            }
            if (least && d == e) result.push_back({e, inst.k, pt});
        }
    }
    return result;
}

std::string closed_point_key(const ClosedPoint& x) {
    std::ostringstream out;
    out << x.degree << ":";
    for (size_t i = 0; i < x.rep.size(); ++i) {
        if (i) out << ",";
        out << fx_index(*x.k, x.rep[i]);
    }
    return out.str();
}

}  // namespace zetakit
