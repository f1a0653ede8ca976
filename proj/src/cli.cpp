#include "zetakit/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "zetakit/report.hpp"

namespace zetakit {

namespace {

PolyZ parse_coeffs(const std::string& s) {
    PolyZ out;
    std::string cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            out.push_back(ZZ(cur));
            cur.clear();
        }
    };
    for (char c : s) {
        if (c == ',')
            flush();
        else if (!std::isspace((unsigned char)c))
            cur += c;
    }
    flush();
    if (out.empty()) throw UsageError("empty coefficient list");
    return out;
}

QQ parse_qq(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return QQ(ZZ(s));
    QQ r(ZZ(s.substr(0, slash)), ZZ(s.substr(slash + 1)));
    r.canonicalize();
    return r;
}

NewtonPolygon parse_polygon(const std::string& s) {
    NewtonPolygon np;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw UsageError("polygon segment must be slope:length");
        np.segments.push_back({parse_qq(part.substr(0, colon)), std::stol(part.substr(colon + 1))});
    }
    if (np.segments.empty()) throw UsageError("empty polygon");
    return np;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Common {
    RunConfig cfg;
    std::string out_path;
    std::string bounds;

    void attach(CLI::App* app) {
        app->add_option("--B", cfg.B, "series truncation order");
        app->add_option("--guard", cfg.guard, "reconstruction guard window");
        app->add_option("--m", cfg.m, "p-adic precision");
        app->add_option("--budget", cfg.budget, "enumeration candidate budget");
        app->add_option("--workers", cfg.workers, "worker count (results are worker-independent)");
        app->add_option("--M", cfg.M, "congruence parameter M (default p-1, or 2 for p=2)");
        app->add_option("--bounds", bounds, "reconstruction bounds dn,dd");
        app->add_option("--out", out_path, "write the JSON report to this path");
    }

    void validate() const {
        if (cfg.B < 1 || cfg.guard < 1 || cfg.m < 1 || cfg.budget < 1 || cfg.workers < 1)
            throw UsageError("B, guard, m, budget, and workers must all be >= 1");
    }

    std::pair<int, int> bounds_or_default() const {
        if (!bounds.empty()) {
            auto comma = bounds.find(',');
            if (comma == std::string::npos) throw UsageError("--bounds needs dn,dd");
            return {std::stoi(bounds.substr(0, comma)), std::stoi(bounds.substr(comma + 1))};
        }
        int half = (cfg.B - cfg.guard) / 2;
        if (half < 0) half = 0;
        return {half, half};
    }
};

void emit(const json& j, const Common& c, std::ostream& out) {
    std::string text = j.dump(2) + "\n";
    if (!c.out_path.empty()) {
        std::ofstream f(c.out_path);
        if (!f) throw InputError("cannot write " + c.out_path);
        f << text;
    } else {
        out << text;
    }
}

json base_report(const std::string& command, const Common& c, const std::string& input_bytes) {
    json j;
    j["command"] = command;
    j["config"] = config_json(c.cfg);
    j["input_hash"] = hash_hex(input_bytes);
    return j;
}

SlopeBase parse_abs(const std::string& abs, long p, const QQ& base_exp) {
    if (abs == "complex") return complex_base(p, base_exp);
    if (abs == "p") return padic_base(p, base_exp);
    if (abs.rfind("l=", 0) == 0) return ladic_base(std::stol(abs.substr(2)), QQ(1));
    throw UsageError("--abs must be complex, p, or l=<prime>");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"zetakit: zeta functions of varieties over finite fields, slopes, moments, cycles"};
    app.require_subcommand(1);

    // one Common per subcommand so option defaults stay independent
    std::map<std::string, Common> common;
    auto add_common = [&](CLI::App* sub) {
        Common& c = common[sub->get_name()];
        if (const char* env = std::getenv("ZETAKIT_BUDGET")) c.cfg.budget = std::atol(env);
        c.attach(sub);
        return &common[sub->get_name()];
    };

    // validate
    std::string validate_path;
    auto* sub_validate = app.add_subcommand("validate", "check an input file, never mutates state");
    sub_validate->add_option("file", validate_path)->required();
    add_common(sub_validate);

    // zeta
    std::string zeta_path;
    auto* sub_zeta = app.add_subcommand("zeta", "counts -> series -> rational reconstruction");
    sub_zeta->add_option("file", zeta_path)->required();
    add_common(sub_zeta);

    // np
    std::string np_poly, np_abs = "p", np_base_exp = "1";
    long np_p = 0;
    auto* sub_np = app.add_subcommand("np", "Newton polygon of an integer polynomial");
    sub_np->add_option("--poly", np_poly, "ascending coefficients, e.g. 1,3,5")->required();
    sub_np->add_option("--p", np_p, "valuation prime (for --abs p)");
    sub_np->add_option("--abs", np_abs, "p or l=<prime>");
    sub_np->add_option("--base-exp", np_base_exp, "slope normalization a/b");
    add_common(sub_np);

    // slopes
    std::string sl_in, sl_num, sl_den, sl_abs = "p", sl_base_exp;
    long sl_p = 0;
    int sl_dim = -1;
    double sl_tol = 1e-6;
    auto* sub_slopes = app.add_subcommand("slopes", "pure degree table for a chosen absolute value");
    sub_slopes->add_option("--in", sl_in, "zeta report JSON produced by the zeta subcommand");
    sub_slopes->add_option("--num", sl_num, "numerator coefficients");
    sub_slopes->add_option("--den", sl_den, "denominator coefficients");
    sub_slopes->add_option("--p", sl_p, "characteristic (needed with --num/--den)");
    sub_slopes->add_option("--abs", sl_abs, "complex, p, or l=<prime>");
    sub_slopes->add_option("--n", sl_dim, "variety dimension (slope-set membership assertion)");
    sub_slopes->add_option("--tol", sl_tol, "complex snap tolerance");
    sub_slopes->add_option("--base-exp", sl_base_exp, "slope normalization a/b");
    add_common(sub_slopes);

    // split
    std::string sp_poly, sp_base_exp = "1";
    long sp_p = 0;
    auto* sub_split = app.add_subcommand("split", "slope-pure factorization mod p^m");
    sub_split->add_option("--poly", sp_poly)->required();
    sub_split->add_option("--p", sp_p)->required();
    sub_split->add_option("--base-exp", sp_base_exp);
    add_common(sub_split);

    // moments
    std::string mom_path;
    long mom_k = 1;
    auto* sub_moments = app.add_subcommand("moments", "k-th power moment L-function of a family");
    sub_moments->add_option("file", mom_path)->required();
    sub_moments->add_option("--k", mom_k)->required();
    add_common(sub_moments);

    // purelfn
    std::string pl_path, pl_slope = "0";
    long pl_k = 1;
    auto* sub_pure = app.add_subcommand("purelfn", "pure slope-s moment L-function mod p^m");
    sub_pure->add_option("file", pl_path)->required();
    sub_pure->add_option("--k", pl_k)->required();
    sub_pure->add_option("--s", pl_slope, "slope, e.g. 0 or 1/2");
    add_common(sub_pure);

    // congruence
    std::string cg_path;
    long cg_k = 1;
    auto* sub_cong = app.add_subcommand("congruence", "L^[k+p^m M] vs L^[k+p^{m+1} M] mod p^m");
    sub_cong->add_option("file", cg_path)->required();
    sub_cong->add_option("--k", cg_k);
    add_common(sub_cong);

    // unitroot
    std::string ur_path;
    long ur_k = 1;
    auto* sub_unit = app.add_subcommand("unitroot", "slope-0 L-function vs the high-moment limit");
    sub_unit->add_option("file", ur_path)->required();
    sub_unit->add_option("--k", ur_k);
    add_common(sub_unit);

    // stratify
    std::string st_path, st_csv;
    int st_bbase = 1;
    auto* sub_strat = app.add_subcommand("stratify", "fiber slope tables over base closed points");
    sub_strat->add_option("file", st_path)->required();
    sub_strat->add_option("--B-base", st_bbase, "max closed point degree");
    sub_strat->add_option("--csv", st_csv, "also write strata as CSV");
    add_common(sub_strat);

    // cycles
    int cy_n = 2, cy_dmax = 3, cy_brute = 0, cy_r = 0;
    long cy_q = 2;
    bool cy_divisors = false;
    std::string cy_from_n, cy_from_m, cy_from_w;
    auto* sub_cycles = app.add_subcommand("cycles", "cycle count tables and the cycle zeta series");
    sub_cycles->add_flag("--divisors", cy_divisors, "divisors on P^n over F_q");
    sub_cycles->add_option("--n", cy_n, "ambient projective dimension");
    sub_cycles->add_option("--q", cy_q, "field size (prime)");
    sub_cycles->add_option("--dmax", cy_dmax, "table depth");
    sub_cycles->add_option("--brute-dmax", cy_brute, "verify N(d) by brute force up to this degree");
    sub_cycles->add_option("--r", cy_r, "cycle dimension label for --from-* tables");
    sub_cycles->add_option("--from-n", cy_from_n, "build table from prime-cycle counts");
    sub_cycles->add_option("--from-m", cy_from_m, "build table from effective counts");
    sub_cycles->add_option("--from-w", cy_from_w, "build table from weighted counts");
    add_common(sub_cycles);

    // poleprobe
    int pp_n = 2, pp_rhomax = 3, pp_dmax = 12, pp_window = 0;
    long pp_q = 2, pp_p = 2;
    bool pp_divisors = false;
    std::string pp_from_m;
    auto* sub_pole = app.add_subcommand("poleprobe", "p-adic pole order probe at T = 1");
    sub_pole->add_flag("--divisors", pp_divisors);
    sub_pole->add_option("--n", pp_n);
    sub_pole->add_option("--q", pp_q);
    sub_pole->add_option("--p", pp_p)->required();
    sub_pole->add_option("--rhomax", pp_rhomax);
    sub_pole->add_option("--dmax", pp_dmax);
    sub_pole->add_option("--window", pp_window);
    sub_pole->add_option("--from-m", pp_from_m, "explicit effective counts M(1),M(2),...");
    add_common(sub_pole);

    // ordinary-scan
    std::string os_poly, os_vars = "x,y", os_hp = "0:1,1:1", os_primes;
    long os_pmax = 0;
    auto* sub_scan = app.add_subcommand("ordinary-scan", "Newton vs Hodge polygon scan over primes");
    sub_scan->add_option("--poly", os_poly, "affine curve y^2 = f(x) as an expression")->required();
    sub_scan->add_option("--vars", os_vars, "variable names, default x,y");
    sub_scan->add_option("--hp", os_hp, "Hodge polygon as slope:len,...");
    sub_scan->add_option("--pmax", os_pmax, "scan all primes <= pmax");
    sub_scan->add_option("--primes", os_primes, "explicit prime list");
    add_common(sub_scan);

    std::vector<std::string> argv = args;
    try {
        std::vector<const char*> cargs;
        cargs.push_back("zetakit");
        for (const auto& a : argv) cargs.push_back(a.c_str());
        app.parse((int)cargs.size(), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        for (auto& [name, c] : common)
            if (app.get_subcommand(name)->parsed()) c.validate();

        if (sub_validate->parsed()) {
            Common& c = common["validate"];
            std::string text = read_file(validate_path);
            std::vector<Diagnostic> diags;
            if (text.find("params=") != std::string::npos || text.find("fiber_vars=") != std::string::npos) {
                try {
                    parse_family_text(text, validate_path);
                } catch (const ZkError& e) {
                    diags.push_back({0, e.what()});
                }
            } else {
                diags = validate_variety_text(text);
            }
            json j = base_report("validate", c, text);
            json d = json::array();
            for (const auto& diag : diags) {
                json jd;
                jd["line"] = diag.line;
                jd["message"] = diag.message;
                d.push_back(jd);
            }
            j["diagnostics"] = d;
            emit(j, c, out);
            return diags.empty() ? 0 : 2;
        }

        if (sub_zeta->parsed()) {
            Common& c = common["zeta"];
            std::string text = read_file(zeta_path);
            VarietyDescriptor V = parse_variety_text(text, zeta_path);
            auto [dn, dd] = c.bounds_or_default();
            PointCountSequence seq = count_sequence(V, c.cfg.B, c.cfg.enum_cfg());
            SeriesZ z = zeta_series_from_counts(seq);
            ReconstructionReport rep = reconstruct_rational(z, dn, dd, c.cfg.guard);
            json j = base_report("zeta", c, text);
            j["p"] = V.base->p;
            j["a"] = V.base->a;
            json counts = json::array();
            for (long n : seq.counts) counts.push_back(n);
            j["counts"] = counts;
            j["series"] = series_json(z);
            j["reconstruction"]["used_coeffs"] = rep.used_coeffs;
            j["reconstruction"]["guard_checked"] = rep.guard_checked;
            if (rep.result) {
                j["rational"] = rational_json(*rep.result);
            } else {
                j["rational"] = nullptr;
            }
            emit(j, c, out);
            return rep.result ? 0 : 4;
        }

        if (sub_np->parsed()) {
            Common& c = common["np"];
            PolyZ g = parse_coeffs(np_poly);
            if (np_abs == "complex") throw UsageError("np is non-archimedean; use --abs p or l=<prime>");
            SlopeBase base = parse_abs(np_abs, np_p, parse_qq(np_base_exp));
            if (base.kind == SlopeBase::Kind::PAdic && np_p == 0) throw UsageError("np --abs p needs --p");
            json j = base_report("np", c, np_poly);
            j["polygon"] = polygon_json(newton_polygon(g, base));
            emit(j, c, out);
            return 0;
        }

        if (sub_slopes->parsed()) {
            Common& c = common["slopes"];
            RationalFunctionZ R;
            long p = sl_p;
            QQ base_exp(1);
            std::string hashed;
            if (!sl_in.empty()) {
                std::string text = read_file(sl_in);
                hashed = text;
                json in = json::parse(text);
                R = rational_from_json(in.at("rational"));
                p = in.at("p").get<long>();
                base_exp = QQ(in.at("a").get<long>());
            } else {
                if (sl_num.empty() || sl_den.empty() || sl_p == 0)
                    throw UsageError("slopes needs --in or (--num, --den, --p)");
                R = make_rational_function(parse_coeffs(sl_num), parse_coeffs(sl_den));
                hashed = sl_num + "/" + sl_den;
            }
            if (!sl_base_exp.empty()) base_exp = parse_qq(sl_base_exp);
            SlopeBase base = parse_abs(sl_abs, p, base_exp);
            std::optional<int> dim;
            if (sl_dim >= 0) dim = sl_dim;
            PureDegreeTable t = pure_degrees(R, base, dim, sl_tol);
            json j = base_report("slopes", c, hashed);
            j["abs"] = sl_abs;
            j["table"] = table_json(t);
            if (base.kind == SlopeBase::Kind::Complex) j["tol"] = sl_tol;
            emit(j, c, out);
            return 0;
        }

        if (sub_split->parsed()) {
            Common& c = common["split"];
            PolyZ g = parse_coeffs(sp_poly);
            auto factors = slope_split(g, sp_p, c.cfg.m, parse_qq(sp_base_exp));
            json j = base_report("split", c, sp_poly);
            j["p"] = sp_p;
            j["m"] = c.cfg.m;
            j["factors"] = factors_json(factors);
            emit(j, c, out);
            return 0;
        }

        auto family_engine = [&](const std::string& path, const Common& c, std::string& text_out) {
            text_out = read_file(path);
            FamilyDescriptor f = parse_family_text(text_out, path);
            return FamilyEngine(f, c.cfg.enum_cfg(), c.cfg.guard);
        };

        if (sub_moments->parsed()) {
            Common& c = common["moments"];
            std::string text;
            FamilyEngine eng = family_engine(mom_path, c, text);
            auto [dn, dd] = c.bounds_or_default();
            SeriesZ L = eng.moment_L_series(mom_k, c.cfg.B);
            ReconstructionReport rep = reconstruct_rational(L, dn, dd, c.cfg.guard);
            json j = base_report("moments", c, text);
            j["k"] = mom_k;
            j["series"] = series_json(L);
            j["reconstruction"]["used_coeffs"] = rep.used_coeffs;
            j["reconstruction"]["guard_checked"] = rep.guard_checked;
            if (rep.result) {
                j["rational"] = rational_json(*rep.result);
                long p = eng.base_p();
                int a = eng.desc().base.base->a;
                // zeros and poles are q-Weil numbers of weight up to
                // 2(km + n), so slope membership is checked with respect
                // to q itself
                int dim_bound = (int)mom_k * eng.desc().fiber_dim() + eng.desc().base.n;
                j["complex_table"] =
                    table_json(complex_weight_table(*rep.result, dim_bound, 1e-6, p, QQ(a)));
                j["padic_table"] = table_json(pure_degrees(*rep.result, padic_base(p, QQ(a))));
            } else {
                j["rational"] = nullptr;
            }
            emit(j, c, out);
            return rep.result ? 0 : 4;
        }

        if (sub_pure->parsed()) {
            Common& c = common["purelfn"];
            std::string text;
            FamilyEngine eng = family_engine(pl_path, c, text);
            SeriesMod L = eng.pure_moment_L(pl_k, parse_qq(pl_slope), c.cfg.B, c.cfg.m);
            json j = base_report("purelfn", c, text);
            j["k"] = pl_k;
            j["s"] = parse_qq(pl_slope).get_str();
            j["series"] = series_json(L);
            emit(j, c, out);
            return 0;
        }

        if (sub_cong->parsed()) {
            Common& c = common["congruence"];
            std::string text;
            FamilyEngine eng = family_engine(cg_path, c, text);
            long M = c.cfg.default_M(eng.base_p());
            CongruenceReport rep = eng.congruence_check(cg_k, M, c.cfg.m, c.cfg.B);
            json j = base_report("congruence", c, text);
            j["k"] = cg_k;
            j["M"] = M;
            j["ok"] = rep.ok;
            if (rep.min_valuation)
                j["min_valuation"] = *rep.min_valuation;
            else
                j["min_valuation"] = nullptr;
            emit(j, c, out);
            return 0;
        }

        if (sub_unit->parsed()) {
            Common& c = common["unitroot"];
            std::string text;
            FamilyEngine eng = family_engine(ur_path, c, text);
            long M = c.cfg.default_M(eng.base_p());
            bool ok = eng.unit_root_limit_check(ur_k, M, c.cfg.m, c.cfg.B);
            json j = base_report("unitroot", c, text);
            j["k"] = ur_k;
            j["M"] = M;
            j["ok"] = ok;
            emit(j, c, out);
            return 0;
        }

        if (sub_strat->parsed()) {
            Common& c = common["stratify"];
            std::string text;
            FamilyEngine eng = family_engine(st_path, c, text);
            StratificationReport rep = eng.stratify(st_bbase);
            json j = base_report("stratify", c, text);
            j["B_base"] = st_bbase;
            j["report"] = strat_json(rep);
            emit(j, c, out);
            if (!st_csv.empty()) {
                std::ofstream f(st_csv);
                if (!f) throw InputError("cannot write " + st_csv);
                f << strat_csv(rep);
            }
            return 0;
        }

        if (sub_cycles->parsed()) {
            Common& c = common["cycles"];
            CycleCountTable table;
            std::string hashed;
            if (cy_divisors) {
                table = divisor_table(cy_n, cy_q, cy_dmax);
                hashed = "divisors n=" + std::to_string(cy_n) + " q=" + std::to_string(cy_q);
            } else if (!cy_from_n.empty()) {
                table = table_from_n(cy_r, parse_coeffs(cy_from_n));
                hashed = cy_from_n;
            } else if (!cy_from_m.empty()) {
                table = table_from_m(cy_r, parse_coeffs(cy_from_m));
                hashed = cy_from_m;
            } else if (!cy_from_w.empty()) {
                std::vector<ZZ> W = parse_coeffs(cy_from_w);
                table.r = cy_r;
                table.B = (int)W.size();
                table.N = n_from_w(W);
                table.M = m_from_w(W);
                table.W = std::move(W);
                hashed = cy_from_w;
            } else {
                throw UsageError("cycles needs --divisors or one of --from-n/--from-m/--from-w");
            }
            SeriesZ series = cycle_zeta_series(table, table.B);  // asserts the four expressions agree
            json j = base_report("cycles", c, hashed);
            j["table"] = cycle_table_json(table);
            j["series"] = series_json(series);
            j["identities_verified"] = true;
            if (cy_brute > 0) {
                json brute = json::array();
                for (int d = 1; d <= cy_brute; ++d) {
                    long nb = prime_divisor_bruteforce(cy_n, d, cy_q, c.cfg.budget);
                    require(ZZ(nb) == table.N[(size_t)d - 1],
                            "brute-force prime divisor count disagrees at degree " + std::to_string(d));
                    brute.push_back(nb);
                }
                j["brute_checked"] = brute;
            }
            emit(j, c, out);
            return 0;
        }

        if (sub_pole->parsed()) {
            Common& c = common["poleprobe"];
            std::function<ZZ(long)> gen;
            std::string hashed;
            if (pp_divisors) {
                int n = pp_n;
                long q = pp_q;
                gen = [n, q](long d) { return d == 0 ? ZZ(1) : effective_divisor_count(n, (int)d, q); };
                hashed = "divisors n=" + std::to_string(pp_n) + " q=" + std::to_string(pp_q);
            } else if (!pp_from_m.empty()) {
                auto M = parse_coeffs(pp_from_m);
                gen = [M](long d) { return d == 0 ? ZZ(1) : (d <= (long)M.size() ? M[(size_t)d - 1] : ZZ(0)); };
                hashed = pp_from_m;
            } else {
                throw UsageError("poleprobe needs --divisors or --from-m");
            }
            PoleProbeReport rep = pole_order_probe(gen, pp_p, c.cfg.m, pp_rhomax, pp_dmax, pp_window);
            json j = base_report("poleprobe", c, hashed);
            j["p"] = pp_p;
            j["m"] = c.cfg.m;
            j["report"] = pole_probe_json(rep);
            emit(j, c, out);
            return 0;
        }

        if (sub_scan->parsed()) {
            Common& c = common["ordinary-scan"];
            std::vector<std::string> vars;
            {
                std::istringstream in(os_vars);
                std::string part;
                while (std::getline(in, part, ',')) vars.push_back(part);
            }
            MultiPoly curve = parse_polynomial(os_poly, vars);
            std::vector<long> primes;
            if (!os_primes.empty()) {
                std::istringstream in(os_primes);
                std::string part;
                while (std::getline(in, part, ',')) primes.push_back(std::stol(part));
            } else if (os_pmax >= 2) {
                for (long p = 2; p <= os_pmax; ++p)
                    if (is_prime(p)) primes.push_back(p);
            } else {
                throw UsageError("ordinary-scan needs --pmax or --primes");
            }
            NewtonPolygon hp = parse_polygon(os_hp);
            OrdinaryScanReport rep = ordinary_scan(curve, primes, hp, c.cfg.enum_cfg());
            json j = base_report("ordinary-scan", c, os_poly);
            j["hp"] = polygon_json(hp);
            j["report"] = scan_json(rep);
            emit(j, c, out);
            return 0;
        }

        err << "no subcommand\n";
        return 1;
    } catch (const ZkError& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 5;
    }
}

}  // namespace zetakit
