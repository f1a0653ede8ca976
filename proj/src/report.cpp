#include "zetakit/report.hpp"

#include <iomanip>
#include <sstream>

namespace zetakit {

json config_json(const RunConfig& cfg) {
    json j;
    j["B"] = cfg.B;
    j["guard"] = cfg.guard;
    j["m"] = cfg.m;
    j["budget"] = cfg.budget;
    // worker count deliberately omitted: reports are worker-independent
    if (cfg.dn_max >= 0) j["dn_max"] = cfg.dn_max;
    if (cfg.dd_max >= 0) j["dd_max"] = cfg.dd_max;
    if (cfg.M > 0) j["M"] = cfg.M;
    return j;
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(const std::string& bytes) {
    std::ostringstream out;
    out << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes);
    return out.str();
}

namespace {

json coeff_list(const std::vector<ZZ>& c) {
    json a = json::array();
    for (const auto& v : c) a.push_back(v.get_str());
    return a;
}

}  // namespace

json series_json(const SeriesZ& s) {
    json j;
    j["B"] = s.B;
    j["ring"] = "integer";
    j["coeffs"] = coeff_list(s.c);
    return j;
}

json series_json(const SeriesQ& s) {
    json j;
    j["B"] = s.B;
    j["ring"] = "exact-rational";
    json a = json::array();
    for (const auto& v : s.c) a.push_back(v.get_str());
    j["coeffs"] = a;
    return j;
}

json series_json(const SeriesMod& s) {
    json j;
    j["B"] = s.B;
    j["ring"] = "mod " + std::to_string(s.ring.p) + "^" + std::to_string(s.ring.m);
    j["coeffs"] = coeff_list(s.c);
    return j;
}

json rational_json(const RationalFunctionZ& R) {
    json j;
    j["num"] = coeff_list(R.num);
    j["den"] = coeff_list(R.den);
    return j;
}

RationalFunctionZ rational_from_json(const json& j) {
    PolyZ num, den;
    for (const auto& v : j.at("num")) num.push_back(ZZ(v.get<std::string>()));
    for (const auto& v : j.at("den")) den.push_back(ZZ(v.get<std::string>()));
    return make_rational_function(num, den);
}

json polygon_json(const NewtonPolygon& np) {
    json segs = json::array();
    for (const auto& [s, l] : np.segments) {
        json seg;
        seg["slope"] = s.get_str();
        seg["length"] = l;
        segs.push_back(seg);
    }
    json j;
    j["segments"] = segs;
    return j;
}

json table_json(const PureDegreeTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        row["slope"] = r.slope.get_str();
        row["d"] = r.d;
        row["D"] = r.D;
        rows.push_back(row);
    }
    json j;
    j["rows"] = rows;
    j["denominator_report"] = t.denominator_report.get_str();
    return j;
}

json factors_json(const std::vector<SlopeFactor>& fs) {
    json a = json::array();
    for (const auto& f : fs) {
        json j;
        j["slope"] = f.slope.get_str();
        j["m"] = f.m;
        j["coeffs"] = coeff_list(f.coeffs);
        a.push_back(j);
    }
    return a;
}

json cycle_table_json(const CycleCountTable& t) {
    json j;
    j["r"] = t.r;
    j["B"] = t.B;
    j["N"] = coeff_list(t.N);
    j["M"] = coeff_list(t.M);
    j["W"] = coeff_list(t.W);
    return j;
}

json pole_probe_json(const PoleProbeReport& r) {
    json j;
    j["evidence"] = "stabilization of truncated partial sums; numerical evidence, not proof";
    if (r.rho)
        j["rho"] = *r.rho;
    else
        j["rho"] = nullptr;
    j["stabilized_value"] = r.stabilized_value.get_str();
    j["window"] = r.window;
    j["D_max"] = r.D_max;
    json traces = json::array();
    for (const auto& t : r.partial_sums) traces.push_back(coeff_list(t));
    j["partial_sums"] = traces;
    return j;
}

json scan_json(const OrdinaryScanReport& r) {
    json recs = json::array();
    for (const auto& rec : r.records) {
        json jr;
        jr["p"] = rec.p;
        jr["bad"] = rec.bad;
        if (!rec.bad) {
            jr["np"] = polygon_json(rec.np);
            jr["ordinary"] = rec.ordinary;
            jr["trace"] = rec.trace.get_str();
        }
        recs.push_back(jr);
    }
    json j;
    j["records"] = recs;
    json env = json::array();
    for (const auto& y : r.envelope) env.push_back(y.get_str());
    j["observed_lower_envelope"] = env;
    j["good_primes"] = r.good_primes;
    j["ordinary_count"] = r.ordinary_count;
    if (r.good_primes > 0) {
        std::ostringstream frac;
        frac << r.ordinary_count << "/" << r.good_primes;
        j["ordinary_fraction"] = frac.str();
    }
    j["envelope_equals_hp"] = r.envelope_equals_hp;
    return j;
}

json strat_json(const StratificationReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je;
        je["point"] = e.point_key;
        je["degree"] = e.degree;
        je["table"] = table_json(e.table);
        entries.push_back(je);
    }
    json j;
    j["entries"] = entries;
    auto strata = [](const std::map<std::pair<std::string, long>, std::vector<std::string>>& m) {
        json a = json::array();
        for (const auto& [key, pts] : m) {
            json js;
            js["slope"] = key.first;
            js["value"] = key.second;
            js["points"] = pts;
            a.push_back(js);
        }
        return a;
    };
    j["strata_d"] = strata(r.strata_d);
    j["strata_D"] = strata(r.strata_D);
    return j;
}

std::string strat_csv(const StratificationReport& r) {
    std::ostringstream out;
    out << "point,slope,d,D\n";
    for (const auto& e : r.entries)
        for (const auto& row : e.table.rows)
            out << e.point_key << "," << row.slope.get_str() << "," << row.d << "," << row.D << "\n";
    return out.str();
}

}  // namespace zetakit
