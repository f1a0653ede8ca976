#pragma once

#include <json.hpp>

#include "zetakit/cycles.hpp"
#include "zetakit/family.hpp"

namespace zetakit {

using json = nlohmann::ordered_json;

// Deterministic reports: exact values are stringified, keys emitted in a
// fixed order, no floats in exact pipelines.

struct RunConfig {
    int B = 8;
    int guard = 3;
    int m = 2;
    long budget = 1L << 28;
    int workers = 1;
    int dn_max = -1;  // -1 = derive per operation
    int dd_max = -1;
    long M = 0;  // 0 = default p-1 (2 for p = 2)

    EnumConfig enum_cfg() const { return {budget, workers}; }
    long default_M(long p) const { return M > 0 ? M : (p == 2 ? 2 : p - 1); }
};

json config_json(const RunConfig& cfg);

uint64_t fnv1a(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

json series_json(const SeriesZ& s);
json series_json(const SeriesQ& s);
json series_json(const SeriesMod& s);
json rational_json(const RationalFunctionZ& R);
RationalFunctionZ rational_from_json(const json& j);
json polygon_json(const NewtonPolygon& np);
json table_json(const PureDegreeTable& t);
json factors_json(const std::vector<SlopeFactor>& fs);
json cycle_table_json(const CycleCountTable& t);
json pole_probe_json(const PoleProbeReport& r);
json scan_json(const OrdinaryScanReport& r);
json strat_json(const StratificationReport& r);
std::string strat_csv(const StratificationReport& r);

}  // namespace zetakit
