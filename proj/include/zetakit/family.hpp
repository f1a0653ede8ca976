#pragma once

#include <map>

#include "zetakit/slope.hpp"

namespace zetakit {

// A family f : Y -> X over an enumerable affine base. Fiber equations live
// over params + fiber_vars with integer coefficients; substituting any base
// point off the exclusion locus instantiates the fiber over the residue
// field of that point.
struct FamilyDescriptor {
    VarietyDescriptor base;  // affine, usually with an exclusion locus
    std::vector<std::string> params;
    std::vector<std::string> fiber_vars;
    bool fiber_projective = false;
    int fiber_n = 1;
    std::vector<MultiPoly> fiber_equations;
    int dn_max = 2, dd_max = 2;      // fiber zeta reconstruction bounds
    std::optional<int> fiber_genus;  // curve-structure completion mode

    int ncoords_fiber() const { return fiber_projective ? fiber_n + 1 : fiber_n; }
    // naive complete-intersection dimension of the fibers
    int fiber_dim() const { return std::max(1, fiber_n - (int)fiber_equations.size()); }
};

FamilyDescriptor load_family_file(const std::string& path);
FamilyDescriptor parse_family_text(const std::string& text, const std::string& origin);

// Fiber over x realized over F_{q^{deg(x) * ext}}.
VarietyInstance instantiate_fiber(const FamilyDescriptor& f, const ClosedPoint& x, int ext = 1);

struct CongruenceReport {
    bool ok = false;
    // least p-valuation among nonzero coefficient differences; empty when
    // the two series agree exactly
    std::optional<long> min_valuation;
};

struct StratumEntry {
    std::string point_key;
    int degree = 1;
    PureDegreeTable table;
};

struct StratificationReport {
    std::vector<StratumEntry> entries;
    // strata X(d_s, m) and X(D_s, m) as point-key lists
    std::map<std::pair<std::string, long>, std::vector<std::string>> strata_d;  // (slope, m) -> keys
    std::map<std::pair<std::string, long>, std::vector<std::string>> strata_D;
};

// Orchestrates fiber zetas (cached by closed-point key), moment and pure
// L-functions, the Dwork congruence checks, and stratification. Fiber work
// is planned against the enumeration budget upfront, so infeasible requests
// fail fast instead of running for hours.
class FamilyEngine {
  public:
    FamilyEngine(FamilyDescriptor f, EnumConfig cfg, int guard = 3);

    const FamilyDescriptor& desc() const { return f_; }

    std::vector<ClosedPoint> closed_points(int max_degree);
    RationalFunctionZ fiber_zeta(const ClosedPoint& x);

    // S_{k,d}(f), exactly, from fiber zeta power sums.
    ZZ moment_sum(long k, int d);
    // Direct-count cross-check value: -sum over X(F_{q^d}) of #Y_x(F_{q^{kd}}).
    ZZ moment_sum_direct(long k, int d);

    SeriesZ moment_L_series(long k, int B);
    ReconstructionReport moment_L_rational(long k, int B, int dn_max, int dd_max, int guard);

    SeriesMod pure_moment_L(long k, const QQ& slope, int B, int m);

    // L^[k + p^m M] vs L^[k + p^{m+1} M] mod p^m.
    CongruenceReport congruence_check(long k, long M, int m, int B);
    // pure_moment_L(k, 0) vs L^[k + p^m M] mod p^m.
    bool unit_root_limit_check(long k, long M, int m, int B);

    StratificationReport stratify(int max_degree);

    long total_space_count(int k);
    SeriesZ total_space_zeta(int B);

    long base_p() const { return f_.base.base->p; }

  private:
    FamilyDescriptor f_;
    EnumConfig cfg_;
    int guard_;
    std::map<int, std::vector<ClosedPoint>> points_by_degree_;
    std::map<std::string, RationalFunctionZ> zeta_cache_;

    void plan_fiber_work(int max_degree);
    RationalFunctionZ fiber_zeta_weil(const ClosedPoint& x, int genus);
    RationalFunctionZ fiber_zeta_reconstruct(const ClosedPoint& x);
    void check_fiber_smooth(const ClosedPoint& x);
};

// Per-prime Newton polygon scan of a y^2 = f(x) curve over the integers
// (deg f = 3). Bad primes (2, divisors of disc or of the leading
// coefficient) are skipped and reported.
struct OrdinaryScanRecord {
    long p = 0;
    bool bad = false;
    NewtonPolygon np;
    bool ordinary = false;
    ZZ trace = 0;
};

struct OrdinaryScanReport {
    std::vector<OrdinaryScanRecord> records;
    std::vector<QQ> envelope;  // observed lower envelope, y-values
    long good_primes = 0;
    long ordinary_count = 0;
    bool envelope_equals_hp = false;
};

OrdinaryScanReport ordinary_scan(const MultiPoly& affine_curve, const std::vector<long>& primes,
                                 const NewtonPolygon& hodge, const EnumConfig& cfg);

}  // namespace zetakit
