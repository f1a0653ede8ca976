#pragma once

#include <complex>

#include "zetakit/ratfun.hpp"

namespace zetakit {

// The absolute-value choice driving every slope computation. Slopes are
// ord_prime(.) / base_exponent in the non-archimedean cases and
// log_{p^base_exponent} |.| in the complex case, so base_exponent = a*e*k
// realizes slopes with respect to the base q^{e*k}, q = p^a. No floating
// point ever touches the non-complex paths.
struct SlopeBase {
    enum class Kind { Complex, LAdic, PAdic } kind = Kind::PAdic;
    long prime = 0;
    QQ base_exponent = QQ(1);
};

SlopeBase complex_base(long p, const QQ& base_exponent = QQ(1));
SlopeBase ladic_base(long ell, const QQ& base_exponent = QQ(1));
SlopeBase padic_base(long p, const QQ& base_exponent = QQ(1));

struct NewtonPolygon {
    std::vector<std::pair<QQ, long>> segments;  // (slope, length), strictly increasing

    long length() const {
        long t = 0;
        for (const auto& [s, l] : segments) t += l;
        return t;
    }
    bool operator==(const NewtonPolygon& o) const { return segments == o.segments; }
};

// Lower convex hull of (i, ord_prime(a_i)); zero coefficients contribute no
// hull point. Requires a nonzero constant term.
NewtonPolygon newton_polygon(const PolyZ& g, const SlopeBase& base);

// Slope multiset as a sorted map.
std::vector<std::pair<QQ, long>> polygon_slope_counts(const NewtonPolygon& np);

// Cumulative heights y(0), y(1), ..., y(length).
std::vector<QQ> polygon_y_values(const NewtonPolygon& np);

// Hull through the given y-values (used to rebuild envelopes).
NewtonPolygon polygon_from_y_values(const std::vector<QQ>& ys);

struct PureDegreeRow {
    QQ slope;
    long d = 0;  // degree of the slope-s part
    long D = 0;  // total degree of the slope-s part
};

struct PureDegreeTable {
    std::vector<PureDegreeRow> rows;  // sorted by slope
    ZZ denominator_report = 1;        // lcm of slope denominators
};

// d_s and D_s per slope. Non-complex bases read the Newton polygons of
// num and den; the complex base computes root moduli numerically (dim
// required there). When dim is supplied, slope membership in {0,1/2,...,n}
// (complex) or [0,n] (p-adic) is asserted.
PureDegreeTable pure_degrees(const RationalFunctionZ& R, const SlopeBase& base,
                             std::optional<int> dim = std::nullopt, double tol = 1e-6);

// Numerical root-modulus clustering with snapping to {0, 1/2, ..., n};
// also checks that each slope cluster of num and den multiplies back to a
// near-integer polynomial. Verification-layer numerics only.
PureDegreeTable complex_weight_table(const RationalFunctionZ& R, int n, double tol, long p,
                                     const QQ& base_exponent);

// True iff all zeros and poles are ell-adic units (both polygons flat at 0).
bool ladic_unit_check(const RationalFunctionZ& R, long ell);

struct SlopeFactor {
    QQ slope;     // in base_exponent-normalized units
    PolyZ coeffs; // residues mod p^m, constant term 1
    int m = 0;
};

// Factor g (g(0) = 1) into slope-pure pieces mod p^m, one per polygon
// segment, by rescaling the front (or back) integer slope to zero and
// Hensel-lifting the unit-root part. Single-segment inputs return
// themselves reduced mod p^m. Splitting fails honestly (reporting achieved
// precision) when both polygon ends carry fractional slopes.
std::vector<SlopeFactor> slope_split(const PolyZ& g, long p, int m, const QQ& base_exponent = QQ(1));

// Roots of a real-coefficient polynomial (ascending, nonzero lead) via
// squarefree decomposition + Durand-Kerner; multiplicities preserved.
std::vector<std::pair<std::complex<double>, long>> complex_roots(const PolyZ& g);

}  // namespace zetakit
