#pragma once

#include <optional>

#include "zetakit/series.hpp"

namespace zetakit {

// Integer polynomials in T, ascending coefficients, no trailing zeros;
// the empty vector is the zero polynomial.
using PolyZ = std::vector<ZZ>;
using PolyQ = std::vector<QQ>;

inline void pz_trim(PolyZ& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline long pz_deg(const PolyZ& f) { return (long)f.size() - 1; }

PolyZ pz_mul(const PolyZ& f, const PolyZ& g);
PolyZ pz_one();
std::string pz_str(const PolyZ& f);

void pq_trim(PolyQ& f);
PolyQ pq_from_z(const PolyZ& f);
PolyQ pq_rem(PolyQ f, const PolyQ& g);
PolyQ pq_gcd(PolyQ f, PolyQ g);  // monic
PolyQ pq_divexact(const PolyQ& f, const PolyQ& g);
PolyQ pq_derivative(const PolyQ& f);

// num / den with num(0) = den(0) = 1 and gcd(num, den) = 1 over Q.
struct RationalFunctionZ {
    PolyZ num = {ZZ(1)};
    PolyZ den = {ZZ(1)};

    long degree() const { return pz_deg(num) - pz_deg(den); }
    long total_degree() const { return pz_deg(num) + pz_deg(den); }

    bool operator==(const RationalFunctionZ& o) const { return num == o.num && den == o.den; }
};

// Canonicalize: reduce to coprime form, normalize constant terms to 1,
// assert integrality.
RationalFunctionZ make_rational_function(PolyZ num, PolyZ den);

SeriesZ expand_rational(const RationalFunctionZ& R, int B);

struct ReconstructionReport {
    std::optional<RationalFunctionZ> result;
    int guard_checked = 0;
    int used_coeffs = 0;
};

// Minimal-total-degree rational function matching c_0..c_B exactly, found
// by solving the Hankel system for denominator coefficients and verified
// against the whole window including the guard. Requires B >= dn_max +
// dd_max + guard and guard >= 1 (an unguarded solve can hallucinate
// rationality). Ties break toward least denominator degree, then least
// numerator degree.
ReconstructionReport reconstruct_rational(const SeriesZ& s, int dn_max, int dd_max, int guard);
ReconstructionReport reconstruct_rational(const std::vector<QQ>& coeffs, int dn_max, int dd_max, int guard);

// Power sums of the reciprocal roots of g = prod(1 - alpha_i T), g(0)=1,
// via Newton's identities; exact integers, no root extraction.
std::vector<ZZ> power_sums(const PolyZ& g, long upto);
ZZ power_sum_at(const PolyZ& g, long k);

// #X(F_{q^k}) = sum beta^k - sum alpha^k from Z = num/den.
ZZ counts_from_rational(const RationalFunctionZ& R, long k);

// prod(1 - alpha_i^k T) from g = prod(1 - alpha_i T), computed exactly as
// the reversed characteristic polynomial of C^k for the companion matrix C
// of the reversed input; pure integer arithmetic, no division by k.
PolyZ adams_transform(const PolyZ& g, long k);

}  // namespace zetakit
