#pragma once

#include "zetakit/ffield.hpp"

namespace zetakit {

// Dense univariate polynomials over a finite field, coefficients ascending.
// The zero polynomial is the empty vector.
using FPoly = std::vector<Coords>;

inline void fp_trim(FPoly& f) {
    while (!f.empty() && fx_is_zero(f.back())) f.pop_back();
}

FPoly fp_mul(const FieldDescriptor& K, const FPoly& f, const FPoly& g);
FPoly fp_rem(const FieldDescriptor& K, FPoly f, const FPoly& g);  // g monic
FPoly fp_monic(const FieldDescriptor& K, FPoly f);
FPoly fp_gcd(const FieldDescriptor& K, FPoly f, FPoly g);  // monic result
FPoly fp_powmod(const FieldDescriptor& K, FPoly base, ZZ e, const FPoly& m);
FPoly fp_derivative(const FieldDescriptor& K, const FPoly& f);

// Number of distinct roots of f in the field; f must be nonzero.
long fp_distinct_roots(const Field& k, const FPoly& f);

// Exact resultant of f and g over the field (Euclidean remainder chain).
Coords fp_resultant(const FieldDescriptor& K, FPoly f, FPoly g);

}  // namespace zetakit
