#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "zetakit/number.hpp"

namespace zetakit {

// F_{p^a} in the polynomial basis F_p[x]/(modulus). The modulus is the
// lexicographically least monic irreducible of degree a over F_p, reading
// coefficients from the highest power down, so descriptors are reproducible
// across runs. Descriptors are immutable and shared.
struct FieldDescriptor {
    long p = 0;
    int a = 1;
    std::vector<long> modulus;  // length a+1, monic, coefficients in [0,p)
    long q = 0;                 // p^a

    // x^{a+i} mod modulus for i = 0..a-2, precomputed for reduction.
    std::vector<std::vector<long>> redrows;
};

using Field = std::shared_ptr<const FieldDescriptor>;

// Cached; repeated calls return the identical descriptor.
Field make_extension_field(long p, int a);

// ---- element arithmetic on raw coordinate vectors (length a) ----

using Coords = std::vector<long>;

inline Coords fx_zero(const FieldDescriptor& K) { return Coords(K.a, 0); }
inline Coords fx_one(const FieldDescriptor& K) {
    Coords c(K.a, 0);
    c[0] = 1 % K.p;
    return c;
}
inline bool fx_is_zero(const Coords& x) {
    for (long v : x)
        if (v) return false;
    return true;
}

void fx_add(const FieldDescriptor& K, const Coords& x, const Coords& y, Coords& out);
void fx_sub(const FieldDescriptor& K, const Coords& x, const Coords& y, Coords& out);
void fx_neg(const FieldDescriptor& K, const Coords& x, Coords& out);
// scratch must have size >= 2a-1; out may not alias x or y.
void fx_mul_into(const FieldDescriptor& K, const Coords& x, const Coords& y, Coords& out,
                 std::vector<long>& scratch);
Coords fx_mul(const FieldDescriptor& K, const Coords& x, const Coords& y);
Coords fx_pow(const FieldDescriptor& K, Coords base, long e);
Coords fx_inv(const FieldDescriptor& K, const Coords& x);
Coords fx_from_int(const FieldDescriptor& K, const ZZ& n);  // constant, reduced mod p

long fx_index(const FieldDescriptor& K, const Coords& x);  // mixed-radix rank in [0,q)
Coords fx_element(const FieldDescriptor& K, long index);
void fx_element_into(const FieldDescriptor& K, long index, Coords& out);

// ---- public element type ----

struct FieldElement {
    Field owner;
    Coords coords;

    bool operator==(const FieldElement& o) const { return coords == o.coords && owner == o.owner; }
};

inline FieldElement make_element(const Field& k, Coords c) { return FieldElement{k, std::move(c)}; }

FieldElement fe_add(const FieldElement& x, const FieldElement& y);
FieldElement fe_sub(const FieldElement& x, const FieldElement& y);
FieldElement fe_mul(const FieldElement& x, const FieldElement& y);
FieldElement fe_inv(const FieldElement& x);
FieldElement fe_pow(const FieldElement& x, long e);

// e^{q^steps} where q = p^{base_a} and base_a divides the owner's degree.
FieldElement frobenius_map(const FieldElement& e, long steps, int base_a = 0);

// ---- subfield embeddings ----

// Image of the degree-a_small generator inside F_{p^{a_big}}; cached.
// a_small must divide a_big.
Coords embedding_generator_image(long p, int a_small, int a_big);

// Map coords over F_{p^{a_small}} to coords over F_{p^{a_big}}.
Coords embed_coords(long p, int a_small, int a_big, const Coords& x);

// ---- per-field lookup tables ----

// squares_table[i] = number of y with y^2 = element(i); 1 for zero, 2 for
// residues, 0 otherwise. Only built for odd p and q <= table cap; nullptr
// means callers must fall back to the Euler criterion.
std::shared_ptr<const std::vector<uint8_t>> squares_table(const Field& k);

// Matrix of x -> x^{p^{steps_a}} as an a x a matrix over F_p (column-major:
// column j = image of basis element x^j). Cached.
std::shared_ptr<const std::vector<long>> frobenius_matrix(const Field& k, int base_a);

void apply_matrix(const FieldDescriptor& K, const std::vector<long>& mat, const Coords& x, Coords& out);

// ---- polynomials over F_p (dense, ascending), used for moduli ----

bool is_irreducible_mod_p(const std::vector<long>& f, long p);

}  // namespace zetakit
