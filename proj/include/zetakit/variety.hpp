#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetakit/multipoly.hpp"

namespace zetakit {

// A variety presented over F_q = F_{p^a}: affine n-space or P^n, cut out by
// integer-coefficient equations, optionally minus the vanishing locus of an
// exclusion polynomial (open subvariety).
struct VarietyDescriptor {
    Field base;
    bool projective = false;
    int n = 1;  // affine dimension, or n for P^n
    std::vector<std::string> vars;
    std::vector<MultiPoly> equations;
    std::optional<MultiPoly> exclusion;

    int ncoords() const { return projective ? n + 1 : n; }
};

// Same data with coefficients realized in a concrete field; what the
// enumeration engine actually consumes.
struct VarietyInstance {
    Field k;
    bool projective = false;
    int ncoords = 1;
    std::vector<FieldPoly> equations;
    std::optional<FieldPoly> exclusion;
};

// Realize V over F_{q^j} (integer coefficients reduce mod p).
VarietyInstance instance_over_extension(const VarietyDescriptor& V, int j);

// Text format: header lines p=, a=, ambient=, n=, vars=, optional exclude=,
// then one polynomial per line. '#' starts a comment.
VarietyDescriptor load_variety_file(const std::string& path);
VarietyDescriptor parse_variety_text(const std::string& text, const std::string& origin);

struct Diagnostic {
    int line;  // 0 when not tied to a line
    std::string message;
};

// Structural checks without mutation: grammar, prime p, homogeneity for
// projective ambient, modulus irreducibility, exclusion arity.
std::vector<Diagnostic> validate_variety_text(const std::string& text);

}  // namespace zetakit
