#pragma once

#include <map>
#include <string>
#include <vector>

#include "zetakit/ffield.hpp"
#include "zetakit/number.hpp"

namespace zetakit {

// Multivariate polynomial with integer coefficients over a fixed ordered
// variable list. Exponent vectors always have length vars.size(); zero
// coefficients are never stored. Coefficients are reduced mod p lazily at
// evaluation time, so one polynomial serves all characteristics.
struct MultiPoly {
    std::vector<std::string> vars;
    std::map<std::vector<unsigned>, ZZ> terms;

    bool is_zero() const { return terms.empty(); }
    long total_degree() const;
    bool is_homogeneous() const;

    void add_term(const std::vector<unsigned>& exps, const ZZ& c);
    MultiPoly& operator+=(const MultiPoly& other);
};

// Grammar: integer literals, names [a-zA-Z][a-zA-Z0-9_]*, + - * ^ with ^
// binding tightest, parentheses; implicit multiplication is a syntax error.
MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

std::string to_string(const MultiPoly& f);

// Full evaluation; point.size() must equal vars.size(), all in one field.
FieldElement evaluate_polynomial(const MultiPoly& f, const std::vector<FieldElement>& point);

// Polynomial over a fixed field in a fixed variable list.
struct FieldPoly {
    Field k;
    std::vector<std::string> vars;
    std::map<std::vector<unsigned>, Coords> terms;
};

// Reduce integer coefficients into k (no substitution).
FieldPoly reduce_mod_field(const MultiPoly& f, const Field& k);

// Substitute values for a subset of variables (by name); result is a
// FieldPoly over the remaining variables, in their original order.
FieldPoly partial_evaluate(const MultiPoly& f, const Field& k,
                           const std::vector<std::string>& bound_vars,
                           const std::vector<Coords>& values);

// Substitute each coordinate of a FieldPoly into a larger field.
FieldPoly embed_poly(const FieldPoly& f, const Field& big);

// Homogenize with a fresh variable appended, to degree = total degree.
MultiPoly homogenize(const MultiPoly& f, const std::string& new_var);

// Same polynomial over a permuted variable list.
MultiPoly reorder_vars(const MultiPoly& f, const std::vector<std::string>& new_order);

// Partial derivative with respect to one variable, coefficients in the field.
FieldPoly fieldpoly_partial(const FieldPoly& f, size_t var_index);

}  // namespace zetakit
