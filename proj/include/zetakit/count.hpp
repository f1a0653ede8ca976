#pragma once

#include "zetakit/variety.hpp"

namespace zetakit {

struct EnumConfig {
    long budget = 1L << 28;  // enumeration candidates per call
    int workers = 1;
};

// Exact number of points of the instance over its own field. Candidates are
// enumerated over all coordinates but the last free one; the last coordinate
// is resolved by univariate root counting, so a plane curve costs O(q)
// candidates rather than O(q^2). Deterministic for any worker count.
long count_points_instance(const VarietyInstance& V, const EnumConfig& cfg);

// #V(F_{q^k}); projective points counted once per line.
long count_points(const VarietyDescriptor& V, int k, const EnumConfig& cfg);

struct PointCountSequence {
    std::vector<long> counts;  // counts[i] = N_{i+1}, i = 0..B-1
    int B() const { return (int)counts.size(); }
};

PointCountSequence count_sequence(const VarietyDescriptor& V, int B, const EnumConfig& cfg);

// One Frobenius orbit of geometric points; rep is the lexicographically
// least orbit member under the coordinate index ordering.
struct ClosedPoint {
    int degree = 1;
    Field k;  // F_{q^degree}
    std::vector<Coords> rep;
};

// One representative per orbit of degree <= B, sorted by (degree, rep).
std::vector<ClosedPoint> enumerate_closed_points(const VarietyDescriptor& V, int B, const EnumConfig& cfg);

// All rational points of the instance over its own field (full tuples,
// normalized representatives for projective ambient).
std::vector<std::vector<Coords>> enumerate_rational_points(const VarietyInstance& V, const EnumConfig& cfg);

// Number of closed points per degree derived from a count sequence by
// Mobius inversion: c_e = (1/e) sum_{d|e} mu(e/d) N_d. Used both as an
// invariant check and for cheap work-planning.
std::vector<long> closed_point_counts_from_sequence(const PointCountSequence& seq);

std::string closed_point_key(const ClosedPoint& x);

}  // namespace zetakit
