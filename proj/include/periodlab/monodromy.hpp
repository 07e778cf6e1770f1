#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "periodlab/period.hpp"

namespace periodlab {

// Element of the generated arithmetic group: integer matrix with
// g^T G g = G, det g = +1, preserving the orientation of the positive part.
// word holds 1-based generator indices (negative = inverse).
struct IntegralIsometry {
  Matrix<Integer> matrix;
  std::vector<int> word;
};

// True iff g preserves the connected component SO^+: the determinant of the
// Gram projection [q(p_i, g p_j)] onto the fixed maximal positive frame is
// positive.  Throws when g is not an isometry of det +1.
bool so_plus_membership(const QuadraticLattice& L, const Matrix<Integer>& g);

// All products of two distinct integral reflections rho_u rho_w with
// 0 < |q(v,v)| <= norm_bound and sup-norm(v) <= height_bound that land in
// SO^+, deduplicated, in a deterministic order.
std::vector<IntegralIsometry> reflection_generators(const LatticePtr& L, long norm_bound,
                                                    long height_bound);

// Exact inverse G^{-1} g^T G of an integral isometry.
Matrix<Integer> isometry_inverse(const QuadraticLattice& L, const Matrix<Integer>& g);

struct OrbitPoint {
  PositivePlane plane;
  std::vector<int> word;
  int depth = 0;
  // g*v for the intermediate witness v of the base, transported along the
  // word; present only when the base classifies as intermediate.
  std::optional<FieldVector> witness;
};

struct OrbitSample {
  PositivePlane base;
  std::vector<OrbitPoint> points;  // sorted by (depth, canonical key)
  int depth = 0;
  bool truncated = false;
  std::vector<std::size_t> counts;  // ball size per depth prefix 0..depth
};

// Breadth-first ball of the generated group acting on the base plane, with
// exact dedup by oriented-plane key; stops at cap points.
OrbitSample orbit_ball(const PositivePlane& base, const std::vector<IntegralIsometry>& gens,
                       int depth, std::size_t cap);

struct ClosureReport {
  std::vector<int> depths;
  std::vector<std::size_t> counts;
  std::optional<double> min_gap;
  std::vector<double> covering_radius;
  std::optional<double> witness_alignment;
};

// Numerical shadow of the orbit trichotomy.  Deterministic in (sample,
// probes, seed): probe planes come from a fixed linear congruential
// generator (see lcg32 in the implementation).
ClosureReport closure_diagnostic(const OrbitSample& sample, int probes, std::uint32_t seed);

// The documented probe source: x <- 1664525*x + 1013904223 (mod 2^32).
inline std::uint32_t lcg32(std::uint32_t& state) {
  state = 1664525u * state + 1013904223u;
  return state;
}

}  // namespace periodlab
