#pragma once

#include <array>
#include <string>
#include <vector>

#include "periodlab/lattice.hpp"

namespace periodlab {

// Oriented 2-plane span{w1, w2} on which the form restricts positive
// definite.  Orientation is the basis order.
class PositivePlane {
 public:
  PositivePlane(LatticePtr lattice, FieldVector w1, FieldVector w2);

  // Skips the invariant checks; for callers that transform an already
  // validated plane by an exact isometry.
  static PositivePlane unchecked(LatticePtr lattice, FieldVector w1, FieldVector w2);

  const LatticePtr& lattice() const { return lattice_; }
  const FieldVector& w1() const { return w1_; }
  const FieldVector& w2() const { return w2_; }

  // Exact canonical key: reduced row echelon form of [w1; w2] over the field
  // plus the orientation sign of the basis against the echelon rows.
  const std::string& canonical_key() const;

  bool same_oriented(const PositivePlane& other) const;
  bool same_span(const PositivePlane& other) const;

 private:
  PositivePlane() = default;
  LatticePtr lattice_;
  FieldVector w1_, w2_;
  mutable std::string key_;
};

// Period point l = x + i*sqrt(scale_sq)*y, up to complex scalar; the exact
// positive ratio scale_sq = q(x,x)/q(y,y) stands in for a square root that
// may not exist in the coordinate field.  Invariants: q(x,y) = 0 and
// q(x,x) = scale_sq * q(y,y) > 0, which make q(l,l) = 0 and q(l,lbar) > 0.
class PeriodPoint {
 public:
  PeriodPoint(LatticePtr lattice, FieldVector x, FieldVector y, FieldScalar scale_sq);

  const LatticePtr& lattice() const { return lattice_; }
  const FieldVector& x() const { return x_; }
  const FieldVector& y() const { return y_; }
  const FieldScalar& scale_sq() const { return scale_sq_; }

  PeriodPoint conjugate() const;
  // Same point of the period quadric, projectively.
  bool same_point(const PeriodPoint& other) const;

 private:
  LatticePtr lattice_;
  FieldVector x_, y_;
  FieldScalar scale_sq_;
};

struct OrbitType {
  enum class Tag { Closed, Dense, Intermediate };
  Tag tag = Tag::Dense;
  // Closed: a rational basis of the plane (two primitive integer vectors).
  // Intermediate: the primitive rational vector spanning the rational line.
  std::vector<FieldVector> witness;

  static const char* tag_name(Tag t);
};

PeriodPoint plane_to_period(const PositivePlane& P);
PositivePlane period_to_plane(const PeriodPoint& p);

// Orbit-closure trichotomy for the ambient signature (3, n-3), n >= 5.
// Throws HypothesisError for other signatures.
OrbitType orbit_type(const PositivePlane& P);

// Reflection along v followed by orientation reversal; requires q(v,v) > 0.
PositivePlane involution_gamma(const PositivePlane& P, const FieldVector& v);
PeriodPoint involution_gamma(const PeriodPoint& p, const FieldVector& v);

bool plane_contains(const PositivePlane& P, const FieldVector& v);

// 2 x n row-orthonormal basis of the plane in the lattice's auxiliary
// Euclidean coordinates (floating).
using EmbeddedPlane = std::array<std::vector<double>, 2>;
EmbeddedPlane embed_plane(const PositivePlane& P);
std::vector<double> embed_vector(const QuadraticLattice& L, const FieldVector& v);
EmbeddedPlane orthonormalize_rows(std::vector<double> r0, std::vector<double> r1);

// Principal-angle distance sqrt(theta_1^2 + theta_2^2) between embedded
// planes; orientation-insensitive, zero iff equal spans.
double embedded_distance(const EmbeddedPlane& a, const EmbeddedPlane& b);
double plane_distance(const PositivePlane& P1, const PositivePlane& P2);

// Angle gap between a unit vector and a plane (sin of the principal angle).
double embedded_line_gap(const EmbeddedPlane& plane, const std::vector<double>& v);

}  // namespace periodlab
