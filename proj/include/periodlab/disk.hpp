#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "periodlab/lattice.hpp"

namespace periodlab {

// Signature-(1,2) subspace W with an exact frame (f1, f2, f3) diagonalizing
// the restricted form to diag(1, -1, -1).  The projectivized positive cone
// {t1 > 0, t1^2 > t2^2 + t3^2} is charted onto the unit disk by
// (t2/t1, t3/t1) (projective chart: geodesics are chords).  The conformal
// chart p = k / (1 + sqrt(1 - |k|^2)) is also exposed; there horocycles are
// Euclidean circles tangent to the boundary.
//
// Building the frame may enlarge the coordinate field: a rational W whose
// diagonal norms have squarefree part m gets a frame over Q(sqrt(m)).
class DiskModel {
 public:
  DiskModel(LatticePtr lattice, FieldVector b1, FieldVector b2, FieldVector b3);

  const LatticePtr& lattice() const { return lattice_; }
  const std::array<FieldVector, 3>& basis() const { return basis_; }
  const std::array<FieldVector, 3>& frame() const { return frame_; }
  long frame_field() const { return frame_d_; }

  // Exact coordinates of v in the frame; throws when v is not in W.
  std::array<FieldScalar, 3> frame_coords(const FieldVector& v) const;

  // Frame coordinates of the q-orthogonal projection of an ambient vector.
  std::array<FieldScalar, 3> project_to_frame(const FieldVector& s) const;

  struct DiskPoint {
    double x = 0, y = 0;
    bool boundary = false;
  };
  // Projective chart of a vector in the closed positive cone (t1 > 0);
  // isotropic vectors land on the circle with the boundary flag set.
  DiskPoint disk_coords(const FieldVector& v) const;

  static std::array<double, 2> conformal_from_projective(const std::array<double, 2>& k);

 private:
  LatticePtr lattice_;
  std::array<FieldVector, 3> basis_;
  std::array<FieldVector, 3> frame_;
  long frame_d_ = 1;
};

struct WallChord {
  std::array<FieldScalar, 3> sigma;  // exact frame coordinates of s_W
  std::array<double, 2> e0, e1;      // circle endpoints, by increasing angle
};

// Wall s^perp for a negative-norm class s; the chord is absent when s^perp
// misses the positive cone of W.
struct Wall {
  FieldVector s;
  std::optional<WallChord> chord;
};

Wall wall_geodesic(const DiskModel& D, const FieldVector& s);

struct Chamber {
  std::vector<int> signs;  // one entry in {+1,-1} per wall with a chord
  std::array<double, 2> sample_point;
  std::vector<std::pair<double, double>> boundary_arcs;  // half-open, radians
};

// Sign-vector classification of a probe_grid x probe_grid rational grid,
// with exact sign tests; boundary arcs come from splitting the circle at
// wall endpoints.  Chambers are sorted by sign vector.
std::vector<Chamber> chamber_decompose(const DiskModel& D, const std::vector<Wall>& walls,
                                       int probe_grid);

// True iff an open arc of the boundary circle lies in the chamber closure.
bool has_round_bits(const Chamber& c);

// One-parameter unipotent family g(t) = I + tN + t^2 N^2/2 in frame
// coordinates, built from a nilpotent N with N xi = 0, N^3 = 0.
class UnipotentFamily {
 public:
  UnipotentFamily(Matrix<FieldScalar> n, std::array<FieldScalar, 3> xi);

  const Matrix<FieldScalar>& nilpotent() const { return n_; }
  const Matrix<FieldScalar>& nilpotent_sq() const { return n2_; }
  const std::array<FieldScalar, 3>& fixed_vector() const { return xi_; }

  Matrix<FieldScalar> at(const FieldScalar& t) const;
  std::array<double, 9> at_double(double t) const;  // row-major 3x3

 private:
  Matrix<FieldScalar> n_, n2_;
  std::array<FieldScalar, 3> xi_;
};

// xi must lie in W, be isotropic and sit in the closure of the chosen cone
// (first frame coordinate positive).
UnipotentFamily unipotent_subgroup(const DiskModel& D, const FieldVector& xi);

struct HorocyclePoint {
  double t = 0;
  std::array<double, 2> projective{};
  std::array<double, 2> conformal{};
};

// Orbit of an interior base point under the unipotent family, reported in
// both charts.  In the conformal chart the orbit lies on a Euclidean circle
// internally tangent to the boundary at the xi endpoint.
std::vector<HorocyclePoint> horocycle_orbit(const DiskModel& D, const FieldVector& xi,
                                            const std::array<double, 2>& base,
                                            const std::vector<double>& t_samples);

struct CircleFit {
  double cx = 0, cy = 0, r = 0;
  double max_residual = 0;  // max | |p - c| - r | over the fitted points
};

CircleFit fit_circle(const std::vector<std::array<double, 2>>& points);

}  // namespace periodlab
