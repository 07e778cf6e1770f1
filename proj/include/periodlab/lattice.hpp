#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "periodlab/field.hpp"
#include "periodlab/matrix.hpp"

namespace periodlab {

struct Signature {
  int pos = 0;
  int neg = 0;
  int nul = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Sylvester signature of a symmetric rational matrix, by exact congruence
// diagonalization.  Degenerate input is reported through nul > 0.
Signature gram_signature(const Matrix<Rational>& sym);
Signature gram_signature(const Matrix<FieldScalar>& sym);

// Ambient integer lattice (V_Z, q): symmetric non-degenerate integer Gram
// matrix of rank >= 2.  Construction also fixes, once and for all, an exact
// congruence frame diagonalizing the form; the frame feeds the orientation
// test on the positive part and the auxiliary Euclidean metric used by the
// floating-point diagnostics.
class QuadraticLattice {
 public:
  explicit QuadraticLattice(Matrix<Integer> gram);

  int rank() const { return rank_; }
  const Matrix<Integer>& gram() const { return gram_; }
  const Signature& signature() const { return sig_; }

  // Columns of frame_basis() are q-orthogonal rational vectors; diagonal
  // entry i is q(b_i, b_i).
  const Matrix<Rational>& frame_basis() const { return frame_basis_; }
  const std::vector<Rational>& frame_diag() const { return frame_diag_; }
  const Matrix<Rational>& frame_basis_inverse() const { return frame_inv_; }
  const Matrix<Rational>& gram_inverse() const { return gram_inv_; }
  // Indices of frame columns with positive diagonal (a fixed exact maximal
  // positive subspace).
  const std::vector<std::size_t>& positive_frame() const { return positive_cols_; }

  // Row-major n*n matrix E with E^T E positive definite and
  // q(u, v) = sum_i sign_i * (Eu)_i (Ev)_i; the auxiliary Euclidean metric
  // is <u, v> = (Eu).(Ev).
  const std::vector<double>& euclidean_embedding() const { return embed_; }
  const std::vector<int>& embedding_signs() const { return embed_signs_; }

 private:
  Matrix<Integer> gram_;
  int rank_;
  Signature sig_;
  Matrix<Rational> frame_basis_, frame_inv_, gram_inv_;
  std::vector<Rational> frame_diag_;
  std::vector<std::size_t> positive_cols_;
  std::vector<double> embed_;
  std::vector<int> embed_signs_;
};

using LatticePtr = std::shared_ptr<const QuadraticLattice>;

// x^T gram y, exactly.
FieldScalar eval_form(const QuadraticLattice& L, const FieldVector& x, const FieldVector& y);

// Reflection along v: x - 2 q(x,v)/q(v,v) * v.  Requires q(v,v) != 0.
FieldVector reflect(const QuadraticLattice& L, const FieldVector& v, const FieldVector& x);

// True iff the reflection along the integer vector v maps V_Z to itself,
// i.e. q(v,v) divides 2*(gram v)_i for every i.
bool is_integral_reflection(const QuadraticLattice& L, const FieldVector& v);

struct RationalIntersection {
  int dim = 0;
  // Q-basis of (real span) ∩ V_Q as primitive integer vectors, one per
  // dimension, in reduced row echelon order.
  std::vector<FieldVector> basis;
};

// Exact dimension (and basis) of the rational part of the real span of the
// given vectors.  The span must be linearly independent.
RationalIntersection rational_intersection(const QuadraticLattice& L,
                                           const std::vector<FieldVector>& span);

// Smallest primitive isotropic integer vector in the sup-norm box, or absent.
// "Smallest" means: smallest sup-norm first, then lexicographic with the
// coordinate values ordered 0 < 1 < -1 < 2 < -2 < ...; only vectors whose
// first nonzero coordinate is positive are considered.
std::optional<std::vector<Integer>> find_isotropic(const QuadraticLattice& L, long height_bound);

// Primitive integer representative of the rational line through v:
// gcd of coordinates 1, first nonzero coordinate positive.
std::vector<Integer> primitive_part(const FieldVector& v);

// Convenience: g * v for an integer matrix g.
FieldVector apply_integer_matrix(const Matrix<Integer>& g, const FieldVector& v);

}  // namespace periodlab
