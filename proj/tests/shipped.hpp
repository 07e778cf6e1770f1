#pragma once

// The shipped desk-scale examples used by the unit and acceptance suites:
// the rank-5 and rank-6 diagonal lattices, three base planes realizing the
// trichotomy over Q(sqrt(2)), and a four-element generating set of
// two-reflection products.

#include <vector>

#include "periodlab/monodromy.hpp"
#include "periodlab/period.hpp"

namespace shipped {

using namespace periodlab;

inline LatticePtr diag_lattice(const std::vector<long>& d) {
  Matrix<Integer> g(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return std::make_shared<QuadraticLattice>(std::move(g));
}

inline LatticePtr rank5() { return diag_lattice({1, 1, 1, -1, -1}); }
inline LatticePtr rank6() { return diag_lattice({1, 1, 1, -1, -1, -1}); }

inline FieldVector ints(const std::vector<long>& v) {
  return FieldVector::integral(std::vector<Integer>(v.begin(), v.end()));
}

inline FieldScalar rt2(long a, long b) { return FieldScalar(Rational(a), Rational(b), 2); }

// Closed: the rational coordinate plane (e1, e2).
inline PositivePlane rational_base(const LatticePtr& L) {
  return PositivePlane(L, FieldVector::unit(5, 0), FieldVector::unit(5, 1));
}

// Dense: (e1 + sqrt2 e2, 2 e3 + sqrt2 e4) contains no rational vectors.
inline PositivePlane dense_base(const LatticePtr& L) {
  FieldVector w1(2, {rt2(1, 0), rt2(0, 1), rt2(0, 0), rt2(0, 0), rt2(0, 0)});
  FieldVector w2(2, {rt2(0, 0), rt2(0, 0), rt2(2, 0), rt2(0, 1), rt2(0, 0)});
  return PositivePlane(L, w1, w2);
}

// Intermediate: (e1, e2 + sqrt2 e3) meets V_Q in the line through e1.
inline PositivePlane intermediate_base(const LatticePtr& L) {
  FieldVector w2(2, {rt2(0, 0), rt2(1, 0), rt2(0, 1), rt2(0, 0), rt2(0, 0)});
  return PositivePlane(L, FieldVector::unit(5, 0), w2);
}

inline Matrix<Integer> reflection_of(const QuadraticLattice& L, const std::vector<long>& axis) {
  const std::size_t n = static_cast<std::size_t>(L.rank());
  const FieldVector v = ints(axis);
  Matrix<Integer> m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const FieldVector col = reflect(L, v, FieldVector::unit(n, j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i].rational_part().get_num();
  }
  return m;
}

// Four two-reflection products (equal-sign norm pairs, all in SO^+), small
// enough that the depth of a word ball matters.
inline std::vector<IntegralIsometry> small_generators(const LatticePtr& L) {
  std::vector<IntegralIsometry> gens;
  gens.push_back({reflection_of(*L, {0, 0, 0, 1, 0}) * reflection_of(*L, {0, 0, 0, 0, 1}), {1}});
  gens.push_back({reflection_of(*L, {0, 0, 0, 0, 1}) * reflection_of(*L, {0, 0, 1, 1, 1}), {2}});
  gens.push_back({reflection_of(*L, {1, 0, 0, 0, 0}) * reflection_of(*L, {0, 1, 1, 1, 0}), {3}});
  gens.push_back({reflection_of(*L, {0, 1, 1, 1, 0}) * reflection_of(*L, {1, 1, 0, 1, 0}), {4}});
  return gens;
}

}  // namespace shipped
