#include "periodlab/period.hpp"

#include <algorithm>
#include <cmath>

#include "periodlab/errors.hpp"

namespace periodlab {

namespace {

void check_same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (a.get() != b.get()) throw std::invalid_argument("operands use different lattices");
}

// RREF of [w1; w2] with the orientation sign of (w1, w2) against the
// echelon rows: the sign of the pivot-column 2x2 minor.
std::string oriented_key(const FieldVector& w1, const FieldVector& w2) {
  const std::size_t n = w1.dim();
  Matrix<FieldScalar> m(2, n);
  for (std::size_t j = 0; j < n; ++j) {
    m(0, j) = w1[j];
    m(1, j) = w2[j];
  }
  const auto pivots = rref_inplace(m);
  if (pivots.size() != 2) throw std::invalid_argument("plane basis is linearly dependent");
  const FieldScalar minor = w1[pivots[0]] * w2[pivots[1]] - w1[pivots[1]] * w2[pivots[0]];
  std::string key = minor.sign() > 0 ? "+" : "-";
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t j = 0; j < n; ++j) {
      key += m(r, j).repr();
      key += ';';
    }
  return key;
}

}  // namespace

PositivePlane::PositivePlane(LatticePtr lattice, FieldVector w1, FieldVector w2)
    : lattice_(std::move(lattice)), w1_(std::move(w1)), w2_(std::move(w2)) {
  if (!lattice_) throw std::invalid_argument("plane needs a lattice");
  const std::size_t n = static_cast<std::size_t>(lattice_->rank());
  if (w1_.dim() != n || w2_.dim() != n)
    throw std::invalid_argument("plane basis rank mismatch");
  common_field(w1_.field_d(), w2_.field_d());
  {
    Matrix<FieldScalar> m(2, n);
    for (std::size_t j = 0; j < n; ++j) {
      m(0, j) = w1_[j];
      m(1, j) = w2_[j];
    }
    if (rank(m) != 2) throw std::invalid_argument("plane basis is linearly dependent");
  }
  const FieldScalar a = eval_form(*lattice_, w1_, w1_);
  const FieldScalar b = eval_form(*lattice_, w1_, w2_);
  const FieldScalar c = eval_form(*lattice_, w2_, w2_);
  if (!(a.sign() > 0 && (a * c - b * b).sign() > 0))
    throw std::invalid_argument("form does not restrict positive definite on the plane");
}

PositivePlane PositivePlane::unchecked(LatticePtr lattice, FieldVector w1, FieldVector w2) {
  PositivePlane p;
  p.lattice_ = std::move(lattice);
  p.w1_ = std::move(w1);
  p.w2_ = std::move(w2);
  return p;
}

const std::string& PositivePlane::canonical_key() const {
  if (key_.empty()) key_ = oriented_key(w1_, w2_);
  return key_;
}

bool PositivePlane::same_oriented(const PositivePlane& other) const {
  check_same_lattice(lattice_, other.lattice_);
  return canonical_key() == other.canonical_key();
}

bool PositivePlane::same_span(const PositivePlane& other) const {
  check_same_lattice(lattice_, other.lattice_);
  return canonical_key().substr(1) == other.canonical_key().substr(1);
}

PeriodPoint::PeriodPoint(LatticePtr lattice, FieldVector x, FieldVector y, FieldScalar scale_sq)
    : lattice_(std::move(lattice)), x_(std::move(x)), y_(std::move(y)),
      scale_sq_(std::move(scale_sq)) {
  if (!lattice_) throw std::invalid_argument("period point needs a lattice");
  const FieldScalar qxx = eval_form(*lattice_, x_, x_);
  const FieldScalar qxy = eval_form(*lattice_, x_, y_);
  const FieldScalar qyy = eval_form(*lattice_, y_, y_);
  if (!qxy.is_zero() || !(qxx == scale_sq_ * qyy) || qxx.sign() <= 0)
    throw std::invalid_argument("period point violates the quadric conditions");
}

PeriodPoint PeriodPoint::conjugate() const {
  return PeriodPoint(lattice_, x_, -y_, scale_sq_);
}

bool PeriodPoint::same_point(const PeriodPoint& other) const {
  return period_to_plane(*this).same_oriented(period_to_plane(other));
}

const char* OrbitType::tag_name(Tag t) {
  switch (t) {
    case Tag::Closed: return "closed";
    case Tag::Dense: return "dense";
    case Tag::Intermediate: return "intermediate";
  }
  return "?";
}

PeriodPoint plane_to_period(const PositivePlane& P) {
  const auto& L = *P.lattice();
  const FieldVector& w1 = P.w1();
  // Gram-Schmidt inside the plane keeps the orientation.
  const FieldScalar t = eval_form(L, w1, P.w2()) / eval_form(L, w1, w1);
  const FieldVector y = P.w2() - t * w1;
  const FieldScalar r = eval_form(L, w1, w1) / eval_form(L, y, y);
  return PeriodPoint(P.lattice(), w1, y, r);
}

PositivePlane period_to_plane(const PeriodPoint& p) {
  return PositivePlane(p.lattice(), p.x(), p.y());
}

OrbitType orbit_type(const PositivePlane& P) {
  const auto& sig = P.lattice()->signature();
  if (!(sig.pos == 3 && sig.neg >= 2))
    throw HypothesisError("orbit classification needs ambient signature (3, n-3) with n >= 5; got (" +
                          std::to_string(sig.pos) + ", " + std::to_string(sig.neg) + ")");
  const auto ri = rational_intersection(*P.lattice(), {P.w1(), P.w2()});
  OrbitType out;
  switch (ri.dim) {
    case 2:
      out.tag = OrbitType::Tag::Closed;
      out.witness = ri.basis;
      break;
    case 1:
      out.tag = OrbitType::Tag::Intermediate;
      out.witness = {FieldVector::integral(primitive_part(ri.basis.front()))};
      break;
    case 0:
      out.tag = OrbitType::Tag::Dense;
      break;
    default:
      throw std::logic_error("rational part of a 2-plane has dimension > 2");
  }
  return out;
}

PositivePlane involution_gamma(const PositivePlane& P, const FieldVector& v) {
  const auto& L = *P.lattice();
  if (eval_form(L, v, v).sign() <= 0)
    throw std::invalid_argument("involution axis must have positive norm");
  // Reflect both basis vectors, then reverse the orientation by swapping.
  return PositivePlane(P.lattice(), reflect(L, v, P.w2()), reflect(L, v, P.w1()));
}

PeriodPoint involution_gamma(const PeriodPoint& p, const FieldVector& v) {
  const auto& L = *p.lattice();
  if (eval_form(L, v, v).sign() <= 0)
    throw std::invalid_argument("involution axis must have positive norm");
  // Anti-holomorphic: reflect and conjugate.
  return PeriodPoint(p.lattice(), reflect(L, v, p.x()), -reflect(L, v, p.y()), p.scale_sq());
}

bool plane_contains(const PositivePlane& P, const FieldVector& v) {
  const std::size_t n = static_cast<std::size_t>(P.lattice()->rank());
  if (v.dim() != n) throw std::invalid_argument("plane_contains: rank mismatch");
  if (v.is_zero()) return true;
  Matrix<FieldScalar> m(3, n);
  for (std::size_t j = 0; j < n; ++j) {
    m(0, j) = P.w1()[j];
    m(1, j) = P.w2()[j];
    m(2, j) = v[j];
  }
  return rank(m) == 2;
}

std::vector<double> embed_vector(const QuadraticLattice& L, const FieldVector& v) {
  const std::size_t n = static_cast<std::size_t>(L.rank());
  if (v.dim() != n) throw std::invalid_argument("embed_vector: rank mismatch");
  const auto& E = L.euclidean_embedding();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += E[i * n + j] * v[j].to_double();
  return out;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void scale_to_unit(std::vector<double>& v) {
  const double n = std::sqrt(dot(v, v));
  for (auto& x : v) x /= n;
}

}  // namespace

EmbeddedPlane orthonormalize_rows(std::vector<double> r0, std::vector<double> r1) {
  scale_to_unit(r0);
  const double p = dot(r1, r0);
  for (std::size_t i = 0; i < r1.size(); ++i) r1[i] -= p * r0[i];
  scale_to_unit(r1);
  return {std::move(r0), std::move(r1)};
}

EmbeddedPlane embed_plane(const PositivePlane& P) {
  return orthonormalize_rows(embed_vector(*P.lattice(), P.w1()),
                             embed_vector(*P.lattice(), P.w2()));
}

namespace {

// Singular values (descending) of a 2 x m matrix given as two rows.
std::array<double, 2> singular_values_2xm(const std::vector<double>& r0,
                                          const std::vector<double>& r1) {
  const double a = dot(r0, r0), b = dot(r0, r1), c = dot(r1, r1);
  const double tr = a + c;
  const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
  const double l1 = std::max(0.0, (tr + disc) / 2);
  const double l2 = std::max(0.0, (tr - disc) / 2);
  return {std::sqrt(l1), std::sqrt(l2)};
}

}  // namespace

double embedded_distance(const EmbeddedPlane& a, const EmbeddedPlane& b) {
  // Bjorck-Golub style: cosines from the inner products, sines from the
  // residual of b against span(a); atan2 keeps both tiny and right angles
  // accurate.
  const std::size_t n = a[0].size();
  const double m00 = dot(a[0], b[0]), m01 = dot(a[0], b[1]);
  const double m10 = dot(a[1], b[0]), m11 = dot(a[1], b[1]);
  std::vector<double> c0(n), c1(n);
  for (std::size_t i = 0; i < n; ++i) {
    c0[i] = b[0][i] - m00 * a[0][i] - m10 * a[1][i];
    c1[i] = b[1][i] - m01 * a[0][i] - m11 * a[1][i];
  }
  const auto sines = singular_values_2xm(c0, c1);  // sin(theta_max) >= sin(theta_min)
  std::vector<double> row0{m00, m01}, row1{m10, m11};
  const auto cosines = singular_values_2xm(row0, row1);  // cos(theta_min) >= cos(theta_max)
  const double theta_max = std::atan2(sines[0], std::clamp(cosines[1], 0.0, 1.0));
  const double theta_min = std::atan2(sines[1], std::clamp(cosines[0], 0.0, 1.0));
  return std::sqrt(theta_max * theta_max + theta_min * theta_min);
}

double plane_distance(const PositivePlane& P1, const PositivePlane& P2) {
  check_same_lattice(P1.lattice(), P2.lattice());
  return embedded_distance(embed_plane(P1), embed_plane(P2));
}

double embedded_line_gap(const EmbeddedPlane& plane, const std::vector<double>& v) {
  std::vector<double> u = v;
  scale_to_unit(u);
  const double p0 = dot(u, plane[0]);
  const double p1 = dot(u, plane[1]);
  double res = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = u[i] - p0 * plane[0][i] - p1 * plane[1][i];
    res += r * r;
  }
  return std::sqrt(res);
}

}  // namespace periodlab
