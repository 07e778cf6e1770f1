#include "periodlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "periodlab/errors.hpp"

namespace periodlab {

namespace {

int sign_value(const Rational& q) { return sgn(q); }
int sign_value(const FieldScalar& s) { return s.sign(); }

template <typename F>
Signature signature_of_diag(const std::vector<F>& diag) {
  Signature s;
  for (const auto& v : diag) {
    const int sg = sign_value(v);
    if (sg > 0)
      ++s.pos;
    else if (sg < 0)
      ++s.neg;
    else
      ++s.nul;
  }
  return s;
}

}  // namespace

Signature gram_signature(const Matrix<Rational>& sym) {
  return signature_of_diag(congruence_diagonalize(sym).diag);
}

Signature gram_signature(const Matrix<FieldScalar>& sym) {
  return signature_of_diag(congruence_diagonalize(sym).diag);
}

QuadraticLattice::QuadraticLattice(Matrix<Integer> gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() < 2)
    throw std::invalid_argument("lattice Gram matrix must be square of rank >= 2");
  rank_ = static_cast<int>(gram_.rows());
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = i + 1; j < gram_.cols(); ++j)
      if (gram_(i, j) != gram_(j, i))
        throw std::invalid_argument("lattice Gram matrix must be symmetric");

  auto cd = congruence_diagonalize(to_rational(gram_));
  sig_ = signature_of_diag(cd.diag);
  if (sig_.nul != 0) throw std::invalid_argument("lattice Gram matrix is degenerate");

  frame_basis_ = std::move(cd.basis);
  frame_diag_ = std::move(cd.diag);
  frame_inv_ = inverse(frame_basis_);
  gram_inv_ = inverse(to_rational(gram_));
  for (std::size_t i = 0; i < frame_diag_.size(); ++i)
    if (sgn(frame_diag_[i]) > 0) positive_cols_.push_back(i);

  const std::size_t n = gram_.rows();
  embed_.assign(n * n, 0.0);
  embed_signs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    embed_signs_[i] = sgn(frame_diag_[i]);
    const double scale = std::sqrt(std::abs(frame_diag_[i].get_d()));
    for (std::size_t j = 0; j < n; ++j) embed_[i * n + j] = scale * frame_inv_(i, j).get_d();
  }
}

FieldScalar eval_form(const QuadraticLattice& L, const FieldVector& x, const FieldVector& y) {
  const std::size_t n = static_cast<std::size_t>(L.rank());
  if (x.dim() != n || y.dim() != n)
    throw std::invalid_argument("eval_form: vector rank mismatch");
  common_field(x.field_d(), y.field_d());
  FieldScalar acc;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    FieldScalar row;
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero(L.gram()(i, j)) || y[j].is_zero()) continue;
      row += FieldScalar(Rational(L.gram()(i, j))) * y[j];
    }
    acc += x[i] * row;
  }
  return acc;
}

FieldVector reflect(const QuadraticLattice& L, const FieldVector& v, const FieldVector& x) {
  const FieldScalar vv = eval_form(L, v, v);
  if (vv.is_zero()) throw std::invalid_argument("reflect: axis vector is isotropic");
  const FieldScalar factor = (FieldScalar(2) * eval_form(L, x, v)) / vv;
  return x - factor * v;
}

bool is_integral_reflection(const QuadraticLattice& L, const FieldVector& v) {
  if (!v.is_integral())
    throw std::invalid_argument("is_integral_reflection: vector must be integral");
  const FieldScalar vv = eval_form(L, v, v);
  if (vv.is_zero()) throw std::invalid_argument("is_integral_reflection: isotropic vector");
  const Integer norm = vv.rational_part().get_num();
  const std::size_t n = static_cast<std::size_t>(L.rank());
  for (std::size_t i = 0; i < n; ++i) {
    Integer gv;
    for (std::size_t j = 0; j < n; ++j) gv += L.gram()(i, j) * v[j].rational_part().get_num();
    gv *= 2;
    if (!mpz_divisible_p(gv.get_mpz_t(), norm.get_mpz_t())) return false;
  }
  return true;
}

RationalIntersection rational_intersection(const QuadraticLattice& L,
                                           const std::vector<FieldVector>& span) {
  const std::size_t n = static_cast<std::size_t>(L.rank());
  const std::size_t k = span.size();
  if (k == 0) return {};
  long d = 1;
  for (const auto& w : span) {
    if (w.dim() != n) throw std::invalid_argument("rational_intersection: rank mismatch");
    d = common_field(d, w.field_d());
  }
  {
    Matrix<FieldScalar> m(k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = span[i][j];
    if (rank(m) != k)
      throw std::invalid_argument("rational_intersection: span vectors are dependent");
  }

  // Generic element sum_i (alpha_i + beta_i sqrt(d)) w_i is rational iff the
  // sqrt(d)-component of every coordinate vanishes:
  //   sum_i alpha_i b_ij + beta_i a_ij = 0   for all j,
  // where w_i has coordinates a_ij + b_ij sqrt(d).  Unknown order:
  // (alpha_1..alpha_k, beta_1..beta_k).
  Matrix<Rational> sys(n, 2 * k);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      sys(j, i) = span[i][j].radical_part();
      sys(j, k + i) = span[i][j].rational_part();
    }
  const auto ker = kernel_basis(sys);

  // Map each kernel element to its rational vector and take the row space.
  Matrix<Rational> image(ker.size(), n);
  for (std::size_t r = 0; r < ker.size(); ++r)
    for (std::size_t j = 0; j < n; ++j) {
      Rational val;
      for (std::size_t i = 0; i < k; ++i) {
        val += ker[r][i] * span[i][j].rational_part();
        val += ker[r][k + i] * span[i][j].radical_part() * d;
      }
      image(r, j) = val;
    }
  const auto pivots = rref_inplace(image);

  RationalIntersection out;
  out.dim = static_cast<int>(pivots.size());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::vector<Rational> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = image(r, j);
    out.basis.push_back(
        FieldVector::integral(primitive_part(FieldVector::rational(std::move(row)))));
  }
  return out;
}

namespace {

// Canonical coordinate value order: 0, 1, -1, 2, -2, ..., m, -m.
inline long shell_value(long slot) { return (slot % 2 == 1) ? (slot + 1) / 2 : -slot / 2; }

template <typename Int>
Int int_cast(const Integer& z);
template <>
long long int_cast<long long>(const Integer& z) {
  return static_cast<long long>(z.get_si());
}
template <>
Integer int_cast<Integer>(const Integer& z) {
  return z;
}

template <typename Int>
class IsotropicSearch {
 public:
  IsotropicSearch(const QuadraticLattice& L, long bound)
      : n_(static_cast<std::size_t>(L.rank())), bound_(bound), g_(n_ * n_), x_(n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) g_[i * n_ + j] = int_cast<Int>(L.gram()(i, j));
  }

  std::optional<std::vector<Integer>> run() {
    for (long m = 1; m <= bound_; ++m) {
      shell_ = m;
      if (descend(0, /*all_zero=*/true, /*sup_hit=*/false)) {
        std::vector<Integer> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = Integer(x_[i]);
        return out;
      }
    }
    return std::nullopt;
  }

 private:
  bool descend(std::size_t pos, bool all_zero, bool sup_hit) {
    if (pos == n_) {
      if (!sup_hit) return false;  // already visited in an earlier shell
      return is_isotropic() && is_primitive();
    }
    for (long slot = 0; slot <= 2 * shell_; ++slot) {
      const long v = shell_value(slot);
      if (all_zero && v < 0) continue;  // first nonzero coordinate positive
      x_[pos] = v;
      if (descend(pos + 1, all_zero && v == 0, sup_hit || std::abs(v) == shell_)) return true;
    }
    x_[pos] = 0;
    return false;
  }

  bool is_isotropic() const {
    Int acc = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (x_[i] == 0) continue;
      Int row = 0;
      for (std::size_t j = 0; j < n_; ++j) row += g_[i * n_ + j] * Int(x_[j]);
      acc += Int(x_[i]) * row;
    }
    return acc == 0;
  }

  bool is_primitive() const {
    long g = 0;
    for (auto v : x_) g = std::gcd(g, std::abs(v));
    return g == 1;
  }

  std::size_t n_;
  long bound_;
  long shell_ = 0;
  std::vector<Int> g_;
  std::vector<long> x_;
};

}  // namespace

std::optional<std::vector<Integer>> find_isotropic(const QuadraticLattice& L, long height_bound) {
  if (height_bound < 1) throw std::invalid_argument("find_isotropic: height_bound must be >= 1");
  // int64 fast path when |x^T G x| cannot overflow.
  Integer max_entry = 0;
  for (std::size_t i = 0; i < L.gram().rows(); ++i)
    for (std::size_t j = 0; j < L.gram().cols(); ++j)
      max_entry = std::max(max_entry, Integer(abs(L.gram()(i, j))));
  const Integer worst = max_entry * L.rank() * L.rank() * height_bound * height_bound;
  if (worst < Integer("4611686018427387904")) {  // 2^62
    IsotropicSearch<long long> s(L, height_bound);
    return s.run();
  }
  IsotropicSearch<Integer> s(L, height_bound);
  return s.run();
}

std::vector<Integer> primitive_part(const FieldVector& v) {
  if (!v.is_rational()) throw std::invalid_argument("primitive_part: vector must be rational");
  if (v.is_zero()) throw std::invalid_argument("primitive_part: zero vector");
  Integer denom_lcm = 1;
  for (std::size_t i = 0; i < v.dim(); ++i)
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
            v[i].rational_part().get_den().get_mpz_t());
  std::vector<Integer> out(v.dim());
  Integer g = 0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    Rational scaled = v[i].rational_part() * denom_lcm;
    out[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  int lead = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (sgn(out[i]) != 0) {
      lead = sgn(out[i]);
      break;
    }
  }
  for (auto& z : out) {
    z /= g;
    if (lead < 0) z = -z;
  }
  return out;
}

FieldVector apply_integer_matrix(const Matrix<Integer>& g, const FieldVector& v) {
  if (g.cols() != v.dim()) throw std::invalid_argument("matrix/vector shape mismatch");
  std::vector<FieldScalar> out(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Rational a, b;
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (is_zero(g(i, j))) continue;
      a += Rational(g(i, j)) * v[j].rational_part();
      b += Rational(g(i, j)) * v[j].radical_part();
    }
    out[i] = sgn(b) == 0 ? FieldScalar(a) : FieldScalar(a, b, v.field_d());
  }
  return FieldVector(v.field_d(), std::move(out));
}

}  // namespace periodlab
