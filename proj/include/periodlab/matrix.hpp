#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "periodlab/field.hpp"

namespace periodlab {

// Dense row-major matrix over an exact scalar (Integer, Rational, FieldScalar).
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& l, const Matrix& r) {
    if (l.cols_ != r.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix p(l.rows_, r.cols_);
    for (std::size_t i = 0; i < l.rows_; ++i)
      for (std::size_t k = 0; k < l.cols_; ++k) {
        const T& lik = l(i, k);
        if (is_zero(lik)) continue;
        for (std::size_t j = 0; j < r.cols_; ++j) p(i, j) += lik * r(k, j);
      }
    return p;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply shape mismatch");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j))) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& l, const Matrix& r) {
    return l.rows_ == r.rows_ && l.cols_ == r.cols_ && l.a_ == r.a_;
  }
  friend bool operator!=(const Matrix& l, const Matrix& r) { return !(l == r); }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;
};

inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline Matrix<Rational> to_rational(const Matrix<Integer>& m) {
  Matrix<Rational> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline Matrix<FieldScalar> to_field(const Matrix<Rational>& m) {
  Matrix<FieldScalar> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = FieldScalar(m(i, j));
  return r;
}

// In-place row reduction to reduced row echelon form; returns pivot columns.
// F must be an exact field scalar (Rational or FieldScalar).
template <typename F>
std::vector<std::size_t> rref_inplace(Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    const F inv = F(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const F f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename F>
std::size_t rank(Matrix<F> m) {
  return rref_inplace(m).size();
}

template <typename F>
F det(Matrix<F> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  F result(1);
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t pivot = col;
    while (pivot < m.rows() && is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) return F(0);
    if (pivot != col) {
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(pivot, j), m(col, j));
      result = -result;
    }
    result *= m(col, col);
    const F inv = F(1) / m(col, col);
    for (std::size_t i = col + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      const F f = m(i, col) * inv;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(col, j);
    }
  }
  return result;
}

template <typename F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  const auto pivots = rref_inplace(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw std::invalid_argument("matrix is singular");
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Basis of the right kernel {x : m x = 0}.
template <typename F>
std::vector<std::vector<F>> kernel_basis(Matrix<F> m) {
  const std::size_t n = m.cols();
  const auto pivots = rref_inplace(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(n);
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename F>
struct CongruenceDiagonalization {
  Matrix<F> basis;      // columns b_i with b_i^T A b_j = diag[i] * delta_ij
  std::vector<F> diag;  // diagonal entries, in basis-column order
};

// Symmetric Gaussian elimination with exact pivots.  When a diagonal pivot
// vanishes but an off-diagonal entry survives, the standard substitution
// e_k += e_i creates a nonzero diagonal (the 2x2 block step).
template <typename F>
CongruenceDiagonalization<F> congruence_diagonalize(const Matrix<F>& sym) {
  if (sym.rows() != sym.cols()) throw std::invalid_argument("congruence of non-square matrix");
  const std::size_t n = sym.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(sym(i, j) == sym(j, i))) throw std::invalid_argument("matrix is not symmetric");
  Matrix<F> a = sym;
  Matrix<F> basis = Matrix<F>::identity(n);

  // col_op: basis col_k += f * basis col_i, mirrored congruently on a.
  const auto add_col = [&](std::size_t k, std::size_t i, const F& f) {
    for (std::size_t r = 0; r < n; ++r) basis(r, k) += f * basis(r, i);
    for (std::size_t r = 0; r < n; ++r) a(r, k) += f * a(r, i);
    for (std::size_t c = 0; c < n; ++c) a(k, c) += f * a(i, c);
  };
  const auto swap_cols = [&](std::size_t k, std::size_t i) {
    for (std::size_t r = 0; r < n; ++r) std::swap(basis(r, k), basis(r, i));
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, k), a(r, i));
    for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(i, c));
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(a(k, k))) {
      std::size_t swap_i = k;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (!is_zero(a(i, i))) {
          swap_i = i;
          break;
        }
      }
      if (swap_i != k) {
        swap_cols(k, swap_i);
      } else {
        std::size_t off = k;
        for (std::size_t i = k + 1; i < n; ++i) {
          if (!is_zero(a(k, i))) {
            off = i;
            break;
          }
        }
        if (off == k) continue;  // row is null from k on: diagonal stays zero
        add_col(k, off, F(1));   // now a(k,k) = 2 a(k,off) != 0 (char 0)
      }
    }
    const F pivot_inv = F(1) / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(k, i))) continue;
      add_col(i, k, -(a(k, i) * pivot_inv));
    }
  }

  CongruenceDiagonalization<F> out{std::move(basis), std::vector<F>(n)};
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = a(i, i);
  return out;
}

}  // namespace periodlab
