#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace periodlab {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonicalized rational num/den (den may be negative or non-reduced on input).
Rational make_rational(const Integer& num, const Integer& den);

bool is_squarefree(long d);

// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& x);

// x > 0 written as f^2 * m with m a squarefree integer; returns m.
long squarefree_part(const Rational& x);

// Scalar a + b*sqrt(d) in the real quadratic field Q(sqrt(d)), d squarefree,
// with the embedding sqrt(d) > 0.  d == 1 encodes a plain rational (b == 0);
// construction canonicalizes b == 0 down to d = 1, so mixed-field arithmetic
// only has to reconcile genuinely irrational operands.
class FieldScalar {
 public:
  FieldScalar() : a_(0), b_(0), d_(1) {}
  FieldScalar(long value) : a_(value), b_(0), d_(1) {}  // NOLINT(runtime/explicit)
  FieldScalar(Rational a) : a_(std::move(a)), b_(0), d_(1) {}  // NOLINT
  FieldScalar(Rational a, Rational b, long d);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  long field_d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  // Exact sign under the embedding sqrt(d) > 0.
  int sign() const;

  double to_double() const;
  std::string str() const;  // "a" or "a+b*sqrt(d)" style, for messages
  std::string repr() const;  // canonical serialization, for dedup keys

  FieldScalar operator-() const { return FieldScalar(-a_, -b_, d_); }
  FieldScalar& operator+=(const FieldScalar& o);
  FieldScalar& operator-=(const FieldScalar& o);
  FieldScalar& operator*=(const FieldScalar& o);
  FieldScalar& operator/=(const FieldScalar& o);

  friend FieldScalar operator+(FieldScalar l, const FieldScalar& r) { return l += r; }
  friend FieldScalar operator-(FieldScalar l, const FieldScalar& r) { return l -= r; }
  friend FieldScalar operator*(FieldScalar l, const FieldScalar& r) { return l *= r; }
  friend FieldScalar operator/(FieldScalar l, const FieldScalar& r) { return l /= r; }

  friend bool operator==(const FieldScalar& l, const FieldScalar& r) {
    return l.d_ == r.d_ && l.a_ == r.a_ && l.b_ == r.b_;
  }
  friend bool operator!=(const FieldScalar& l, const FieldScalar& r) { return !(l == r); }
  friend bool operator<(const FieldScalar& l, const FieldScalar& r) {
    return (l - r).sign() < 0;
  }
  friend bool operator>(const FieldScalar& l, const FieldScalar& r) { return r < l; }
  friend bool operator<=(const FieldScalar& l, const FieldScalar& r) { return !(r < l); }
  friend bool operator>=(const FieldScalar& l, const FieldScalar& r) { return !(l < r); }

 private:
  Rational a_, b_;
  long d_;
};

inline int sign(const FieldScalar& s) { return s.sign(); }
inline bool is_zero(const FieldScalar& s) { return s.is_zero(); }
inline bool is_zero(const Rational& s) { return sgn(s) == 0; }

// Common field tag for two operands; throws on incompatible irrational tags.
long common_field(long d1, long d2);

// Positive square root of s inside Q(sqrt(target_d)), if it exists there.
// s must already live in {Q, Q(sqrt(target_d))}.
std::optional<FieldScalar> field_sqrt_in(const FieldScalar& s, long target_d);

// Vector with coordinates in a single Q(sqrt(d)).
class FieldVector {
 public:
  FieldVector() : d_(1) {}
  FieldVector(long d, std::vector<FieldScalar> coords);

  static FieldVector rational(std::vector<Rational> coords);
  static FieldVector integral(const std::vector<Integer>& coords);
  static FieldVector unit(std::size_t n, std::size_t i);
  static FieldVector zero(std::size_t n, long d = 1);

  long field_d() const { return d_; }
  std::size_t dim() const { return c_.size(); }
  const FieldScalar& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<FieldScalar>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  // True when every coordinate is a rational integer.
  bool is_integral() const;

  FieldVector operator-() const;
  FieldVector& operator+=(const FieldVector& o);
  FieldVector& operator-=(const FieldVector& o);
  friend FieldVector operator+(FieldVector l, const FieldVector& r) { return l += r; }
  friend FieldVector operator-(FieldVector l, const FieldVector& r) { return l -= r; }
  friend FieldVector operator*(const FieldScalar& s, FieldVector v);

  friend bool operator==(const FieldVector& l, const FieldVector& r) {
    return l.d_ == r.d_ && l.c_ == r.c_;
  }
  friend bool operator!=(const FieldVector& l, const FieldVector& r) { return !(l == r); }

  std::string str() const;

 private:
  long d_;
  std::vector<FieldScalar> c_;
};

}  // namespace periodlab
