#include "periodlab/field.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "periodlab/errors.hpp"

namespace periodlab {

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_squarefree(long d) {
  if (d < 1) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (sgn(x) == 0) return Rational(0);
  const Integer num = x.get_num();
  const Integer den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return make_rational(rn, rd);
}

long squarefree_part(const Rational& x) {
  if (sgn(x) <= 0) throw std::invalid_argument("squarefree_part needs a positive rational");
  // num/den = num*den / den^2, so the squarefree part of x is that of num*den.
  Integer m = x.get_num() * x.get_den();
  Integer result = 1;
  for (Integer p = 2; p * p <= m; ++p) {
    if (p > 1'000'000) {
      if (mpz_perfect_square_p(m.get_mpz_t())) {
        m = 1;
        break;
      }
      throw std::invalid_argument("squarefree_part: operand too large to factor");
    }
    if (!mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) continue;
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e % 2) result *= p;
  }
  if (m > 1) result *= m;  // leftover factor is prime with exponent 1
  if (!result.fits_slong_p())
    throw std::invalid_argument("squarefree_part: result does not fit a machine long");
  return result.get_si();
}

FieldScalar::FieldScalar(Rational a, Rational b, long d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 1 || !is_squarefree(d_))
    throw std::invalid_argument("field discriminant must be a squarefree positive integer");
  if (d_ == 1 && sgn(b_) != 0)
    throw std::invalid_argument("d = 1 scalar must have zero radical part");
  if (sgn(b_) == 0) d_ = 1;
}

int FieldScalar::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt(d) compete: compare a^2 against b^2*d.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * d_;
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // unreachable for squarefree d > 1 and a, b != 0
  return c > 0 ? sa : sb;
}

double FieldScalar::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

std::string FieldScalar::str() const {
  if (is_rational()) return a_.get_str();
  std::ostringstream os;
  os << a_.get_str() << (sgn(b_) < 0 ? "-" : "+");
  Rational ab = abs(b_);
  if (ab != 1) os << ab.get_str() << "*";
  os << "sqrt(" << d_ << ")";
  return os.str();
}

std::string FieldScalar::repr() const {
  return a_.get_str() + "|" + b_.get_str() + "|" + std::to_string(d_);
}

long common_field(long d1, long d2) {
  if (d1 == d2) return d1;
  if (d1 == 1) return d2;
  if (d2 == 1) return d1;
  throw std::invalid_argument("mismatched field tags: Q(sqrt(" + std::to_string(d1) +
                              ")) vs Q(sqrt(" + std::to_string(d2) + "))");
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
  d_ = common_field(d_, o.d_);
  a_ += o.a_;
  b_ += o.b_;
  if (sgn(b_) == 0) d_ = 1;
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
  d_ = common_field(d_, o.d_);
  a_ -= o.a_;
  b_ -= o.b_;
  if (sgn(b_) == 0) d_ = 1;
  return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
  const long d = common_field(d_, o.d_);
  Rational a = a_ * o.a_ + b_ * o.b_ * d;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = (sgn(b_) == 0) ? 1 : d;
  return *this;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& o) {
  if (o.is_zero()) throw std::invalid_argument("field scalar division by zero");
  const long d = common_field(d_, o.d_);
  // 1/(a+b*sqrt(d)) = (a-b*sqrt(d)) / (a^2 - b^2 d)
  const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
  FieldScalar inv(o.a_ / norm, -o.b_ / norm, sgn(o.b_) == 0 ? 1 : d);
  return *this *= inv;
}

std::optional<FieldScalar> field_sqrt_in(const FieldScalar& s, long target_d) {
  if (target_d < 1 || !is_squarefree(target_d))
    throw std::invalid_argument("field_sqrt_in: bad target field");
  if (s.sign() < 0) return std::nullopt;
  if (s.is_zero()) return FieldScalar();
  common_field(s.field_d(), target_d);  // throws when incompatible
  const Rational& a = s.rational_part();
  const Rational& b = s.radical_part();
  if (sgn(b) == 0) {
    if (auto r = rational_sqrt(a)) return FieldScalar(*r);
    if (target_d > 1) {
      // a = (y*sqrt(d))^2 with y rational iff a/d is a rational square.
      if (auto y = rational_sqrt(a / target_d))
        return FieldScalar(Rational(0), *y, target_d);
    }
    return std::nullopt;
  }
  // Solve (x + y*sqrt(d))^2 = a + b*sqrt(d): x^2 + y^2 d = a, 2xy = b.
  // x^2 and y^2 d are the roots of z^2 - a z + b^2 d / 4 = 0.
  const long d = target_d;
  const Rational disc = a * a - b * b * d;
  const auto e = rational_sqrt(disc);
  if (!e) return std::nullopt;
  for (int pick = 0; pick < 2; ++pick) {
    const Rational candidate = pick == 0 ? Rational(a + *e) : Rational(a - *e);
    const Rational x2 = candidate / 2;
    const auto x = rational_sqrt(x2);
    if (!x || sgn(*x) == 0) continue;
    const Rational y = b / (2 * *x);
    FieldScalar root(*x, y, d);
    if (root * root == s) return root.sign() > 0 ? root : -root;
  }
  return std::nullopt;
}

FieldVector::FieldVector(long d, std::vector<FieldScalar> coords)
    : d_(d), c_(std::move(coords)) {
  if (d_ < 1 || !is_squarefree(d_))
    throw std::invalid_argument("field discriminant must be a squarefree positive integer");
  for (auto& s : c_) {
    if (s.field_d() != 1 && s.field_d() != d_)
      throw std::invalid_argument("vector coordinate lies in a different field");
  }
}

FieldVector FieldVector::rational(std::vector<Rational> coords) {
  std::vector<FieldScalar> c;
  c.reserve(coords.size());
  for (auto& q : coords) c.emplace_back(std::move(q));
  return FieldVector(1, std::move(c));
}

FieldVector FieldVector::integral(const std::vector<Integer>& coords) {
  std::vector<FieldScalar> c;
  c.reserve(coords.size());
  for (const auto& z : coords) c.emplace_back(Rational(z));
  return FieldVector(1, std::move(c));
}

FieldVector FieldVector::unit(std::size_t n, std::size_t i) {
  std::vector<FieldScalar> c(n);
  c.at(i) = FieldScalar(1);
  return FieldVector(1, std::move(c));
}

FieldVector FieldVector::zero(std::size_t n, long d) {
  return FieldVector(d, std::vector<FieldScalar>(n));
}

bool FieldVector::is_zero() const {
  for (const auto& s : c_)
    if (!s.is_zero()) return false;
  return true;
}

bool FieldVector::is_rational() const {
  for (const auto& s : c_)
    if (!s.is_rational()) return false;
  return true;
}

bool FieldVector::is_integral() const {
  for (const auto& s : c_) {
    if (!s.is_rational() || s.rational_part().get_den() != 1) return false;
  }
  return true;
}

FieldVector FieldVector::operator-() const {
  FieldVector r = *this;
  for (auto& s : r.c_) s = -s;
  return r;
}

FieldVector& FieldVector::operator+=(const FieldVector& o) {
  if (dim() != o.dim()) throw std::invalid_argument("vector dimension mismatch");
  d_ = common_field(d_, o.d_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FieldVector& FieldVector::operator-=(const FieldVector& o) {
  if (dim() != o.dim()) throw std::invalid_argument("vector dimension mismatch");
  d_ = common_field(d_, o.d_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldVector operator*(const FieldScalar& s, FieldVector v) {
  v.d_ = common_field(v.d_, s.field_d());
  for (auto& c : v.c_) c *= s;
  return v;
}

std::string FieldVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ", ";
    out += c_[i].str();
  }
  return out + ")";
}

}  // namespace periodlab
