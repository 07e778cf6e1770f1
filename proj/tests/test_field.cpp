#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "periodlab/field.hpp"

using namespace periodlab;

namespace {

FieldScalar qs(long a_num, long a_den, long b_num, long b_den, long d) {
  return FieldScalar(make_rational(a_num, a_den), make_rational(b_num, b_den), d);
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(make_rational(2, 4) == Rational(1) / 2);
  CHECK(make_rational(-3, -6) == Rational(1) / 2);
  CHECK_THROWS(make_rational(1, 0));

  CHECK(is_squarefree(1));
  CHECK(is_squarefree(2));
  CHECK(is_squarefree(6));
  CHECK_FALSE(is_squarefree(4));
  CHECK_FALSE(is_squarefree(12));

  CHECK(*rational_sqrt(make_rational(9, 4)) == make_rational(3, 2));
  CHECK_FALSE(rational_sqrt(Rational(2)).has_value());
  CHECK_FALSE(rational_sqrt(Rational(-4)).has_value());

  CHECK(squarefree_part(Rational(8)) == 2);
  CHECK(squarefree_part(Rational(9)) == 1);
  CHECK(squarefree_part(make_rational(3, 4)) == 3);
  CHECK(squarefree_part(make_rational(1, 2)) == 2);
}

TEST_CASE("field scalar arithmetic and signs") {
  const FieldScalar s = qs(1, 1, 1, 1, 2);   // 1 + sqrt(2)
  const FieldScalar t = qs(1, 1, -1, 1, 2);  // 1 - sqrt(2)
  CHECK((s * t) == FieldScalar(-1));         // norm
  CHECK((s + t) == FieldScalar(2));
  CHECK((s - t) == qs(0, 1, 2, 1, 2));
  CHECK((s / s) == FieldScalar(1));

  CHECK(s.sign() == 1);
  CHECK(t.sign() == -1);
  CHECK(qs(0, 1, 1, 1, 3).sign() == 1);
  CHECK(qs(-3, 1, 2, 1, 2).sign() == -1);   // 2 sqrt(2) < 3
  CHECK(qs(-3, 1, 2, 1, 3).sign() == 1);    // 2 sqrt(3) > 3
  CHECK(FieldScalar().sign() == 0);

  // b == 0 canonicalizes back to the rational field.
  CHECK((s - qs(0, 1, 1, 1, 2)).field_d() == 1);
  CHECK_THROWS(qs(1, 1, 1, 1, 2) + qs(1, 1, 1, 1, 3));

  // Exact comparisons agree with the floating embedding on random scalars.
  std::uint64_t state = 12345;
  const auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<long>((state >> 33) % 41) - 20;
  };
  for (int i = 0; i < 300; ++i) {
    const FieldScalar u = qs(next(), 1 + std::abs(next()), next(), 1 + std::abs(next()), 2);
    const double v = u.to_double();
    if (std::abs(v) < 1e-9) continue;
    CHECK(u.sign() == (v > 0 ? 1 : -1));
  }
}

TEST_CASE("field square roots") {
  CHECK(*field_sqrt_in(FieldScalar(4), 2) == FieldScalar(2));
  CHECK(*field_sqrt_in(FieldScalar(2), 2) == qs(0, 1, 1, 1, 2));       // sqrt(2)
  CHECK(*field_sqrt_in(FieldScalar(8), 2) == qs(0, 1, 2, 1, 2));       // 2 sqrt(2)
  CHECK(*field_sqrt_in(make_rational(9, 2), 2) == qs(0, 1, 3, 2, 2));  // 3/sqrt(2)
  CHECK_FALSE(field_sqrt_in(FieldScalar(3), 2).has_value());
  CHECK_FALSE(field_sqrt_in(FieldScalar(-2), 2).has_value());

  // (1 + sqrt(2))^2 = 3 + 2 sqrt(2)
  const FieldScalar sq = qs(3, 1, 2, 1, 2);
  CHECK(*field_sqrt_in(sq, 2) == qs(1, 1, 1, 1, 2));
  CHECK_FALSE(field_sqrt_in(qs(1, 1, 1, 1, 2), 2).has_value());

  // Root of a random square is recovered exactly.
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b) {
      if (a == 0 && b == 0) continue;
      const FieldScalar r = qs(a, 1, b, 1, 3);
      const auto root = field_sqrt_in(r * r, 3);
      REQUIRE(root.has_value());
      CHECK(*root * *root == r * r);
      CHECK(root->sign() > 0);
    }
}

TEST_CASE("field vectors") {
  const FieldVector v(2, {qs(1, 1, 0, 1, 1), qs(0, 1, 1, 1, 2)});
  CHECK(v.dim() == 2);
  CHECK(v.field_d() == 2);
  CHECK_FALSE(v.is_rational());

  const FieldVector e0 = FieldVector::unit(3, 0);
  const FieldVector e1 = FieldVector::unit(3, 1);
  CHECK((e0 + e1)[0] == FieldScalar(1));
  CHECK((e0 - e0).is_zero());
  CHECK((qs(0, 1, 1, 1, 2) * e0).field_d() == 2);

  CHECK(FieldVector::integral({Integer(1), Integer(-2)}).is_integral());
  CHECK_FALSE(FieldVector::rational({make_rational(1, 2), Rational(0)}).is_integral());
  CHECK_THROWS(FieldVector(4, {FieldScalar(1)}));  // 4 is not squarefree
}
