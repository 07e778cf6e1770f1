#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "periodlab/disk.hpp"
#include "periodlab/errors.hpp"
#include "shipped.hpp"

using namespace periodlab;
using shipped::ints;

namespace {

const LatticePtr L5 = shipped::rank5();
const LatticePtr L6 = shipped::rank6();

// W = span{e1, e4, e5}: the restriction is already diag(1,-1,-1).
DiskModel coordinate_disk() {
  return DiskModel(L5, FieldVector::unit(5, 0), FieldVector::unit(5, 3), FieldVector::unit(5, 4));
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("frame construction") {
  const DiskModel D = coordinate_disk();
  CHECK(D.frame()[0] == FieldVector::unit(5, 0));
  CHECK(D.frame()[1] == FieldVector::unit(5, 3));
  CHECK(D.frame()[2] == FieldVector::unit(5, 4));
  CHECK(D.frame_field() == 1);

  // diag(2,-1,-1) restriction normalizes over Q(sqrt(2)).
  const DiskModel D2(L5, ints({1, 1, 0, 0, 0}), FieldVector::unit(5, 3), FieldVector::unit(5, 4));
  CHECK(D2.frame_field() == 2);
  CHECK(eval_form(*L5, D2.frame()[0], D2.frame()[0]) == FieldScalar(1));

  // diag(1,-3,-1) restriction normalizes over Q(sqrt(3)).
  const DiskModel D3(L5, FieldVector::unit(5, 0),
                     ints({0, 1, 0, 2, 0}),  // e2 + 2 e4, norm -3
                     FieldVector::unit(5, 4));
  CHECK(D3.frame_field() == 3);
  CHECK(eval_form(*L5, D3.frame()[1], D3.frame()[1]) == FieldScalar(-1));

  // Wrong signature is refused.
  CHECK_THROWS_AS(DiskModel(L5, FieldVector::unit(5, 0), FieldVector::unit(5, 1),
                            FieldVector::unit(5, 3)),
                  HypothesisError);
  // Incompatible square roots: diag(2,-1,-3) would need sqrt(2) and sqrt(3).
  CHECK_THROWS_AS(DiskModel(L5, ints({1, 1, 0, 0, 0}), FieldVector::unit(5, 3),
                            ints({0, 0, 1, 0, 2})),
                  HypothesisError);
}

TEST_CASE("disk_coords") {
  const DiskModel D = coordinate_disk();
  const auto center = D.disk_coords(FieldVector::unit(5, 0));
  CHECK(center.x == 0.0);
  CHECK(center.y == 0.0);
  CHECK_FALSE(center.boundary);

  // p1 + p2/2 -> (0.5, 0).
  FieldVector v(1, {FieldScalar(1), FieldScalar(0), FieldScalar(0),
                    FieldScalar(make_rational(1, 2)), FieldScalar(0)});
  const auto half = D.disk_coords(v);
  CHECK(half.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.y == 0.0);

  // Isotropic lift lands on the circle, flagged as boundary.
  const auto edge = D.disk_coords(ints({1, 0, 0, 1, 0}));
  CHECK(edge.boundary);
  CHECK(edge.x == doctest::Approx(1.0));
  CHECK(edge.y == 0.0);

  CHECK_THROWS(D.disk_coords(ints({0, 0, 0, 1, 0})));   // outside the cone
  CHECK_THROWS(D.disk_coords(ints({-1, 0, 0, 0, 0})));  // wrong component
  CHECK_THROWS(D.disk_coords(ints({0, 1, 0, 0, 0})));   // not in W
}

TEST_CASE("wall_geodesic") {
  const DiskModel D = coordinate_disk();

  const Wall horizontal = wall_geodesic(D, FieldVector::unit(5, 4));  // s = p3
  REQUIRE(horizontal.chord.has_value());
  CHECK(horizontal.chord->e0[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(horizontal.chord->e0[1] == doctest::Approx(0.0));
  CHECK(horizontal.chord->e1[0] == doctest::Approx(-1.0).epsilon(1e-12));

  const Wall vertical = wall_geodesic(D, FieldVector::unit(5, 3));  // s = p2
  REQUIRE(vertical.chord.has_value());
  CHECK(vertical.chord->e0[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vertical.chord->e1[1] == doctest::Approx(-1.0).epsilon(1e-12));

  const Wall diagonal = wall_geodesic(D, ints({0, 0, 0, 1, 1}));  // s = p2 + p3
  REQUIRE(diagonal.chord.has_value());
  const double r = std::sqrt(2.0) / 2;
  CHECK(diagonal.chord->e0[0] == doctest::Approx(-r).epsilon(1e-12));
  CHECK(diagonal.chord->e0[1] == doctest::Approx(r).epsilon(1e-12));
  CHECK(diagonal.chord->e1[0] == doctest::Approx(r).epsilon(1e-12));
  CHECK(diagonal.chord->e1[1] == doctest::Approx(-r).epsilon(1e-12));

  // Endpoints sit on the unit circle to floating accuracy.
  for (const Wall* w : {&horizontal, &vertical, &diagonal}) {
    for (const auto& e : {w->chord->e0, w->chord->e1})
      CHECK(std::abs(e[0] * e[0] + e[1] * e[1] - 1.0) < 1e-12);
  }

  CHECK_THROWS(wall_geodesic(D, FieldVector::unit(5, 0)));  // positive norm

  // Rank 6: walls can miss the disk entirely.
  const DiskModel D6(L6, FieldVector::unit(6, 0), FieldVector::unit(6, 3),
                     FieldVector::unit(6, 4));
  const Wall off = wall_geodesic(D6, FieldVector::unit(6, 5));  // s orthogonal to W
  CHECK_FALSE(off.chord.has_value());
  const Wall spacelike = wall_geodesic(D6, ints({1, 0, 0, 0, 0, 2}));  // projection = e1
  CHECK_FALSE(spacelike.chord.has_value());
}

TEST_CASE("chamber_decompose") {
  const DiskModel D = coordinate_disk();

  // No walls: a single chamber whose boundary is the full circle.
  const auto whole = chamber_decompose(D, {}, 9);
  REQUIRE(whole.size() == 1);
  CHECK(whole.front().signs.empty());
  REQUIRE(whole.front().boundary_arcs.size() == 1);
  CHECK(whole.front().boundary_arcs.front().second -
            whole.front().boundary_arcs.front().first ==
        doctest::Approx(2 * kPi));
  CHECK(has_round_bits(whole.front()));

  // One diametral wall: two chambers, one semicircular arc each.
  const auto halves = chamber_decompose(D, {wall_geodesic(D, FieldVector::unit(5, 3))}, 9);
  REQUIRE(halves.size() == 2);
  for (const auto& c : halves) {
    REQUIRE(c.boundary_arcs.size() == 1);
    CHECK(c.boundary_arcs.front().second - c.boundary_arcs.front().first ==
          doctest::Approx(kPi).epsilon(1e-9));
    CHECK(has_round_bits(c));
  }

  // Two diameters: four chambers, four quarter arcs.
  const std::vector<Wall> diameters{wall_geodesic(D, FieldVector::unit(5, 3)),
                                    wall_geodesic(D, FieldVector::unit(5, 4))};
  const auto quarters = chamber_decompose(D, diameters, 33);
  REQUIRE(quarters.size() == 4);
  for (const auto& c : quarters) {
    REQUIRE(c.boundary_arcs.size() == 1);
    CHECK(c.boundary_arcs.front().second - c.boundary_arcs.front().first ==
          doctest::Approx(kPi / 2).epsilon(1e-9));
    CHECK(has_round_bits(c));
    // The sample point's wall signs equal the chamber sign vector.
    const Rational sx(c.sample_point[0]);
    const Rational sy(c.sample_point[1]);
    for (std::size_t w = 0; w < diameters.size(); ++w) {
      const auto& sigma = diameters[w].chord->sigma;
      const FieldScalar val =
          sigma[0] - sigma[1] * FieldScalar(sx) - sigma[2] * FieldScalar(sy);
      CHECK(val.sign() == c.signs[w]);
    }
  }

  // Offset chord system: three chambers, all with round bits.
  const std::vector<Wall> offset{wall_geodesic(D, FieldVector::unit(5, 3)),
                                 wall_geodesic(D, ints({1, 0, 0, 2, 0}))};
  const auto three = chamber_decompose(D, offset, 33);
  CHECK(three.size() == 3);
  for (const auto& c : three) CHECK(has_round_bits(c));

  // An absent wall does not affect the decomposition.
  const DiskModel D6(L6, FieldVector::unit(6, 0), FieldVector::unit(6, 3),
                     FieldVector::unit(6, 4));
  const std::vector<Wall> with_absent{wall_geodesic(D6, FieldVector::unit(6, 3)),
                                      wall_geodesic(D6, FieldVector::unit(6, 5))};
  CHECK(chamber_decompose(D6, with_absent, 9).size() == 2);

  // A hand-built chamber with no arcs has no round bits.
  Chamber degenerate;
  degenerate.signs = {1};
  CHECK_FALSE(has_round_bits(degenerate));
}

TEST_CASE("unipotent family") {
  const DiskModel D = coordinate_disk();
  // xi = p1 + p2 in ambient coordinates: e1 + e4.
  const FieldVector xi = ints({1, 0, 0, 1, 0});
  const UnipotentFamily fam = unipotent_subgroup(D, xi);

  // g(0) = identity.
  CHECK(fam.at(FieldScalar(0)) == Matrix<FieldScalar>::identity(3));

  // g(t) xi = xi for sampled exact t.
  const auto txi = D.frame_coords(xi);
  const std::vector<FieldScalar> tf{txi[0], txi[1], txi[2]};
  for (long k : {-3L, 1L, 5L}) {
    const auto g = fam.at(FieldScalar(make_rational(k, 2)));
    CHECK(g.apply(tf) == tf);
  }

  // The matrix identities behind g(s) g(t) = g(s + t) as a polynomial
  // identity: N N^2 = N^2 N = N^2 N^2 = 0.
  const auto& N = fam.nilpotent();
  const auto& N2 = fam.nilpotent_sq();
  const Matrix<FieldScalar> zero(3, 3);
  CHECK(N * N == N2);
  CHECK(N * N2 == zero);
  CHECK(N2 * N == zero);
  CHECK(N2 * N2 == zero);

  // Spot exact values.
  const FieldScalar s = make_rational(3, 2), t = make_rational(-7, 3);
  CHECK(fam.at(s) * fam.at(t) == fam.at(s + t));
  CHECK(fam.at(t) * fam.at(s) == fam.at(s + t));

  // Isometry as a polynomial family: the coefficients of t^1..t^4 in
  // g(t)^T diag(1,-1,-1) g(t) vanish (with H = N^2/2):
  //   t^1: N^T eta + eta N
  //   t^2: N^T eta N + H^T eta + eta H
  //   t^3: N^T eta H + H^T eta N
  //   t^4: H^T eta H
  Matrix<FieldScalar> eta(3, 3);
  eta(0, 0) = FieldScalar(1);
  eta(1, 1) = FieldScalar(-1);
  eta(2, 2) = FieldScalar(-1);
  Matrix<FieldScalar> H(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) H(i, j) = N2(i, j) / FieldScalar(2);
  const auto add = [](const Matrix<FieldScalar>& a, const Matrix<FieldScalar>& b) {
    Matrix<FieldScalar> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
  };
  const auto Nt = N.transpose();
  const auto Ht = H.transpose();
  CHECK(add(Nt * eta, eta * N) == zero);
  CHECK(add(Nt * eta * N, add(Ht * eta, eta * H)) == zero);
  CHECK(add(Nt * eta * H, Ht * eta * N) == zero);
  CHECK(Ht * eta * H == zero);

  // Preconditions.
  CHECK_THROWS(unipotent_subgroup(D, FieldVector::unit(5, 0)));  // not isotropic
  CHECK_THROWS(unipotent_subgroup(D, ints({-1, 0, 0, 1, 0})));   // wrong cone side
  CHECK_THROWS(unipotent_subgroup(D, ints({1, 1, 0, 0, 0})));    // not in W
}

TEST_CASE("horocycle orbits") {
  const DiskModel D = coordinate_disk();
  const FieldVector xi = ints({1, 0, 0, 1, 0});  // boundary point (1, 0)

  std::vector<double> ts;
  for (int k = -12; k <= 12; ++k) ts.push_back(0.35 * k);

  const auto orbit = horocycle_orbit(D, xi, {0.0, 0.0}, ts);
  REQUIRE(orbit.size() == ts.size());
  // t = 0 is the base itself.
  CHECK(orbit[12].projective[0] == 0.0);
  CHECK(orbit[12].projective[1] == 0.0);

  // In the conformal chart the samples lie on a circle internally tangent
  // to the boundary at the xi endpoint.
  std::vector<std::array<double, 2>> pts;
  for (const auto& p : orbit) pts.push_back(p.conformal);
  const CircleFit fit = fit_circle(pts);
  CHECK(fit.max_residual < 1e-10);

  const auto b = D.disk_coords(xi);
  CHECK(b.boundary);
  const double dist_to_b = std::hypot(b.x - fit.cx, b.y - fit.cy);
  CHECK(std::abs(dist_to_b - fit.r) < 1e-10);                         // through b
  CHECK(std::abs(std::hypot(fit.cx, fit.cy) + fit.r - 1.0) < 1e-10);  // internally tangent

  // For this xi and base the circle is known in closed form.
  CHECK(fit.cx == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.cy == doctest::Approx(0.0));
  CHECK(fit.r == doctest::Approx(0.5).epsilon(1e-12));

  // Containment: a short horocycle segment stays inside its chamber.
  const std::vector<Wall> diameters{wall_geodesic(D, FieldVector::unit(5, 3)),
                                    wall_geodesic(D, FieldVector::unit(5, 4))};
  std::vector<double> small_ts;
  for (int k = -8; k <= 8; ++k) small_ts.push_back(0.01 * k);
  const auto seg = horocycle_orbit(D, xi, {0.9, 0.05}, small_ts);
  std::vector<int> base_signs;
  for (const auto& w : diameters) {
    const auto& s = w.chord->sigma;
    base_signs.push_back(
        (s[0].to_double() - s[1].to_double() * 0.9 - s[2].to_double() * 0.05) > 0 ? 1 : -1);
  }
  for (const auto& p : seg) {
    for (std::size_t w = 0; w < diameters.size(); ++w) {
      const auto& s = diameters[w].chord->sigma;
      const double val = s[0].to_double() - s[1].to_double() * p.projective[0] -
                         s[2].to_double() * p.projective[1];
      CHECK((val > 0 ? 1 : -1) == base_signs[w]);
    }
  }

  CHECK_THROWS(horocycle_orbit(D, xi, {1.0, 0.0}, ts));  // base on the boundary
}
