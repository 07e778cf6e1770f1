#include "periodlab/disk.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

#include "periodlab/errors.hpp"

namespace periodlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double angle_of(double x, double y) {
  double a = std::atan2(y, x);
  if (a < 0) a += kTwoPi;
  return a;
}

}  // namespace

DiskModel::DiskModel(LatticePtr lattice, FieldVector b1, FieldVector b2, FieldVector b3)
    : lattice_(std::move(lattice)), basis_{std::move(b1), std::move(b2), std::move(b3)} {
  if (!lattice_) throw std::invalid_argument("disk model needs a lattice");
  const std::size_t n = static_cast<std::size_t>(lattice_->rank());
  long d0 = 1;
  for (const auto& b : basis_) {
    if (b.dim() != n) throw std::invalid_argument("disk model basis rank mismatch");
    d0 = common_field(d0, b.field_d());
  }
  {
    Matrix<FieldScalar> m(3, n);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = basis_[i][j];
    if (rank(m) != 3) throw std::invalid_argument("disk model basis is linearly dependent");
  }

  Matrix<FieldScalar> gw(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) gw(i, j) = eval_form(*lattice_, basis_[i], basis_[j]);
  auto cd = congruence_diagonalize(gw);
  {
    const Signature sig = gram_signature(gw);
    if (!(sig.pos == 1 && sig.neg == 2))
      throw HypothesisError("subspace W must have signature (1,2); got (" +
                            std::to_string(sig.pos) + ", " + std::to_string(sig.neg) + ", " +
                            std::to_string(sig.nul) + ")");
  }

  // Order the diagonal: positive entry first.
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cd.diag[a].sign() > cd.diag[b].sign();
  });

  // The frame may need square roots of the diagonal norms; find the target
  // field that hosts all of them.
  long target = d0;
  if (d0 == 1) {
    for (std::size_t i = 0; i < 3; ++i) {
      const FieldScalar& delta = cd.diag[order[i]];
      const Rational mag = abs(delta.rational_part());
      const long m = squarefree_part(Rational(mag));
      if (m == 1) continue;
      if (target == 1)
        target = m;
      else if (target != m)
        throw HypothesisError(
            "disk frame needs square roots from incompatible quadratic fields Q(sqrt(" +
            std::to_string(target) + ")) and Q(sqrt(" + std::to_string(m) + "))");
    }
  }

  for (std::size_t i = 0; i < 3; ++i) {
    const FieldScalar& delta = cd.diag[order[i]];
    const FieldScalar mag = i == 0 ? delta : -delta;
    const auto root = field_sqrt_in(mag, target);
    if (!root)
      throw HypothesisError("disk frame norm " + mag.str() + " has no square root in Q(sqrt(" +
                            std::to_string(target) + ")); choose a different basis for W");
    FieldVector f = FieldVector::zero(n, target);
    for (std::size_t k = 0; k < 3; ++k) f += cd.basis(k, order[i]) * basis_[k];
    frame_[i] = (FieldScalar(1) / *root) * f;
  }
  frame_d_ = target;

  static const int expected[3] = {1, -1, -1};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const FieldScalar q = eval_form(*lattice_, frame_[i], frame_[j]);
      const FieldScalar want = (i == j) ? FieldScalar(expected[i]) : FieldScalar(0);
      if (!(q == want)) throw std::logic_error("disk frame failed to normalize exactly");
    }
}

std::array<FieldScalar, 3> DiskModel::project_to_frame(const FieldVector& s) const {
  return {eval_form(*lattice_, s, frame_[0]), -eval_form(*lattice_, s, frame_[1]),
          -eval_form(*lattice_, s, frame_[2])};
}

std::array<FieldScalar, 3> DiskModel::frame_coords(const FieldVector& v) const {
  auto t = project_to_frame(v);
  FieldVector rebuilt = t[0] * frame_[0] + t[1] * frame_[1] + t[2] * frame_[2];
  FieldVector diff = rebuilt - v;
  if (!diff.is_zero()) throw std::invalid_argument("vector does not lie in W");
  return t;
}

DiskModel::DiskPoint DiskModel::disk_coords(const FieldVector& v) const {
  const auto t = frame_coords(v);
  const FieldScalar norm = t[0] * t[0] - t[1] * t[1] - t[2] * t[2];
  const int cone = norm.sign();
  if (cone < 0 || t[0].sign() <= 0)
    throw std::invalid_argument("vector is outside the chosen positive cone of W");
  DiskPoint p;
  p.x = (t[1] / t[0]).to_double();
  p.y = (t[2] / t[0]).to_double();
  p.boundary = (cone == 0);
  return p;
}

std::array<double, 2> DiskModel::conformal_from_projective(const std::array<double, 2>& k) {
  const double r2 = std::min(1.0, k[0] * k[0] + k[1] * k[1]);
  const double f = 1.0 / (1.0 + std::sqrt(1.0 - r2));
  return {k[0] * f, k[1] * f};
}

Wall wall_geodesic(const DiskModel& D, const FieldVector& s) {
  if (eval_form(*D.lattice(), s, s).sign() >= 0)
    throw std::invalid_argument("wall class must have negative norm");
  Wall w{s, std::nullopt};
  const auto sigma = D.project_to_frame(s);
  if (sigma[0].is_zero() && sigma[1].is_zero() && sigma[2].is_zero()) return w;
  const FieldScalar norm = sigma[0] * sigma[0] - sigma[1] * sigma[1] - sigma[2] * sigma[2];
  if (norm.sign() >= 0) return w;  // s^perp misses the open cone

  // Chord line sigma_2 x + sigma_3 y = sigma_1 meets the unit circle in
  //   ((s1 s2 -+ s3 sqrt(disc)) / den, (s1 s3 +- s2 sqrt(disc)) / den),
  // den = s2^2 + s3^2, disc = den - s1^2 = -norm > 0.
  const FieldScalar den_exact = sigma[1] * sigma[1] + sigma[2] * sigma[2];
  const double s1 = sigma[0].to_double(), s2 = sigma[1].to_double(), s3 = sigma[2].to_double();
  const double den = den_exact.to_double();
  const double disc = std::sqrt((-norm).to_double());
  std::array<double, 2> a{(s1 * s2 - s3 * disc) / den, (s1 * s3 + s2 * disc) / den};
  std::array<double, 2> b{(s1 * s2 + s3 * disc) / den, (s1 * s3 - s2 * disc) / den};
  if (angle_of(a[0], a[1]) > angle_of(b[0], b[1])) std::swap(a, b);
  w.chord = WallChord{sigma, a, b};
  return w;
}

std::vector<Chamber> chamber_decompose(const DiskModel& D, const std::vector<Wall>& walls,
                                       int probe_grid) {
  if (probe_grid < 1) throw std::invalid_argument("probe_grid must be >= 1");
  std::vector<const WallChord*> active;
  for (const auto& w : walls)
    if (w.chord) active.push_back(&*w.chord);

  std::map<std::vector<int>, Chamber> chambers;
  const long g = probe_grid;
  for (long i = 1; i <= g; ++i) {
    const Rational x = make_rational(2 * i - g - 1, g + 1);
    for (long j = 1; j <= g; ++j) {
      const Rational y = make_rational(2 * j - g - 1, g + 1);
      if (x * x + y * y >= 1) continue;
      std::vector<int> signs;
      signs.reserve(active.size());
      bool on_wall = false;
      for (const auto* c : active) {
        const FieldScalar val =
            c->sigma[0] - c->sigma[1] * FieldScalar(x) - c->sigma[2] * FieldScalar(y);
        const int sg = val.sign();
        if (sg == 0) {
          on_wall = true;
          break;
        }
        signs.push_back(sg);
      }
      if (on_wall) continue;
      auto [it, fresh] = chambers.try_emplace(std::move(signs));
      if (fresh) {
        it->second.signs = it->first;
        it->second.sample_point = {x.get_d(), y.get_d()};
      }
    }
  }

  // Split the circle at wall endpoints and hand each open arc to the sign
  // vector seen just inside its midpoint.
  std::vector<double> cuts;
  for (const auto* c : active) {
    cuts.push_back(angle_of(c->e0[0], c->e0[1]));
    cuts.push_back(angle_of(c->e1[0], c->e1[1]));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cuts.end());

  std::vector<std::pair<double, double>> arcs;
  if (cuts.empty()) {
    arcs.emplace_back(0.0, kTwoPi);
  } else {
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) arcs.emplace_back(cuts[k], cuts[k + 1]);
    arcs.emplace_back(cuts.back(), cuts.front() + kTwoPi);
  }

  for (const auto& arc : arcs) {
    const double mid = (arc.first + arc.second) / 2;
    for (double inward : {1e-7, 1e-4}) {
      const double px = (1 - inward) * std::cos(mid);
      const double py = (1 - inward) * std::sin(mid);
      std::vector<int> signs;
      signs.reserve(active.size());
      bool ambiguous = false;
      for (const auto* c : active) {
        const double val = c->sigma[0].to_double() - c->sigma[1].to_double() * px -
                           c->sigma[2].to_double() * py;
        if (std::abs(val) < 1e-12) {
          ambiguous = true;
          break;
        }
        signs.push_back(val > 0 ? 1 : -1);
      }
      if (ambiguous) continue;
      auto [it, fresh] = chambers.try_emplace(std::move(signs));
      if (fresh) {
        it->second.signs = it->first;
        it->second.sample_point = {px, py};
      }
      it->second.boundary_arcs.push_back(arc);
      break;
    }
  }

  std::vector<Chamber> out;
  out.reserve(chambers.size());
  for (auto& [signs, chamber] : chambers) out.push_back(std::move(chamber));
  return out;
}

bool has_round_bits(const Chamber& c) { return !c.boundary_arcs.empty(); }

UnipotentFamily::UnipotentFamily(Matrix<FieldScalar> n, std::array<FieldScalar, 3> xi)
    : n_(std::move(n)), n2_(n_ * n_), xi_(std::move(xi)) {
  if (!(n_ * n2_ == Matrix<FieldScalar>(3, 3))) throw std::logic_error("N^3 != 0");
}

Matrix<FieldScalar> UnipotentFamily::at(const FieldScalar& t) const {
  Matrix<FieldScalar> g = Matrix<FieldScalar>::identity(3);
  const FieldScalar half_t2 = t * t / FieldScalar(2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g(i, j) += t * n_(i, j) + half_t2 * n2_(i, j);
  return g;
}

std::array<double, 9> UnipotentFamily::at_double(double t) const {
  std::array<double, 9> g{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      g[i * 3 + j] = (i == j ? 1.0 : 0.0) + t * n_(i, j).to_double() +
                     0.5 * t * t * n2_(i, j).to_double();
  return g;
}

UnipotentFamily unipotent_subgroup(const DiskModel& D, const FieldVector& xi) {
  const auto t = D.frame_coords(xi);
  if (t[0].is_zero() && t[1].is_zero() && t[2].is_zero())
    throw std::invalid_argument("unipotent_subgroup: xi must be nonzero");
  const FieldScalar norm = t[0] * t[0] - t[1] * t[1] - t[2] * t[2];
  if (!norm.is_zero()) throw std::invalid_argument("unipotent_subgroup: xi must be isotropic");
  if (t[0].sign() <= 0)
    throw std::invalid_argument("unipotent_subgroup: xi must lie in the closure of the cone");

  // Canonical q-orthogonal companion of xi: m = (0, -xi_3, xi_2) in frame
  // coordinates; then N = A_{xi,m}: x -> q(xi,x) m - q(m,x) xi kills xi and
  // cubes to zero.
  const std::array<FieldScalar, 3> m{FieldScalar(0), -t[2], t[1]};
  static const int eta[3] = {1, -1, -1};
  Matrix<FieldScalar> nil(3, 3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      nil(i, k) = FieldScalar(eta[k]) * (t[k] * m[i] - m[k] * t[i]);
  return UnipotentFamily(std::move(nil), t);
}

std::vector<HorocyclePoint> horocycle_orbit(const DiskModel& D, const FieldVector& xi,
                                            const std::array<double, 2>& base,
                                            const std::vector<double>& t_samples) {
  if (base[0] * base[0] + base[1] * base[1] >= 1.0 - 1e-12)
    throw std::invalid_argument("horocycle base point must be strictly inside the disk");
  const UnipotentFamily fam = unipotent_subgroup(D, xi);
  std::vector<HorocyclePoint> out;
  out.reserve(t_samples.size());
  for (double t : t_samples) {
    const auto g = fam.at_double(t);
    const double lift[3] = {1.0, base[0], base[1]};
    double p[3] = {0, 0, 0};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) p[i] += g[i * 3 + j] * lift[j];
    HorocyclePoint hp;
    hp.t = t;
    hp.projective = {p[1] / p[0], p[2] / p[0]};
    hp.conformal = DiskModel::conformal_from_projective(hp.projective);
    out.push_back(hp);
  }
  return out;
}

CircleFit fit_circle(const std::vector<std::array<double, 2>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_circle needs at least 3 points");
  // Least squares on x^2 + y^2 + D x + E y + F = 0.
  Eigen::MatrixXd A(points.size(), 3);
  Eigen::VectorXd rhs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    A(static_cast<Eigen::Index>(i), 0) = points[i][0];
    A(static_cast<Eigen::Index>(i), 1) = points[i][1];
    A(static_cast<Eigen::Index>(i), 2) = 1.0;
    rhs(static_cast<Eigen::Index>(i)) = -(points[i][0] * points[i][0] + points[i][1] * points[i][1]);
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
  CircleFit fit;
  fit.cx = -sol(0) / 2;
  fit.cy = -sol(1) / 2;
  fit.r = std::sqrt(std::max(0.0, fit.cx * fit.cx + fit.cy * fit.cy - sol(2)));
  for (const auto& p : points) {
    const double dist = std::hypot(p[0] - fit.cx, p[1] - fit.cy);
    fit.max_residual = std::max(fit.max_residual, std::abs(dist - fit.r));
  }
  return fit;
}

}  // namespace periodlab
