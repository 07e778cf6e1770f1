#include "periodlab/monodromy.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

#include "periodlab/errors.hpp"

namespace periodlab {

namespace {

std::string matrix_key(const Matrix<Integer>& m) {
  std::string key;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      key += m(i, j).get_str();
      key += ',';
    }
  return key;
}

bool is_isometry(const QuadraticLattice& L, const Matrix<Integer>& g) {
  return g.transpose() * L.gram() * g == L.gram();
}

// Integer reflection matrix along v; columns are rho_v(e_j).
Matrix<Integer> reflection_matrix(const QuadraticLattice& L, const std::vector<Integer>& v) {
  const std::size_t n = static_cast<std::size_t>(L.rank());
  Integer vv;
  std::vector<Integer> gv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gv[i] += L.gram()(i, j) * v[j];
  for (std::size_t i = 0; i < n; ++i) vv += v[i] * gv[i];
  Matrix<Integer> m = Matrix<Integer>::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    Integer t = 2 * gv[j];  // 2 q(e_j, v)
    if (!mpz_divisible_p(t.get_mpz_t(), vv.get_mpz_t()))
      throw std::invalid_argument("reflection along a non-integral axis");
    t /= vv;
    for (std::size_t i = 0; i < n; ++i) m(i, j) -= t * v[i];
  }
  return m;
}

// Enumerates candidate reflection axes: primitive integer vectors with
// sup-norm <= height_bound, first nonzero coordinate positive.
void enumerate_axes(std::size_t n, long height, std::vector<Integer>& x, std::size_t pos,
                    bool all_zero, std::vector<std::vector<Integer>>& out) {
  if (pos == n) {
    if (all_zero) return;
    Integer g;
    for (const auto& c : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) out.push_back(x);
    return;
  }
  for (long v = all_zero ? 0 : -height; v <= height; ++v) {
    x[pos] = v;
    enumerate_axes(n, height, x, pos + 1, all_zero && v == 0, out);
  }
}

}  // namespace

bool so_plus_membership(const QuadraticLattice& L, const Matrix<Integer>& g) {
  if (!is_isometry(L, g)) throw std::invalid_argument("so_plus_membership: not an isometry");
  if (det(to_rational(g)) != 1)
    throw std::invalid_argument("so_plus_membership: determinant is not +1");
  const auto& pos = L.positive_frame();
  const std::size_t n = static_cast<std::size_t>(L.rank());
  const Matrix<Rational> gr = to_rational(g);
  // m[i][j] = q(p_i, g p_j) over the fixed positive frame.
  Matrix<Rational> m(pos.size(), pos.size());
  for (std::size_t jj = 0; jj < pos.size(); ++jj) {
    std::vector<Rational> gp(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) gp[r] += gr(r, c) * L.frame_basis()(c, pos[jj]);
    for (std::size_t ii = 0; ii < pos.size(); ++ii) {
      Rational acc;
      for (std::size_t r = 0; r < n; ++r) {
        Rational grow;
        for (std::size_t c = 0; c < n; ++c)
          grow += Rational(L.gram()(r, c)) * gp[c];
        acc += L.frame_basis()(r, pos[ii]) * grow;
      }
      m(ii, jj) = acc;
    }
  }
  return sgn(det(m)) > 0;
}

std::vector<IntegralIsometry> reflection_generators(const LatticePtr& L, long norm_bound,
                                                    long height_bound) {
  if (norm_bound < 1 || height_bound < 1)
    throw std::invalid_argument("reflection_generators: bounds must be >= 1");
  const auto& sig = L->signature();
  if (sig.pos == 0 || sig.neg == 0)
    throw std::invalid_argument("reflection_generators: lattice must be indefinite");
  const std::size_t n = static_cast<std::size_t>(L->rank());

  std::vector<std::vector<Integer>> axes;
  {
    std::vector<std::vector<Integer>> candidates;
    std::vector<Integer> x(n);
    enumerate_axes(n, height_bound, x, 0, true, candidates);
    for (auto& v : candidates) {
      const FieldVector fv = FieldVector::integral(v);
      const FieldScalar norm = eval_form(*L, fv, fv);
      if (norm.is_zero()) continue;
      if (abs(norm.rational_part().get_num()) > norm_bound) continue;
      if (!is_integral_reflection(*L, fv)) continue;
      axes.push_back(std::move(v));
    }
  }

  std::vector<IntegralIsometry> gens;
  std::unordered_set<std::string> seen;
  seen.insert(matrix_key(Matrix<Integer>::identity(n)));
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const Matrix<Integer> ra = reflection_matrix(*L, axes[a]);
    for (std::size_t b = 0; b < axes.size(); ++b) {
      if (a == b) continue;
      const Matrix<Integer> g = ra * reflection_matrix(*L, axes[b]);
      if (!seen.insert(matrix_key(g)).second) continue;
      if (!so_plus_membership(*L, g)) continue;
      gens.push_back({g, {static_cast<int>(gens.size()) + 1}});
    }
  }
  return gens;
}

Matrix<Integer> isometry_inverse(const QuadraticLattice& L, const Matrix<Integer>& g) {
  const Matrix<Rational> inv =
      L.gram_inverse() * to_rational(g.transpose()) * to_rational(L.gram());
  Matrix<Integer> out(inv.rows(), inv.cols());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) {
      if (inv(i, j).get_den() != 1)
        throw std::invalid_argument("isometry_inverse: inverse is not integral");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

OrbitSample orbit_ball(const PositivePlane& base, const std::vector<IntegralIsometry>& gens,
                       int depth, std::size_t cap) {
  if (depth < 0) throw std::invalid_argument("orbit_ball: depth must be >= 0");
  if (cap < 1) throw std::invalid_argument("orbit_ball: cap must be >= 1");
  const LatticePtr L = base.lattice();

  // Expansion set: generators and their inverses, deduplicated.
  struct Move {
    Matrix<Integer> g;
    int word_step;
  };
  std::vector<Move> moves;
  {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (seen.insert(matrix_key(gens[i].matrix)).second)
        moves.push_back({gens[i].matrix, static_cast<int>(i) + 1});
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Matrix<Integer> inv = isometry_inverse(*L, gens[i].matrix);
      if (seen.insert(matrix_key(inv)).second)
        moves.push_back({std::move(inv), -(static_cast<int>(i) + 1)});
    }
  }

  std::optional<FieldVector> base_witness;
  try {
    OrbitType t = orbit_type(base);
    if (t.tag == OrbitType::Tag::Intermediate) base_witness = t.witness.front();
  } catch (const HypothesisError&) {
    // Outside the theorem's signature range: sample without witness tracking.
  }

  OrbitSample sample{base, {}, depth, false, {}};
  std::unordered_set<std::string> seen;
  seen.insert(base.canonical_key());
  sample.points.push_back({base, {}, 0, base_witness});

  std::size_t frontier_begin = 0;
  for (int level = 1; level <= depth && !sample.truncated; ++level) {
    const std::size_t frontier_end = sample.points.size();
    if (frontier_begin == frontier_end) break;
    for (std::size_t p = frontier_begin; p < frontier_end && !sample.truncated; ++p) {
      for (const auto& mv : moves) {
        FieldVector w1 = apply_integer_matrix(mv.g, sample.points[p].plane.w1());
        FieldVector w2 = apply_integer_matrix(mv.g, sample.points[p].plane.w2());
        PositivePlane next = PositivePlane::unchecked(L, std::move(w1), std::move(w2));
        if (!seen.insert(next.canonical_key()).second) continue;
        if (sample.points.size() >= cap) {
          sample.truncated = true;
          break;
        }
        // The new move acts on the left, so the word reads as a left-to-right
        // matrix product.
        OrbitPoint op{std::move(next), {mv.word_step}, level, std::nullopt};
        op.word.insert(op.word.end(), sample.points[p].word.begin(),
                       sample.points[p].word.end());
        if (sample.points[p].witness)
          op.witness = apply_integer_matrix(mv.g, *sample.points[p].witness);
        sample.points.push_back(std::move(op));
      }
    }
    frontier_begin = frontier_end;
  }

  std::sort(sample.points.begin(), sample.points.end(),
            [](const OrbitPoint& a, const OrbitPoint& b) {
              if (a.depth != b.depth) return a.depth < b.depth;
              return a.plane.canonical_key() < b.plane.canonical_key();
            });
  sample.counts.assign(static_cast<std::size_t>(depth) + 1, 0);
  for (const auto& p : sample.points)
    for (int d = p.depth; d <= depth; ++d) ++sample.counts[static_cast<std::size_t>(d)];
  return sample;
}

namespace {

// Deterministic probe plane in embedded coordinates: rejection-sample two
// box vectors until the restricted form is positive definite.
EmbeddedPlane random_probe_plane(const QuadraticLattice& L, std::uint32_t& state) {
  const std::size_t n = static_cast<std::size_t>(L.rank());
  const auto& signs = L.embedding_signs();
  const auto unit = [&](void) {
    return 2.0 * (static_cast<double>(lcg32(state)) / 4294967296.0) - 1.0;
  };
  for (;;) {
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = unit();
    for (std::size_t i = 0; i < n; ++i) b[i] = unit();
    double qaa = 0, qab = 0, qbb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      qaa += signs[i] * a[i] * a[i];
      qab += signs[i] * a[i] * b[i];
      qbb += signs[i] * b[i] * b[i];
    }
    if (qaa > 1e-6 && qaa * qbb - qab * qab > 1e-6)
      return orthonormalize_rows(std::move(a), std::move(b));
  }
}

}  // namespace

ClosureReport closure_diagnostic(const OrbitSample& sample, int probes, std::uint32_t seed) {
  if (sample.points.empty()) throw std::invalid_argument("closure_diagnostic: empty sample");
  const QuadraticLattice& L = *sample.base.lattice();

  std::vector<EmbeddedPlane> embedded;
  embedded.reserve(sample.points.size());
  for (const auto& p : sample.points) embedded.push_back(embed_plane(p.plane));

  ClosureReport rep;
  for (int d = 0; d <= sample.depth; ++d) rep.depths.push_back(d);
  rep.counts = sample.counts;

  if (sample.points.size() >= 2) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < embedded.size(); ++i)
      for (std::size_t j = i + 1; j < embedded.size(); ++j)
        best = std::min(best, embedded_distance(embedded[i], embedded[j]));
    rep.min_gap = best;
  }

  std::uint32_t state = seed;
  std::vector<EmbeddedPlane> probe_planes;
  probe_planes.reserve(static_cast<std::size_t>(probes));
  for (int i = 0; i < probes; ++i) probe_planes.push_back(random_probe_plane(L, state));

  // Covering radius per depth prefix: points arrive sorted by depth.
  std::vector<double> nearest(probe_planes.size(), std::numeric_limits<double>::infinity());
  std::size_t next_point = 0;
  for (int d = 0; d <= sample.depth; ++d) {
    while (next_point < sample.points.size() && sample.points[next_point].depth <= d) {
      for (std::size_t pr = 0; pr < probe_planes.size(); ++pr)
        nearest[pr] =
            std::min(nearest[pr], embedded_distance(probe_planes[pr], embedded[next_point]));
      ++next_point;
    }
    double worst = 0;
    for (double v : nearest) worst = std::max(worst, v);
    rep.covering_radius.push_back(worst);
  }

  if (sample.points.front().witness) {
    double worst = 0;
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
      const auto& w = sample.points[i].witness;
      if (!w) continue;
      worst = std::max(worst, embedded_line_gap(embedded[i], embed_vector(L, *w)));
    }
    rep.witness_alignment = worst;
  }
  return rep;
}

}  // namespace periodlab
