#include "periodlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "periodlab/errors.hpp"

namespace periodlab {

using nlohmann::json;

namespace {

Integer parse_integer(const json& j, const char* what) {
  try {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Integer(j.get<std::string>());
  } catch (const std::exception&) {
  }
  throw ParseError(std::string(what) + ": expected an integer or a decimal string, got " +
                   j.dump());
}

FieldScalar parse_coordinate(const json& j, long d) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError("coordinate must be [a_num, a_den, b_num, b_den]; got " + j.dump());
  try {
    const Rational a = make_rational(parse_integer(j[0], "a_num"), parse_integer(j[1], "a_den"));
    const Rational b = make_rational(parse_integer(j[2], "b_num"), parse_integer(j[3], "b_den"));
    if (sgn(b) == 0) return FieldScalar(a);
    return FieldScalar(a, b, d);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

long parse_field_tag(const json& j) {
  if (!j.contains("d")) throw ParseError("missing field tag \"d\"");
  const Integer d = parse_integer(j["d"], "d");
  if (d < 1 || !d.fits_slong_p() || !is_squarefree(d.get_si()))
    throw ParseError("field tag d must be a squarefree positive integer; got " + d.get_str());
  return d.get_si();
}

FieldVector parse_coords(const json& coords, long d, std::size_t expect_dim) {
  if (!coords.is_array())
    throw ParseError("coords must be an array of coordinates");
  if (expect_dim != 0 && coords.size() != expect_dim)
    throw ParseError("expected " + std::to_string(expect_dim) + " coordinates, got " +
                     std::to_string(coords.size()));
  std::vector<FieldScalar> c;
  c.reserve(coords.size());
  for (const auto& e : coords) c.push_back(parse_coordinate(e, d));
  try {
    return FieldVector(d, std::move(c));
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

json integer_array(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& z : v) {
    if (z.fits_slong_p())
      out.push_back(z.get_si());
    else
      out.push_back(z.get_str());
  }
  return out;
}

json integer_array(const FieldVector& v) {
  std::vector<Integer> ints;
  ints.reserve(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (!v[i].is_rational() || v[i].rational_part().get_den() != 1)
      throw std::invalid_argument("expected an integral vector");
    ints.push_back(v[i].rational_part().get_num());
  }
  return integer_array(ints);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

LatticePtr read_lattice(const json& j) {
  if (!j.contains("rank") || !j.contains("gram"))
    throw ParseError("lattice file needs \"rank\" and \"gram\"");
  const Integer rank = parse_integer(j["rank"], "rank");
  if (rank < 2 || rank > 64) throw ParseError("lattice rank out of range: " + rank.get_str());
  const std::size_t n = static_cast<std::size_t>(rank.get_si());
  const auto& gram = j["gram"];
  if (!gram.is_array() || gram.size() != n)
    throw ParseError("gram must be an array of " + std::to_string(n) + " rows");
  Matrix<Integer> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!gram[i].is_array() || gram[i].size() != n)
      throw ParseError("gram row " + std::to_string(i) + " must have " + std::to_string(n) +
                       " entries");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = parse_integer(gram[i][k], "gram entry");
  }
  try {
    return std::make_shared<QuadraticLattice>(std::move(m));
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

FieldVector read_vector(const json& j, std::size_t expect_dim) {
  if (!j.contains("coords")) throw ParseError("vector file needs \"coords\"");
  return parse_coords(j["coords"], parse_field_tag(j), expect_dim);
}

PositivePlane read_plane(const json& j, const LatticePtr& L) {
  if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].size() != 2)
    throw ParseError("plane file needs \"basis\" with two coordinate arrays");
  const long d = parse_field_tag(j);
  const std::size_t n = static_cast<std::size_t>(L->rank());
  FieldVector w1 = parse_coords(j["basis"][0], d, n);
  FieldVector w2 = parse_coords(j["basis"][1], d, n);
  try {
    return PositivePlane(L, std::move(w1), std::move(w2));
  } catch (const std::exception& e) {
    throw HypothesisError(e.what());
  }
}

std::vector<FieldVector> read_subspace(const json& j, std::size_t expect_dim) {
  if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].size() != 3)
    throw ParseError("subspace file needs \"basis\" with three coordinate arrays");
  const long d = parse_field_tag(j);
  std::vector<FieldVector> out;
  for (const auto& b : j["basis"]) out.push_back(parse_coords(b, d, expect_dim));
  return out;
}

std::vector<FieldVector> read_walls(const json& j, std::size_t expect_dim) {
  if (!j.contains("walls") || !j["walls"].is_array())
    throw ParseError("walls file needs a \"walls\" array");
  std::vector<FieldVector> out;
  for (const auto& w : j["walls"]) {
    if (!w.is_array() || w.size() != expect_dim)
      throw ParseError("each wall must be an integer vector of rank " +
                       std::to_string(expect_dim));
    std::vector<Integer> coords;
    for (const auto& e : w) coords.push_back(parse_integer(e, "wall entry"));
    out.push_back(FieldVector::integral(coords));
  }
  return out;
}

json orbit_type_json(const OrbitType& t) {
  json out;
  out["tag"] = OrbitType::tag_name(t.tag);
  if (t.tag == OrbitType::Tag::Closed) {
    json basis = json::array();
    for (const auto& w : t.witness) basis.push_back(integer_array(w));
    out["witness"] = basis;
  } else if (t.tag == OrbitType::Tag::Intermediate) {
    out["witness"] = integer_array(t.witness.front());
  }
  return out;
}

json closure_report_json(const ClosureReport& r, bool truncated) {
  json out;
  out["depths"] = r.depths;
  out["counts"] = r.counts;
  out["min_gap"] = r.min_gap ? json(*r.min_gap) : json(nullptr);
  out["covering_radius"] = r.covering_radius;
  out["witness_alignment"] = r.witness_alignment ? json(*r.witness_alignment) : json(nullptr);
  out["truncated"] = truncated;
  return out;
}

json chambers_json(const std::vector<Wall>& walls, const std::vector<Chamber>& chambers) {
  json out;
  json jwalls = json::array();
  for (const auto& w : walls) {
    json jw;
    jw["s"] = integer_array(w.s);
    jw["in_disk"] = w.chord.has_value();
    if (w.chord) {
      jw["endpoints"] = {{w.chord->e0[0], w.chord->e0[1]}, {w.chord->e1[0], w.chord->e1[1]}};
    }
    jwalls.push_back(jw);
  }
  out["walls"] = jwalls;
  json jch = json::array();
  for (const auto& c : chambers) {
    json jc;
    jc["signs"] = c.signs;
    jc["sample_point"] = {c.sample_point[0], c.sample_point[1]};
    json arcs = json::array();
    for (const auto& a : c.boundary_arcs) arcs.push_back({a.first, a.second});
    jc["arcs"] = arcs;
    jc["round_bits"] = has_round_bits(c);
    jch.push_back(jc);
  }
  out["chambers"] = jch;
  return out;
}

json isotropic_json(const std::optional<std::vector<Integer>>& v) {
  json out;
  out["found"] = v.has_value();
  if (v) out["vector"] = integer_array(*v);
  return out;
}

json involution_json(bool contains, bool fixed) {
  json out;
  out["contains_v"] = contains;
  out["fixed"] = fixed;
  return out;
}

std::string orbit_csv(const OrbitSample& sample) {
  const std::size_t n = static_cast<std::size_t>(sample.base.lattice()->rank());
  std::ostringstream os;
  os << "index,depth";
  for (std::size_t j = 0; j < n; ++j) os << ",w1_" << j;
  for (std::size_t j = 0; j < n; ++j) os << ",w2_" << j;
  os << "\n";
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    const auto& p = sample.points[i];
    os << i << "," << p.depth;
    for (std::size_t j = 0; j < n; ++j) os << "," << format_double(p.plane.w1()[j].to_double());
    for (std::size_t j = 0; j < n; ++j) os << "," << format_double(p.plane.w2()[j].to_double());
    os << "\n";
  }
  return os.str();
}

namespace {

const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                          "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string disk_svg(const DiskModel& D, const std::vector<Wall>& walls,
                     const std::vector<Chamber>& chambers, int probe_grid,
                     const std::vector<std::vector<HorocyclePoint>>& horocycles) {
  std::map<std::vector<int>, std::size_t> chamber_index;
  for (std::size_t i = 0; i < chambers.size(); ++i) chamber_index[chambers[i].signs] = i;
  std::vector<const WallChord*> active;
  for (const auto& w : walls)
    if (w.chord) active.push_back(&*w.chord);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.15 -1.15 2.3 2.3\" "
        "width=\"640\" height=\"640\">\n";
  os << "<g transform=\"scale(1,-1)\">\n";  // mathematical orientation
  os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"white\" stroke=\"#444\" "
        "stroke-width=\"0.006\"/>\n";

  // Chamber coloring: horizontal runs of equally-classified probes.
  const long g = probe_grid;
  const double step = 2.0 / (g + 1);
  for (long j = 1; j <= g; ++j) {
    const Rational y = make_rational(2 * j - g - 1, g + 1);
    const double yd = y.get_d();
    long run_start = -1;
    std::size_t run_chamber = 0;
    const auto flush = [&](long end_i) {
      if (run_start < 0) return;
      const double x0 = -1.0 + step * static_cast<double>(run_start);
      const double x1 = -1.0 + step * static_cast<double>(end_i - 1);
      os << "<rect x=\"" << fmt(x0 - step / 2) << "\" y=\"" << fmt(yd - step / 2) << "\" width=\""
         << fmt(x1 - x0 + step) << "\" height=\"" << fmt(step) << "\" fill=\""
         << kPalette[run_chamber % 12] << "\" fill-opacity=\"0.65\"/>\n";
      run_start = -1;
    };
    for (long i = 1; i <= g; ++i) {
      const Rational x = make_rational(2 * i - g - 1, g + 1);
      bool classified = false;
      std::size_t idx = 0;
      if (x * x + y * y < 1) {
        std::vector<int> signs;
        signs.reserve(active.size());
        bool on_wall = false;
        for (const auto* c : active) {
          const int sg =
              (c->sigma[0] - c->sigma[1] * FieldScalar(x) - c->sigma[2] * FieldScalar(y)).sign();
          if (sg == 0) {
            on_wall = true;
            break;
          }
          signs.push_back(sg);
        }
        if (!on_wall) {
          auto it = chamber_index.find(signs);
          if (it != chamber_index.end()) {
            classified = true;
            idx = it->second;
          }
        }
      }
      if (classified && run_start >= 0 && idx == run_chamber) continue;
      flush(i);
      if (classified) {
        run_start = i;
        run_chamber = idx;
      }
    }
    flush(g + 1);
  }

  // Boundary arcs, bold, colored by chamber.
  for (std::size_t ci = 0; ci < chambers.size(); ++ci) {
    for (const auto& arc : chambers[ci].boundary_arcs) {
      const double a0 = arc.first, a1 = arc.second;
      const int large = (a1 - a0) > 3.141592653589793 ? 1 : 0;
      os << "<path d=\"M " << fmt(std::cos(a0)) << " " << fmt(std::sin(a0)) << " A 1 1 0 "
         << large << " 1 " << fmt(std::cos(a1)) << " " << fmt(std::sin(a1))
         << "\" fill=\"none\" stroke=\"" << kPalette[ci % 12]
         << "\" stroke-width=\"0.035\"/>\n";
    }
  }

  for (const auto* c : active) {
    os << "<line x1=\"" << fmt(c->e0[0]) << "\" y1=\"" << fmt(c->e0[1]) << "\" x2=\""
       << fmt(c->e1[0]) << "\" y2=\"" << fmt(c->e1[1])
       << "\" stroke=\"#222\" stroke-width=\"0.01\"/>\n";
  }

  for (const auto& h : horocycles) {
    if (h.empty()) continue;
    os << "<polyline points=\"";
    for (const auto& p : h) os << fmt(p.projective[0]) << "," << fmt(p.projective[1]) << " ";
    os << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"0.008\" "
          "stroke-dasharray=\"0.03,0.02\"/>\n";
  }

  os << "</g>\n</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
}

}  // namespace periodlab
