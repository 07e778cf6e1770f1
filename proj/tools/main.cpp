#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "periodlab/errors.hpp"
#include "periodlab/io.hpp"

using nlohmann::json;
using namespace periodlab;

namespace {

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_file(out_path, text);
}

std::string sibling_csv_path(const std::string& out_path) {
  const auto dot = out_path.find_last_of('.');
  const auto slash = out_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path + ".csv";
  return out_path.substr(0, dot) + ".csv";
}

int run(int argc, char** argv) {
  CLI::App app{"periodlab: orbit closures of positive 2-planes under arithmetic groups"};
  app.require_subcommand(1);

  std::string lattice_path, plane_path, walls_path, subspace_path, vector_path;
  std::string out_path, svg_path;
  int depth = 4, grid = 257, probes = 32;
  long cap = 2000, bound = 10, norm_bound = 2, height_bound = 1;
  unsigned long seed = 0;

  // PERIODLAB_THREADS caps internal parallelism; the current build runs every
  // operation serially, which trivially respects any cap >= 1.
  if (const char* env = std::getenv("PERIODLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || v < 1)
      std::cerr << "warning: ignoring invalid PERIODLAB_THREADS=" << env << "\n";
  }

  auto* classify = app.add_subcommand("classify", "orbit-closure type of a positive 2-plane");
  classify->add_option("--lattice", lattice_path, "lattice JSON file")->required();
  classify->add_option("--plane", plane_path, "plane JSON file")->required();
  classify->add_option("--out", out_path, "write the JSON report here too");

  auto* orbit = app.add_subcommand("orbit", "sample a word ball and report closure diagnostics");
  orbit->add_option("--lattice", lattice_path, "lattice JSON file")->required();
  orbit->add_option("--plane", plane_path, "base plane JSON file")->required();
  orbit->add_option("--depth", depth, "word-ball radius")->check(CLI::Range(0, 32));
  orbit->add_option("--cap", cap, "max sampled planes")->check(CLI::PositiveNumber);
  orbit->add_option("--seed", seed, "probe seed");
  orbit->add_option("--probes", probes, "probe planes for the covering radius")
      ->check(CLI::PositiveNumber);
  orbit->add_option("--norm-bound", norm_bound, "max |q(v,v)| of reflection axes")
      ->check(CLI::PositiveNumber);
  orbit->add_option("--height-bound", height_bound, "max sup-norm of reflection axes")
      ->check(CLI::PositiveNumber);
  orbit->add_option("--out", out_path, "JSON report path (CSV of points lands next to it)");

  auto* chambers = app.add_subcommand("chambers", "wall-and-chamber decomposition of P Pos(W)");
  chambers->add_option("--lattice", lattice_path, "lattice JSON file")->required();
  chambers->add_option("--subspace", subspace_path, "signature-(1,2) subspace JSON file")
      ->required();
  chambers->add_option("--walls", walls_path, "walls JSON file")->required();
  chambers->add_option("--grid", grid, "probe grid resolution")->check(CLI::Range(1, 4096));
  chambers->add_option("--out", out_path, "write the JSON report here too");
  chambers->add_option("--svg", svg_path, "write an SVG picture here");

  auto* isotropic = app.add_subcommand("isotropic", "smallest primitive isotropic vector");
  isotropic->add_option("--lattice", lattice_path, "lattice JSON file")->required();
  isotropic->add_option("--bound", bound, "sup-norm search bound")->check(CLI::PositiveNumber);
  isotropic->add_option("--out", out_path, "write the JSON report here too");

  auto* involution = app.add_subcommand("involution", "apply gamma_v and test the fixed set");
  involution->add_option("--lattice", lattice_path, "lattice JSON file")->required();
  involution->add_option("--plane", plane_path, "plane JSON file")->required();
  involution->add_option("--vector", vector_path, "positive-norm vector JSON file")->required();
  involution->add_option("--out", out_path, "write the JSON report here too");

  CLI11_PARSE(app, argc, argv);

  if (classify->parsed()) {
    const LatticePtr L = read_lattice(load_json(lattice_path));
    const PositivePlane P = read_plane(load_json(plane_path), L);
    emit(orbit_type_json(orbit_type(P)), out_path);
    return 0;
  }

  if (orbit->parsed()) {
    const LatticePtr L = read_lattice(load_json(lattice_path));
    const PositivePlane P = read_plane(load_json(plane_path), L);
    const auto gens = reflection_generators(L, norm_bound, height_bound);
    if (gens.empty())
      throw ResourceError("no reflection generators within the given bounds; raise them");
    const OrbitSample sample = orbit_ball(P, gens, depth, static_cast<std::size_t>(cap));
    const ClosureReport report =
        closure_diagnostic(sample, probes, static_cast<std::uint32_t>(seed));
    emit(closure_report_json(report, sample.truncated), out_path);
    if (!out_path.empty()) write_file(sibling_csv_path(out_path), orbit_csv(sample));
    return 0;
  }

  if (chambers->parsed()) {
    const LatticePtr L = read_lattice(load_json(lattice_path));
    const std::size_t n = static_cast<std::size_t>(L->rank());
    const auto basis = read_subspace(load_json(subspace_path), n);
    const DiskModel D(L, basis[0], basis[1], basis[2]);
    std::vector<Wall> walls;
    for (const auto& s : read_walls(load_json(walls_path), n))
      walls.push_back(wall_geodesic(D, s));
    const auto decomposition = chamber_decompose(D, walls, grid);
    emit(chambers_json(walls, decomposition), out_path);
    if (!svg_path.empty()) write_file(svg_path, disk_svg(D, walls, decomposition, grid));
    return 0;
  }

  if (isotropic->parsed()) {
    const LatticePtr L = read_lattice(load_json(lattice_path));
    emit(isotropic_json(find_isotropic(*L, bound)), out_path);
    return 0;
  }

  if (involution->parsed()) {
    const LatticePtr L = read_lattice(load_json(lattice_path));
    const PositivePlane P = read_plane(load_json(plane_path), L);
    const FieldVector v = read_vector(load_json(vector_path), static_cast<std::size_t>(L->rank()));
    const bool contains = plane_contains(P, v);
    const bool fixed = involution_gamma(P, v).same_oriented(P);
    emit(involution_json(contains, fixed), out_path);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const HypothesisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
