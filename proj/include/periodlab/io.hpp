#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "periodlab/disk.hpp"
#include "periodlab/monodromy.hpp"
#include "periodlab/period.hpp"

namespace periodlab {

// File formats (all rationals are exact numerator/denominator integer pairs;
// arbitrary precision entries may be given as decimal strings):
//   lattice:  {"rank": n, "gram": [[...], ...]}
//   vector:   {"d": 2, "coords": [[a_num, a_den, b_num, b_den], ...]}
//   plane:    {"d": 2, "basis": [coords, coords]}
//   subspace: {"d": 1, "basis": [coords, coords, coords]}
//   walls:    {"walls": [[int, ...], ...]}

nlohmann::json load_json(const std::string& path);

LatticePtr read_lattice(const nlohmann::json& j);
FieldVector read_vector(const nlohmann::json& j, std::size_t expect_dim);
PositivePlane read_plane(const nlohmann::json& j, const LatticePtr& L);
std::vector<FieldVector> read_subspace(const nlohmann::json& j, std::size_t expect_dim);
std::vector<FieldVector> read_walls(const nlohmann::json& j, std::size_t expect_dim);

nlohmann::json orbit_type_json(const OrbitType& t);
nlohmann::json closure_report_json(const ClosureReport& r, bool truncated);
nlohmann::json chambers_json(const std::vector<Wall>& walls, const std::vector<Chamber>& chambers);
nlohmann::json isotropic_json(const std::optional<std::vector<Integer>>& v);
nlohmann::json involution_json(bool contains, bool fixed);

// Floating coordinates of the sampled planes, one row per point:
// index,depth,w1_0..w1_{n-1},w2_0..w2_{n-1}
std::string orbit_csv(const OrbitSample& sample);

// Projective-chart picture: disk, walls as chords, chambers as colored
// horizontal probe runs, boundary arcs bold, horocycles dashed.
std::string disk_svg(const DiskModel& D, const std::vector<Wall>& walls,
                     const std::vector<Chamber>& chambers, int probe_grid,
                     const std::vector<std::vector<HorocyclePoint>>& horocycles = {});

void write_file(const std::string& path, const std::string& content);

}  // namespace periodlab
