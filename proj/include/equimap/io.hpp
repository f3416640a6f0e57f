#pragma once

#include <string>
#include <vector>

#include "equimap/evolve.hpp"
#include "equimap/radial.hpp"

namespace equimap {

// Full round-trip decimal formatting (17 significant digits).
std::string fmt17(double x);

// Field files: one line per node, "r value_re value_im". Reading matches
// the declared grid node by node with 1e-12 tolerance; mismatch is an error.
void write_field_file(const std::string& path, const RadialField& f);
RadialField read_field_file(const std::string& path, const GridPtr& grid);

// Trajectory CSV with the pinned header
// t,mass_minus,mass_plus,sup_a2,compat_residual,strichartz_accum,energy_proxy
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec);

// Snapshot files: blocks of "# t <time>" followed by one line per node
// "r replus implus reminus imminus".
void write_snapshots(const std::string& path, const TrajectoryRecord& rec);
std::vector<Snapshot> read_snapshots(const std::string& path, const GridPtr& grid);

}  // namespace equimap
