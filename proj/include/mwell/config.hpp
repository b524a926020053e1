#ifndef MWELL_CONFIG_HPP
#define MWELL_CONFIG_HPP

#include <cstdint>
#include <string>

#include "mwell/evolution.hpp"
#include "mwell/grid.hpp"
#include "mwell/potential.hpp"

namespace mwell {

/// Initial-state description from the run configuration.
struct StateSpec {
  std::string kind = "coherent";  // coherent | random_phase | file
  cplx alpha = 1.1;
  std::uint64_t seed = 42;
  int n_max = -1;  // -1: derived from the coherent mass rule
  std::string file;
};

/// Full run configuration. Parsed from a JSON document; every field can be
/// overridden on the command line.
struct RunConfig {
  std::string name = "run";
  PotentialSpec potential;
  double grid_x_min = -12.0;
  double grid_x_max = 116.9;
  double grid_h = 0.02;
  StateSpec state;
  double evolve_dt = 2.0 * M_PI * 1e-3;
  double evolve_T = 20.0 * M_PI;
  int record_stride = 10;
  std::string bc = "cap";
  double x_T = 7.9;
  int max_resonances = 24;
  std::string output_dir = "out";

  Grid grid() const { return Grid::from_step(grid_x_min, grid_x_max, grid_h); }
  Boundary boundary() const;
  EvolutionConfig evolution() const;

  /// Parse and validate; raises ConfigInvalid naming the offending field.
  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
  /// Canonical serialization used for hashing and manifests.
  std::string to_json_text() const;
  std::string hash() const;
};

/// Write a small JSON manifest next to the artifacts of a run stage.
void write_manifest(const std::string& dir, const std::string& stage, const RunConfig& cfg,
                    const std::vector<std::string>& outputs, double wall_seconds);

}  // namespace mwell

#endif
