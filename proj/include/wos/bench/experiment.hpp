#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wos/bench/config.hpp"
#include "wos/bench/record.hpp"
#include "wos/planner.hpp"

namespace wos::bench {

enum class ExperimentKind {
  multistart,
  screening_sweep,
  visibility_sweep,
  nwalks_sweep,
  parallel_sweep,
  dim_sweep,
  rr_ik,
  rr_lipschitz,
};

ExperimentKind parse_experiment_kind(const std::string& name);
const char* to_string(ExperimentKind kind);

/// A validated experiment description. The raw config is kept for the spec
/// echo and for scene construction.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::multistart;
  KeyValueConfig config;
  std::vector<std::uint64_t> seeds;  // one repeat per seed
  std::string out_dir = ".";
  int workers = 0;  // 0: OpenMP default
  bool write_plots = true;

  // Walk and path parameters shared by the experiments.
  WalkConfig walk;
  double s_ub = 0.1;
  std::optional<double> goal_tol;
  int max_iters = 1000;

  // Grids; only the ones the experiment uses are read.
  std::vector<double> screenings;
  std::vector<double> k_r_grid;
  std::vector<std::int64_t> n_walks_grid;
  std::vector<std::int64_t> workers_grid;
  std::vector<std::int64_t> dims;

  Vector point;                       // fixed evaluation point of the estimator sweeps
  std::int64_t oracle_walks = 10'000'000;
  std::int64_t path_max_walks = 100'000;  // nwalks_sweep traces paths up to this budget
  int n_starts = 8;                   // multistart ring
  double start_radius = 8.0;

  /// Reads `experiment` and the keys it needs, with desk-scale defaults.
  /// `seeds` takes an explicit list; otherwise `seed` and `repeats` give
  /// seed, seed + 1, ...
  static ExperimentSpec from_config(const KeyValueConfig& cfg);
};

/// Runs the grid, writes one CSV per table (plus a `_timing` CSV for wall
/// times, which are not reproducible) and, if enabled, the SVG plots and
/// record.json into spec.out_dir.
RunRecord run_experiment(const ExperimentSpec& spec);

/// Plot kinds that apply to an experiment's record.
std::vector<std::string> default_plots(ExperimentKind kind);

/// Seed for one grid cell, mixed from the repeat seed and the cell's tags.
std::uint64_t cell_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

/// Scene outline for plotting.
SceneOutline outline(const Scene& scene, const std::string& label);

/// Path summary for records.
PathSeries path_series(const PathResult& path, const std::string& label, int scene);

extern const char* const kVersion;

}  // namespace wos::bench
