// wos-nav: run experiments, render plots, and query the estimator.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "wos/bench/config.hpp"
#include "wos/bench/experiment.hpp"
#include "wos/bench/svg.hpp"
#include "wos/solver.hpp"

namespace {

using namespace wos;
using namespace wos::bench;

int workers_from_env() {
  const char* env = std::getenv("WOS_WORKERS");
  if (env == nullptr || *env == '\0') return -1;
  try {
    std::size_t used = 0;
    const int w = std::stoi(env, &used);
    if (used != std::string(env).size() || w < 0) throw std::invalid_argument("bad");
    return w;
  } catch (const std::exception&) {
    throw ConfigError(std::string("WOS_WORKERS must be a nonnegative integer, got '") + env + "'");
  }
}

int cmd_run(const std::string& spec_path, const std::string& out, const std::optional<std::int64_t>& seed,
            const std::optional<int>& workers) {
  KeyValueConfig cfg = KeyValueConfig::load(spec_path);
  if (!out.empty()) cfg.set("out", out);
  if (seed) {
    if (*seed < 0) throw ConfigError("--seed must be nonnegative");
    cfg.erase("seeds");
    cfg.set("seed", std::to_string(*seed));
  }
  // Precedence: --workers, then WOS_WORKERS, then the spec file.
  if (const int env = workers_from_env(); env >= 0) cfg.set("workers", std::to_string(env));
  if (workers) cfg.set("workers", std::to_string(*workers));
  const ExperimentSpec spec = ExperimentSpec::from_config(cfg);
  const RunRecord record = run_experiment(spec);
  std::cout << record.experiment << ": wrote " << record.files.size() << " files to " << spec.out_dir << "\n";
  for (const auto& [key, value] : record.summary) {
    std::cout << "  " << key << " = " << std::setprecision(6) << value << "\n";
  }
  return 0;
}

int cmd_plot(const std::string& record_path, const std::string& kind_name, std::string out) {
  const PlotKind kind = parse_plot_kind(kind_name);
  const RunRecord record = load_record(record_path);
  if (out.empty()) {
    const auto dir = std::filesystem::path(record_path).parent_path();
    out = (dir / (record.experiment + "_" + kind_name + ".svg")).string();
  }
  write_plot(record, kind, out);
  std::cout << out << "\n";
  return 0;
}

int cmd_solve(const std::string& scene_path, const std::string& point, std::int64_t walks, double screening,
              bool gradient, double epsilon, std::uint64_t seed, const std::optional<int>& workers) {
  const KeyValueConfig cfg = KeyValueConfig::load(scene_path);
  const Scene scene = make_scene(cfg);
  KeyValueConfig p;
  p.set("point", point);
  const Vector x = to_point(p.get_reals("point"), scene.field->dim());

  WalkConfig w;
  w.n_walks = walks;
  w.screening = screening;
  w.epsilon = epsilon;
  w.seed = seed;
  if (const int env = workers_from_env(); env >= 0) w.workers = env;
  if (workers) w.workers = *workers;
  w.validate();

  const ScreenedPoissonProblem problem{scene.field, BoundarySpec::constant(0.0), SourceSpec::dirac(scene.goal)};
  std::cout << std::setprecision(17);
  if (gradient) {
    const auto g = solve_gradient(problem, w, x);
    std::cout << "gradient";
    for (Eigen::Index i = 0; i < g.mean.size(); ++i) std::cout << " " << g.mean[i];
    std::cout << "\nstd_error";
    for (Eigen::Index i = 0; i < g.mean.size(); ++i) {
      std::cout << " " << std::sqrt(g.sample_variance[i] / static_cast<double>(g.n_samples));
    }
    std::cout << "\nmean_steps " << g.mean_steps_per_walk << "\ntruncated " << g.truncated_walks << "\nwall_time "
              << g.wall_time << "\n";
  } else {
    const auto v = solve_value(problem, w, x);
    std::cout << "value " << v.mean << "\nstd_error " << std::sqrt(v.sample_variance / static_cast<double>(v.n_samples))
              << "\nmean_steps " << v.mean_steps_per_walk << "\ntruncated " << v.truncated_walks << "\nwall_time "
              << v.wall_time << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walk-on-spheres screened Poisson navigation"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment described by a key-value spec file");
  std::string spec_path, out;
  std::optional<std::int64_t> seed;
  std::optional<int> workers;
  run->add_option("spec", spec_path, "Experiment spec file")->required();
  run->add_option("--out", out, "Output directory (overrides `out` in the spec)");
  run->add_option("--seed", seed, "Base seed (replaces `seed`/`seeds` in the spec)");
  run->add_option("--workers", workers, "Worker threads; 0 uses the OpenMP default");

  auto* plot = app.add_subcommand("plot", "Render an SVG from a record.json");
  std::string record_path, kind, plot_out;
  plot->add_option("record", record_path, "record.json written by `run`")->required();
  plot->add_option("--kind", kind, "path_overlay | loglog | box_timing")->required();
  plot->add_option("--out", plot_out, "Output SVG (default: next to the record)");

  auto* solve = app.add_subcommand("solve", "Estimate the navigation potential or its gradient at a point");
  std::string scene_path, point;
  std::int64_t walks = 10'000;
  double screening = 1.0, epsilon = 1e-2;
  bool gradient = false;
  std::uint64_t solve_seed = 0;
  std::optional<int> solve_workers;
  solve->add_option("--scene", scene_path, "Scene file (env, k_r, dim, goal, ...)")->required();
  solve->add_option("--point", point, "Comma-separated coordinates")->required();
  solve->add_option("--walks", walks, "Number of walks");
  solve->add_option("--screening", screening, "Screening coefficient c");
  solve->add_option("--epsilon", epsilon, "Absorbing shell width");
  solve->add_option("--seed", solve_seed, "Seed");
  solve->add_option("--workers", solve_workers, "Worker threads; 0 uses the OpenMP default");
  solve->add_flag("--gradient", gradient, "Estimate the gradient instead of the value");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(spec_path, out, seed, workers);
    if (*plot) return cmd_plot(record_path, kind, plot_out);
    if (*solve) return cmd_solve(scene_path, point, walks, screening, gradient, epsilon, solve_seed, solve_workers);
  } catch (const std::exception& e) {
    std::cerr << "wos-nav: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
