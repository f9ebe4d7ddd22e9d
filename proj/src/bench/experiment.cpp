#include "wos/bench/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include "wos/bench/stats.hpp"
#include "wos/bench/svg.hpp"
#include "wos/rng.hpp"

namespace wos::bench {

const char* const kVersion = "wos-nav 1.0.0";

namespace {

namespace fs = std::filesystem;

const std::map<std::string, ExperimentKind>& kind_names() {
  static const std::map<std::string, ExperimentKind> names{
      {"multistart", ExperimentKind::multistart},
      {"screening_sweep", ExperimentKind::screening_sweep},
      {"visibility_sweep", ExperimentKind::visibility_sweep},
      {"nwalks_sweep", ExperimentKind::nwalks_sweep},
      {"parallel_sweep", ExperimentKind::parallel_sweep},
      {"dim_sweep", ExperimentKind::dim_sweep},
      {"rr_ik", ExperimentKind::rr_ik},
      {"rr_lipschitz", ExperimentKind::rr_lipschitz},
  };
  return names;
}

bool is_rr(ExperimentKind k) { return k == ExperimentKind::rr_ik || k == ExperimentKind::rr_lipschitz; }

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// One CSV file: a `#` comment line describing the table, a header, rows.
class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::string& comment, std::vector<std::string> columns)
      : path_(path), columns_(columns.size()), out_(path) {
    if (!out_) throw ConfigError("cannot write '" + path.string() + "'");
    out_ << "# " << comment << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw ContractViolation("csv row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
    if (!out_) throw ConfigError("failed writing '" + path_.string() + "'");
  }

 private:
  fs::path path_;
  std::size_t columns_;
  std::ofstream out_;
};

struct PathRun {
  std::vector<std::string> tags;  // values for the tag columns
  std::string label;
  int scene = 0;
  PathResult path;
  double wall_time = 0.0;
};

double min_clearance(const PathResult& p) {
  double m = std::numeric_limits<double>::infinity();
  for (double c : p.clearances) m = std::min(m, c);
  return m;
}

/// Trace of the per-walk covariance over n |g|^2: the squared relative error
/// of the step's gradient estimate.
double relative_variance(const GradientEstimate& g) {
  const double n2 = g.mean.squaredNorm();
  if (!(n2 > 0.0)) return std::numeric_limits<double>::infinity();
  return g.sample_variance.sum() / (static_cast<double>(g.n_samples) * n2);
}

class Runner {
 public:
  explicit Runner(const ExperimentSpec& spec) : spec_(spec), dir_(spec.out_dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw ConfigError("cannot create output directory '" + spec.out_dir + "'");
    record_.version = kVersion;
    record_.experiment = to_string(spec.kind);
    record_.spec = spec.config.entries();
  }

  RunRecord run() {
    switch (spec_.kind) {
      case ExperimentKind::multistart:
        multistart();
        break;
      case ExperimentKind::screening_sweep:
        screening_sweep();
        break;
      case ExperimentKind::visibility_sweep:
        visibility_sweep();
        break;
      case ExperimentKind::nwalks_sweep:
        nwalks_sweep();
        break;
      case ExperimentKind::parallel_sweep:
        parallel_sweep();
        break;
      case ExperimentKind::dim_sweep:
        dim_sweep();
        break;
      case ExperimentKind::rr_ik:
        rr_ik();
        break;
      case ExperimentKind::rr_lipschitz:
        rr_lipschitz();
        break;
    }
    if (spec_.write_plots) {
      for (const auto& kind : default_plots(spec_.kind)) {
        const std::string name = record_.experiment + "_" + kind + ".svg";
        write_plot(record_, parse_plot_kind(kind), (dir_ / name).string());
        record_.files.push_back(name);
      }
      record_.files.push_back("record.json");
      save_record(record_, (dir_ / "record.json").string());
    }
    return record_;
  }

 private:
  CsvFile csv(const std::string& name, const std::string& comment, std::vector<std::string> columns) {
    record_.files.push_back(name);
    return CsvFile(dir_ / name, comment, std::move(columns));
  }

  WalkConfig walk(double screening, std::int64_t n_walks, std::uint64_t seed) const {
    WalkConfig w = spec_.walk;
    w.screening = screening;
    w.n_walks = n_walks;
    w.seed = seed;
    w.workers = spec_.workers;
    return w;
  }

  PlanConfig plan(const Vector& goal, const WalkConfig& w) const {
    PlanConfig p;
    p.s_ub = spec_.s_ub;
    p.goal_tol = spec_.goal_tol;
    p.max_iters = spec_.max_iters;
    p.walk = w;
    p.goal = goal;
    return p;
  }

  PathRun trace(const FieldPtr& field, const Vector& start, const Vector& goal, const WalkConfig& w,
                std::vector<std::string> tags, std::string label, int scene) const {
    PathRun run;
    run.tags = std::move(tags);
    run.label = std::move(label);
    run.scene = scene;
    const auto t0 = std::chrono::steady_clock::now();
    run.path = integrate_path(field, plan(goal, w), start);
    run.wall_time = seconds_since(t0);
    return run;
  }

  Scene scene_with(const std::map<std::string, std::string>& overrides) const {
    KeyValueConfig cfg = spec_.config;
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    return make_scene(cfg);
  }

  std::vector<std::string> summary_cells(const PathRun& r) const {
    return {to_string(r.path.status), std::to_string(r.path.step_sizes.size()), fmt(r.path.length),
            fmt(min_clearance(r.path))};
  }

  /// Writes `<name>_paths.csv`, `<name>_timing.csv` and the record paths.
  void write_paths(const std::string& name, const std::vector<std::string>& tag_columns,
                   const std::vector<PathRun>& runs) {
    const int dim = runs.empty() ? 0 : static_cast<int>(runs.front().path.points.front().size());
    std::vector<std::string> cols = tag_columns;
    cols.push_back("point");
    for (int i = 0; i < dim; ++i) cols.push_back("x" + std::to_string(i));
    cols.push_back("clearance");
    auto paths = csv(name + "_paths.csv", name + " paths: one row per path point", cols);
    std::vector<std::string> tcols = tag_columns;
    tcols.push_back("wall_time");
    auto timing = csv(name + "_timing.csv", name + " path wall time in seconds (not reproducible)", tcols);
    for (const auto& r : runs) {
      for (std::size_t k = 0; k < r.path.points.size(); ++k) {
        std::vector<std::string> row = r.tags;
        row.push_back(std::to_string(k));
        for (int i = 0; i < dim; ++i) row.push_back(fmt(r.path.points[k][i]));
        row.push_back(fmt(r.path.clearances[k]));
        paths.row(row);
      }
      std::vector<std::string> trow = r.tags;
      trow.push_back(fmt(r.wall_time));
      timing.row(trow);
      record_.paths.push_back(path_series(r.path, r.label, r.scene));
    }
  }

  Vector fixed_point(int dim) const {
    Vector p = Vector::Zero(dim);
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(dim, spec_.point.size()); ++i) p[i] = spec_.point[i];
    return p;
  }

  // -------------------------------------------------------------------------

  void multistart() {
    const Scene scene = make_scene(spec_.config);
    record_.scenes.push_back(outline(scene, "k_r=" + short_num(scene.disk->k_r())));
    const int dim = scene.field->dim();
    std::vector<PathRun> runs;
    for (int k = 0; k < spec_.n_starts; ++k) {
      const double theta = std::numbers::pi * (2.0 * k + 1.0) / spec_.n_starts;
      Vector start = Vector::Zero(dim);
      start[0] = spec_.start_radius * std::cos(theta);
      start[1] = spec_.start_radius * std::sin(theta);
      if (!(scene.field->distance(start) > 0.0)) {
        throw ConfigError("multistart: start " + std::to_string(k) + " lies outside the free space");
      }
      for (auto seed : spec_.seeds) {
        const auto w = walk(spec_.walk.screening, spec_.walk.n_walks, cell_seed(seed, {std::uint64_t(k)}));
        runs.push_back(trace(scene.field, start, scene.goal, w, {std::to_string(k), std::to_string(seed)},
                             "start " + std::to_string(k), 0));
      }
    }
    auto table = csv("multistart.csv", "multistart: one path per start on the ring and seed",
                     {"start", "seed", "status", "steps", "length", "min_clearance"});
    for (const auto& r : runs) {
      auto row = r.tags;
      for (auto& c : summary_cells(r)) row.push_back(c);
      table.row(row);
    }
    write_paths("multistart", {"start", "seed"}, runs);
  }

  void screening_sweep() {
    const Scene scene = make_scene(spec_.config);
    record_.scenes.push_back(outline(scene, "k_r=" + short_num(scene.disk ? scene.disk->k_r() : 0.0)));
    std::vector<PathRun> runs;
    for (std::size_t ci = 0; ci < spec_.screenings.size(); ++ci) {
      const double c = spec_.screenings[ci];
      for (auto seed : spec_.seeds) {
        const auto w = walk(c, spec_.walk.n_walks, cell_seed(seed, {ci}));
        runs.push_back(trace(scene.field, scene.start, scene.goal, w, {fmt(c), std::to_string(seed)},
                             "c=" + short_num(c) + " seed " + std::to_string(seed), 0));
      }
    }
    auto table = csv("screening_sweep.csv", "screening_sweep: one path per screening coefficient c and seed",
                     {"c", "seed", "status", "steps", "length", "min_clearance"});
    std::map<double, std::vector<double>> lengths;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      auto row = runs[i].tags;
      for (auto& c : summary_cells(runs[i])) row.push_back(c);
      table.row(row);
      lengths[spec_.screenings[i / spec_.seeds.size()]].push_back(runs[i].path.length);
    }
    for (const auto& [c, ls] : lengths) record_.summary["mean_length_c=" + short_num(c)] = mean(ls);
    write_paths("screening_sweep", {"c", "seed"}, runs);
  }

  void visibility_sweep() {
    std::vector<PathRun> runs;
    std::vector<double> run_kr;
    for (std::size_t ki = 0; ki < spec_.k_r_grid.size(); ++ki) {
      const double kr = spec_.k_r_grid[ki];
      const Scene scene = scene_with({{"k_r", fmt(kr)}});
      record_.scenes.push_back(outline(scene, "k_r=" + short_num(kr)));
      for (auto seed : spec_.seeds) {
        const auto w = walk(spec_.walk.screening, spec_.walk.n_walks, cell_seed(seed, {ki}));
        runs.push_back(trace(scene.field, scene.start, scene.goal, w, {fmt(kr), std::to_string(seed)},
                             "k_r=" + short_num(kr) + " seed " + std::to_string(seed), static_cast<int>(ki)));
        run_kr.push_back(kr);
      }
    }
    auto table = csv("visibility_sweep.csv",
                     "visibility_sweep: one path per k_r and seed; mean_rel_variance averages "
                     "tr(Cov)/(n |g|^2) over the steps",
                     {"k_r", "seed", "status", "steps", "length", "min_clearance", "mean_rel_variance"});
    auto steps = csv("visibility_sweep_steps.csv",
                     "visibility_sweep: per-step gradient estimate statistics",
                     {"k_r", "seed", "step", "grad_norm", "rel_variance"});
    std::map<double, std::vector<double>> by_kr;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& r = runs[i];
      std::vector<double> rv;
      for (std::size_t k = 0; k < r.path.step_gradients.size(); ++k) {
        const auto& g = r.path.step_gradients[k];
        rv.push_back(relative_variance(g));
        steps.row({r.tags[0], r.tags[1], std::to_string(k), fmt(g.mean.norm()), fmt(rv.back())});
      }
      const double mrv = rv.empty() ? 0.0 : mean(rv);
      auto row = r.tags;
      for (auto& c : summary_cells(r)) row.push_back(c);
      row.push_back(fmt(mrv));
      table.row(row);
      by_kr[run_kr[i]].push_back(mrv);
    }
    for (const auto& [kr, v] : by_kr) record_.summary["mean_rel_variance_k_r=" + short_num(kr)] = mean(v);
    write_paths("visibility_sweep", {"k_r", "seed"}, runs);
  }

  struct ErrorCell {
    std::int64_t n_walks;
    std::uint64_t seed;
    double angle_error;
    double mean_steps;
    double wall_time;
  };

  /// Gradient estimates at the fixed point over the n_walks grid and seeds,
  /// against a high-budget estimate at the same point.
  std::vector<ErrorCell> error_grid(const Scene& scene, const Vector& reference, const Vector& x,
                                    std::uint64_t dim_tag) const {
    const ScreenedPoissonProblem problem{scene.field, BoundarySpec::constant(0.0), SourceSpec::dirac(scene.goal)};
    std::vector<ErrorCell> cells;
    for (auto n : spec_.n_walks_grid) {
      for (auto seed : spec_.seeds) {
        const auto w = walk(spec_.walk.screening, n, cell_seed(seed, {dim_tag, std::uint64_t(n)}));
        const auto g = solve_gradient(problem, w, x);
        const double e = g.mean.norm() > 0.0 ? angle_error(g.mean, reference) : std::numbers::pi / 2;
        cells.push_back({n, seed, e, g.mean_steps_per_walk, g.wall_time});
      }
    }
    return cells;
  }

  Vector oracle(const Scene& scene, const Vector& x, std::uint64_t dim_tag) const {
    const ScreenedPoissonProblem problem{scene.field, BoundarySpec::constant(0.0), SourceSpec::dirac(scene.goal)};
    const auto w = walk(spec_.walk.screening, spec_.oracle_walks,
                        cell_seed(spec_.seeds.front(), {0x0ac1eULL, dim_tag}));
    const auto g = solve_gradient(problem, w, x);
    if (!(g.mean.norm() > 0.0)) throw DomainError("oracle gradient is zero; raise oracle_walks");
    return g.mean;
  }

  static std::pair<std::vector<double>, std::vector<double>> means_by_n(const std::vector<ErrorCell>& cells,
                                                                        bool time) {
    std::map<std::int64_t, std::vector<double>> by;
    for (const auto& c : cells) by[c.n_walks].push_back(time ? c.wall_time : c.angle_error);
    std::vector<double> xs, ys;
    for (const auto& [n, v] : by) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(mean(v));
    }
    return {xs, ys};
  }

  void nwalks_sweep() {
    const Scene scene = make_scene(spec_.config);
    record_.scenes.push_back(outline(scene, "k_r=" + short_num(scene.disk ? scene.disk->k_r() : 0.0)));
    const int dim = scene.field->dim();
    const Vector x = fixed_point(dim);
    const Vector ref = oracle(scene, x, std::uint64_t(dim));
    const auto cells = error_grid(scene, ref, x, std::uint64_t(dim));

    auto orc = csv("nwalks_sweep_oracle.csv", "nwalks_sweep: reference gradient at the fixed point",
                   {"oracle_walks", "component", "value"});
    for (int i = 0; i < dim; ++i) orc.row({std::to_string(spec_.oracle_walks), std::to_string(i), fmt(ref[i])});
    auto table = csv("nwalks_sweep.csv", "nwalks_sweep: angle error (rad) of the gradient estimate at the fixed point",
                     {"n_walks", "seed", "angle_error"});
    auto timing = csv("nwalks_sweep_timing.csv", "nwalks_sweep: estimate wall time in seconds (not reproducible)",
                      {"n_walks", "seed", "wall_time"});
    XYSeries series{"dim " + std::to_string(dim), {}, {}};
    for (const auto& c : cells) {
      table.row({std::to_string(c.n_walks), std::to_string(c.seed), fmt(c.angle_error)});
      timing.row({std::to_string(c.n_walks), std::to_string(c.seed), fmt(c.wall_time)});
      series.x.push_back(static_cast<double>(c.n_walks));
      series.y.push_back(c.angle_error);
    }
    record_.panels.push_back({"angle error at the fixed point", "walks", "angle error (rad)", {series}});
    const auto [xs, ys] = means_by_n(cells, false);
    for (std::size_t i = 0; i < xs.size(); ++i) record_.summary["mean_angle_error_n=" + short_num(xs[i])] = ys[i];
    if (xs.size() >= 3) record_.summary["slope_angle_error"] = fit_loglog_slope(xs, ys);

    std::vector<PathRun> runs;
    for (auto n : spec_.n_walks_grid) {
      if (n > spec_.path_max_walks) continue;
      const auto w = walk(spec_.walk.screening, n, cell_seed(spec_.seeds.front(), {0x9a7bULL, std::uint64_t(n)}));
      runs.push_back(trace(scene.field, scene.start, scene.goal, w, {std::to_string(n)},
                           "n=" + short_num(static_cast<double>(n)), 0));
    }
    auto paths = csv("nwalks_sweep_path_summary.csv", "nwalks_sweep: one path per walk budget (first seed)",
                     {"n_walks", "status", "steps", "length", "min_clearance"});
    for (const auto& r : runs) {
      auto row = r.tags;
      for (auto& c : summary_cells(r)) row.push_back(c);
      paths.row(row);
    }
    write_paths("nwalks_sweep", {"n_walks"}, runs);
  }

  void parallel_sweep() {
    const Scene scene = make_scene(spec_.config);
    const Vector x = fixed_point(scene.field->dim());
    const ScreenedPoissonProblem problem{scene.field, BoundarySpec::constant(0.0), SourceSpec::dirac(scene.goal)};
    std::vector<std::string> cols{"workers", "n_walks", "seed"};
    for (int i = 0; i < x.size(); ++i) cols.push_back("g" + std::to_string(i));
    cols.push_back("mean_steps");
    auto table = csv("parallel_sweep.csv",
                     "parallel_sweep: gradient estimate at the fixed point per worker count (identical across "
                     "workers)",
                     cols);
    auto timing = csv("parallel_sweep_timing.csv", "parallel_sweep: estimate wall time in seconds (not reproducible)",
                      {"workers", "n_walks", "seed", "wall_time"});
    for (auto workers : spec_.workers_grid) {
      for (auto n : spec_.n_walks_grid) {
        TimingGroup group{"w=" + std::to_string(workers) + " n=" + short_num(static_cast<double>(n)), {}};
        for (auto seed : spec_.seeds) {
          auto w = walk(spec_.walk.screening, n, cell_seed(seed, {std::uint64_t(n)}));
          w.workers = static_cast<int>(workers);
          const auto g = solve_gradient(problem, w, x);
          std::vector<std::string> row{std::to_string(workers), std::to_string(n), std::to_string(seed)};
          for (int i = 0; i < x.size(); ++i) row.push_back(fmt(g.mean[i]));
          row.push_back(fmt(g.mean_steps_per_walk));
          table.row(row);
          timing.row({std::to_string(workers), std::to_string(n), std::to_string(seed), fmt(g.wall_time)});
          group.values.push_back(g.wall_time);
        }
        record_.summary["median_time_w=" + std::to_string(workers) + "_n=" + short_num(static_cast<double>(n))] =
            median(group.values);
        record_.timings.push_back(std::move(group));
      }
    }
  }

  void dim_sweep() {
    auto table = csv("dim_sweep.csv", "dim_sweep: angle error (rad) of the gradient estimate at the fixed point",
                     {"dim", "n_walks", "seed", "angle_error", "mean_steps"});
    auto timing = csv("dim_sweep_timing.csv", "dim_sweep: estimate wall time in seconds (not reproducible)",
                      {"dim", "n_walks", "seed", "wall_time"});
    auto orc = csv("dim_sweep_oracle.csv", "dim_sweep: reference gradient per dimension",
                   {"dim", "oracle_walks", "component", "value"});
    Panel time_panel{"wall time per estimate", "walks", "seconds", {}};
    Panel error_panel{"angle error to the reference gradient", "walks", "angle error (rad)", {}};
    for (auto d : spec_.dims) {
      const Scene scene = scene_with({{"dim", std::to_string(d)}});
      const Vector x = fixed_point(static_cast<int>(d));
      const Vector ref = oracle(scene, x, std::uint64_t(d));
      for (int i = 0; i < ref.size(); ++i) {
        orc.row({std::to_string(d), std::to_string(spec_.oracle_walks), std::to_string(i), fmt(ref[i])});
      }
      const auto cells = error_grid(scene, ref, x, std::uint64_t(d));
      XYSeries ts{"dim " + std::to_string(d), {}, {}}, es{"dim " + std::to_string(d), {}, {}};
      for (const auto& c : cells) {
        table.row({std::to_string(d), std::to_string(c.n_walks), std::to_string(c.seed), fmt(c.angle_error),
                   fmt(c.mean_steps)});
        timing.row({std::to_string(d), std::to_string(c.n_walks), std::to_string(c.seed), fmt(c.wall_time)});
        ts.x.push_back(static_cast<double>(c.n_walks));
        ts.y.push_back(c.wall_time);
        es.x.push_back(static_cast<double>(c.n_walks));
        es.y.push_back(c.angle_error);
      }
      time_panel.series.push_back(std::move(ts));
      error_panel.series.push_back(std::move(es));
      const auto [xe, ye] = means_by_n(cells, false);
      const auto [xt, yt] = means_by_n(cells, true);
      if (xe.size() >= 3) {
        record_.summary["slope_angle_error_dim=" + std::to_string(d)] = fit_loglog_slope(xe, ye);
        record_.summary["slope_time_dim=" + std::to_string(d)] = fit_loglog_slope(xt, yt);
      }
    }
    record_.panels.push_back(std::move(time_panel));
    record_.panels.push_back(std::move(error_panel));
  }

  void rr_ik() {
    const Scene scene = make_scene(spec_.config);
    record_.scenes.push_back(outline(scene, "IK collision curve"));
    std::vector<PathRun> runs;
    for (std::size_t ci = 0; ci < spec_.screenings.size(); ++ci) {
      const double c = spec_.screenings[ci];
      for (auto seed : spec_.seeds) {
        const auto w = walk(c, spec_.walk.n_walks, cell_seed(seed, {ci}));
        runs.push_back(trace(scene.field, scene.start, scene.goal, w, {fmt(c), std::to_string(seed)},
                             "c=" + short_num(c) + " seed " + std::to_string(seed), 0));
      }
    }
    auto table = csv("rr_ik.csv", "rr_ik: one joint-space path per screening coefficient c and seed",
                     {"c", "seed", "status", "steps", "length", "min_clearance"});
    for (const auto& r : runs) {
      auto row = r.tags;
      for (auto& c : summary_cells(r)) row.push_back(c);
      table.row(row);
      record_.summary["length_c=" + short_num(std::stod(r.tags[0])) + "_seed=" + r.tags[1]] = r.path.length;
    }
    write_paths("rr_ik", {"c", "seed"}, runs);
  }

  void rr_lipschitz() {
    const Scene lip = scene_with({{"distance", "lipschitz"}});
    const Scene ik = scene_with({{"distance", "ik"}});
    record_.scenes.push_back(outline(ik, "collision curve"));
    std::vector<PathRun> runs;
    std::vector<double> frechet;
    for (std::size_t ci = 0; ci < spec_.screenings.size(); ++ci) {
      const double c = spec_.screenings[ci];
      for (auto seed : spec_.seeds) {
        const auto w = walk(c, spec_.walk.n_walks, cell_seed(seed, {ci}));
        const std::string tag = "c=" + short_num(c) + " seed " + std::to_string(seed);
        runs.push_back(trace(lip.field, lip.start, lip.goal, w, {fmt(c), std::to_string(seed), "lipschitz"},
                             "Lipschitz " + tag, 0));
        runs.push_back(trace(ik.field, ik.start, ik.goal, w, {fmt(c), std::to_string(seed), "ik"}, "IK " + tag, 0));
        frechet.push_back(discrete_frechet(runs[runs.size() - 2].path.points, runs.back().path.points));
      }
    }
    auto table = csv("rr_lipschitz.csv",
                     "rr_lipschitz: Lipschitz-bound and IK-based paths with the same walks; frechet_to_ik is "
                     "the discrete Frechet distance between the pair",
                     {"c", "seed", "distance", "status", "steps", "length", "min_clearance", "frechet_to_ik"});
    for (std::size_t i = 0; i < runs.size(); ++i) {
      auto row = runs[i].tags;
      for (auto& c : summary_cells(runs[i])) row.push_back(c);
      row.push_back(fmt(frechet[i / 2]));
      table.row(row);
    }
    for (std::size_t i = 0; i < frechet.size(); ++i) {
      record_.summary["frechet_" + std::to_string(i)] = frechet[i];
    }
    write_paths("rr_lipschitz", {"c", "seed", "distance"}, runs);
  }

  const ExperimentSpec& spec_;
  fs::path dir_;
  RunRecord record_;
};

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
  const auto it = kind_names().find(name);
  if (it == kind_names().end()) throw ConfigError("unknown experiment '" + name + "'");
  return it->second;
}

const char* to_string(ExperimentKind kind) {
  for (const auto& [name, k] : kind_names()) {
    if (k == kind) return name.c_str();
  }
  return "unknown";
}

std::uint64_t cell_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(seed);
  for (auto t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

ExperimentSpec ExperimentSpec::from_config(const KeyValueConfig& cfg_in) {
  ExperimentSpec s;
  s.config = cfg_in;
  s.kind = parse_experiment_kind(cfg_in.get_string("experiment"));
  const bool rr = is_rr(s.kind);
  KeyValueConfig& cfg = s.config;
  if (!cfg.has("env")) cfg.set("env", rr ? "rr" : "disk");
  const std::string env = cfg.get_string("env");
  if (rr && env != "rr") throw ConfigError(std::string(to_string(s.kind)) + " needs env = rr");
  if (!rr && env != "disk" &&
      (s.kind == ExperimentKind::visibility_sweep || s.kind == ExperimentKind::dim_sweep ||
       s.kind == ExperimentKind::multistart)) {
    throw ConfigError(std::string(to_string(s.kind)) + " needs env = disk");
  }
  if (s.kind == ExperimentKind::rr_ik && !cfg.has("distance")) cfg.set("distance", "ik");

  if (cfg.has("seeds")) {
    for (auto v : cfg.get_ints("seeds")) {
      if (v < 0) throw ConfigError("seeds must be nonnegative");
      s.seeds.push_back(static_cast<std::uint64_t>(v));
    }
  } else {
    const auto seed = cfg.get_int("seed", 0);
    const auto repeats = cfg.get_int("repeats", 1);
    if (seed < 0) throw ConfigError("seed must be nonnegative");
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    for (std::int64_t r = 0; r < repeats; ++r) s.seeds.push_back(static_cast<std::uint64_t>(seed + r));
  }

  s.out_dir = cfg.get_string("out", ".");
  s.workers = static_cast<int>(cfg.get_int("workers", 0));
  if (s.workers < 0) throw ConfigError("workers must be >= 0");
  s.write_plots = cfg.get_bool("plots", true);

  s.walk.epsilon = cfg.get_real("epsilon", rr ? 0.02 : 0.01);
  s.walk.n_walks = cfg.get_int("n_walks", rr ? 100'000 : 10'000);
  s.walk.screening = cfg.get_real("screening", 1.0);
  s.walk.max_steps = cfg.get_int("max_steps", 10'000);
  s.walk.c_imp = cfg.get_real("c_imp", 1.0);
  s.walk.validate();
  s.s_ub = cfg.get_real("s_ub", 0.1);
  if (cfg.has("goal_tol")) s.goal_tol = cfg.get_real("goal_tol");
  s.max_iters = static_cast<int>(cfg.get_int("max_iters", 1000));

  s.screenings = cfg.get_reals("screenings", rr ? std::vector<double>{0.0, 5.0} : std::vector<double>{10.0, 1.0, 0.1});
  if (s.kind == ExperimentKind::rr_lipschitz && !cfg.has("screenings")) s.screenings = {0.0};
  s.k_r_grid = cfg.get_reals("k_r_grid", {0.3, 0.45, 0.6});
  s.n_walks_grid = cfg.get_ints("n_walks_grid", {1'000, 10'000, 100'000, 1'000'000});
  s.workers_grid = cfg.get_ints("workers_grid", {1, 2, 4, 8, 12});
  s.dims = cfg.get_ints("dims", {2, 3, 4, 5});
  s.oracle_walks = cfg.get_int("oracle_walks", 10'000'000);
  s.path_max_walks = cfg.get_int("path_max_walks", 100'000);
  s.n_starts = static_cast<int>(cfg.get_int("n_starts", 8));
  s.start_radius = cfg.get_real("start_radius", 8.0);
  const auto pt = cfg.get_reals("point", {-8.0, 0.0});
  s.point = to_point(pt, static_cast<int>(pt.size()));

  for (double c : s.screenings) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("screenings must be finite and >= 0");
  }
  for (auto n : s.n_walks_grid) {
    if (n < 1) throw ConfigError("n_walks_grid entries must be >= 1");
  }
  for (auto w : s.workers_grid) {
    if (w < 1) throw ConfigError("workers_grid entries must be >= 1");
  }
  for (auto d : s.dims) {
    if (d < 2 || d > kMaxDim) throw ConfigError("dims entries must lie in [2, " + std::to_string(kMaxDim) + "]");
  }
  if (s.oracle_walks < 1) throw ConfigError("oracle_walks must be >= 1");
  if (s.n_starts < 1) throw ConfigError("n_starts must be >= 1");
  if (!(s.start_radius > 0.0)) throw ConfigError("start_radius must be positive");

  // Echo resolved values that the experiment depends on.
  cfg.set("screening", fmt(s.walk.screening));
  cfg.set("epsilon", fmt(s.walk.epsilon));
  cfg.set("n_walks", std::to_string(s.walk.n_walks));
  std::string seeds;
  for (std::size_t i = 0; i < s.seeds.size(); ++i) seeds += (i ? "," : "") + std::to_string(s.seeds[i]);
  cfg.set("seeds", seeds);
  return s;
}

RunRecord run_experiment(const ExperimentSpec& spec) { return Runner(spec).run(); }

std::vector<std::string> default_plots(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::nwalks_sweep:
      return {"path_overlay", "loglog"};
    case ExperimentKind::parallel_sweep:
      return {"box_timing"};
    case ExperimentKind::dim_sweep:
      return {"loglog"};
    default:
      return {"path_overlay"};
  }
}

SceneOutline outline(const Scene& scene, const std::string& label) {
  SceneOutline o;
  o.label = label;
  if (scene.disk) {
    const auto& d = *scene.disk;
    o.circles.push_back({Eigen::Vector2d::Zero(), d.outer_radius(), false});
    o.circles.push_back({d.upper_center(), d.upper_radius(), true});
    o.circles.push_back({d.lower_center(), d.lower_radius(), true});
  }
  if (scene.arm && scene.arm->joints() >= 2) {
    o.has_box = true;
    o.box_lower = {scene.arm->joint_lower[0], scene.arm->joint_lower[1]};
    o.box_upper = {scene.arm->joint_upper[0], scene.arm->joint_upper[1]};
    if (scene.curve) {
      for (const auto& p : scene.curve->points) o.markers.emplace_back(p[0], p[1]);
    } else if (scene.arm->joints() == 2) {
      for (const auto& p : collision_curve(*scene.arm, scene.obstacle, 200).points) o.markers.emplace_back(p[0], p[1]);
    }
  }
  return o;
}

PathSeries path_series(const PathResult& path, const std::string& label, int scene) {
  PathSeries s;
  s.label = label;
  s.scene = scene;
  s.points = path.points;
  s.status = to_string(path.status);
  s.length = path.length;
  s.min_clearance = min_clearance(path);
  return s;
}

}  // namespace wos::bench
