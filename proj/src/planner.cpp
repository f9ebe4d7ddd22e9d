#include "wos/planner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "wos/rng.hpp"

namespace wos {

void PlanConfig::validate() const {
  if (!(s_ub > 0.0)) throw ConfigError("s_ub must be positive");
  if (goal_tol && !(*goal_tol > 0.0)) throw ConfigError("goal_tol must be positive");
  if (max_iters < 0) throw ConfigError("max_iters must be >= 0");
  if (!(stall_threshold >= 0.0)) throw ConfigError("stall_threshold must be >= 0");
  walk.validate();
}

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::reached:
      return "reached";
    case PathStatus::max_iters:
      return "max_iters";
    case PathStatus::stalled:
      return "stalled";
  }
  return "unknown";
}

PathResult integrate_path(const FieldPtr& field, const PlanConfig& cfg, const Vector& start) {
  cfg.validate();
  if (!field) throw ConfigError("integrate_path: no distance field");
  if (start.size() != field->dim() || cfg.goal.size() != field->dim()) {
    throw ContractViolation("integrate_path: start/goal dimension does not match the domain");
  }
  if (!(field->distance(start) > 0.0)) throw ContractViolation("integrate_path: start lies outside the domain");
  if (!(field->distance(cfg.goal) > 0.0)) throw ContractViolation("integrate_path: goal lies outside the domain");

  const ScreenedPoissonProblem problem{field, BoundarySpec::constant(0.0), SourceSpec::dirac(cfg.goal, 1.0)};
  PathResult path;
  Vector x = start;
  path.points.push_back(x);
  path.clearances.push_back(field->distance(x));

  for (int it = 0;; ++it) {
    if ((x - cfg.goal).norm() <= cfg.goal_tolerance()) {
      path.status = PathStatus::reached;
      break;
    }
    if (it >= cfg.max_iters) {
      path.status = PathStatus::max_iters;
      break;
    }
    WalkConfig step_cfg = cfg.walk;
    step_cfg.seed = splitmix64(cfg.walk.seed ^ splitmix64(static_cast<std::uint64_t>(it)));
    GradientEstimate g = solve_gradient(problem, step_cfg, x);
    const double norm = g.mean.norm();
    if (!std::isfinite(norm) || norm <= cfg.stall_threshold) {
      path.step_gradients.push_back(std::move(g));
      path.status = PathStatus::stalled;
      break;
    }
    const double step = std::min(cfg.s_ub, 0.5 * path.clearances.back());
    x += (step / norm) * g.mean;
    path.step_gradients.push_back(std::move(g));
    path.step_sizes.push_back(step);
    path.points.push_back(x);
    path.clearances.push_back(field->distance(x));
  }
  path.length = path_length(path.points);
  return path;
}

double path_length(const std::vector<Vector>& points) {
  double len = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) len += (points[i] - points[i - 1]).norm();
  return len;
}

double varadhan_transform(double u, double t) {
  if (!(u > 0.0)) throw DomainError("varadhan_transform: u must be positive");
  if (!(t > 0.0)) throw DomainError("varadhan_transform: t must be positive");
  return -std::sqrt(t) * std::log(u);
}

double discrete_frechet(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) throw ContractViolation("discrete_frechet: empty polyline");
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // Row-by-row dynamic program over the coupling table.
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = (a[i] - b[j]).norm();
      if (i == 0 && j == 0) {
        cur[j] = d;
      } else if (i == 0) {
        cur[j] = std::max(cur[j - 1], d);
      } else if (j == 0) {
        cur[j] = std::max(prev[j], d);
      } else {
        cur[j] = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d);
      }
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

void write_path_csv(std::ostream& out, const PathResult& path) {
  const int dim = path.points.empty() ? 0 : static_cast<int>(path.points.front().size());
  out << "# path: one row per point; grad_* is the estimate used to leave the point\n";
  for (int i = 0; i < dim; ++i) out << "x" << i << ",";
  for (int i = 0; i < dim; ++i) out << "grad" << i << ",";
  out << "step,clearance\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < path.points.size(); ++k) {
    for (int i = 0; i < dim; ++i) out << path.points[k][i] << ",";
    for (int i = 0; i < dim; ++i) {
      if (k < path.step_gradients.size()) out << path.step_gradients[k].mean[i];
      out << ",";
    }
    if (k < path.step_sizes.size()) out << path.step_sizes[k];
    out << "," << path.clearances[k] << "\n";
  }
}

}  // namespace wos
