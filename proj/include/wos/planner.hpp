#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "wos/geometry.hpp"
#include "wos/solver.hpp"

namespace wos {

struct PlanConfig {
  double s_ub = 0.1;                // nominal step size
  std::optional<double> goal_tol;   // defaults to s_ub
  int max_iters = 1000;
  // A gradient estimate with norm <= stall_threshold ends the path. The
  // potential's scale is arbitrary (e^{-sqrt(c) d} far from the goal), so the
  // default only catches estimates where no walk contributed.
  double stall_threshold = 0.0;
  WalkConfig walk;
  Vector goal;

  double goal_tolerance() const { return goal_tol.value_or(s_ub); }
  void validate() const;
};

enum class PathStatus { reached, max_iters, stalled };

const char* to_string(PathStatus s);

/// A screened harmonic path: normalized gradient ascent on the potential of a
/// unit point source at the goal.
struct PathResult {
  std::vector<Vector> points;
  std::vector<GradientEstimate> step_gradients;  // one per step taken
  std::vector<double> step_sizes;
  std::vector<double> clearances;  // distance to the boundary at each point
  PathStatus status = PathStatus::max_iters;
  double length = 0.0;
};

/// Follows x <- x + s g / |g| with g from solve_gradient and
/// s = min(s_ub, d(x) / 2) until |x - goal| <= goal_tol. Step k uses walk
/// seed mix(cfg.walk.seed, k).
PathResult integrate_path(const FieldPtr& field, const PlanConfig& cfg, const Vector& start);

double path_length(const std::vector<Vector>& points);
inline double path_length(const PathResult& path) { return path_length(path.points); }

/// w = -sqrt(t) ln u, the distance-like transform of the potential.
double varadhan_transform(double u, double t);

/// Discrete Frechet distance between two polylines.
double discrete_frechet(const std::vector<Vector>& a, const std::vector<Vector>& b);

/// One row per point: coordinates, gradient estimate used to leave the point
/// (empty on the last row), step size, distance to the boundary.
void write_path_csv(std::ostream& out, const PathResult& path);

}  // namespace wos
