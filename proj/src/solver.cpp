#include "wos/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <type_traits>

#include <omp.h>

#include "wos/kernels.hpp"
#include "wos/rng.hpp"

namespace wos {

void WalkConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (n_walks < 1) throw ConfigError("n_walks must be >= 1");
  if (!(screening >= 0.0) || !std::isfinite(screening)) throw ConfigError("screening must be finite and >= 0");
  if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
  if (!(c_imp > 0.0)) throw ConfigError("c_imp must be positive");
}

namespace {

struct Walker {
  const ScreenedPoissonProblem& problem;
  const WalkConfig& cfg;
  int n;

  double boundary_value(const Vector& x) const {
    if (auto c = problem.boundary.constant_value()) return *c;
    if (auto y = problem.field->closest_point(x)) return problem.boundary(*y);
    return problem.boundary(x);
  }

  // Source integral over B(x, R) against G_B(x, .): one sample (or the exact
  // value for a point source). Sign follows Delta u - c u = f.
  double source_term(const ScreenedBallKernel& kernel, const Vector& x, Rng& rng) const {
    const double R = kernel.radius();
    if (const auto* dirac = problem.source.as_dirac()) {
      const double r = (dirac->point - x).norm();
      if (r > 0.0 && r < R) return dirac->magnitude * kernel.green(r);
      return 0.0;
    }
    if (const auto* f = problem.source.as_function()) {
      const Vector dir = sample_sphere(n, rng);
      if (cfg.radial_source_sampling) {
        const double rho = R * rng.uniform();
        if (rho <= 0.0) return 0.0;
        const double weight = unit_sphere_area(n) * R * std::pow(rho, n - 1) * kernel.green(rho);
        return -weight * (*f)(x + rho * dir);
      }
      const double rho = R * std::pow(rng.uniform(), 1.0 / n);
      if (rho <= 0.0) return 0.0;
      return -ball_volume(n, R) * kernel.green(rho) * (*f)(x + rho * dir);
    }
    return 0.0;
  }

  // Source contribution to grad u at the center of B(x, R).
  Vector source_gradient_term(const ScreenedBallKernel& kernel, const Vector& x, Rng& rng) const {
    const double R = kernel.radius();
    Vector out = Vector::Zero(n);
    if (const auto* dirac = problem.source.as_dirac()) {
      const Vector dz = dirac->point - x;
      const double r = dz.norm();
      if (r > 0.0 && r < R) out = (dirac->magnitude * kernel.source_gradient(r) / r) * dz;
      return out;
    }
    if (const auto* f = problem.source.as_function()) {
      const Vector dir = sample_sphere(n, rng);
      if (cfg.radial_source_sampling) {
        const double rho = R * rng.uniform();
        if (rho <= 0.0) return out;
        const double weight = unit_sphere_area(n) * R * std::pow(rho, n - 1) * kernel.source_gradient(rho);
        return (-weight * (*f)(x + rho * dir)) * dir;
      }
      const double rho = R * std::pow(rng.uniform(), 1.0 / n);
      if (rho <= 0.0) return out;
      return (-ball_volume(n, R) * kernel.source_gradient(rho) * (*f)(x + rho * dir)) * dir;
    }
    return out;
  }

  // Value walk from x with unit throughput.
  WalkSample<double> run(Vector x, Rng& rng) const {
    WalkSample<double> out{0.0, 0, false};
    double throughput = 1.0;
    const FieldPtr& field = problem.field;
    for (;;) {
      const double R = field->distance(x);
      if (R < cfg.epsilon) {
        out.value += throughput * boundary_value(x);
        return out;
      }
      if (out.steps >= cfg.max_steps) {
        out.value += throughput * boundary_value(x);
        out.truncated = true;
        return out;
      }
      const ScreenedBallKernel kernel(n, cfg.screening, R);
      if (!problem.source.is_none()) out.value += throughput * source_term(kernel, x, rng);
      throughput *= kernel.norm_constant();
      x += R * sample_sphere(n, rng);
      ++out.steps;
    }
  }
};

void check_start(const ScreenedPoissonProblem& problem, const Vector& x) {
  if (!problem.field) throw ConfigError("problem has no distance field");
  if (x.size() != problem.dim()) {
    throw ContractViolation("query point has dimension " + std::to_string(x.size()) + ", domain has " +
                            std::to_string(problem.dim()));
  }
  if (!(problem.field->distance(x) > 0.0)) throw ContractViolation("query point lies outside the domain");
}

WalkSample<double> value_walk(const Walker& walker, const Vector& x, std::uint64_t walk_index) {
  Rng rng = Rng::for_stream(walker.cfg.seed, walk_index);
  return walker.run(x, rng);
}

WalkSample<Vector> gradient_walk(const Walker& walker, const Vector& x0, std::uint64_t walk_index) {
  Rng rng = Rng::for_stream(walker.cfg.seed, walk_index);
  const int n = walker.n;
  const double R0 = walker.problem.field->distance(x0);
  if (R0 < walker.cfg.epsilon) return {Vector::Zero(n), 0, false};

  const ScreenedBallKernel kernel(n, walker.cfg.screening, R0);
  Vector grad = Vector::Zero(n);
  if (!walker.problem.source.is_none()) {
    grad += walker.cfg.c_imp * walker.source_gradient_term(kernel, x0, rng);
  }
  const Vector v = sample_sphere(n, rng);
  const WalkSample<double> rest = walker.run(x0 + R0 * v, rng);
  grad += (n / R0 * kernel.gradient_boundary_weight() * rest.value) * v;
  return {grad, rest.steps + 1, rest.truncated};
}

// Running moments; Welford update within a block, Chan merge across blocks.
struct Moments {
  std::int64_t count = 0;
  Vector mean;
  Vector m2;
  std::int64_t steps = 0;
  std::int64_t truncated = 0;

  explicit Moments(int d) : mean(Vector::Zero(d)), m2(Vector::Zero(d)) {}

  void add(const Vector& v, std::int64_t walk_steps, bool walk_truncated) {
    ++count;
    const Vector delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta.cwiseProduct(v - mean);
    steps += walk_steps;
    truncated += walk_truncated ? 1 : 0;
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double total = na + nb;
    const Vector delta = other.mean - mean;
    mean += delta * (nb / total);
    m2 += other.m2 + delta.cwiseProduct(delta) * (na * nb / total);
    count += other.count;
    steps += other.steps;
    truncated += other.truncated;
  }
};

constexpr std::int64_t kBlockSize = 1024;

template <class Sample>
Moments run_blocked(int d, const WalkConfig& cfg, Sample&& sample) {
  const std::int64_t n_blocks = (cfg.n_walks + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> blocks(static_cast<std::size_t>(n_blocks), Moments(d));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_blocks));
  const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    try {
      Moments& m = blocks[static_cast<std::size_t>(b)];
      const std::int64_t end = std::min(cfg.n_walks, (b + 1) * kBlockSize);
      for (std::int64_t i = b * kBlockSize; i < end; ++i) {
        const auto s = sample(static_cast<std::uint64_t>(i));
        m.add(s.value, s.steps, s.truncated);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(b)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Moments total(d);
  for (const auto& m : blocks) total.merge(m);
  return total;
}

template <class T>
Estimate<T> finish(const Moments& m, T mean, T variance, double seconds) {
  Estimate<T> e{std::move(mean), std::move(variance)};
  e.n_samples = m.count;
  e.mean_steps_per_walk = static_cast<double>(m.steps) / static_cast<double>(m.count);
  e.truncated_walks = m.truncated;
  e.wall_time = seconds;
  return e;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector variance_of(const Moments& m) {
  if (m.count < 2) return Vector::Zero(m.mean.size());
  return m.m2 / static_cast<double>(m.count - 1);
}

}  // namespace

WalkSample<double> walk_value(const ScreenedPoissonProblem& problem, const WalkConfig& cfg, const Vector& x,
                              std::uint64_t walk_index) {
  cfg.validate();
  check_start(problem, x);
  return value_walk(Walker{problem, cfg, problem.dim()}, x, walk_index);
}

WalkSample<Vector> walk_gradient(const ScreenedPoissonProblem& problem, const WalkConfig& cfg,
                                 const Vector& x, std::uint64_t walk_index) {
  cfg.validate();
  check_start(problem, x);
  return gradient_walk(Walker{problem, cfg, problem.dim()}, x, walk_index);
}

ValueEstimate solve_value(const ScreenedPoissonProblem& problem, const WalkConfig& cfg, const Vector& x) {
  cfg.validate();
  check_start(problem, x);
  const auto t0 = std::chrono::steady_clock::now();
  const Walker walker{problem, cfg, problem.dim()};
  const Moments m = run_blocked(1, cfg, [&](std::uint64_t i) {
    const auto s = value_walk(walker, x, i);
    Vector v(1);
    v[0] = s.value;
    return WalkSample<Vector>{v, s.steps, s.truncated};
  });
  return finish<double>(m, m.mean[0], variance_of(m)[0], seconds_since(t0));
}

GradientEstimate solve_gradient(const ScreenedPoissonProblem& problem, const WalkConfig& cfg,
                                const Vector& x) {
  cfg.validate();
  check_start(problem, x);
  const auto t0 = std::chrono::steady_clock::now();
  const Walker walker{problem, cfg, problem.dim()};
  const Moments m = run_blocked(problem.dim(), cfg, [&](std::uint64_t i) { return gradient_walk(walker, x, i); });
  return finish<Vector>(m, m.mean, variance_of(m), seconds_since(t0));
}

namespace reference {

namespace {

template <class T>
Estimate<T> two_pass(const std::vector<WalkSample<T>>& samples, T zero, double seconds) {
  const double n = static_cast<double>(samples.size());
  T sum = zero;
  std::int64_t steps = 0;
  std::int64_t truncated = 0;
  for (const auto& s : samples) {
    sum += s.value;
    steps += s.steps;
    truncated += s.truncated ? 1 : 0;
  }
  const T mean = sum / n;
  T ss = zero;
  for (const auto& s : samples) {
    const T d = s.value - mean;
    if constexpr (std::is_same_v<T, double>) {
      ss += d * d;
    } else {
      ss += d.cwiseProduct(d);
    }
  }
  Estimate<T> e{mean, samples.size() > 1 ? T(ss / (n - 1.0)) : zero};
  e.n_samples = static_cast<std::int64_t>(samples.size());
  e.mean_steps_per_walk = static_cast<double>(steps) / n;
  e.truncated_walks = truncated;
  e.wall_time = seconds;
  return e;
}

}  // namespace

ValueEstimate solve_value(const ScreenedPoissonProblem& problem, const WalkConfig& cfg, const Vector& x) {
  cfg.validate();
  check_start(problem, x);
  const auto t0 = std::chrono::steady_clock::now();
  const Walker walker{problem, cfg, problem.dim()};
  std::vector<WalkSample<double>> samples;
  samples.reserve(static_cast<std::size_t>(cfg.n_walks));
  for (std::int64_t i = 0; i < cfg.n_walks; ++i) samples.push_back(value_walk(walker, x, static_cast<std::uint64_t>(i)));
  return two_pass<double>(samples, 0.0, seconds_since(t0));
}

GradientEstimate solve_gradient(const ScreenedPoissonProblem& problem, const WalkConfig& cfg,
                                const Vector& x) {
  cfg.validate();
  check_start(problem, x);
  const auto t0 = std::chrono::steady_clock::now();
  const Walker walker{problem, cfg, problem.dim()};
  std::vector<WalkSample<Vector>> samples;
  samples.reserve(static_cast<std::size_t>(cfg.n_walks));
  for (std::int64_t i = 0; i < cfg.n_walks; ++i) samples.push_back(gradient_walk(walker, x, static_cast<std::uint64_t>(i)));
  return two_pass<Vector>(samples, Vector::Zero(problem.dim()), seconds_since(t0));
}

}  // namespace reference

double angle_error(const Vector& estimate, const Vector& reference) {
  if (estimate.size() != reference.size()) throw ContractViolation("angle_error: dimension mismatch");
  const double na = estimate.norm();
  const double nb = reference.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw DomainError("angle_error: zero vector has no direction");
  const double cosine = std::clamp(estimate.dot(reference) / (na * nb), -1.0, 1.0);
  return std::acos(cosine);
}

}  // namespace wos
