#include <doctest.h>

#include <cmath>
#include <numbers>

#include "grid_oracle.hpp"
#include "wos/bench/stats.hpp"
#include "wos/kernels.hpp"
#include "wos/solver.hpp"

using namespace wos;
using std::numbers::pi;

namespace {

FieldPtr unit_ball(int n) { return std::make_shared<BallField>(Vector::Zero(n), 1.0); }

double sigma(const ValueEstimate& e) { return std::sqrt(e.sample_variance / static_cast<double>(e.n_samples)); }

double sigma(const GradientEstimate& e, int i) {
  return std::sqrt(e.sample_variance[i] / static_cast<double>(e.n_samples));
}

WalkConfig config(std::int64_t n, double c, std::uint64_t seed, double eps = 1e-4) {
  WalkConfig w;
  w.n_walks = n;
  w.screening = c;
  w.seed = seed;
  w.epsilon = eps;
  return w;
}

// Free-space fundamental solution of -Lap u + c u = delta in 3-D.
double yukawa3(double c, const Vector& x, const Vector& z) {
  const double r = (x - z).norm();
  return std::exp(-std::sqrt(c) * r) / (4 * pi * r);
}

Vector yukawa3_grad(double c, const Vector& x, const Vector& z) {
  const double r = (x - z).norm();
  const double s = std::sqrt(c);
  const double dr = -std::exp(-s * r) * (1 + s * r) / (4 * pi * r * r);
  return dr * (x - z) / r;
}

}  // namespace

TEST_CASE("constant boundary data") {
  const ScreenedPoissonProblem p{unit_ball(3), BoundarySpec::constant(1.0), SourceSpec::none()};
  const auto v = solve_value(p, config(2000, 0.0, 1, 1e-2), make_vector({0.2, 0.1, -0.3}));
  CHECK(v.mean == 1.0);
  CHECK(v.sample_variance == 0.0);
  const auto g = solve_gradient(p, config(100'000, 0.0, 2, 1e-2), make_vector({0.2, 0.1, -0.3}));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(g.mean[i]) < 3 * sigma(g, i));
}

TEST_CASE("harmonic boundary data u = x1") {
  const ScreenedPoissonProblem p{unit_ball(2), BoundarySpec::function([](const Vector& y) { return y[0]; }),
                                 SourceSpec::none()};
  const auto v = solve_value(p, config(100'000, 0.0, 3), make_vector({0.3, 0.2}));
  CHECK(std::abs(v.mean - 0.3) < 3 * sigma(v) + 1e-4);
  const auto g = solve_gradient(p, config(1'000'000, 0.0, 4), make_vector({0.0, 0.0}));
  CHECK(std::abs(g.mean[0] - 1.0) < 3 * sigma(g, 0));
  CHECK(std::abs(g.mean[1]) < 3 * sigma(g, 1));
}

TEST_CASE("one walk") {
  const ScreenedPoissonProblem p{unit_ball(2), BoundarySpec::function([](const Vector& y) { return y[0]; }),
                                 SourceSpec::none()};
  const auto cfg = config(1, 0.5, 17);
  const Vector x = make_vector({0.1, -0.4});
  CHECK(solve_value(p, cfg, x).mean == walk_value(p, cfg, x, 0).value);
  CHECK(solve_gradient(p, cfg, x).mean == walk_gradient(p, cfg, x, 0).value);
}

TEST_CASE("screened point source with Yukawa boundary data") {
  // u = Phi(x - z) solves the problem exactly, so both estimators have a
  // closed-form target. The first ball around x contains z in one case and
  // not in the other.
  const double c = 2.0;
  const Vector z = make_vector({0.3, 0.0, 0.1});
  const ScreenedPoissonProblem p{unit_ball(3),
                                 BoundarySpec::function([&](const Vector& y) { return yukawa3(c, y, z); }),
                                 SourceSpec::dirac(z)};
  for (const Vector& x : {make_vector({-0.2, 0.1, 0.0}), make_vector({-0.1, -0.75, 0.3})}) {
    CAPTURE(x.transpose());
    const auto v = solve_value(p, config(200'000, c, 5), x);
    CHECK(std::abs(v.mean - yukawa3(c, x, z)) < 4 * sigma(v) + 1e-3 * yukawa3(c, x, z));
    const auto g = solve_gradient(p, config(400'000, c, 6), x);
    const Vector ref = yukawa3_grad(c, x, z);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(g.mean[i] - ref[i]) < 4 * sigma(g, i) + 1e-3 * ref.norm());
  }
}

TEST_CASE("harmonic point source matches the image solution") {
  // Green's function of the unit ball in 3-D by Kelvin inversion.
  const Vector z = make_vector({0.35, 0.1, 0.0});
  const Vector zs = z / z.squaredNorm();
  auto green = [&](const Vector& x) {
    return (1.0 / (x - z).norm() - 1.0 / (z.norm() * (x - zs).norm())) / (4 * pi);
  };
  auto green_grad = [&](const Vector& x) {
    const Vector a = x - z, b = x - zs;
    return Vector((-a / std::pow(a.norm(), 3) + b / (z.norm() * std::pow(b.norm(), 3))) / (4 * pi));
  };
  const ScreenedPoissonProblem p{unit_ball(3), BoundarySpec::constant(0.0), SourceSpec::dirac(z)};
  const Vector x = make_vector({-0.15, 0.2, 0.05});
  const auto v = solve_value(p, config(200'000, 0.0, 7), x);
  CHECK(std::abs(v.mean - green(x)) < 4 * sigma(v) + 1e-3 * green(x));
  const auto g = solve_gradient(p, config(400'000, 0.0, 8), x);
  const Vector ref = green_grad(x);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(g.mean[i] - ref[i]) < 4 * sigma(g, i) + 1e-3 * ref.norm());
}

TEST_CASE("manufactured screened solution") {
  // u* = R^2 - |x|^2 solves Lap u - c u = f with f = -2n - c u*, u = 0 on |x| = R.
  for (int n : {2, 3}) {
    for (bool radial : {false, true}) {
      const double c = 1.5, R = 1.0;
      auto ustar = [&](const Vector& x) { return R * R - x.squaredNorm(); };
      const ScreenedPoissonProblem p{unit_ball(n), BoundarySpec::constant(0.0),
                                     SourceSpec::function([&](const Vector& x) { return -2.0 * n - c * ustar(x); })};
      Vector x = Vector::Zero(n);
      x[0] = 0.25;
      x[1] = -0.3;
      auto cfg = config(100'000, c, 9 + n);
      cfg.radial_source_sampling = radial;
      const auto v = solve_value(p, cfg, x);
      CAPTURE(n);
      CAPTURE(radial);
      CHECK(std::abs(v.mean - ustar(x)) < 4 * sigma(v) + 4e-4);
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  const auto field = std::make_shared<DiskEnvironment>(0.3, 2);
  const ScreenedPoissonProblem p{field, BoundarySpec::constant(0.0), SourceSpec::dirac(make_vector({8, 0}))};
  const Vector x = make_vector({-3, -6});
  auto cfg = config(50'000, 1.0, 42, 1e-2);
  cfg.workers = 1;
  const auto v1 = solve_value(p, cfg, x);
  const auto g1 = solve_gradient(p, cfg, x);
  for (int w : {2, 4, 8}) {
    cfg.workers = w;
    const auto v = solve_value(p, cfg, x);
    const auto g = solve_gradient(p, cfg, x);
    CHECK(v.mean == v1.mean);
    CHECK(v.sample_variance == v1.sample_variance);
    CHECK(v.mean_steps_per_walk == v1.mean_steps_per_walk);
    CHECK(g.mean == g1.mean);
    CHECK(g.sample_variance == g1.sample_variance);
  }
  const auto rv = reference::solve_value(p, cfg, x);
  const auto rg = reference::solve_gradient(p, cfg, x);
  CHECK(rv.mean == doctest::Approx(v1.mean).epsilon(1e-12));
  CHECK(rv.sample_variance == doctest::Approx(v1.sample_variance).epsilon(1e-9));
  CHECK(rv.mean_steps_per_walk == v1.mean_steps_per_walk);
  for (int i = 0; i < 2; ++i) CHECK(rg.mean[i] == doctest::Approx(g1.mean[i]).epsilon(1e-12));
}

TEST_CASE("variance of the mean falls like 1/n") {
  const ScreenedPoissonProblem p{unit_ball(2), BoundarySpec::function([](const Vector& y) { return y[0]; }),
                                 SourceSpec::none()};
  std::vector<double> ns, vars;
  for (std::int64_t n : {1'000, 10'000, 100'000}) {
    std::vector<double> means;
    for (std::uint64_t s = 0; s < 32; ++s) means.push_back(solve_value(p, config(n, 0.0, 1000 + s), make_vector({0.3, 0.2})).mean);
    ns.push_back(double(n));
    vars.push_back(bench::sample_variance(means));
  }
  CHECK(bench::fit_loglog_slope(ns, vars) == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("gradient standard deviation falls like 1/sqrt(n) in 2 to 5 dimensions") {
  for (int n = 2; n <= 5; ++n) {
    const ScreenedPoissonProblem p{unit_ball(n), BoundarySpec::function([](const Vector& y) { return y[0]; }),
                                   SourceSpec::none()};
    Vector x = Vector::Zero(n);
    x[0] = 0.3;
    x[1] = 0.2;
    std::vector<double> ns, sds;
    for (std::int64_t walks : {1'000, 10'000, 100'000}) {
      std::vector<double> g0;
      for (std::uint64_t s = 0; s < 32; ++s) g0.push_back(solve_gradient(p, config(walks, 1.0, 500 + s, 1e-2), x).mean[0]);
      ns.push_back(double(walks));
      sds.push_back(std::sqrt(bench::sample_variance(g0)));
    }
    const double slope = bench::fit_loglog_slope(ns, sds);
    CAPTURE(n);
    CHECK(slope >= -0.6);
    CHECK(slope <= -0.4);
  }
}

TEST_CASE("truncated walks are counted") {
  const ScreenedPoissonProblem p{unit_ball(2), BoundarySpec::constant(1.0), SourceSpec::none()};
  auto cfg = config(1000, 0.0, 3);
  cfg.max_steps = 1;
  const auto v = solve_value(p, cfg, make_vector({0.5, 0.0}));
  CHECK(v.truncated_walks > 500);
  CHECK(v.mean == 1.0);
}

TEST_CASE("start in the shell evaluates the boundary immediately") {
  const ScreenedPoissonProblem p{unit_ball(2), BoundarySpec::function([](const Vector& y) { return y[1]; }),
                                 SourceSpec::none()};
  const auto cfg = config(10, 0.0, 3, 1e-2);
  const auto s = walk_value(p, cfg, make_vector({0.0, 0.995}), 0);
  CHECK(s.value == doctest::Approx(1.0));
  CHECK(s.steps == 0);
}

TEST_CASE("precondition errors") {
  const ScreenedPoissonProblem p{unit_ball(2), BoundarySpec::constant(0.0), SourceSpec::none()};
  CHECK_THROWS_AS(solve_value(p, config(10, 0.0, 0), make_vector({2.0, 0.0})), ContractViolation);
  CHECK_THROWS_AS(solve_value(p, config(10, 0.0, 0), make_vector({0.0, 0.0, 0.0})), ContractViolation);
  CHECK_THROWS_AS(solve_value(p, config(0, 0.0, 0), make_vector({0.0, 0.0})), ConfigError);
  CHECK_THROWS_AS(solve_value(p, config(10, -1.0, 0), make_vector({0.0, 0.0})), ConfigError);
  CHECK_THROWS_AS(solve_value(p, config(10, 0.0, 0, 0.0), make_vector({0.0, 0.0})), ConfigError);
}

TEST_CASE("angle error") {
  CHECK(angle_error(make_vector({1, 2, 3}), make_vector({1, 2, 3})) == doctest::Approx(0.0));
  CHECK(angle_error(make_vector({1, 0}), make_vector({0, 1})) == doctest::Approx(pi / 2));
  CHECK(angle_error(make_vector({1, 0}), make_vector({-2, 0})) == doctest::Approx(pi));
  CHECK_THROWS_AS(angle_error(make_vector({0, 0}), make_vector({1, 0})), DomainError);
}

TEST_CASE("disk environment potential matches a grid solve") {
  const auto field = std::make_shared<DiskEnvironment>(0.3, 2);
  const oracle::GridSolution grid(*field, 1.0, 0.04, -10.0, 10.0, 8.0, 0.0);
  const ScreenedPoissonProblem p{field, BoundarySpec::constant(0.0), SourceSpec::dirac(make_vector({8, 0}))};

  // Close to the goal the estimate is sharp; far away it is dominated by rare walks.
  for (const auto& pt : {std::pair{4.0, -3.0}, std::pair{-8.0, 0.0}}) {
    const Vector x = make_vector({pt.first, pt.second});
    const auto v = solve_value(p, config(1'000'000, 1.0, 21, 1e-2), x);
    const double ref = grid.at_point(pt.first, pt.second);
    CAPTURE(pt.first);
    CAPTURE(ref);
    CAPTURE(v.mean);
    CHECK(std::abs(v.mean - ref) < 3 * sigma(v) + 0.02 * ref);
  }

  const Eigen::Vector2d gref = grid.gradient(-8.0, 0.0);
  const auto g = solve_gradient(p, config(10'000'000, 1.0, 22, 1e-2), make_vector({-8, 0}));
  const double err = angle_error(g.mean, make_vector({gref.x(), gref.y()}));
  CAPTURE(gref.transpose());
  CAPTURE(g.mean.transpose());
  CHECK(err < 5.0 * pi / 180.0);
}
