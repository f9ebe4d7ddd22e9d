#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wos/rng.hpp"
#include "wos/robot.hpp"

using namespace wos;
using std::numbers::pi;

namespace {

PlanarArm table_arm() {
  return PlanarArm({1.0, 1.0}, make_vector({-1.5 * pi, -pi}), make_vector({1.5 * pi, pi}));
}

void check_point(const Eigen::Vector2d& p, double x, double y) {
  CHECK(p.x() == doctest::Approx(x).epsilon(1e-12));
  CHECK(p.y() == doctest::Approx(y).epsilon(1e-12));
}

}  // namespace

TEST_CASE("forward kinematics") {
  const auto arm = table_arm();
  auto p = fk(arm, make_vector({0, 0}));
  check_point(p[0], 0, 0);
  check_point(p[1], 1, 0);
  check_point(p[2], 2, 0);
  p = fk(arm, make_vector({pi / 2, 0}));
  CHECK(std::abs(p[1].x()) < 1e-15);
  check_point(p[2], p[2].x(), 2);
  p = fk(arm, make_vector({pi / 2, -pi / 2}));
  check_point(p[2], 1, 1);
  CHECK_THROWS_AS(fk(arm, make_vector({0, 0, 0})), ContractViolation);
}

TEST_CASE("task-space distance") {
  const auto arm = table_arm();
  CHECK(task_space_distance(arm, make_vector({pi / 2, 0}), {1, 1}) == doctest::Approx(1.0));
  CHECK(task_space_distance(arm, make_vector({0, 0}), {0, 1.3}) == doctest::Approx(1.3));
  CHECK(task_space_distance(arm, make_vector({0, 0}), {1.5, 0}) == doctest::Approx(0.0));
}

TEST_CASE("Lipschitz constant") {
  CHECK(lipschitz_constant(table_arm()) == doctest::Approx(std::sqrt(5.0)));
  CHECK(lipschitz_constant(PlanarArm({1.0}, make_vector({-pi}), make_vector({pi}))) == doctest::Approx(1.0));
  CHECK(lipschitz_constant(PlanarArm({2.0, 1.0}, make_vector({-pi, -pi}), make_vector({pi, pi}))) ==
        doctest::Approx(std::sqrt(13.0)));
}

TEST_CASE("Lipschitz bound holds along random segments") {
  for (const auto& links : {std::vector<double>{1.0, 1.0}, std::vector<double>{0.7, 1.2, 0.5}}) {
    const int n = static_cast<int>(links.size());
    const PlanarArm arm(links, Vector::Constant(n, -pi), Vector::Constant(n, pi));
    const double K = lipschitz_constant(arm);
    const Eigen::Vector2d obs(0.3, 1.1);
    Rng rng(n);
    for (int i = 0; i < 5000; ++i) {
      Vector a(n), b(n);
      for (int k = 0; k < n; ++k) {
        a[k] = -pi + 2 * pi * rng.uniform();
        b[k] = a[k] + 0.5 * rng.normal();
      }
      const double da = task_space_distance(arm, a, obs);
      const double db = task_space_distance(arm, b, obs);
      CHECK(std::abs(da - db) <= K * (a - b).norm() + 1e-12);
    }
  }
}

TEST_CASE("Lipschitz field") {
  const auto arm = table_arm();
  const LipschitzCSpaceField field(arm, {0.0, 1.3});
  const Vector q = make_vector({0.785, 0.800});
  CHECK(field.distance(q) == doctest::Approx(task_space_distance(arm, q, {0.0, 1.3}) / std::sqrt(5.0)));
  // Obstacle on the first link.
  const LipschitzCSpaceField touching(arm, {0.0, 0.5});
  CHECK(touching.distance(make_vector({pi / 2, 0.3})) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Lipschitz balls are collision-free") {
  // Four obstacle placements; configurations on the boundary of the ball of
  // radius d_tau / K around a free configuration never touch the obstacle.
  const auto arm = table_arm();
  const double K = lipschitz_constant(arm);
  const Vector q0 = make_vector({0.6, 0.9});
  Rng rng(3);
  for (const Eigen::Vector2d obs : {Eigen::Vector2d(0.0, 1.3), Eigen::Vector2d(1.2, 1.2), Eigen::Vector2d(-0.4, 0.9),
                                    Eigen::Vector2d(1.6, -0.2)}) {
    const double r = task_space_distance(arm, q0, obs) / K;
    REQUIRE(r > 0.0);
    for (int i = 0; i < 500; ++i) {
      const double a = 2 * pi * rng.uniform();
      const Vector q = q0 + r * make_vector({std::cos(a), std::sin(a)});
      CHECK(task_space_distance(arm, q, obs) > 0.0);
    }
  }
}

TEST_CASE("inverse kinematics") {
  const auto arm = table_arm();
  auto s = rr_ik(arm, {2, 0});
  REQUIRE(s.size() == 1);
  CHECK(s[0][0] == doctest::Approx(0.0));
  CHECK(s[0][1] == doctest::Approx(0.0));
  s = rr_ik(arm, {0, 2});
  REQUIRE(s.size() == 1);
  CHECK(s[0][0] == doctest::Approx(pi / 2));
  CHECK(s[0][1] == doctest::Approx(0.0));
  s = rr_ik(arm, {1, 1});
  REQUIRE(s.size() == 2);
  for (const auto& q : s) {
    const auto p = fk(arm, q);
    CHECK((p[2] - Eigen::Vector2d(1, 1)).norm() < 1e-12);
  }
  CHECK(rr_ik(arm, {3, 0}).empty());
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector2d x(-2 + 4 * rng.uniform(), -2 + 4 * rng.uniform());
    for (const auto& q : rr_ik(arm, x)) CHECK((fk(arm, q)[2] - x).norm() < 1e-10);
  }
}

TEST_CASE("collision curve with the reference setup") {
  const auto arm = table_arm();
  const Eigen::Vector2d obs(0.0, 1.3);
  const auto curve = collision_curve(arm, obs, 200);
  REQUIRE(curve.n_principal >= 199);
  REQUIRE(curve.n_principal <= 201);
  CHECK(curve.min_gap >= 0.017);
  CHECK(curve.max_gap <= 0.0235);
  for (const auto& q : curve.points) {
    CHECK(task_space_distance(arm, q, obs) < 1e-9);
    for (int i = 0; i < 2; ++i) {
      CHECK(q[i] >= arm.joint_lower[i]);
      CHECK(q[i] <= arm.joint_upper[i]);
    }
  }
  const auto field = ik_cspace_field(curve, arm.joint_lower, arm.joint_upper);
  CHECK(field->distance(make_vector({0.785, 0.800})) > 0.0);
  CHECK(field->distance(make_vector({2.042, 0.200})) > 0.0);
}

TEST_CASE("collision curve when the obstacle is on the first link's reach") {
  const auto arm = table_arm();
  const auto curve = collision_curve(arm, {0.0, 0.6}, 300);
  REQUIRE(!curve.points.empty());
  for (const auto& q : curve.points) CHECK(task_space_distance(arm, q, {0.0, 0.6}) < 1e-9);
}

TEST_CASE("unreachable obstacle gives an empty curve and a box field") {
  const auto arm = table_arm();
  const auto curve = collision_curve(arm, {0.0, 3.0}, 200);
  CHECK(curve.points.empty());
  const auto field = ik_cspace_field(curve, arm.joint_lower, arm.joint_upper);
  CHECK(field->distance(make_vector({0, 0})) == doctest::Approx(pi));
}

TEST_CASE("arm validation") {
  CHECK_THROWS_AS(PlanarArm({}, Vector(0), Vector(0)), ConfigError);
  CHECK_THROWS_AS(PlanarArm({1.0, -1.0}, make_vector({-1, -1}), make_vector({1, 1})), ConfigError);
  CHECK_THROWS_AS(PlanarArm({1.0}, make_vector({1}), make_vector({-1})), ConfigError);
  CHECK_THROWS_AS(PlanarArm({1.0, 1.0}, make_vector({-1}), make_vector({1})), ConfigError);
}
