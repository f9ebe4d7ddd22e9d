#include "wos/robot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wos {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

// Shift joint angles by whole turns into [lower, upper] where possible.
Vector into_bounds(Vector q, const PlanarArm& arm) {
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    q[i] = wrap_angle(q[i]);
    if (q[i] < arm.joint_lower[i] && q[i] + 2.0 * kPi <= arm.joint_upper[i]) q[i] += 2.0 * kPi;
    if (q[i] > arm.joint_upper[i] && q[i] - 2.0 * kPi >= arm.joint_lower[i]) q[i] -= 2.0 * kPi;
  }
  return q;
}

struct Branch {
  std::vector<Vector> dense;
  bool sweeps_q1 = true;  // q2 is a function of q1 along the branch
  std::vector<double> arc;  // cumulative arc length of `dense`
  double length() const { return arc.empty() ? 0.0 : arc.back(); }
};

Branch make_branch(std::vector<Vector> dense) {
  Branch b;
  b.arc.resize(dense.size(), 0.0);
  for (std::size_t i = 1; i < dense.size(); ++i) b.arc[i] = b.arc[i - 1] + (dense[i] - dense[i - 1]).norm();
  b.dense = std::move(dense);
  return b;
}

}  // namespace

PlanarArm::PlanarArm(std::vector<double> lengths, Vector lower, Vector upper)
    : link_lengths(std::move(lengths)), joint_lower(std::move(lower)), joint_upper(std::move(upper)) {
  if (link_lengths.empty()) throw ConfigError("arm needs at least one link");
  if (joints() > kMaxDim) throw ConfigError("arm has more joints than supported");
  for (double l : link_lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("link lengths must be positive and finite");
  }
  if (joint_lower.size() != joints() || joint_upper.size() != joints()) {
    throw ConfigError("joint bounds must have one entry per joint");
  }
  for (int i = 0; i < joints(); ++i) {
    if (!std::isfinite(joint_lower[i]) || !std::isfinite(joint_upper[i]) || !(joint_lower[i] < joint_upper[i])) {
      throw ConfigError("joint bounds must be finite with lower < upper");
    }
  }
}

double PlanarArm::reach() const {
  double r = 0.0;
  for (double l : link_lengths) r += l;
  return r;
}

std::vector<Eigen::Vector2d> fk(const PlanarArm& arm, const Vector& q) {
  if (q.size() != arm.joints()) throw ContractViolation("fk: configuration has the wrong dimension");
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(arm.link_lengths.size() + 1);
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  pts.push_back(p);
  double angle = 0.0;
  for (int i = 0; i < arm.joints(); ++i) {
    angle += q[i];
    p += arm.link_lengths[static_cast<std::size_t>(i)] * Eigen::Vector2d(std::cos(angle), std::sin(angle));
    pts.push_back(p);
  }
  return pts;
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * ab)).norm();
}

double task_space_distance(const PlanarArm& arm, const Vector& q, const Eigen::Vector2d& obstacle) {
  const auto pts = fk(arm, q);
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    d = std::min(d, point_segment_distance(obstacle, pts[i], pts[i + 1]));
  }
  return d;
}

double lipschitz_constant(const PlanarArm& arm) {
  double partial = 0.0;
  double sum = 0.0;
  for (double l : arm.link_lengths) {
    partial += l;
    sum += partial * partial;
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------

LipschitzCSpaceField::LipschitzCSpaceField(PlanarArm arm, Eigen::Vector2d obstacle)
    : arm_(std::move(arm)), obstacle_(std::move(obstacle)), lipschitz_(lipschitz_constant(arm_)) {}

double LipschitzCSpaceField::distance(const Vector& q) const {
  check_dim(q);
  const double box = box_distance(q, arm_.joint_lower, arm_.joint_upper);
  return std::min(box, task_space_distance(arm_, q, obstacle_) / lipschitz_);
}

// ---------------------------------------------------------------------------

std::vector<Vector> rr_ik(const PlanarArm& arm, const Eigen::Vector2d& x) {
  if (arm.joints() != 2) throw ContractViolation("rr_ik needs a two-link arm");
  const double l1 = arm.link_lengths[0];
  const double l2 = arm.link_lengths[1];
  const double r2 = x.squaredNorm();
  constexpr double kTol = 1e-12;
  double cos_q2 = (r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
  if (cos_q2 > 1.0 + kTol || cos_q2 < -1.0 - kTol) return {};
  cos_q2 = std::clamp(cos_q2, -1.0, 1.0);
  if (r2 == 0.0) return {};  // l1 == l2 and x at the base: q1 is free

  std::vector<Vector> out;
  const double base = std::atan2(x.y(), x.x());
  const double q2 = std::acos(cos_q2);
  for (double elbow : {q2, -q2}) {
    const double q1 = base - std::atan2(l2 * std::sin(elbow), l1 + l2 * std::cos(elbow));
    out.push_back(into_bounds(make_vector({q1, elbow}), arm));
    if (q2 < kTol || kPi - q2 < kTol) break;  // the two branches coincide
  }
  return out;
}

CollisionCurve collision_curve(const PlanarArm& arm, const Eigen::Vector2d& obstacle, int n_points) {
  if (arm.joints() != 2) throw ContractViolation("collision_curve needs a two-link arm");
  if (n_points < 2) throw ConfigError("collision curve needs at least two points");
  const double l1 = arm.link_lengths[0];
  const double l2 = arm.link_lengths[1];
  const double rho = obstacle.norm();
  const double phi = std::atan2(obstacle.y(), obstacle.x());
  constexpr int kDense = 20000;

  std::vector<Branch> branches;

  // Link 1 through the obstacle: q1 fixed, q2 free.
  if (rho > 0.0 && rho <= l1) {
    std::vector<Vector> dense;
    for (int i = 0; i <= kDense; ++i) {
      const double q2 = -kPi + 2.0 * kPi * i / kDense;
      dense.push_back(make_vector({phi, q2}));
    }
    branches.push_back(make_branch(std::move(dense)));
    branches.back().sweeps_q1 = false;
  }

  // Link 2 through the obstacle: for each admissible q1 the link direction is
  // fixed by the obstacle. Admissible q1 satisfy |o - e(q1)| <= l2, i.e.
  // cos(q1 - phi) >= kappa.
  if (rho > 0.0) {
    const double kappa = (rho * rho + l1 * l1 - l2 * l2) / (2.0 * l1 * rho);
    if (kappa <= 1.0) {
      const double half = kappa <= -1.0 ? kPi : std::acos(kappa);
      const double lo = phi - half;
      const double hi = phi + half;
      std::vector<Vector> dense;
      for (int i = 0; i <= kDense; ++i) {
        const double q1 = lo + (hi - lo) * i / kDense;
        const Eigen::Vector2d elbow(l1 * std::cos(q1), l1 * std::sin(q1));
        const Eigen::Vector2d to_obstacle = obstacle - elbow;
        if (to_obstacle.norm() == 0.0) continue;
        const double q2 = wrap_angle(std::atan2(to_obstacle.y(), to_obstacle.x()) - q1);
        // Split where q2 wraps around.
        if (!dense.empty() && std::abs(q2 - dense.back()[1]) > kPi) {
          if (dense.size() > 1) branches.push_back(make_branch(std::move(dense)));
          dense.clear();
        }
        dense.push_back(make_vector({q1, q2}));
      }
      if (dense.size() > 1) branches.push_back(make_branch(std::move(dense)));
    }
  }

  CollisionCurve curve;
  if (branches.empty()) return curve;
  for (const auto& b : branches) curve.length += b.length();
  curve.min_gap = std::numeric_limits<double>::infinity();

  std::vector<Vector> principal;
  for (const auto& b : branches) {
    const int count = std::max(2, static_cast<int>(std::lround(n_points * b.length() / curve.length)));
    std::size_t j = 0;
    Vector prev;
    for (int k = 0; k < count; ++k) {
      const double target = b.length() * k / (count - 1);
      while (j + 2 < b.arc.size() && b.arc[j + 1] < target) ++j;
      const double span = b.arc[j + 1] - b.arc[j];
      const double t = span > 0.0 ? std::clamp((target - b.arc[j]) / span, 0.0, 1.0) : 0.0;
      // Interpolate q1 (the sweep parameter) and re-solve the other joint so
      // the point stays exactly on the collision set.
      Vector p = b.dense[j] + t * (b.dense[j + 1] - b.dense[j]);
      if (b.sweeps_q1) {
        const Eigen::Vector2d elbow(l1 * std::cos(p[0]), l1 * std::sin(p[0]));
        const Eigen::Vector2d to_obstacle = obstacle - elbow;
        p[1] = wrap_angle(std::atan2(to_obstacle.y(), to_obstacle.x()) - p[0]);
      }
      if (k > 0) {
        const double gap = (p - prev).norm();
        curve.min_gap = std::min(curve.min_gap, gap);
        curve.max_gap = std::max(curve.max_gap, gap);
      }
      prev = p;
      principal.push_back(p);
    }
  }

  // Principal points first, then whole-turn images of q1 that land inside the
  // joint bounds.
  curve.points = principal;
  for (int turn : {-2, -1, 1, 2}) {
    for (const auto& p : principal) {
      Vector image = p;
      image[0] += 2.0 * kPi * turn;
      bool inside = true;
      for (int i = 0; i < 2; ++i) inside = inside && image[i] >= arm.joint_lower[i] && image[i] <= arm.joint_upper[i];
      if (inside) curve.points.push_back(image);
    }
  }
  curve.n_principal = principal.size();
  return curve;
}

FieldPtr ik_cspace_field(const CollisionCurve& curve, const Vector& lower, const Vector& upper) {
  auto box = std::make_shared<BoxField>(lower, upper);
  if (curve.points.empty()) return box;
  auto cloud = std::make_shared<PointCloudField>(static_cast<int>(lower.size()), curve.points);
  return make_union({box, cloud});
}

}  // namespace wos
