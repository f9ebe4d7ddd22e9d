#pragma once

#include <vector>

#include <Eigen/Core>

#include "wos/geometry.hpp"
#include "wos/types.hpp"

namespace wos {

/// Planar serial chain of revolute joints with its base at the origin. Links
/// are zero-thickness segments.
struct PlanarArm {
  std::vector<double> link_lengths;
  Vector joint_lower;
  Vector joint_upper;

  PlanarArm(std::vector<double> lengths, Vector lower, Vector upper);

  int joints() const { return static_cast<int>(link_lengths.size()); }
  double reach() const;
};

/// Joint positions: base, each elbow, end effector (N + 1 points).
std::vector<Eigen::Vector2d> fk(const PlanarArm& arm, const Vector& q);

/// Distance from a point to the segment [a, b].
double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b);

/// Smallest distance between the obstacle point and any link.
double task_space_distance(const PlanarArm& arm, const Vector& q, const Eigen::Vector2d& obstacle);

/// K = sqrt(sum_n (sum_{i<=n} l_i)^2), a Lipschitz constant of the forward
/// kinematic map of a planar chain.
double lipschitz_constant(const PlanarArm& arm);

/// Configuration-space clearance bound min(box gap, d_tau(q) / K). Never
/// exceeds the true distance to the collision set or the joint limits.
class LipschitzCSpaceField final : public DistanceField {
 public:
  LipschitzCSpaceField(PlanarArm arm, Eigen::Vector2d obstacle);

  int dim() const override { return arm_.joints(); }
  double distance(const Vector& q) const override;

  const PlanarArm& arm() const { return arm_; }
  const Eigen::Vector2d& obstacle() const { return obstacle_; }
  double lipschitz() const { return lipschitz_; }

 private:
  PlanarArm arm_;
  Eigen::Vector2d obstacle_;
  double lipschitz_;
};

/// Analytic inverse kinematics of a two-link arm: elbow-up and elbow-down
/// solutions (one when they coincide, none when x is unreachable). Angles are
/// wrapped into (-pi, pi] and shifted by 2 pi into the joint bounds when that
/// is possible.
std::vector<Vector> rr_ik(const PlanarArm& arm, const Eigen::Vector2d& x);

/// Configurations of a two-link arm touching a point obstacle, sampled at
/// near-equal arc length.
struct CollisionCurve {
  std::vector<Vector> points;  // principal points first, then images
  std::size_t n_principal = 0;
  double min_gap = 0.0;  // consecutive spacing along each branch
  double max_gap = 0.0;
  double length = 0.0;   // total arc length of the sampled branches
};

/// Samples the collision set of a two-link arm and a point obstacle with
/// `n_points` points spread over the principal branches by arc length.
/// Images of those points shifted by multiples of 2 pi that fall inside the
/// joint bounds are appended, so the set is complete within the bounds.
CollisionCurve collision_curve(const PlanarArm& arm, const Eigen::Vector2d& obstacle, int n_points);

/// min(box gap, distance to the nearest curve point).
FieldPtr ik_cspace_field(const CollisionCurve& curve, const Vector& lower, const Vector& upper);

}  // namespace wos
