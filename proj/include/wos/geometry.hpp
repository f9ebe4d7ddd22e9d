#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wos/types.hpp"

namespace wos {

/// Implicit domain representation. distance() is a signed lower bound on the
/// Euclidean distance to the boundary: positive strictly inside, <= 0 on or
/// outside. Implementations are immutable after construction and safe for
/// concurrent queries.
class DistanceField {
 public:
  virtual ~DistanceField() = default;

  virtual int dim() const = 0;
  virtual double distance(const Vector& x) const = 0;

  /// Closest boundary point, when the field can compute one exactly.
  virtual std::optional<Vector> closest_point(const Vector& /*x*/) const { return std::nullopt; }

 protected:
  void check_dim(const Vector& x) const;
};

using FieldPtr = std::shared_ptr<const DistanceField>;

/// Evaluates field.distance(x) after checking the dimension.
double distance(const DistanceField& field, const Vector& x);

/// Solid ball; mostly used for analytic test problems.
class BallField final : public DistanceField {
 public:
  BallField(Vector center, double radius);

  int dim() const override { return static_cast<int>(center_.size()); }
  double distance(const Vector& x) const override;
  std::optional<Vector> closest_point(const Vector& x) const override;

  const Vector& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vector center_;
  double radius_;
};

/// Outer disk of radius 10 with two obstacle disks touching at the origin,
/// extruded along every coordinate past the second.
///
///   r_u = k_r * r_o, r_l = r_u / 2, c_u = (0, r_u), c_l = (0, -r_l)
class DiskEnvironment final : public DistanceField {
 public:
  static constexpr double kOuterRadius = 10.0;

  DiskEnvironment(double k_r, int ambient_dim);

  int dim() const override { return ambient_dim_; }
  double distance(const Vector& x) const override;
  std::optional<Vector> closest_point(const Vector& x) const override;

  double k_r() const { return k_r_; }
  double outer_radius() const { return kOuterRadius; }
  double upper_radius() const { return r_upper_; }
  double lower_radius() const { return r_lower_; }
  Eigen::Vector2d upper_center() const { return {0.0, r_upper_}; }
  Eigen::Vector2d lower_center() const { return {0.0, -r_lower_}; }

 private:
  double k_r_;
  int ambient_dim_;
  double r_upper_;
  double r_lower_;
};

DiskEnvironment make_disk_environment(double k_r, int ambient_dim);

/// Signed distance to the faces of an axis-aligned box: the smallest face gap
/// for interior points, <= 0 outside.
double box_distance(const Vector& q, const Vector& lower, const Vector& upper);

class BoxField final : public DistanceField {
 public:
  BoxField(Vector lower, Vector upper);

  int dim() const override { return static_cast<int>(lower_.size()); }
  double distance(const Vector& x) const override;
  std::optional<Vector> closest_point(const Vector& x) const override;

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

 private:
  Vector lower_;
  Vector upper_;
};

/// Unsigned distance to a finite point set (a sampled boundary).
class PointCloudField final : public DistanceField {
 public:
  PointCloudField(int dim, std::vector<Vector> points);

  int dim() const override { return dim_; }
  double distance(const Vector& x) const override;
  std::optional<Vector> closest_point(const Vector& x) const override;

  const std::vector<Vector>& points() const { return points_; }

 private:
  int dim_;
  std::vector<Vector> points_;
};

/// Pointwise minimum of member fields; the domain is the intersection of the
/// member domains and the boundary is the union of member boundaries.
class UnionField final : public DistanceField {
 public:
  explicit UnionField(std::vector<FieldPtr> members);

  int dim() const override { return dim_; }
  double distance(const Vector& x) const override;
  std::optional<Vector> closest_point(const Vector& x) const override;

  const std::vector<FieldPtr>& members() const { return members_; }

 private:
  int dim_;
  std::vector<FieldPtr> members_;
};

FieldPtr make_union(std::vector<FieldPtr> fields);

}  // namespace wos
