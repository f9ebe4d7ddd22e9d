#include "wos/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wos {

void DistanceField::check_dim(const Vector& x) const {
  if (x.size() != dim()) {
    throw ContractViolation("distance query of dimension " + std::to_string(x.size()) +
                            " against a field of dimension " + std::to_string(dim()));
  }
}

double distance(const DistanceField& field, const Vector& x) {
  if (x.size() != field.dim()) {
    throw ContractViolation("distance query of dimension " + std::to_string(x.size()) +
                            " against a field of dimension " + std::to_string(field.dim()));
  }
  return field.distance(x);
}

// ---------------------------------------------------------------------------

BallField::BallField(Vector center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0)) throw ConfigError("ball radius must be positive");
  if (center_.size() < 1) throw ConfigError("ball center needs at least one coordinate");
}

double BallField::distance(const Vector& x) const {
  check_dim(x);
  return radius_ - (x - center_).norm();
}

std::optional<Vector> BallField::closest_point(const Vector& x) const {
  check_dim(x);
  Vector d = x - center_;
  const double n = d.norm();
  if (n == 0.0) {
    d.setZero();
    d[0] = 1.0;
    return center_ + radius_ * d;
  }
  return center_ + (radius_ / n) * d;
}

// ---------------------------------------------------------------------------

DiskEnvironment::DiskEnvironment(double k_r, int ambient_dim)
    : k_r_(k_r),
      ambient_dim_(ambient_dim),
      r_upper_(k_r * kOuterRadius),
      r_lower_(0.5 * k_r * kOuterRadius) {
  if (!(k_r > 0.0 && k_r < 1.0)) {
    throw ConfigError("disk environment needs 0 < k_r < 1, got " + std::to_string(k_r));
  }
  if (ambient_dim < 2 || ambient_dim > kMaxDim) {
    throw ConfigError("disk environment dimension must be in [2, " + std::to_string(kMaxDim) +
                      "], got " + std::to_string(ambient_dim));
  }
}

double DiskEnvironment::distance(const Vector& x) const {
  check_dim(x);
  const double px = x[0];
  const double py = x[1];
  const double outer = kOuterRadius - std::hypot(px, py);
  const double upper = std::hypot(px, py - r_upper_) - r_upper_;
  const double lower = std::hypot(px, py + r_lower_) - r_lower_;
  return std::min({outer, upper, lower});
}

std::optional<Vector> DiskEnvironment::closest_point(const Vector& x) const {
  check_dim(x);
  const Eigen::Vector2d p(x[0], x[1]);
  struct Circle {
    Eigen::Vector2d center;
    double radius;
    double gap;
  };
  const Circle circles[] = {
      {{0.0, 0.0}, kOuterRadius, kOuterRadius - p.norm()},
      {upper_center(), r_upper_, (p - upper_center()).norm() - r_upper_},
      {lower_center(), r_lower_, (p - lower_center()).norm() - r_lower_},
  };
  const Circle* best = &circles[0];
  for (const auto& c : circles) {
    if (c.gap < best->gap) best = &c;
  }
  Eigen::Vector2d d = p - best->center;
  const double n = d.norm();
  const Eigen::Vector2d q =
      n > 0.0 ? Eigen::Vector2d(best->center + (best->radius / n) * d)
              : Eigen::Vector2d(best->center + Eigen::Vector2d(best->radius, 0.0));
  Vector out = x;
  out[0] = q.x();
  out[1] = q.y();
  return out;
}

DiskEnvironment make_disk_environment(double k_r, int ambient_dim) {
  return DiskEnvironment(k_r, ambient_dim);
}

// ---------------------------------------------------------------------------

double box_distance(const Vector& q, const Vector& lower, const Vector& upper) {
  if (q.size() != lower.size() || q.size() != upper.size()) {
    throw ContractViolation("box_distance: dimension mismatch");
  }
  double d = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    d = std::min({d, q[i] - lower[i], upper[i] - q[i]});
  }
  return d;
}

BoxField::BoxField(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() < 1) {
    throw ConfigError("box bounds must have equal, nonzero dimension");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) throw ConfigError("box bounds need lower < upper on every axis");
  }
}

double BoxField::distance(const Vector& x) const {
  check_dim(x);
  return box_distance(x, lower_, upper_);
}

std::optional<Vector> BoxField::closest_point(const Vector& x) const {
  check_dim(x);
  Eigen::Index axis = 0;
  bool to_upper = false;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] - lower_[i] < best) {
      best = x[i] - lower_[i];
      axis = i;
      to_upper = false;
    }
    if (upper_[i] - x[i] < best) {
      best = upper_[i] - x[i];
      axis = i;
      to_upper = true;
    }
  }
  Vector out = x;
  out[axis] = to_upper ? upper_[axis] : lower_[axis];
  return out;
}

// ---------------------------------------------------------------------------

PointCloudField::PointCloudField(int dim, std::vector<Vector> points)
    : dim_(dim), points_(std::move(points)) {
  if (dim < 1 || dim > kMaxDim) throw ConfigError("point cloud dimension out of range");
  if (points_.empty()) throw ConfigError("point cloud needs at least one point");
  for (const auto& p : points_) {
    if (p.size() != dim) throw ConfigError("point cloud member has the wrong dimension");
  }
}

double PointCloudField::distance(const Vector& x) const {
  check_dim(x);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points_) best = std::min(best, (x - p).squaredNorm());
  return std::sqrt(best);
}

std::optional<Vector> PointCloudField::closest_point(const Vector& x) const {
  check_dim(x);
  if (points_.empty()) return std::nullopt;
  const Vector* best = &points_.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& p : points_) {
    const double d = (x - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = &p;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------

UnionField::UnionField(std::vector<FieldPtr> members) : dim_(0), members_(std::move(members)) {
  if (members_.empty()) throw ConfigError("union of an empty field list");
  dim_ = members_.front()->dim();
  for (const auto& m : members_) {
    if (!m) throw ConfigError("union member is null");
    if (m->dim() != dim_) throw ConfigError("union members disagree on dimension");
  }
}

double UnionField::distance(const Vector& x) const {
  check_dim(x);
  double d = std::numeric_limits<double>::infinity();
  for (const auto& m : members_) d = std::min(d, m->distance(x));
  return d;
}

std::optional<Vector> UnionField::closest_point(const Vector& x) const {
  check_dim(x);
  const DistanceField* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& m : members_) {
    const double d = m->distance(x);
    if (d < best_d) {
      best_d = d;
      best = m.get();
    }
  }
  return best->closest_point(x);
}

FieldPtr make_union(std::vector<FieldPtr> fields) {
  if (fields.size() == 1) return fields.front();
  return std::make_shared<UnionField>(std::move(fields));
}

}  // namespace wos
