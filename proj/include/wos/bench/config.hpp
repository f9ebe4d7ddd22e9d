#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wos/geometry.hpp"
#include "wos/robot.hpp"

namespace wos::bench {

/// Flat `key = value` file. `#` starts a comment; lists are comma separated;
/// reals accept multiples of pi ("pi", "-3pi/2", "0.5*pi").
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::istream& in, const std::string& origin = "<input>");
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  void erase(const std::string& key) { values_.erase(key); }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_reals(const std::string& key) const;
  std::vector<double> get_reals(const std::string& key, std::vector<double> fallback) const;
  std::vector<std::int64_t> get_ints(const std::string& key) const;
  std::vector<std::int64_t> get_ints(const std::string& key, std::vector<std::int64_t> fallback) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Parses one real, allowing pi multiples.
double parse_real(const std::string& token);

/// A resolved planning scene: the domain plus the task endpoints.
struct Scene {
  std::string env;  // "disk" or "rr"
  FieldPtr field;
  Vector start;
  Vector goal;

  // disk
  std::optional<DiskEnvironment> disk;
  // rr
  std::optional<PlanarArm> arm;
  Eigen::Vector2d obstacle = Eigen::Vector2d::Zero();
  std::optional<CollisionCurve> curve;
  std::string distance_kind;  // "ik" or "lipschitz"
};

/// Builds a scene from `env`, `k_r`, `dim`, `start`, `goal` (disk) or
/// `links`, `q_lower`, `q_upper`, `obstacle`, `n_col`, `distance` (rr).
/// Coordinates shorter than the scene dimension are zero padded.
Scene make_scene(const KeyValueConfig& cfg);

/// Pads or checks a coordinate list against the scene dimension.
Vector to_point(const std::vector<double>& coords, int dim);

}  // namespace wos::bench
