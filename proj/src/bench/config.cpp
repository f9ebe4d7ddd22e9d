#include "wos/bench/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

namespace wos::bench {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_plain(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + whole + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + whole + "'");
  return v;
}

}  // namespace

double parse_real(const std::string& token) {
  std::string t;
  for (char ch : token) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  }
  const auto pos = t.find("pi");
  if (pos == std::string::npos) return parse_plain(t, token);

  // [sign][coef][*]pi[/den]
  std::string coef = t.substr(0, pos);
  std::string rest = t.substr(pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (coef == "+" || coef.empty()) {
    factor = 1.0;
  } else {
    factor = parse_plain(coef, token);
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("not a number: '" + token + "'");
    den = parse_plain(rest.substr(1), token);
    if (den == 0.0) throw ConfigError("division by zero in '" + token + "'");
  }
  return factor * std::numbers::pi / den;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& origin) {
  KeyValueConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double KeyValueConfig::get_real(const std::string& key) const {
  try {
    return parse_real(get_string(key));
  } catch (const ConfigError& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

double KeyValueConfig::get_real(const std::string& key, double fallback) const {
  return has(key) ? get_real(key) : fallback;
}

std::int64_t KeyValueConfig::get_int(const std::string& key) const {
  const double v = get_real(key);
  if (v != std::floor(v) || std::abs(v) > 9.0e18) throw ConfigError("key '" + key + "' must be an integer");
  return static_cast<std::int64_t>(v);
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  std::string v = get_string(key);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "' must be a boolean");
}

std::vector<double> KeyValueConfig::get_reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(get_string(key))) {
    try {
      out.push_back(parse_real(item));
    } catch (const ConfigError& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
  }
  if (out.empty()) throw ConfigError("key '" + key + "' is an empty list");
  return out;
}

std::vector<double> KeyValueConfig::get_reals(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? get_reals(key) : fallback;
}

std::vector<std::int64_t> KeyValueConfig::get_ints(const std::string& key) const {
  std::vector<std::int64_t> out;
  for (double v : get_reals(key)) {
    if (v != std::floor(v)) throw ConfigError("key '" + key + "' must hold integers");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::vector<std::int64_t> KeyValueConfig::get_ints(const std::string& key,
                                                   std::vector<std::int64_t> fallback) const {
  return has(key) ? get_ints(key) : fallback;
}

// ---------------------------------------------------------------------------

Vector to_point(const std::vector<double>& coords, int dim) {
  if (static_cast<int>(coords.size()) > dim) {
    throw ConfigError("point has " + std::to_string(coords.size()) + " coordinates, scene dimension is " +
                      std::to_string(dim));
  }
  Vector p = Vector::Zero(dim);
  for (std::size_t i = 0; i < coords.size(); ++i) p[static_cast<Eigen::Index>(i)] = coords[i];
  return p;
}

Scene make_scene(const KeyValueConfig& cfg) {
  Scene scene;
  scene.env = cfg.get_string("env", "disk");
  if (scene.env == "disk") {
    const int dim = static_cast<int>(cfg.get_int("dim", 2));
    scene.disk.emplace(cfg.get_real("k_r", 0.3), dim);
    scene.field = std::make_shared<DiskEnvironment>(*scene.disk);
    scene.start = to_point(cfg.get_reals("start", {-8.0, 0.0}), dim);
    scene.goal = to_point(cfg.get_reals("goal", {8.0, 0.0}), dim);
  } else if (scene.env == "rr") {
    const auto links = cfg.get_reals("links", {1.0, 1.0});
    const int n = static_cast<int>(links.size());
    const auto upper = cfg.get_reals("q_upper", {1.5 * std::numbers::pi, std::numbers::pi});
    std::vector<double> lower_default(upper.size());
    std::transform(upper.begin(), upper.end(), lower_default.begin(), [](double u) { return -u; });
    const auto lower = cfg.get_reals("q_lower", lower_default);
    if (static_cast<int>(upper.size()) != n || static_cast<int>(lower.size()) != n) {
      throw ConfigError("q_lower/q_upper need one entry per link");
    }
    scene.arm.emplace(links, to_point(lower, n), to_point(upper, n));
    const auto obs = cfg.get_reals("obstacle", {0.0, 1.3});
    if (obs.size() != 2) throw ConfigError("obstacle needs two coordinates");
    scene.obstacle = Eigen::Vector2d(obs[0], obs[1]);
    scene.distance_kind = cfg.get_string("distance", "ik");
    if (scene.distance_kind == "ik") {
      scene.curve = collision_curve(*scene.arm, scene.obstacle, static_cast<int>(cfg.get_int("n_col", 200)));
      scene.field = ik_cspace_field(*scene.curve, scene.arm->joint_lower, scene.arm->joint_upper);
    } else if (scene.distance_kind == "lipschitz") {
      scene.field = std::make_shared<LipschitzCSpaceField>(*scene.arm, scene.obstacle);
    } else {
      throw ConfigError("distance must be 'ik' or 'lipschitz', got '" + scene.distance_kind + "'");
    }
    scene.start = to_point(cfg.get_reals("start", {0.785, 0.800}), n);
    scene.goal = to_point(cfg.get_reals("goal", {2.042, 0.200}), n);
  } else {
    throw ConfigError("env must be 'disk' or 'rr', got '" + scene.env + "'");
  }
  return scene;
}

}  // namespace wos::bench
