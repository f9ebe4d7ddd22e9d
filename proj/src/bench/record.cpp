#include "wos/bench/record.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wos::bench {

using nlohmann::json;

namespace {

json vec2(const Eigen::Vector2d& v) { return json::array({v.x(), v.y()}); }

Eigen::Vector2d to_vec2(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("record: expected a 2-vector");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector to_point(const json& j) {
  const auto c = j.get<std::vector<double>>();
  if (c.empty() || c.size() > static_cast<std::size_t>(kMaxDim)) throw ConfigError("record: bad point");
  Vector v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i];
  return v;
}

}  // namespace

std::string record_to_json(const RunRecord& r) {
  json j;
  j["version"] = r.version;
  j["experiment"] = r.experiment;
  j["spec"] = r.spec;
  j["summary"] = r.summary;
  j["files"] = r.files;

  json scenes = json::array();
  for (const auto& s : r.scenes) {
    json js;
    js["label"] = s.label;
    js["circles"] = json::array();
    for (const auto& c : s.circles) {
      js["circles"].push_back({{"center", vec2(c.center)}, {"radius", c.radius}, {"obstacle", c.obstacle}});
    }
    if (s.has_box) js["box"] = {{"lower", vec2(s.box_lower)}, {"upper", vec2(s.box_upper)}};
    js["markers"] = json::array();
    for (const auto& m : s.markers) js["markers"].push_back(vec2(m));
    scenes.push_back(std::move(js));
  }
  j["scenes"] = std::move(scenes);

  json paths = json::array();
  for (const auto& p : r.paths) {
    json jp{{"label", p.label},   {"scene", p.scene},   {"status", p.status},
            {"length", p.length}, {"min_clearance", p.min_clearance}};
    jp["points"] = json::array();
    for (const auto& x : p.points) jp["points"].push_back(point(x));
    paths.push_back(std::move(jp));
  }
  j["paths"] = std::move(paths);

  json panels = json::array();
  for (const auto& p : r.panels) {
    json jp{{"title", p.title}, {"xlabel", p.xlabel}, {"ylabel", p.ylabel}};
    jp["series"] = json::array();
    for (const auto& s : p.series) jp["series"].push_back({{"label", s.label}, {"x", s.x}, {"y", s.y}});
    panels.push_back(std::move(jp));
  }
  j["panels"] = std::move(panels);

  json timings = json::array();
  for (const auto& t : r.timings) timings.push_back({{"label", t.label}, {"values", t.values}});
  j["timings"] = std::move(timings);
  return j.dump(1);
}

RunRecord record_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("record is not valid JSON: ") + e.what());
  }
  RunRecord r;
  try {
    r.version = j.value("version", "");
    r.experiment = j.at("experiment").get<std::string>();
    r.spec = j.value("spec", std::map<std::string, std::string>{});
    r.summary = j.value("summary", std::map<std::string, double>{});
    r.files = j.value("files", std::vector<std::string>{});
    for (const auto& js : j.value("scenes", json::array())) {
      SceneOutline s;
      s.label = js.value("label", "");
      for (const auto& c : js.value("circles", json::array())) {
        s.circles.push_back({to_vec2(c.at("center")), c.at("radius").get<double>(), c.value("obstacle", true)});
      }
      if (js.contains("box")) {
        s.has_box = true;
        s.box_lower = to_vec2(js["box"].at("lower"));
        s.box_upper = to_vec2(js["box"].at("upper"));
      }
      for (const auto& m : js.value("markers", json::array())) s.markers.push_back(to_vec2(m));
      r.scenes.push_back(std::move(s));
    }
    for (const auto& jp : j.value("paths", json::array())) {
      PathSeries p;
      p.label = jp.value("label", "");
      p.scene = jp.value("scene", 0);
      p.status = jp.value("status", "");
      p.length = jp.value("length", 0.0);
      p.min_clearance = jp.value("min_clearance", 0.0);
      for (const auto& x : jp.at("points")) p.points.push_back(to_point(x));
      r.paths.push_back(std::move(p));
    }
    for (const auto& jp : j.value("panels", json::array())) {
      Panel p;
      p.title = jp.value("title", "");
      p.xlabel = jp.value("xlabel", "");
      p.ylabel = jp.value("ylabel", "");
      for (const auto& s : jp.value("series", json::array())) {
        p.series.push_back({s.value("label", ""), s.at("x").get<std::vector<double>>(),
                            s.at("y").get<std::vector<double>>()});
      }
      r.panels.push_back(std::move(p));
    }
    for (const auto& t : j.value("timings", json::array())) {
      r.timings.push_back({t.value("label", ""), t.at("values").get<std::vector<double>>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed record: ") + e.what());
  }
  return r;
}

void save_record(const RunRecord& record, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << record_to_json(record) << "\n";
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

RunRecord load_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open record '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return record_from_json(ss.str());
}

}  // namespace wos::bench
