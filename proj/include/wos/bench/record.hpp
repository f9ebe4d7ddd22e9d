#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wos/types.hpp"

namespace wos::bench {

/// Drawable outline of a scene, in the first two coordinates.
struct SceneOutline {
  struct Circle {
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    double radius = 0.0;
    bool obstacle = true;  // filled; the outer boundary is not
  };
  std::string label;
  std::vector<Circle> circles;
  bool has_box = false;
  Eigen::Vector2d box_lower = Eigen::Vector2d::Zero();
  Eigen::Vector2d box_upper = Eigen::Vector2d::Zero();
  std::vector<Eigen::Vector2d> markers;  // e.g. collision-curve samples
};

struct PathSeries {
  std::string label;
  int scene = 0;  // index into RunRecord::scenes
  std::vector<Vector> points;
  std::string status;
  double length = 0.0;
  double min_clearance = 0.0;
};

struct XYSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<XYSeries> series;
};

struct TimingGroup {
  std::string label;
  std::vector<double> values;
};

/// Everything one experiment run produced. Timings aside, the numeric content
/// is a function of the spec alone.
struct RunRecord {
  std::string version;
  std::string experiment;
  std::map<std::string, std::string> spec;
  std::vector<SceneOutline> scenes;
  std::vector<PathSeries> paths;
  std::vector<Panel> panels;
  std::vector<TimingGroup> timings;
  std::map<std::string, double> summary;
  std::vector<std::string> files;  // outputs written, relative to the output directory
};

std::string record_to_json(const RunRecord& record);
RunRecord record_from_json(const std::string& text);
void save_record(const RunRecord& record, const std::string& path);
RunRecord load_record(const std::string& path);

}  // namespace wos::bench
