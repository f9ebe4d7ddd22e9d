#include "wos/bench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "wos/bench/stats.hpp"

namespace wos::bench {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#8c564b", "#2ca02c", "#d62728",
                                    "#9467bd", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

const char* color(std::size_t i) { return kPalette[i % kPaletteSize]; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class Svg {
 public:
  Svg(double width, double height) : w_(width), h_(height) {}

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
            const std::string& dash = "") {
    body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"";
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << "/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke = "none") {
    body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\"" << fill
          << "\" stroke=\"" << stroke << "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke) {
    body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
          << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width = 1.5,
                const std::string& dash = "") {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"";
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) body_ << ' ';
      body_ << num(pts[i].first) << ',' << num(pts[i].second);
    }
    body_ << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 12, const std::string& anchor = "start",
            double rotate = 0.0) {
    body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
          << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\"";
    if (rotate != 0.0) body_ << " transform=\"rotate(" << num(rotate) << ' ' << num(x) << ' ' << num(y) << ")\"";
    body_ << ">" << escape(s) << "</text>\n";
  }

  std::string str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w_) << "\" height=\"" << num(h_)
        << "\" viewBox=\"0 0 " << num(w_) << ' ' << num(h_) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(w_) << "\" height=\"" << num(h_) << "\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  double w_, h_;
  std::ostringstream body_;
};

struct Box2 {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();
  void add(double x, double y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
  bool valid() const { return x0 <= x1 && y0 <= y1; }
};

void legend(Svg& svg, double x, double y, const std::vector<std::string>& labels, bool dashed = false) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double yy = y + 16.0 * static_cast<double>(i);
    svg.line(x, yy - 4, x + 20, yy - 4, color(i), 2.0, dashed ? "5,3" : "");
    svg.text(x + 26, yy, labels[i], 11);
  }
}

// ---------------------------------------------------------------------------

std::string path_overlay(const RunRecord& r) {
  if (r.paths.empty()) throw ConfigError("path_overlay: record '" + r.experiment + "' has no paths");
  Box2 world;
  for (const auto& s : r.scenes) {
    for (const auto& c : s.circles) {
      world.add(c.center.x() - c.radius, c.center.y() - c.radius);
      world.add(c.center.x() + c.radius, c.center.y() + c.radius);
    }
    if (s.has_box) {
      world.add(s.box_lower.x(), s.box_lower.y());
      world.add(s.box_upper.x(), s.box_upper.y());
    }
  }
  for (const auto& p : r.paths) {
    if (p.points.empty()) throw ConfigError("path_overlay: path '" + p.label + "' is empty");
    for (const auto& x : p.points) world.add(x[0], x.size() > 1 ? x[1] : 0.0);
  }
  const double margin = 0.04 * std::max(world.x1 - world.x0, world.y1 - world.y0) + 1e-9;
  world.x0 -= margin;
  world.x1 += margin;
  world.y0 -= margin;
  world.y1 += margin;

  const double plot = 560.0;
  const double scale = plot / std::max(world.x1 - world.x0, world.y1 - world.y0);
  const double width = (world.x1 - world.x0) * scale + 200.0;
  const double height = (world.y1 - world.y0) * scale + 60.0;
  auto px = [&](double x) { return 20.0 + (x - world.x0) * scale; };
  auto py = [&](double y) { return 40.0 + (world.y1 - y) * scale; };

  Svg svg(width, height);
  svg.text(20, 24, r.experiment, 14);
  for (std::size_t si = 0; si < r.scenes.size(); ++si) {
    const auto& s = r.scenes[si];
    // Scenes beyond the first are drawn in outline, tinted like their paths.
    const bool first = si == 0;
    for (const auto& c : s.circles) {
      if (c.obstacle) {
        svg.circle(px(c.center.x()), py(c.center.y()), c.radius * scale, first ? "#d9d9d9" : "none",
                   first ? "#555555" : color(si));
      } else {
        svg.circle(px(c.center.x()), py(c.center.y()), c.radius * scale, "none", "#000000");
      }
    }
    if (s.has_box) {
      svg.rect(px(s.box_lower.x()), py(s.box_upper.y()), (s.box_upper.x() - s.box_lower.x()) * scale,
               (s.box_upper.y() - s.box_lower.y()) * scale, "none", "#000000");
    }
    for (const auto& m : s.markers) svg.circle(px(m.x()), py(m.y()), 1.5, "#555555");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < r.paths.size(); ++i) {
    const auto& p = r.paths[i];
    std::vector<std::pair<double, double>> pts;
    for (const auto& x : p.points) pts.emplace_back(px(x[0]), py(x.size() > 1 ? x[1] : 0.0));
    svg.polyline(pts, color(i));
    svg.circle(pts.front().first, pts.front().second, 3.5, color(i));
    svg.circle(pts.back().first, pts.back().second, 3.5, "white", color(i));
    char len[32];
    std::snprintf(len, sizeof len, " (%.3f)", p.length);
    labels.push_back(p.label + len);
  }
  legend(svg, width - 175.0, 60.0, labels);
  return svg.str();
}

// ---------------------------------------------------------------------------

std::string loglog(const RunRecord& r) {
  if (r.panels.empty()) throw ConfigError("loglog: record '" + r.experiment + "' has no panels");
  const double pw = 520.0, ph = 300.0, left = 80.0, top = 40.0, gap = 70.0;
  const double width = left + pw + 190.0;
  const double height = top + static_cast<double>(r.panels.size()) * (ph + gap);
  Svg svg(width, height);

  for (std::size_t pi = 0; pi < r.panels.size(); ++pi) {
    const auto& panel = r.panels[pi];
    if (panel.series.empty()) throw ConfigError("loglog: panel '" + panel.title + "' has no series");
    Box2 b;
    for (const auto& s : panel.series) {
      if (s.x.empty() || s.x.size() != s.y.size()) {
        throw ConfigError("loglog: series '" + s.label + "' in panel '" + panel.title + "' is empty or ragged");
      }
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;  // not representable on log axes
        b.add(std::log10(s.x[i]), std::log10(s.y[i]));
      }
    }
    if (!b.valid()) throw ConfigError("loglog: panel '" + panel.title + "' has no positive data");
    const double lx0 = std::floor(b.x0), lx1 = std::max(std::ceil(b.x1), lx0 + 1.0);
    const double ly0 = std::floor(b.y0), ly1 = std::max(std::ceil(b.y1), ly0 + 1.0);
    const double oy = top + static_cast<double>(pi) * (ph + gap);
    auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
    auto py = [&](double y) { return oy + (ly1 - std::log10(y)) / (ly1 - ly0) * ph; };

    svg.text(left, oy - 10, panel.title, 13);
    svg.rect(left, oy, pw, ph, "none", "#000000");
    for (double d = lx0; d <= lx1 + 1e-9; d += 1.0) {
      const double x = left + (d - lx0) / (lx1 - lx0) * pw;
      svg.line(x, oy, x, oy + ph, "#dddddd");
      svg.text(x, oy + ph + 16, tick_label(std::pow(10.0, d)), 11, "middle");
    }
    for (double d = ly0; d <= ly1 + 1e-9; d += 1.0) {
      const double y = oy + (ly1 - d) / (ly1 - ly0) * ph;
      svg.line(left, y, left + pw, y, "#dddddd");
      svg.text(left - 6, y + 4, tick_label(std::pow(10.0, d)), 11, "end");
    }
    svg.text(left + pw / 2, oy + ph + 34, panel.xlabel, 12, "middle");
    svg.text(left - 56, oy + ph / 2, panel.ylabel, 12, "middle", -90.0);

    std::vector<std::string> labels;
    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const auto& s = panel.series[si];
      std::map<double, std::vector<double>> by_x;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
        svg.circle(px(s.x[i]), py(s.y[i]), 2.0, color(si));
        by_x[s.x[i]].push_back(s.y[i]);
      }
      std::vector<std::pair<double, double>> means;
      for (const auto& [x, ys] : by_x) means.emplace_back(px(x), py(mean(ys)));
      if (means.size() > 1) svg.polyline(means, color(si), 1.5, "5,3");
      labels.push_back(s.label);
    }
    legend(svg, left + pw + 16, oy + 14, labels, true);
  }
  return svg.str();
}

// ---------------------------------------------------------------------------

std::string box_timing(const RunRecord& r) {
  if (r.timings.empty()) throw ConfigError("box_timing: record '" + r.experiment + "' has no timings");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& g : r.timings) {
    if (g.values.empty()) throw ConfigError("box_timing: timing group '" + g.label + "' is empty");
    for (double v : g.values) {
      if (!(v > 0.0)) throw ConfigError("box_timing: timing group '" + g.label + "' has a nonpositive value");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double ly0 = std::floor(std::log10(lo));
  const double ly1 = std::max(std::ceil(std::log10(hi)), ly0 + 1.0);
  const double slot = 34.0, left = 80.0, top = 40.0, ph = 360.0;
  const double pw = slot * static_cast<double>(r.timings.size());
  Svg svg(left + pw + 40.0, top + ph + 120.0);
  auto py = [&](double v) { return top + (ly1 - std::log10(v)) / (ly1 - ly0) * ph; };

  svg.text(left, 24, r.experiment + ": wall time per estimate", 14);
  svg.rect(left, top, pw, ph, "none", "#000000");
  for (double d = ly0; d <= ly1 + 1e-9; d += 1.0) {
    const double y = py(std::pow(10.0, d));
    svg.line(left, y, left + pw, y, "#dddddd");
    svg.text(left - 6, y + 4, tick_label(std::pow(10.0, d)), 11, "end");
  }
  svg.text(left - 56, top + ph / 2, "seconds", 12, "middle", -90.0);
  for (std::size_t i = 0; i < r.timings.size(); ++i) {
    const auto& g = r.timings[i];
    const double cx = left + slot * (static_cast<double>(i) + 0.5);
    const double q1 = quantile(g.values, 0.25), q2 = quantile(g.values, 0.5), q3 = quantile(g.values, 0.75);
    const double mn = quantile(g.values, 0.0), mx = quantile(g.values, 1.0);
    svg.line(cx, py(mx), cx, py(q3), "#000000");
    svg.line(cx, py(q1), cx, py(mn), "#000000");
    svg.rect(cx - 10, py(q3), 20, std::max(py(q1) - py(q3), 0.5), "#c6dbef", "#000000");
    svg.line(cx - 10, py(q2), cx + 10, py(q2), "#d62728", 2.0);
    svg.text(cx + 4, top + ph + 12, g.label, 10, "end", -60.0);
  }
  return svg.str();
}

}  // namespace

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "path_overlay") return PlotKind::path_overlay;
  if (name == "loglog") return PlotKind::loglog;
  if (name == "box_timing") return PlotKind::box_timing;
  throw ConfigError("unknown plot kind '" + name + "' (path_overlay, loglog, box_timing)");
}

const char* to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::path_overlay:
      return "path_overlay";
    case PlotKind::loglog:
      return "loglog";
    case PlotKind::box_timing:
      return "box_timing";
  }
  return "unknown";
}

std::string emit_plot(const RunRecord& record, PlotKind kind) {
  switch (kind) {
    case PlotKind::path_overlay:
      return path_overlay(record);
    case PlotKind::loglog:
      return loglog(record);
    case PlotKind::box_timing:
      return box_timing(record);
  }
  throw ConfigError("unknown plot kind");
}

void write_plot(const RunRecord& record, PlotKind kind, const std::string& path) {
  const std::string doc = emit_plot(record, kind);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << doc;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace wos::bench
