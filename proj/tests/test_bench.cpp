#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wos/bench/config.hpp"
#include "wos/bench/experiment.hpp"
#include "wos/bench/stats.hpp"
#include "wos/bench/svg.hpp"

using namespace wos;
using namespace wos::bench;
namespace fs = std::filesystem;

namespace {

KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("wos_test_bench_" + name);
  fs::remove_all(dir);
  return dir;
}

RunRecord sample_record() {
  RunRecord r;
  r.version = kVersion;
  r.experiment = "multistart";
  r.spec = {{"experiment", "multistart"}, {"k_r", "0.3"}};
  SceneOutline s;
  s.label = "disk";
  s.circles.push_back({{0, 0}, 10, false});
  s.circles.push_back({{2.5, 1}, 0.6, true});
  r.scenes.push_back(s);
  PathSeries p;
  p.label = "c=1";
  p.points = {make_vector({-8, 0}), make_vector({0, 5}), make_vector({8, 0})};
  p.status = "reached";
  p.length = 18.9;
  p.min_clearance = 0.4;
  r.paths.push_back(p);
  r.panels.push_back({"angle error", "n_walks", "radians", {{"dim 2", {1e3, 1e4, 1e5}, {0.9, 0.3, 0.1}}}});
  r.timings.push_back({"1 worker", {1.0, 1.2, 0.9}});
  r.summary = {{"slope", -0.5}};
  r.files = {"multistart.csv"};
  return r;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse("# comment\nexperiment = multistart  # trailing\n k_r=0.3\nscreenings = 10, 1, 0.1\n"
                         "q_upper = 3pi/2, pi\nflag = true\nn = 100000\n");
  CHECK(cfg.get_string("experiment") == "multistart");
  CHECK(cfg.get_real("k_r") == 0.3);
  CHECK(cfg.get_reals("screenings") == std::vector<double>{10, 1, 0.1});
  CHECK(cfg.get_reals("q_upper")[0] == doctest::Approx(1.5 * std::numbers::pi));
  CHECK(cfg.get_bool("flag", false));
  CHECK(cfg.get_int("n") == 100000);
  CHECK(cfg.get_real("missing", 2.5) == 2.5);
  CHECK_THROWS_AS(cfg.get_real("missing"), ConfigError);
  CHECK_THROWS_AS(cfg.get_int("k_r"), ConfigError);
  CHECK_THROWS_AS(parse("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("pi forms") {
  CHECK(parse_real("pi") == doctest::Approx(std::numbers::pi));
  CHECK(parse_real("-pi") == doctest::Approx(-std::numbers::pi));
  CHECK(parse_real("-3pi/2") == doctest::Approx(-1.5 * std::numbers::pi));
  CHECK(parse_real("0.5*pi") == doctest::Approx(0.5 * std::numbers::pi));
  CHECK(parse_real("1e-2") == 0.01);
  CHECK_THROWS_AS(parse_real("abc"), ConfigError);
  CHECK_THROWS_AS(parse_real("1.5x"), ConfigError);
}

TEST_CASE("scenes") {
  const auto disk = make_scene(parse("env = disk\nk_r = 0.3\n"));
  CHECK(disk.field->dim() == 2);
  CHECK(disk.start == make_vector({-8, 0}));
  CHECK(disk.goal == make_vector({8, 0}));
  const auto rr = make_scene(parse("env = rr\n"));
  CHECK(rr.distance_kind == "ik");
  CHECK(rr.field->distance(rr.start) > 0.0);
  CHECK(to_point({1.0}, 3) == make_vector({1, 0, 0}));
  CHECK_THROWS_AS(to_point({1, 2, 3}, 2), ConfigError);
  CHECK_THROWS_AS(make_scene(parse("env = torus\n")), ConfigError);
}

TEST_CASE("log-log slope") {
  CHECK(fit_loglog_slope({1, 10, 100}, {1, 0.1, 0.01}) == doctest::Approx(-1.0));
  CHECK(fit_loglog_slope({1e3, 1e4, 1e5, 1e6}, {1, std::sqrt(0.1), 0.1, std::sqrt(0.001)}) ==
        doctest::Approx(-0.5));
  CHECK(fit_loglog_slope({2, 4, 8}, {3, 3, 3}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fit_loglog_slope({1, 2}, {1, 2}), ContractViolation);
  CHECK_THROWS_AS(fit_loglog_slope({1, 2, 3}, {1, 2}), ContractViolation);
  CHECK_THROWS_AS(fit_loglog_slope({1, 2, 3}, {1, 0, 2}), DomainError);
  CHECK_THROWS_AS(fit_loglog_slope({2, 2, 2}, {1, 2, 3}), DomainError);
}

TEST_CASE("summary statistics") {
  CHECK(mean({1, 2, 3, 4}) == 2.5);
  CHECK(sample_variance({1, 2, 3, 4}) == doctest::Approx(5.0 / 3.0));
  CHECK(median({5, 1, 3}) == 3.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK(quantile({1, 2, 3, 4, 5}, 0.25) == 2.0);
}

TEST_CASE("record round trip") {
  const auto r = sample_record();
  const auto text = record_to_json(r);
  const auto back = record_from_json(text);
  CHECK(record_to_json(back) == text);
  CHECK(back.paths[0].points[1] == make_vector({0, 5}));
  CHECK(back.summary.at("slope") == -0.5);
  CHECK_THROWS_AS(record_from_json("{not json"), ConfigError);
  CHECK_THROWS_AS(record_from_json("{\"version\": 3}"), ConfigError);
}

TEST_CASE("plots are deterministic and complain about missing series") {
  const auto r = sample_record();
  for (const auto kind : {PlotKind::path_overlay, PlotKind::loglog, PlotKind::box_timing}) {
    const auto a = emit_plot(r, kind);
    CHECK(a == emit_plot(r, kind));
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("nan") == std::string::npos);
  }
  CHECK(parse_plot_kind("loglog") == PlotKind::loglog);
  CHECK_THROWS_AS(parse_plot_kind("pie"), ConfigError);

  RunRecord empty;
  empty.experiment = "multistart";
  const auto dir = scratch("plots");
  fs::create_directories(dir);
  for (const auto kind : {PlotKind::path_overlay, PlotKind::loglog, PlotKind::box_timing}) {
    const auto file = dir / (std::string(to_string(kind)) + ".svg");
    CHECK_THROWS_AS(write_plot(empty, kind, file.string()), ConfigError);
    CHECK(!fs::exists(file));
  }
  fs::remove_all(dir);
}

TEST_CASE("experiment specs") {
  const auto spec = ExperimentSpec::from_config(parse("experiment = rr_ik\n"));
  CHECK(spec.walk.epsilon == 0.02);
  CHECK(spec.walk.n_walks == 100000);
  CHECK(spec.screenings == std::vector<double>{0, 5});
  const auto seeds = ExperimentSpec::from_config(parse("experiment = multistart\nseed = 4\nrepeats = 3\n"));
  CHECK(seeds.seeds == std::vector<std::uint64_t>{4, 5, 6});
  CHECK_THROWS_AS(ExperimentSpec::from_config(parse("experiment = nope\n")), ConfigError);
  CHECK_THROWS_AS(ExperimentSpec::from_config(parse("k_r = 0.3\n")), ConfigError);
  CHECK(cell_seed(1, {2, 3}) != cell_seed(1, {3, 2}));
  CHECK(cell_seed(1, {2, 3}) == cell_seed(1, {2, 3}));
}

TEST_CASE("experiment outputs are byte-identical across reruns and worker counts") {
  const std::string base =
      "experiment = multistart\nenv = disk\nk_r = 0.2\nn_starts = 2\nn_walks = 2000\nmax_iters = 15\n"
      "seed = 7\nplots = true\n";
  std::vector<fs::path> dirs;
  for (const int workers : {1, 1, 4}) {
    auto cfg = parse(base);
    const auto dir = scratch("run" + std::to_string(dirs.size()));
    cfg.set("out", dir.string());
    cfg.set("workers", std::to_string(workers));
    const auto record = run_experiment(ExperimentSpec::from_config(cfg));
    CHECK(!record.paths.empty());
    CHECK(fs::exists(dir / "record.json"));
    dirs.push_back(dir);
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    const auto name = entry.path().filename().string();
    if (entry.path().extension() != ".csv" || name.find("_timing") != std::string::npos) continue;
    const auto first = slurp(entry.path());
    CHECK(first.rfind("# ", 0) == 0);
    CHECK(slurp(dirs[1] / name) == first);
    CHECK(slurp(dirs[2] / name) == first);
    ++compared;
  }
  CHECK(compared >= 2);
  for (const auto& d : dirs) fs::remove_all(d);
}
