#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "octrack/eval.hpp"
#include "octrack/image_io.hpp"
#include "synth.hpp"

using namespace octrack;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("octrack_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Writes a rendered constant-velocity sequence in the directory layout the
// loader expects. Returns the sequence root.
fs::path write_sequence(const fs::path& root, const std::string& name,
                        int frames, const synth::SceneSpec& spec,
                        Point2d start, Point2d vel) {
  const fs::path dir = root / name;
  fs::create_directories(dir / "img");
  const auto path = synth::constant_velocity_path(start, vel, frames);
  std::ofstream gt(dir / "groundtruth_rect.txt");
  for (int i = 0; i < frames; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d.png", i + 1);
    image_io::save_gray_png((dir / "img" / buf).string(),
                            synth::render_frame(spec, path[i]));
    const BoundingBox b = synth::target_box(spec, path[i]);
    gt << b.x << ',' << b.y << ',' << b.w << ',' << b.h << '\n';
  }
  return dir;
}

synth::SceneSpec small_scene() {
  synth::SceneSpec spec;
  spec.frame_w = 160;
  spec.frame_h = 120;
  spec.target_w = 28.0;
  spec.target_h = 28.0;
  return spec;
}

}  // namespace

TEST_CASE("center error follows the distance between box centers") {
  const BoundingBox a{0, 0, 10, 10};
  CHECK(eval::cle(a, a) == 0.0);
  const BoundingBox b{-2, -1.5, 4, 3};  // center (0, 0)
  const BoundingBox c{1, 2.5, 4, 3};    // center (3, 4)
  CHECK(eval::cle(b, c) == doctest::Approx(5.0));
  const BoundingBox d{5, 5, 10, 10};
  CHECK(eval::cle(a, d) == doctest::Approx(std::sqrt(50.0)));
}

TEST_CASE("overlap is intersection over union") {
  const BoundingBox a{0, 0, 10, 10};
  CHECK(eval::iou(a, a) == 1.0);
  CHECK(eval::iou(a, {20, 20, 5, 5}) == 0.0);
  CHECK(eval::iou(a, {5, 0, 10, 10}) == doctest::Approx(1.0 / 3.0));
  CHECK(eval::iou(a, {0, 0, 0, 10}) == 0.0);
}

TEST_CASE("precision curve counts frames under each threshold") {
  const std::vector<double> zeros{0.0, 0.0, 0.0};
  const auto all_pass = eval::precision_curve(zeros);
  REQUIRE(all_pass.size() == 51);
  for (double v : all_pass) CHECK(v == 1.0);

  const auto half = eval::precision_curve({10.0, 30.0});
  CHECK(half[20] == 0.5);
  CHECK(half[9] == 0.0);
  CHECK(half[10] == 0.5);  // threshold comparison is inclusive
  CHECK(half[30] == 1.0);
  for (std::size_t i = 1; i < half.size(); ++i) CHECK(half[i] >= half[i - 1]);
}

TEST_CASE("success curve counts frames strictly above each overlap") {
  const auto curve = eval::success_curve({1.0, 0.4});
  REQUIRE(curve.size() == 21);
  CHECK(curve[10] == 0.5);  // threshold 0.5
  CHECK(curve[7] == 1.0);   // threshold 0.35: both frames clear it
  CHECK(curve[8] == 0.5);   // threshold 0.40: strict comparison drops 0.4
  CHECK(curve[0] == 1.0);
  CHECK(curve[20] == 0.0);  // nothing exceeds 1.0
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] <= curve[i - 1]);

  const auto exact = eval::success_curve({0.5});
  CHECK(exact[10] == 0.0);
}

TEST_CASE("curve area is the arithmetic mean") {
  CHECK(eval::auc(std::vector<double>(21, 1.0)) == 1.0);
  CHECK(eval::auc(std::vector<double>(21, 0.0)) == 0.0);
  CHECK(eval::auc({1.0, 0.0}) == 0.5);
}

TEST_CASE("a perfect trajectory scores perfectly") {
  std::vector<double> cles, ious;
  for (int i = 0; i < 10; ++i) {
    cles.push_back(0.0);
    ious.push_back(1.0);
  }
  const auto p = eval::precision_curve(cles);
  const auto s = eval::success_curve(ious);
  for (double v : p) CHECK(v == 1.0);
  CHECK(eval::auc(s) == doctest::Approx(20.0 / 21.0));  // iou 1.0 is not > 1.0
  CHECK(s[20] == 0.0);
}

TEST_CASE("sequence loading parses delimiters and sorts numerically") {
  const fs::path root = fresh_dir("load");
  const fs::path dir = root / "seq";
  fs::create_directories(dir / "img");
  Plane img(32, 24);
  for (double& v : img.data) v = 0.5;
  // Written out of order, with names whose numeric and lexicographic orders
  // differ.
  for (const char* name : {"10.png", "1.png", "2.png"})
    image_io::save_gray_png((dir / "img" / name).string(), img);
  {
    std::ofstream gt(dir / "groundtruth_rect.txt");
    gt << "1,2,3,4\n";
    gt << "5\t6\t7\t8\n";
    gt << "9 10 11 12\n";
  }
  const eval::Sequence seq = eval::load_sequence(dir.string());
  CHECK(seq.name == "seq");
  REQUIRE(seq.frame_paths.size() == 3);
  CHECK(fs::path(seq.frame_paths[0]).filename() == "1.png");
  CHECK(fs::path(seq.frame_paths[1]).filename() == "2.png");
  CHECK(fs::path(seq.frame_paths[2]).filename() == "10.png");
  REQUIRE(seq.ground_truth.size() == 3);
  CHECK(seq.ground_truth[0]->x == 1.0);
  CHECK(seq.ground_truth[1]->w == 7.0);
  CHECK(seq.ground_truth[2]->h == 12.0);
}

TEST_CASE("annotation surplus is truncated and gaps are kept") {
  const fs::path root = fresh_dir("gaps");
  const fs::path dir = root / "seq";
  fs::create_directories(dir / "img");
  Plane img(32, 24);
  for (const char* name : {"0001.png", "0002.png", "0003.png"})
    image_io::save_gray_png((dir / "img" / name).string(), img);
  {
    std::ofstream gt(dir / "groundtruth_rect.txt");
    gt << "1,2,3,4\n";
    gt << "NaN,NaN,NaN,NaN\n";
    gt << "9,10,11,12\n";
    gt << "13,14,15,16\n";  // surplus line, dropped
  }
  const eval::Sequence seq = eval::load_sequence(dir.string());
  REQUIRE(seq.ground_truth.size() == 3);
  CHECK(seq.ground_truth[0].has_value());
  CHECK_FALSE(seq.ground_truth[1].has_value());
  CHECK(seq.ground_truth[2].has_value());
}

TEST_CASE("unusable layouts and garbage annotations are reported") {
  const fs::path root = fresh_dir("badload");
  CHECK_THROWS_AS(eval::load_sequence((root / "missing").string()),
                  std::runtime_error);

  const fs::path no_img = root / "noimg";
  fs::create_directories(no_img);
  CHECK_THROWS_AS(eval::load_sequence(no_img.string()), std::runtime_error);

  const fs::path garbled = root / "garbled";
  fs::create_directories(garbled / "img");
  Plane img(32, 24);
  image_io::save_gray_png((garbled / "img" / "0001.png").string(), img);
  {
    std::ofstream gt(garbled / "groundtruth_rect.txt");
    gt << "1,2,3,4\n";
    gt << "not,a,box,line\n";
  }
  try {
    eval::load_sequence(garbled.string());
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("tracking a rendered sequence produces a full record") {
  const fs::path root = fresh_dir("run");
  const synth::SceneSpec spec = small_scene();
  const fs::path dir = write_sequence(root, "cv", 8, spec, {40.0, 60.0},
                                      {2.0, 0.0});
  const eval::Sequence seq = eval::load_sequence(dir.string());
  tracker::TrackerConfig cfg;
  const eval::RunRecord rec = eval::run_sequence(seq, cfg, "oct-kcf");
  CHECK_FALSE(rec.failed);
  REQUIRE(rec.frames.size() == 8);
  CHECK(rec.frames[0].frame == 1);
  CHECK(rec.frames[0].cle == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rec.precision.size() == 51);
  CHECK(rec.success.size() == 21);
  CHECK(rec.mean_cle < 6.0);
  CHECK(rec.precision_at_20 == 1.0);
}

TEST_CASE("benchmark aggregates equal-weight curves and records failures") {
  const fs::path root = fresh_dir("bench");
  const synth::SceneSpec spec = small_scene();
  write_sequence(root, "a", 6, spec, {40.0, 60.0}, {2.0, 0.0});
  write_sequence(root, "b", 6, spec, {100.0, 50.0}, {0.0, 2.0});

  std::vector<eval::Sequence> seqs{
      eval::load_sequence((root / "a").string()),
      eval::load_sequence((root / "b").string())};
  tracker::TrackerConfig kcf_cfg;
  kcf_cfg.mode = tracker::TrackerMode::kcf;
  tracker::TrackerConfig oct_cfg;
  const std::vector<eval::BenchmarkEntry> entries{{"kcf", kcf_cfg},
                                                  {"oct-kcf", oct_cfg}};
  const eval::BenchmarkReport rep = eval::run_benchmark(seqs, entries, 1);
  REQUIRE(rep.runs.size() == 4);
  REQUIRE(rep.aggregates.size() == 2);
  CHECK(rep.aggregates[0].config_name == "kcf");
  CHECK(rep.aggregates[1].config_name == "oct-kcf");
  for (const auto& a : rep.aggregates) {
    REQUIRE(a.precision.size() == 51);
    CHECK(a.precision[50] > 0.0);
    // Equal-weight mean of the two per-sequence curves.
    double want = 0.0;
    int n = 0;
    for (const auto& r : rep.runs)
      if (r.config_name == a.config_name && !r.failed) {
        want += r.precision[20];
        ++n;
      }
    CHECK(a.precision_at_20 == doctest::Approx(want / n).epsilon(1e-12));
  }

  // A sequence whose frames cannot be loaded is recorded, not fatal.
  eval::Sequence broken;
  broken.name = "broken";
  broken.frame_paths = {"/nonexistent/0001.png", "/nonexistent/0002.png"};
  broken.ground_truth = {BoundingBox{1, 1, 4, 4}, std::nullopt};
  std::vector<eval::Sequence> with_broken{seqs[0], broken};
  const eval::BenchmarkReport rep2 =
      eval::run_benchmark(with_broken, entries, 1);
  int failed = 0;
  for (const auto& r : rep2.runs)
    if (r.failed) ++failed;
  CHECK(failed == 2);
  for (const auto& r : rep2.runs)
    if (r.failed) CHECK_FALSE(r.error.empty());
}

TEST_CASE("result files carry the full schema") {
  const fs::path root = fresh_dir("csv");
  const synth::SceneSpec spec = small_scene();
  const fs::path dir = write_sequence(root, "cv", 5, spec, {40.0, 60.0},
                                      {2.0, 0.0});
  eval::Sequence seq = eval::load_sequence(dir.string());
  seq.ground_truth[2] = std::nullopt;  // annotation gap
  tracker::TrackerConfig cfg;
  const eval::RunRecord rec = eval::run_sequence(seq, cfg, "oct-kcf");

  const fs::path csv = root / "frames.csv";
  eval::write_frame_csv(csv.string(), rec);
  const std::string text = slurp(csv);
  CHECK(text.rfind("frame,pred_x,pred_y,pred_w,pred_h,gt_x,gt_y,gt_w,gt_h,"
                   "cle,iou,peak,zscore,gate,redetect\n", 0) == 0);
  CHECK(text.find("nan,nan,nan,nan,nan,nan") != std::string::npos);
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 6);

  eval::BenchmarkReport rep = eval::run_benchmark(
      {seq}, {{"oct-kcf", cfg}}, 1);
  const fs::path out = root / "report";
  eval::write_report(out.string(), rep);
  CHECK(fs::exists(out / "summary.csv"));
  CHECK(fs::exists(out / "cv" / "oct-kcf.csv"));
  CHECK(fs::exists(out / "curves" / "oct-kcf_precision.csv"));
  CHECK(fs::exists(out / "curves" / "oct-kcf_success.svg"));

  const std::string summary = slurp(out / "summary.csv");
  CHECK(summary.rfind("sequence,config,frames,mean_cle,precision_at_20,auc\n",
                      0) == 0);
  CHECK(summary.find("ALL,oct-kcf") != std::string::npos);

  const std::string svg = slurp(out / "curves" / "oct-kcf_success.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
}
