#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "octrack/config.hpp"

using namespace octrack;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& tag, const std::string& text) {
  const fs::path p =
      fs::temp_directory_path() / ("octrack_cfg_" + tag + ".cfg");
  std::ofstream out(p);
  out << text;
  return p;
}

bool same_config(const tracker::TrackerConfig& a,
                 const tracker::TrackerConfig& b) {
  return a.lambda == b.lambda && a.s == b.s &&
         a.kernel_sigma == b.kernel_sigma && a.t_g == b.t_g &&
         a.n_r == b.n_r && a.n_t == b.n_t &&
         a.search_scale == b.search_scale &&
         a.warmup_frames == b.warmup_frames && a.cell_size == b.cell_size &&
         a.feature_mode == b.feature_mode && a.mode == b.mode &&
         a.kcf_rate == b.kcf_rate &&
         a.redetect_radius_factor == b.redetect_radius_factor;
}

}  // namespace

TEST_CASE("defaults round-trip through serialization") {
  const tracker::TrackerConfig def;
  const fs::path p = write_temp("roundtrip", config::to_string(def));
  const tracker::TrackerConfig back = config::parse_file(p.string());
  CHECK(same_config(def, back));
}

TEST_CASE("modified values round-trip exactly") {
  tracker::TrackerConfig cfg;
  cfg.lambda = 3.25e-5;
  cfg.s = 17.125;
  cfg.kernel_sigma = 0.625;
  cfg.t_g = 2.1;
  cfg.n_r = 7;
  cfg.n_t = 12;
  cfg.search_scale = 2.0;
  cfg.warmup_frames = 11;
  cfg.cell_size = 1;
  cfg.feature_mode = features::FeatureMode::gray;
  cfg.mode = tracker::TrackerMode::kcf;
  cfg.kcf_rate = 0.075;
  cfg.redetect_radius_factor = 1.5;
  const fs::path p = write_temp("modified", config::to_string(cfg));
  const tracker::TrackerConfig back = config::parse_file(p.string());
  CHECK(same_config(cfg, back));
}

TEST_CASE("parsing tolerates comments, blanks, and spacing") {
  const fs::path p = write_temp("loose",
                                "# experiment settings\n"
                                "\n"
                                "  s = 250\n"
                                "t_g=1.9   # trailing comment\n"
                                "mode = kcf\n");
  const tracker::TrackerConfig cfg = config::parse_file(p.string());
  CHECK(cfg.s == 250.0);
  CHECK(cfg.t_g == 1.9);
  CHECK(cfg.mode == tracker::TrackerMode::kcf);
  CHECK(cfg.lambda == tracker::TrackerConfig{}.lambda);
}

TEST_CASE("unknown keys are hard errors that name the key") {
  const fs::path p = write_temp("unknown", "lambda=1e-4\nlambdaa=2\n");
  try {
    config::parse_file(p.string());
    FAIL("expected an error");
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    CHECK(msg.find("lambdaa") != std::string::npos);
    CHECK(msg.find(":2:") != std::string::npos);
  }
}

TEST_CASE("malformed values report the line") {
  const fs::path p = write_temp("badvalue", "s=100\nn_r=many\n");
  try {
    config::parse_file(p.string());
    FAIL("expected an error");
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":2:") != std::string::npos);
    CHECK(msg.find("n_r") != std::string::npos);
  }
}

TEST_CASE("values that break the tracker contract are rejected") {
  const fs::path p = write_temp("invalid", "lambda=0\n");
  CHECK_THROWS_AS(config::parse_file(p.string()), std::invalid_argument);
  const fs::path p2 = write_temp("invalid2", "cell_size=-3\n");
  CHECK_THROWS_AS(config::parse_file(p2.string()), std::invalid_argument);
}

TEST_CASE("mode names parse in both spellings") {
  CHECK(config::parse_mode("kcf") == tracker::TrackerMode::kcf);
  CHECK(config::parse_mode("oct-kcf") == tracker::TrackerMode::oct_kcf);
  CHECK(config::parse_mode("oct_kcf") == tracker::TrackerMode::oct_kcf);
  CHECK_THROWS_AS(config::parse_mode("octkcf"), std::invalid_argument);
  CHECK(config::mode_name(tracker::TrackerMode::kcf) == "kcf");
  CHECK(config::mode_name(tracker::TrackerMode::oct_kcf) == "oct-kcf");

  CHECK(config::parse_feature_mode("fhog") == features::FeatureMode::fhog);
  CHECK(config::parse_feature_mode("gray") == features::FeatureMode::gray);
  CHECK_THROWS_AS(config::parse_feature_mode("hog"), std::invalid_argument);
  CHECK(config::feature_mode_name(features::FeatureMode::fhog) == "fhog");
}

TEST_CASE("single entries apply directly") {
  tracker::TrackerConfig cfg;
  config::apply_entry(cfg, "warmup_frames", "9");
  CHECK(cfg.warmup_frames == 9);
  config::apply_entry(cfg, "feature_mode", "gray");
  CHECK(cfg.feature_mode == features::FeatureMode::gray);
  CHECK_THROWS_AS(config::apply_entry(cfg, "bogus", "1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(config::apply_entry(cfg, "s", "12x"),
                  std::invalid_argument);
}

TEST_CASE("missing config files are errors") {
  CHECK_THROWS(config::parse_file("/nonexistent/path.cfg"));
}
